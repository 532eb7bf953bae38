"""Input document models.

A document is one JSON object naming the field, the transcendental symbols,
the algebra, the lattice and optionally a complex structure, a C^n ⋉ N action
and expected results. Nothing has a silent default that changes the math:
omitted optional blocks simply switch the corresponding commands off.
"""
from __future__ import annotations

from typing import Dict, List, Optional, Union

from pydantic import BaseModel, ConfigDict, Field

SCHEMA_VERSION = "1"

FieldValue = Union[str, int, List[str]]
LogMap = Dict[str, str]


class StrictModel(BaseModel):
    model_config = ConfigDict(extra="forbid")


class FieldBlock(StrictModel):
    name: str = Field(..., description="Display name of the number field")
    min_poly: List[str] = Field(..., min_length=2, description="Monic minimal polynomial, leading coefficient first")
    i_adjoined: bool = Field(default=False, description="Whether √−1 is adjoined")
    embedding_hint: Optional[str] = Field(default=None, description="Which real root θ denotes, for display only")


class BracketEntry(StrictModel):
    x: str = Field(..., description="First basis element")
    y: str = Field(..., description="Second basis element")
    result: Dict[str, FieldValue] = Field(..., description="[x, y] as a sparse combination of basis elements")


class AlgebraBlock(StrictModel):
    basis: List[str] = Field(..., min_length=1, description="Basis names in order")
    v: List[str] = Field(default_factory=list, description="Basis of the complement V")
    n: Optional[List[str]] = Field(default=None, description="Basis of the nilradical; defaults to the rest")
    brackets: List[BracketEntry] = Field(default_factory=list, description="Nonzero brackets, one entry per unordered pair")


class GeneratorEntry(StrictModel):
    name: str
    coordinates: Dict[str, LogMap] = Field(default_factory=dict, description="Log-coordinates along V, keyed by basis name")


class CharacterValueEntry(StrictModel):
    modulus: LogMap = Field(default_factory=dict)
    phase: str = Field(default="0", description="Lift: the value is exp(2πi·phase)")
    angle: LogMap = Field(default_factory=dict)


class CharacterEntry(StrictModel):
    name: str
    functional: Dict[str, FieldValue] = Field(..., description="Values on V basis elements, keyed by basis name")
    values: List[CharacterValueEntry] = Field(..., description="One value per lattice generator")


class LatticeBlock(StrictModel):
    generators: List[GeneratorEntry] = Field(default_factory=list)
    characters: List[CharacterEntry] = Field(default_factory=list)


class ComplexStructureBlock(StrictModel):
    matrix: Optional[List[List[FieldValue]]] = Field(default=None, description="Dense J in the input basis, rows first")
    images: Optional[Dict[str, Dict[str, FieldValue]]] = Field(default=None, description="J(x) for each basis element x, sparse")


class ActionBlock(StrictModel):
    base: List[str] = Field(..., description="Abelian base C^n")
    ideal: List[str] = Field(..., description="The ideal N it acts on")


class HolomorphicMostowExpectation(StrictModel):
    original: Optional[bool] = None
    modified: Optional[bool] = None


class Expectations(StrictModel):
    informational: bool = Field(default=False, description="Recorded for reference; mismatches do not fail the regression")
    valid: Optional[bool] = None
    integrable: Optional[bool] = Field(default=None, description="Whether J passes the required complex-structure checks on g")
    betti_g: Optional[List[int]] = None
    betti: Optional[List[int]] = Field(default=None, description="de Rham Betti numbers of G/Γ")
    betti_differs_from_g: Optional[bool] = None
    subtorus: str = Field(default="auto", description="Subtorus mode the betti expectation refers to")
    hodge: Optional[List[List[int]]] = None
    pipelines: List[str] = Field(default_factory=list, description="Pipelines the hodge expectation is checked with")
    modified_nilpotent: Optional[bool] = None
    holomorphic_mostow: Optional[HolomorphicMostowExpectation] = None


class InputDocumentModel(StrictModel):
    schema_version: str = Field(default=SCHEMA_VERSION)
    name: str = Field(default="unnamed")
    description: str = Field(default="")
    field: FieldBlock
    symbols: List[str] = Field(default_factory=list, description="Transcendental symbols, Q-independent together with π")
    algebra: AlgebraBlock
    lattice: LatticeBlock = Field(default_factory=LatticeBlock)
    complex_structure: Optional[ComplexStructureBlock] = None
    action: Optional[ActionBlock] = None
    expectations: Optional[Expectations] = None


class ExplicitSublattice(StrictModel):
    sublattice: List[List[int]] = Field(..., description="Integer exponent vectors spanning the trivial sublattice")


__all__ = [
    "SCHEMA_VERSION",
    "StrictModel",
    "FieldBlock",
    "BracketEntry",
    "AlgebraBlock",
    "GeneratorEntry",
    "CharacterValueEntry",
    "CharacterEntry",
    "LatticeBlock",
    "ComplexStructureBlock",
    "ActionBlock",
    "HolomorphicMostowExpectation",
    "Expectations",
    "InputDocumentModel",
    "ExplicitSublattice",
]
