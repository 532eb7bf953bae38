"""Weight functionals of ad_s and the character lattice they generate.

A weight is a functional on V with values in the complexified field; the
lattice of characters is the Z-span of all weights, stored through rational
coordinates (the power-basis coefficients of every value) and normalized by
Hermite normal form.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from packages.exact.fields import FieldElement, FieldSpec
from packages.lattice.types import Functional
from packages.lie.adjoint import AdSMap
from packages.lie.presentation import LieAlgebraPresentation, StructureConstants, frame_structure_constants
from packages.linalg.lattices import integral_coordinates, lattice_basis
from packages.linalg.matrix import Matrix, Vector, kernel, span_basis, vec_conj
from packages.linalg.weights import joint_weight_decomposition
from packages.shared.errors import ValidationFailure, WeightAdditivityFailure

logger = logging.getLogger(__name__)

Exponent = Tuple[int, ...]


def functional_coords(functional: Sequence[FieldElement]) -> List[Fraction]:
    return [c for value in functional for c in value.coeffs]


def functional_from_coords(coords: Sequence[Fraction], spec: FieldSpec) -> Functional:
    w = spec.width
    return tuple(spec.element(coords[k:k + w]) for k in range(0, len(coords), w))


def conj_functional(functional: Functional) -> Functional:
    return tuple(v.conj() for v in functional)


@dataclass(frozen=True)
class CharacterLattice:
    """Z-span of a finite set of functionals with a canonical (HNF) basis."""

    spec: FieldSpec
    n_v: int
    basis_rows: Tuple[Tuple[Fraction, ...], ...]

    @classmethod
    def generated_by(cls, functionals: Sequence[Functional], spec: FieldSpec, n_v: int) -> "CharacterLattice":
        rows = lattice_basis([functional_coords(f) for f in functionals if any(not v.is_zero() for v in f)])
        return cls(spec, n_v, tuple(tuple(r) for r in rows))

    @property
    def rank(self) -> int:
        return len(self.basis_rows)

    @property
    def basis(self) -> Tuple[Functional, ...]:
        return tuple(functional_from_coords(r, self.spec) for r in self.basis_rows)

    def exponents_of(self, functional: Functional) -> Exponent:
        if not self.basis_rows:
            if any(not v.is_zero() for v in functional):
                raise WeightAdditivityFailure("nonzero functional outside an empty character lattice")
            return ()
        return tuple(integral_coordinates(self.basis_rows, functional_coords(functional)))

    def functional(self, exponent: Sequence[Fraction]) -> Functional:
        """Σ_m E_m χ_m; rational exponents are allowed."""
        width = self.n_v * self.spec.width
        acc = [Fraction(0)] * width
        for e, row in zip(exponent, self.basis_rows):
            e = Fraction(e)
            if e:
                acc = [a + e * b for a, b in zip(acc, row)]
        return functional_from_coords(acc, self.spec)

    def conj_matrix(self) -> List[List[int]]:
        """Integer matrix of complex conjugation of characters; row m = exponents of conj(χ_m)."""
        return [list(self.exponents_of(conj_functional(chi))) for chi in self.basis]


def _real_basis(vectors: Sequence[Vector], spec: FieldSpec, dim: int) -> List[Vector]:
    """A basis of real vectors for a conjugation-stable span."""
    candidates: List[Vector] = []
    for v in vectors:
        candidates.append(tuple(c.real_part() for c in v))
        candidates.append(tuple(c.imag_part() for c in v))
    basis = span_basis(candidates, spec, dim)
    if len(basis) != len(vectors):
        raise WeightAdditivityFailure("weight space for a real weight is not conjugation stable")
    return basis


@dataclass(frozen=True)
class WeightSystem:
    g: LieAlgebraPresentation
    ads: AdSMap
    eigenbasis: Matrix
    weights: Tuple[Functional, ...]
    lattice: CharacterLattice
    exponents: Tuple[Exponent, ...]
    sigma: Tuple[int, ...]
    structure: StructureConstants
    base_positions: Tuple[int, ...]

    @property
    def spec(self) -> FieldSpec:
        return self.eigenbasis.spec

    @property
    def char_basis(self) -> Tuple[Functional, ...]:
        return self.lattice.basis

    @property
    def rank(self) -> int:
        return self.lattice.rank

    @property
    def size(self) -> int:
        return len(self.weights)

    def vector(self, i: int) -> Vector:
        return self.eigenbasis.column(i)

    def exponent_sum(self, indices: Sequence[int]) -> Exponent:
        acc = [0] * self.rank
        for i in indices:
            acc = [a + b for a, b in zip(acc, self.exponents[i])]
        return tuple(acc)

    def is_zero_weight(self, i: int) -> bool:
        return all(v.is_zero() for v in self.weights[i])


def check_additivity(structure: StructureConstants, exponents: Sequence[Exponent], names: Optional[Sequence[str]] = None) -> None:
    for (j, k), vec in structure.items():
        expected = tuple(a + b for a, b in zip(exponents[j], exponents[k]))
        for i in vec:
            if exponents[i] != expected:
                label = f"({names[j]}, {names[k]}) -> {names[i]}" if names else f"({j}, {k}) -> {i}"
                raise WeightAdditivityFailure(f"weights are not additive on the bracket {label}")


def build_weight_system(g: LieAlgebraPresentation, ads: AdSMap, fieldspec: Optional[FieldSpec] = None) -> WeightSystem:
    """Joint eigenbasis of ad_s: V basis vectors first, then n_C weight spaces.

    Real weights get real eigenvectors; a non-real weight and its conjugate get
    conjugate eigenvectors, so complex conjugation permutes the eigenbasis.
    """
    target = (fieldspec or g.spec).complexified()
    dim = g.dim
    spaces = joint_weight_decomposition(list(ads.matrices), field=target, dim=dim)
    v_pos = list(g.v_indices)
    zero_weight = tuple(target.zero() for _ in ads.matrices)

    columns: List[Vector] = []
    weights: List[Functional] = []
    sigma: List[int] = []

    for idx in v_pos:
        vec = g.basis_vector(idx, target)
        for m in ads.matrices:
            if not all(c.is_zero() for c in m.coerce(target).apply(vec)):
                raise ValidationFailure("v_condition", f"ad_s does not vanish on {g.basis_names[idx]}")
        columns.append(vec)
        weights.append(zero_weight)
        sigma.append(len(columns) - 1)

    done: Dict[Tuple[FieldElement, ...], List[int]] = {}
    for space in spaces:
        weight = space.weight
        basis = list(space.basis)
        if weight == zero_weight:
            b_mat = Matrix.from_columns(target, basis)
            v_rows = b_mat.submatrix(v_pos, list(range(b_mat.n_cols))) if v_pos else None
            if v_rows is not None:
                coords = kernel(v_rows)
                basis = [b_mat.apply(c) for c in coords]
        if not basis:
            continue
        conj_weight = tuple(c.conj() for c in weight)
        if conj_weight == weight:
            chosen = _real_basis(basis, target, dim)
            start = len(columns)
            for k, vec in enumerate(chosen):
                columns.append(vec)
                weights.append(weight)
                sigma.append(start + k)
            done[weight] = list(range(start, start + len(chosen)))
        elif conj_weight in done:
            partner = done[conj_weight]
            start = len(columns)
            for k, j in enumerate(partner):
                columns.append(vec_conj(columns[j]))
                weights.append(weight)
                sigma.append(j)
                sigma[j] = start + k
            done[weight] = list(range(start, start + len(partner)))
        else:
            start = len(columns)
            for k, vec in enumerate(basis):
                columns.append(vec)
                weights.append(weight)
                sigma.append(-1)
            done[weight] = list(range(start, start + len(basis)))

    if len(columns) != dim or any(s < 0 for s in sigma):
        raise WeightAdditivityFailure("eigenbasis is incomplete or not closed under conjugation")

    eigenbasis = Matrix.from_columns(target, columns)
    n_v = len(ads.matrices)
    lattice = CharacterLattice.generated_by(weights, target, n_v)
    exponents = tuple(lattice.exponents_of(w) for w in weights)
    structure, _ = frame_structure_constants(g, columns)
    check_additivity(structure, exponents)
    logger.debug("build_weight_system: %d eigenvectors, character lattice rank %d", dim, lattice.rank)
    return WeightSystem(
        g=g,
        ads=ads,
        eigenbasis=eigenbasis,
        weights=tuple(weights),
        lattice=lattice,
        exponents=exponents,
        sigma=tuple(sigma),
        structure=structure,
        base_positions=tuple(range(len(v_pos))),
    )


__all__ = [
    "Exponent",
    "functional_coords",
    "functional_from_coords",
    "conj_functional",
    "CharacterLattice",
    "WeightSystem",
    "check_additivity",
    "build_weight_system",
]
