"""The exterior algebra on ω_i = α_i x_i and its Γ-invariant part A_Γ.

Generators follow the eigenbasis of the weight system, V positions first; the
generator tags hold the exponent vectors E_i, so the character of a monomial
is the sum of its generator tags.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Dict, Sequence, Tuple

from packages.exact.fields import FieldElement
from packages.lattice.evaluation import LatticeEvaluation
from packages.lattice.weight_system import Exponent, WeightSystem
from packages.lie.cochains import CochainComplex, GeneratorDifferential, Monomial, build_complex
from packages.lie.presentation import LieAlgebraPresentation
from packages.shared.errors import NotClosedUnderDifferentialError, WeightAdditivityFailure

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TwistedMonomial:
    index_set: Monomial
    char_exponent: Exponent

    @classmethod
    def of(cls, index_set: Sequence[int], exponents: Sequence[Exponent]) -> "TwistedMonomial":
        rank = len(exponents[0]) if exponents else 0
        acc = [0] * rank
        for i in index_set:
            acc = [a + b for a, b in zip(acc, exponents[i])]
        return cls(tuple(index_set), tuple(acc))


def _accumulate(slot: Dict[Monomial, FieldElement], key: Monomial, value: FieldElement) -> None:
    total = slot[key] + value if key in slot else value
    if total.is_zero():
        slot.pop(key, None)
    else:
        slot[key] = total


def nilshadow_generator_differential(ws: WeightSystem) -> GeneratorDifferential:
    """dω_i = Σ_l a_i(A_l) ω_l ∧ ω_i − Σ_{j<k} c^i_{jk} ω_j ∧ ω_k."""
    n = ws.size
    diff: GeneratorDifferential = {i: {} for i in range(n)}
    for i in range(n):
        for pos, l in enumerate(ws.base_positions):
            value = ws.weights[i][pos]
            if value.is_zero():
                continue
            if l >= i:
                raise WeightAdditivityFailure(f"eigenvector {i} carries a nonzero weight but precedes the V block")
            _accumulate(diff[i], (l, i), value)
    for (j, k), vec in ws.structure.items():
        for i, value in vec.items():
            _accumulate(diff[i], (j, k), -value)
    return diff


def nilshadow_complex(g: LieAlgebraPresentation, ws: WeightSystem) -> CochainComplex:
    if ws.g is not g and ws.g != g:
        raise WeightAdditivityFailure("weight system was built for a different algebra")
    diff = nilshadow_generator_differential(ws)
    complex_ = build_complex(ws.spec, ws.size, diff)
    complex_.tags = {(i,): e for i, e in enumerate(ws.exponents)}
    logger.debug("nilshadow_complex: %d generators", ws.size)
    return complex_


def generator_exponents(full: CochainComplex) -> Tuple[Exponent, ...]:
    n = len(full.bases) - 1
    return tuple(full.tags[(i,)] for i in range(n))


def a_gamma_subcomplex(full: CochainComplex, lat: LatticeEvaluation) -> CochainComplex:
    """Span of the monomials whose character is trivial on Γ."""
    exponents = generator_exponents(full)
    n = len(exponents)

    def admit(m: Monomial) -> bool:
        return lat.is_trivial(TwistedMonomial.of(m, exponents).char_exponent)

    sub = build_complex(full.spec, n, full.generator_differential, admit=admit, closure_error=NotClosedUnderDifferentialError)
    sub.tags = dict(full.tags)
    logger.debug("a_gamma_subcomplex: %d of %d monomials admitted", sum(sub.dims), sum(full.dims))
    return sub


def twisted_monomials(c: CochainComplex) -> Tuple[TwistedMonomial, ...]:
    exponents = generator_exponents(c)
    return tuple(TwistedMonomial.of(m, exponents) for layer in c.bases for m in layer)


__all__ = [
    "TwistedMonomial",
    "nilshadow_generator_differential",
    "nilshadow_complex",
    "generator_exponents",
    "a_gamma_subcomplex",
    "twisted_monomials",
]
