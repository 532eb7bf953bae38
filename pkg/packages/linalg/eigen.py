"""Splitting characteristic polynomials over the declared field.

Only polynomials with coefficients in the real field F are split. Roots are
returned in F, or in F(i) for irreducible quadratic factors whose discriminant
is minus a square of F. Anything else is reported, never auto-extended.
"""
from __future__ import annotations

import logging
import math
from fractions import Fraction
from typing import List, Sequence, Tuple

import sympy
from sympy.polys.polyerrors import BasePolynomialError

from packages.exact.fields import FieldElement, FieldSpec
from packages.exact.polynomials import factor_real, poly_to_sympy, squarefree_part
from packages.shared.errors import EigenvalueOutsideFieldError, FieldMismatchError

logger = logging.getLogger(__name__)

_X = sympy.Symbol("x")


def factor_over_field(poly: Sequence[FieldElement], spec: FieldSpec) -> List[List[FieldElement]]:
    """Monic irreducible factors (ascending coefficients) of a polynomial over the real field."""
    real = spec.real_field()
    coeffs = [real.coerce(c) for c in poly]
    try:
        return factor_real(coeffs, real)
    except (BasePolynomialError, NotImplementedError) as exc:  # pragma: no cover - depends on sympy's algebraic field support
        logger.warning("factorization over %s failed: %s", real.name, exc)
        raise EigenvalueOutsideFieldError(str(poly_to_sympy(coeffs, _X))) from exc


def _render(factor: Sequence[FieldElement]) -> str:
    return str(poly_to_sympy(factor, _X))


def split_roots(poly: Sequence[FieldElement], target: FieldSpec) -> List[FieldElement]:
    """Distinct roots in `target` of a polynomial with real coefficients, canonically ordered."""
    real = target.real_field()
    if any(not c.is_real() for c in poly):
        raise FieldMismatchError("split_roots expects a polynomial with coefficients in the real field")
    g = squarefree_part([real.coerce(c) for c in poly], real)
    roots: List[FieldElement] = []
    for factor in factor_over_field(g, real):
        if len(factor) == 2:
            roots.append(target.coerce(-factor[0]))
            continue
        if len(factor) == 3 and target.i_adjoined:
            c, b = factor[0], factor[1]
            # x² + bx + c has roots (−b ± i·s)/2 with s² = 4c − b²
            d = c * 4 - b * b
            sq = [r for r in _square_roots(d, real)]
            if sq:
                s = sq[0]
                i = target.imaginary_unit()
                base = target.coerce(-b) / 2
                roots.append(base + i * target.coerce(s) / 2)
                roots.append(base - i * target.coerce(s) / 2)
                continue
        raise EigenvalueOutsideFieldError(_render(factor))
    return sorted(roots, key=lambda r: r.coeffs)


def _square_roots(value: FieldElement, real: FieldSpec) -> List[FieldElement]:
    if value.is_zero():
        return [real.zero()]
    if real.degree == 1:
        q = value.to_fraction()
        if q < 0:
            return []
        num, den = _isqrt(q.numerator), _isqrt(q.denominator)
        if num is None or den is None:
            return []
        return [real.rational(Fraction(num, den))]
    factors = factor_over_field([-value, real.zero(), real.one()], real)
    linear = [f for f in factors if len(f) == 2]
    return [-f[0] for f in linear]


def _isqrt(n: int) -> int | None:
    r = math.isqrt(n)
    return r if r * r == n else None


def root_structure(poly: Sequence[FieldElement], spec: FieldSpec) -> Tuple[List[List[FieldElement]], bool]:
    """Irreducible factors of the squarefree part and whether all of them are linear."""
    real = spec.real_field()
    g = squarefree_part([real.coerce(c) for c in poly], real)
    factors = factor_over_field(g, real)
    return factors, all(len(f) == 2 for f in factors)


__all__ = [
    "factor_over_field",
    "split_roots",
    "root_structure",
]
