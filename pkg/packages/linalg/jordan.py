from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import List, Sequence

from packages.exact.fields import FieldElement
from packages.exact.polynomials import poly_derivative, poly_trim, squarefree_part
from packages.linalg.matrix import Matrix, inverse
from packages.shared.errors import InternalAssertionError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class JordanPair:
    s: Matrix
    n: Matrix


def characteristic_polynomial(m: Matrix) -> List[FieldElement]:
    """Faddeev–LeVerrier; ascending coefficients of det(xI − m), monic."""
    m.require_square()
    spec = m.spec
    size = m.n_rows
    coeffs = [spec.zero()] * (size + 1)
    coeffs[size] = spec.one()
    ident = Matrix.identity(spec, size)
    current = Matrix.zeros(spec, size, size)
    for k in range(1, size + 1):
        current = m @ current + ident.scale(coeffs[size - k + 1])
        coeffs[size - k] = -(m @ current).trace() / k
    return coeffs


def evaluate_at_matrix(poly: Sequence[FieldElement], m: Matrix) -> Matrix:
    m.require_square()
    result = Matrix.zeros(m.spec, m.n_rows, m.n_cols)
    ident = Matrix.identity(m.spec, m.n_rows)
    for c in reversed(list(poly)):
        result = result @ m + ident.scale(m.spec.coerce(c))
    return result


def is_nilpotent(m: Matrix) -> bool:
    m.require_square()
    if m.n_rows == 0:
        return True
    return m.power(m.n_cols).is_zero()


def is_semisimple(m: Matrix) -> bool:
    """Minimal polynomial squarefree, i.e. the squarefree part of the char poly kills m."""
    m.require_square()
    if m.n_rows == 0:
        return True
    g = squarefree_part(characteristic_polynomial(m), m.spec)
    return evaluate_at_matrix(g, m).is_zero()


def jordan_chevalley(m: Matrix) -> JordanPair:
    """Additive Jordan decomposition by Newton iteration on the squarefree part g.

    x ← x − g(x)·g'(x)⁻¹ starting from x = m; every iterate is a polynomial in m
    and the iteration stays inside the base field.
    """
    m.require_square()
    spec = m.spec
    size = m.n_rows
    if size == 0:
        return JordanPair(m, m)
    g = squarefree_part(characteristic_polynomial(m), spec)
    dg = poly_derivative(g)
    x = m
    steps = 0
    while True:
        gx = evaluate_at_matrix(g, x)
        if gx.is_zero():
            break
        dgx = evaluate_at_matrix(poly_trim(dg), x)
        x = x - gx @ inverse(dgx)
        steps += 1
        if steps > size + 2:
            raise InternalAssertionError("Jordan–Chevalley Newton iteration did not converge")
    logger.debug("jordan_chevalley: %d Newton steps on %dx%d", steps, size, size)
    return JordanPair(x, m - x)


__all__ = [
    "JordanPair",
    "characteristic_polynomial",
    "evaluate_at_matrix",
    "is_nilpotent",
    "is_semisimple",
    "jordan_chevalley",
]
