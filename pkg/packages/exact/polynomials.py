"""Univariate polynomials over a FieldSpec, computed with sympy's Poly.

Coefficient lists are ascending FieldElements. Polynomials with real
coefficients go to Poly over the real field's domain. Anything else goes to
QQ(γ) with γ = θ + s·i, a primitive element of F(i); the coordinate change
between (θ^k, i·θ^k) and powers of γ is a rational matrix.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import List, Sequence, Tuple

import sympy
from sympy.polys.domains import QQ
from sympy.polys.domains.domain import Domain

from packages.exact.fields import FieldElement, FieldSpec, from_qq, sympy_rational
from packages.shared.errors import FieldDivisionByZeroError, InternalAssertionError

logger = logging.getLogger(__name__)

Poly = List[FieldElement]

_X = sympy.Symbol("x")


@dataclass(frozen=True)
class _GaussianChart:
    domain: Domain
    to_theta: sympy.Matrix  # γ-power coordinates → (θ^k, i·θ^k) coordinates
    to_gamma: sympy.Matrix


@lru_cache(maxsize=16)
def _gaussian_chart(spec: FieldSpec) -> _GaussianChart:
    target = spec.complexified()
    n = target.width
    theta = target.coerce(target.real_field().theta())
    for shift in range(1, n + 2):
        gamma = theta + target.imaginary_unit() * shift
        powers = [target.one()]
        for _ in range(n):
            powers.append(powers[-1] * gamma)
        basis = sympy.Matrix([[sympy_rational(c) for c in p.coeffs] for p in powers[:n]]).T
        if basis.det() != 0:
            break
    else:
        raise InternalAssertionError(f"no primitive element θ + s·i found for {spec.name}")
    tail = basis.LUsolve(sympy.Matrix([sympy_rational(c) for c in powers[n].coeffs]))
    minpoly = sympy.Poly([sympy.Integer(1)] + [-tail[k] for k in reversed(range(n))], _X, domain=QQ)
    domain = QQ.algebraic_field((minpoly, spec.root() + shift * sympy.I))
    logger.debug("F(i) for %s presented as QQ(θ + %d·i)", spec.name, shift)
    return _GaussianChart(domain, basis, basis.inv())


def _encode(p: Sequence[FieldElement], spec: FieldSpec, real: bool) -> sympy.Poly:
    if real:
        rep = [spec.real_field().coerce(c).re for c in reversed(p)]
        return sympy.Poly.from_list(rep, _X, domain=spec.domain)
    chart = _gaussian_chart(spec)
    rep = []
    for c in reversed(p):
        gamma = chart.to_gamma * sympy.Matrix([sympy_rational(v) for v in spec.complexified().coerce(c).coeffs])
        rep.append(chart.domain.new([QQ.from_sympy(v) for v in reversed(list(gamma))]))
    return sympy.Poly.from_list(rep, _X, domain=chart.domain)


def _decode(poly: sympy.Poly, spec: FieldSpec, real: bool) -> Poly:
    rep = poly.rep.to_list()
    if real:
        out = [spec.coerce(spec.real_field().from_parts(c)) for c in reversed(rep)]
        return poly_trim(out)
    chart = _gaussian_chart(spec)
    target = spec.complexified()
    out = []
    for c in reversed(rep):
        ascending = [from_qq(v) for v in reversed(c.to_list())]
        ascending += [Fraction(0)] * (target.width - len(ascending))
        coords = chart.to_theta * sympy.Matrix([sympy_rational(v) for v in ascending])
        out.append(spec.coerce(target.element([Fraction(int(v.p), int(v.q)) for v in coords])))
    return poly_trim(out)


def _lift(polys: Sequence[Sequence[FieldElement]], spec: FieldSpec) -> Tuple[bool, List[sympy.Poly]]:
    real = all(c.is_real() for p in polys for c in p)
    return real, [_encode(poly_trim(p), spec, real) for p in polys]


def poly_trim(p: Sequence[FieldElement]) -> Poly:
    out = list(p)
    while out and out[-1].is_zero():
        out.pop()
    return out


def poly_mul(a: Sequence[FieldElement], b: Sequence[FieldElement], spec: FieldSpec) -> Poly:
    real, (pa, pb) = _lift([a, b], spec)
    return _decode(pa * pb, spec, real)


def poly_divmod(a: Sequence[FieldElement], b: Sequence[FieldElement], spec: FieldSpec) -> Tuple[Poly, Poly]:
    if not poly_trim(b):
        raise FieldDivisionByZeroError("polynomial division by zero")
    real, (pa, pb) = _lift([a, b], spec)
    q, r = pa.div(pb)
    return _decode(q, spec, real), _decode(r, spec, real)


def poly_monic(p: Sequence[FieldElement]) -> Poly:
    p = poly_trim(p)
    if not p:
        return p
    spec = p[0].spec
    real, (pp,) = _lift([p], spec)
    return _decode(pp.monic(), spec, real)


def poly_gcd(a: Sequence[FieldElement], b: Sequence[FieldElement], spec: FieldSpec) -> Poly:
    real, (pa, pb) = _lift([a, b], spec)
    g = pa.gcd(pb)
    return _decode(g if g.is_zero else g.monic(), spec, real)


def poly_derivative(p: Sequence[FieldElement]) -> Poly:
    p = poly_trim(p)
    if not p:
        return p
    spec = p[0].spec
    real, (pp,) = _lift([p], spec)
    return _decode(pp.diff(_X), spec, real)


def squarefree_part(p: Sequence[FieldElement], spec: FieldSpec) -> Poly:
    """Monic; its roots are the distinct roots of p."""
    p = poly_trim(p)
    if not p:
        return p
    real, (pp,) = _lift([p], spec)
    return _decode(pp.sqf_part().monic(), spec, real)


def factor_real(p: Sequence[FieldElement], spec: FieldSpec) -> List[Poly]:
    """Monic irreducible factors over the real field, without multiplicities."""
    real = spec.real_field()
    _, factors = _encode(poly_trim(p), real, True).factor_list()
    return [_decode(f.monic(), real, True) for f, _ in factors if f.degree() >= 1]


def poly_to_sympy(p: Sequence[FieldElement], var: sympy.Symbol) -> sympy.Expr:
    return sympy.expand(sum((c.to_sympy() * var**k for k, c in enumerate(p)), sympy.Integer(0)))


__all__ = [
    "Poly",
    "poly_trim",
    "poly_mul",
    "poly_divmod",
    "poly_monic",
    "poly_gcd",
    "poly_derivative",
    "squarefree_part",
    "factor_real",
    "poly_to_sympy",
]
