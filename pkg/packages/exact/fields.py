"""Exact number fields Q(θ) and their complexifications Q(θ)(i).

Arithmetic runs in sympy's domains: QQ for degree one, otherwise the
AlgebraicField built from (min_poly, θ), whose elements are ANPs in the power
basis 1, θ, …, θ^{d-1}. When √−1 is adjoined an element is a pair of such
parts, real first. `coeffs` exposes the ascending rational coordinates, real
block first.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Any, Iterable, List, Optional, Sequence, Tuple, Union

import sympy
from sympy.polys.domains import QQ
from sympy.polys.domains.domain import Domain
from sympy.polys.polyerrors import NotInvertible

from packages.shared.errors import FieldDivisionByZeroError, FieldMismatchError, InvalidInputError

logger = logging.getLogger(__name__)

Rational = Union[int, Fraction]
Part = Any  # QQ.dtype in degree one, ANP otherwise

_X = sympy.Symbol("x")


def to_fraction(value: Any) -> Fraction:
    """Parse "p/q", ints and Fractions; floats are refused."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise InvalidInputError(f"expected a rational, got boolean {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InvalidInputError(f"not a rational number: {value!r}") from exc
    raise InvalidInputError(f"expected a rational string such as \"3/2\", got {type(value).__name__}")


def fraction_str(value: Fraction) -> str:
    return str(value)


def qq(value: Rational) -> Any:
    value = Fraction(value)
    return QQ(value.numerator, value.denominator)


def from_qq(value: Any) -> Fraction:
    return Fraction(int(value.numerator), int(value.denominator))


def sympy_rational(value: Fraction) -> sympy.Rational:
    return sympy.Rational(value.numerator, value.denominator)


@lru_cache(maxsize=32)
def field_root(min_poly: Tuple[Fraction, ...]) -> sympy.Expr:
    """A concrete root standing for θ: radicals for quadratics, CRootOf beyond."""
    coeffs = [sympy_rational(c) for c in min_poly]
    if len(coeffs) == 2:
        return -coeffs[1] / coeffs[0]
    if len(coeffs) == 3:
        _, p, q = coeffs
        return (-p + sympy.sqrt(p**2 - 4 * q)) / 2
    return sympy.CRootOf(sympy.Poly(coeffs, _X), 0)


@lru_cache(maxsize=32)
def number_domain(min_poly: Tuple[Fraction, ...]) -> Domain:
    """QQ for degree one, otherwise QQ(θ) with θ's power basis as the ANP basis."""
    if len(min_poly) <= 2:
        return QQ
    poly = sympy.Poly([sympy_rational(c) for c in min_poly], _X, domain=QQ)
    return QQ.algebraic_field((poly, field_root(min_poly)))


def _lift(domain: Domain, coords: Sequence[Fraction]) -> Part:
    if domain.is_QQ:
        return qq(coords[0])
    return domain.new([qq(c) for c in reversed(coords)])


def _coords(domain: Domain, part: Part, degree: int) -> Tuple[Fraction, ...]:
    if domain.is_QQ:
        return (from_qq(part),)
    ascending = [from_qq(c) for c in reversed(part.to_list())]
    return tuple(ascending) + (Fraction(0),) * (degree - len(ascending))


def _is_ground(domain: Domain, part: Part) -> bool:
    return domain.is_QQ or len(part.to_list()) <= 1


def _invert(domain: Domain, part: Part) -> Part:
    try:
        return domain.one / part
    except (ZeroDivisionError, NotInvertible) as exc:
        raise FieldDivisionByZeroError("element is not invertible; is min_poly irreducible?") from exc


@dataclass(frozen=True)
class FieldSpec:
    name: str
    min_poly: Tuple[Fraction, ...]  # leading coefficient first
    embedding_hint: Optional[str] = field(default=None, compare=False)
    i_adjoined: bool = False
    @property
    def degree(self) -> int:
        return len(self.min_poly) - 1

    @property
    def width(self) -> int:
        return self.degree * (2 if self.i_adjoined else 1)

    @cached_property
    def domain(self) -> Domain:
        """The sympy domain holding real parts."""
        return number_domain(self.min_poly)

    def root(self) -> sympy.Expr:
        return field_root(self.min_poly)

    def real_field(self) -> "FieldSpec":
        if not self.i_adjoined:
            return self
        return FieldSpec(self.name, self.min_poly, self.embedding_hint, False)

    def complexified(self) -> "FieldSpec":
        if self.i_adjoined:
            return self
        return FieldSpec(self.name, self.min_poly, self.embedding_hint, True)

    def _make(self, re: Part, im: Optional[Part] = None) -> "FieldElement":
        if self.i_adjoined and im is None:
            im = self.domain.zero
        return FieldElement(self, re, im if self.i_adjoined else None)

    def zero(self) -> "FieldElement":
        return self._make(self.domain.zero)

    def one(self) -> "FieldElement":
        return self._make(self.domain.one)

    def rational(self, value: Rational) -> "FieldElement":
        return self._make(_lift(self.domain, [Fraction(value)]))

    def theta(self) -> "FieldElement":
        """The generator θ (reduced: for degree 1 this is the rational root)."""
        if self.degree == 1:
            return self.rational(-self.min_poly[1])
        return self._make(self.domain.unit)

    def imaginary_unit(self) -> "FieldElement":
        if not self.i_adjoined:
            raise FieldMismatchError(f"field {self.name} has no imaginary unit; set i_adjoined")
        return self._make(self.domain.zero, self.domain.one)

    def element(self, coeffs: Sequence[Rational]) -> "FieldElement":
        values = tuple(Fraction(c) for c in coeffs)
        if len(values) == self.degree and self.i_adjoined:
            values = values + (Fraction(0),) * self.degree
        if len(values) != self.width:
            raise FieldMismatchError(f"field {self.name} expects {self.width} coordinates, got {len(values)}")
        d = self.degree
        re = _lift(self.domain, values[:d])
        if not self.i_adjoined:
            return self._make(re)
        return self._make(re, _lift(self.domain, values[d:]))

    def complex(self, re: "FieldElement", im: "FieldElement") -> "FieldElement":
        """re + i·im for real re, im (elements of the real field or real elements here)."""
        target = self.complexified()
        return target._make(re.re, im.re)

    def from_parts(self, re: Part, im: Optional[Part] = None) -> "FieldElement":
        """Wrap elements of `domain`; used when sympy hands results back."""
        return self._make(self.domain.convert(re), None if im is None else self.domain.convert(im))

    def parse(self, value: Any) -> "FieldElement":
        if isinstance(value, FieldElement):
            return self.coerce(value)
        if isinstance(value, (list, tuple)):
            return self.element([to_fraction(v) for v in value])
        return self.rational(to_fraction(value))

    def coerce(self, value: Union["FieldElement", Rational]) -> "FieldElement":
        if isinstance(value, FieldElement):
            if value.spec is self or value.spec == self:
                return value
            if value.spec.min_poly == self.min_poly and self.i_adjoined and not value.spec.i_adjoined:
                return self._make(value.re)
            if value.spec.min_poly == self.min_poly and value.spec.i_adjoined and not self.i_adjoined:
                if value.im:
                    raise FieldMismatchError(f"cannot coerce non-real {value} into {self.name}")
                return self._make(value.re)
            raise FieldMismatchError(f"element of {value.spec.name} used where {self.name} is expected")
        return self.rational(value)


RATIONALS = FieldSpec("Q", (Fraction(1), Fraction(0)))
GAUSSIAN_RATIONALS = FieldSpec("Q", (Fraction(1), Fraction(0)), i_adjoined=True)


class FieldElement:
    """Immutable exact scalar in a FieldSpec: re + i·im with parts in spec.domain."""

    __slots__ = ("spec", "re", "im")

    def __init__(self, spec: FieldSpec, re: Part, im: Optional[Part] = None) -> None:
        object.__setattr__(self, "spec", spec)
        object.__setattr__(self, "re", re)
        object.__setattr__(self, "im", im)

    def __setattr__(self, name: str, value: Any) -> None:
        raise AttributeError("FieldElement is immutable")

    def _new(self, re: Part, im: Optional[Part]) -> "FieldElement":
        return FieldElement(self.spec, re, im)

    def _other(self, other: Union["FieldElement", Rational]) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.spec is self.spec or other.spec == self.spec:
                return other
            raise FieldMismatchError(f"{other.spec.name}{'(i)' if other.spec.i_adjoined else ''} vs {self.spec.name}{'(i)' if self.spec.i_adjoined else ''}")
        if isinstance(other, (int, Fraction)):
            return self.spec.rational(other)
        return NotImplemented  # type: ignore[return-value]

    # arithmetic

    def __add__(self, other: Union["FieldElement", Rational]) -> "FieldElement":
        o = self._other(other)
        if o is NotImplemented:
            return NotImplemented
        return self._new(self.re + o.re, None if self.im is None else self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other: Union["FieldElement", Rational]) -> "FieldElement":
        o = self._other(other)
        if o is NotImplemented:
            return NotImplemented
        return self._new(self.re - o.re, None if self.im is None else self.im - o.im)

    def __rsub__(self, other: Union["FieldElement", Rational]) -> "FieldElement":
        return (-self) + other

    def __neg__(self) -> "FieldElement":
        return self._new(-self.re, None if self.im is None else -self.im)

    def __mul__(self, other: Union["FieldElement", Rational]) -> "FieldElement":
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            c = qq(other)
            return self._new(self.re * c, None if self.im is None else self.im * c)
        o = self._other(other)
        if o is NotImplemented:
            return NotImplemented
        if self.im is None:
            return self._new(self.re * o.re, None)
        a, b, c, e = self.re, self.im, o.re, o.im
        return self._new(a * c - b * e, a * e + b * c)

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise FieldDivisionByZeroError("division by zero in exact field")
        domain = self.spec.domain
        if self.im is None:
            return self._new(_invert(domain, self.re), None)
        norm = self.re * self.re + self.im * self.im
        if not norm:
            raise FieldDivisionByZeroError("a² + b² vanished; the real field must not contain √−1")
        inv = _invert(domain, norm)
        return self._new(self.re * inv, -(self.im * inv))

    def __truediv__(self, other: Union["FieldElement", Rational]) -> "FieldElement":
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            if other == 0:
                raise FieldDivisionByZeroError("division by zero in exact field")
            return self * (1 / Fraction(other))
        o = self._other(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other: Union["FieldElement", Rational]) -> "FieldElement":
        return self.inverse() * other

    def __pow__(self, exponent: int) -> "FieldElement":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = self.spec.one()
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    # predicates and parts

    def is_zero(self) -> bool:
        return not self.re and not self.im

    def __bool__(self) -> bool:
        return not self.is_zero()

    def is_rational(self) -> bool:
        return self.is_real() and _is_ground(self.spec.domain, self.re)

    def is_real(self) -> bool:
        return not self.im

    def is_imaginary(self) -> bool:
        """True for elements i·r with r real (zero included)."""
        return not self.re

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise InvalidInputError(f"{self} is not rational")
        return self.real_coords()[0]

    def conj(self) -> "FieldElement":
        if self.im is None:
            return self
        return self._new(self.re, -self.im)

    def real_part(self) -> "FieldElement":
        if self.im is None:
            return self
        return self._new(self.re, self.spec.domain.zero)

    def imag_part(self) -> "FieldElement":
        """The real number b in a + ib, as an element of the same field."""
        if self.im is None:
            return self.spec.zero()
        return self._new(self.im, self.spec.domain.zero)

    def real_coords(self) -> Tuple[Fraction, ...]:
        return _coords(self.spec.domain, self.re, self.spec.degree)

    def imag_coords(self) -> Tuple[Fraction, ...]:
        if self.im is None:
            return (Fraction(0),) * self.spec.degree
        return _coords(self.spec.domain, self.im, self.spec.degree)

    @property
    def coeffs(self) -> Tuple[Fraction, ...]:
        if self.im is None:
            return self.real_coords()
        return self.real_coords() + self.imag_coords()

    # comparisons and hashing

    def __eq__(self, other: object) -> bool:
        if isinstance(other, FieldElement):
            if not (other.spec is self.spec or other.spec == self.spec):
                return False
            return bool(self.re == other.re) and (self.im is None or bool(self.im == other.im))
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.real_coords()[0] == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.spec.min_poly, self.spec.i_adjoined, self.coeffs))

    # rendering

    def to_sympy(self) -> sympy.Expr:
        theta = sympy.Symbol("theta")
        re = sum((sympy_rational(c) * theta**k for k, c in enumerate(self.real_coords())), sympy.Integer(0))
        im = sum((sympy_rational(c) * theta**k for k, c in enumerate(self.imag_coords())), sympy.Integer(0))
        return sympy.expand(re + sympy.I * im)

    def __str__(self) -> str:
        if self.is_rational():
            return fraction_str(self.to_fraction())
        return str(self.to_sympy())

    def __repr__(self) -> str:
        return f"FieldElement({self})"

    def to_json(self) -> Union[str, List[str]]:
        if self.is_rational():
            return fraction_str(self.to_fraction())
        return [fraction_str(c) for c in self.coeffs]


def fe_arith(a: FieldElement, b: FieldElement, op: str) -> FieldElement:
    if not (a.spec is b.spec or a.spec == b.spec):
        raise FieldMismatchError(f"cannot combine {a.spec.name} and {b.spec.name}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown field operation: {op}")


def check_field_spec(spec: FieldSpec) -> None:
    """Irreducibility and shape checks done when a document declares its field."""
    if spec.degree < 1:
        raise InvalidInputError("min_poly must have degree at least 1")
    if spec.min_poly[0] != 1:
        raise InvalidInputError("min_poly must be monic (leading coefficient first)")
    if spec.degree > 1 and spec.min_poly[-1] == 0:
        raise InvalidInputError("min_poly must have nonzero constant term")
    if spec.degree == 1:
        return
    poly = sympy.Poly([sympy_rational(c) for c in spec.min_poly], _X, domain=QQ)
    if spec.degree > 4:
        logger.warning("irreducibility of degree-%d min_poly for %s relies on sympy factorization", spec.degree, spec.name)
    try:
        irreducible = poly.is_irreducible
    except Exception as exc:  # pragma: no cover - sympy failures are environment dependent
        logger.warning("could not certify irreducibility of %s: %s", spec.name, exc)
        return
    if not irreducible:
        raise InvalidInputError(f"min_poly of field {spec.name} is reducible over Q")
    if spec.i_adjoined and spec.degree % 2 == 0:
        real_roots = sympy.real_roots(poly)
        if not real_roots:
            logger.warning("field %s has no real embedding; adjoining i may collapse", spec.name)


def make_field(name: str, min_poly: Iterable[Any], *, i_adjoined: bool = False, embedding_hint: Optional[str] = None) -> FieldSpec:
    spec = FieldSpec(name, tuple(to_fraction(c) for c in min_poly), embedding_hint, i_adjoined)
    check_field_spec(spec)
    return spec


__all__ = [
    "FieldSpec",
    "FieldElement",
    "RATIONALS",
    "GAUSSIAN_RATIONALS",
    "fe_arith",
    "make_field",
    "check_field_spec",
    "number_domain",
    "field_root",
    "to_fraction",
    "fraction_str",
    "qq",
    "from_qq",
    "sympy_rational",
]
