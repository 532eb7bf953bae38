"""Values of characters at lattice elements: exp(modulus + i·angle + 2πi·lift)."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, Mapping, Tuple, Union

from packages.exact.fields import fraction_str, to_fraction
from packages.shared.errors import InvalidInputError

PI_SYMBOL = "pi"


@dataclass(frozen=True)
class LogReal:
    """Q-combination of declared transcendental symbols; symbols are independent over Q."""

    terms: Tuple[Tuple[str, Fraction], ...] = ()

    @classmethod
    def of(cls, mapping: Mapping[str, Any] | None = None) -> "LogReal":
        if not mapping:
            return ZERO_LOG
        cleaned: Dict[str, Fraction] = {}
        for symbol, value in mapping.items():
            if not isinstance(symbol, str) or not symbol:
                raise InvalidInputError(f"log symbol names must be non-empty strings, got {symbol!r}")
            coefficient = to_fraction(value)
            if coefficient:
                cleaned[symbol] = cleaned.get(symbol, Fraction(0)) + coefficient
        return cls(tuple(sorted((s, c) for s, c in cleaned.items() if c)))

    @property
    def coeffs(self) -> Dict[str, Fraction]:
        return dict(self.terms)

    def coefficient(self, symbol: str) -> Fraction:
        for s, c in self.terms:
            if s == symbol:
                return c
        return Fraction(0)

    def symbols(self) -> Tuple[str, ...]:
        return tuple(s for s, _ in self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "LogReal") -> "LogReal":
        if not other.terms:
            return self
        if not self.terms:
            return other
        merged = self.coeffs
        for s, c in other.terms:
            merged[s] = merged.get(s, Fraction(0)) + c
        return LogReal(tuple(sorted((s, c) for s, c in merged.items() if c)))

    def __neg__(self) -> "LogReal":
        return LogReal(tuple((s, -c) for s, c in self.terms))

    def __sub__(self, other: "LogReal") -> "LogReal":
        return self + (-other)

    def scale(self, factor: Union[int, Fraction]) -> "LogReal":
        f = Fraction(factor)
        if not f:
            return ZERO_LOG
        return LogReal(tuple((s, c * f) for s, c in self.terms))

    def without(self, symbol: str) -> "LogReal":
        return LogReal(tuple((s, c) for s, c in self.terms if s != symbol))

    def to_json(self) -> Dict[str, str]:
        return {s: fraction_str(c) for s, c in self.terms}

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{fraction_str(c)}*{s}" for s, c in self.terms)


ZERO_LOG = LogReal()


@dataclass(frozen=True)
class Phase:
    """e^{2πi·lift}. The lift is kept unreduced so rational powers stay single valued."""

    lift: Fraction = Fraction(0)

    @property
    def canonical(self) -> Fraction:
        return self.lift - (self.lift.numerator // self.lift.denominator)

    def is_trivial(self) -> bool:
        return self.lift.denominator == 1

    def __add__(self, other: "Phase") -> "Phase":
        return Phase(self.lift + other.lift)

    def scale(self, factor: Union[int, Fraction]) -> "Phase":
        return Phase(self.lift * Fraction(factor))

    def to_json(self) -> str:
        return fraction_str(self.lift)


@dataclass(frozen=True)
class CharacterValue:
    modulus: LogReal = ZERO_LOG
    phase: Phase = Phase()
    angle: LogReal = ZERO_LOG

    def __mul__(self, other: "CharacterValue") -> "CharacterValue":
        return CharacterValue(self.modulus + other.modulus, self.phase + other.phase, self.angle + other.angle)

    def inverse(self) -> "CharacterValue":
        return cv_pow(self, -1)

    def is_one(self) -> bool:
        return cv_is_one(self)

    def to_json(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {"modulus": self.modulus.to_json(), "phase": self.phase.to_json()}
        if not self.angle.is_zero():
            out["angle"] = self.angle.to_json()
        return out

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> "CharacterValue":
        unknown = set(data) - {"modulus", "phase", "angle"}
        if unknown:
            raise InvalidInputError(f"unknown keys in character value: {sorted(unknown)}")
        return cls(
            modulus=LogReal.of(data.get("modulus") or {}),
            phase=Phase(to_fraction(data.get("phase", "0"))),
            angle=LogReal.of(data.get("angle") or {}),
        )


ONE = CharacterValue()


def cv_pow(v: CharacterValue, e: Union[int, Fraction]) -> CharacterValue:
    """Raise to a rational power at the lift level (no reduction before scaling)."""
    return CharacterValue(v.modulus.scale(e), v.phase.scale(e), v.angle.scale(e))


def cv_is_one(v: CharacterValue) -> bool:
    return v.modulus.is_zero() and v.angle.is_zero() and v.phase.is_trivial()


def lift_denominator(v: CharacterValue) -> int | None:
    """Smallest m with cv_pow(v, m) trivial, or None when no integer power is."""
    if not (v.modulus.is_zero() and v.angle.is_zero()):
        return None
    return v.phase.lift.denominator


__all__ = [
    "PI_SYMBOL",
    "LogReal",
    "ZERO_LOG",
    "Phase",
    "CharacterValue",
    "ONE",
    "cv_pow",
    "cv_is_one",
    "lift_denominator",
]
