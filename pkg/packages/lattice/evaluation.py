"""Lattice data and the values of characters at lattice generators.

Γ enters every computation only through the values of characters at a finite
set of generators of its image in G/N. Two input forms are supported: the
log-coordinates of each generator along V, or explicitly declared characters
with their values.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Dict, List, Optional, Sequence, Tuple

from packages.exact.characters import ONE, PI_SYMBOL, CharacterValue, LogReal, Phase, cv_is_one, cv_pow, lift_denominator
from packages.exact.fields import RATIONALS
from packages.lattice.types import Functional
from packages.lattice.weight_system import CharacterLattice, functional_coords
from packages.linalg.matrix import Matrix, solve
from packages.shared.errors import InvalidInputError, IrrationalPhaseError, UnknownSymbolError

logger = logging.getLogger(__name__)

UNIT_SYMBOL = "1"


@dataclass(frozen=True)
class DeclaredCharacter:
    name: str
    functional: Functional
    values: Tuple[CharacterValue, ...]


@dataclass(frozen=True)
class LatticeData:
    """Generators of the image of Γ in G/N, described by coordinates or by declared characters."""

    generator_names: Tuple[str, ...]
    coordinates: Optional[Tuple[Tuple[LogReal, ...], ...]] = None
    characters: Tuple[DeclaredCharacter, ...] = ()
    symbols: Tuple[str, ...] = ()

    def __post_init__(self) -> None:
        known = set(self.symbols) | {PI_SYMBOL, UNIT_SYMBOL}
        used: List[str] = []
        for row in self.coordinates or ():
            for c in row:
                used.extend(c.symbols())
        for ch in self.characters:
            if len(ch.values) != len(self.generator_names):
                raise InvalidInputError(f"character {ch.name} needs one value per generator")
            for v in ch.values:
                used.extend(v.modulus.symbols() + v.angle.symbols())
        unknown = sorted(set(used) - known)
        if unknown:
            raise UnknownSymbolError(f"undeclared symbols: {', '.join(unknown)}")
        if self.coordinates is not None and len(self.coordinates) != len(self.generator_names):
            raise InvalidInputError("lattice coordinates need one row per generator")
        if self.coordinates is None and not self.characters and self.generator_names:
            raise InvalidInputError("lattice data needs either generator coordinates or declared characters")

    def scaled(self, m: int) -> "LatticeData":
        """Data for the finite-index subgroup generated by the m-th powers of the generators."""
        if m == 1:
            return self
        coords = None
        if self.coordinates is not None:
            coords = tuple(tuple(c.scale(m) for c in row) for row in self.coordinates)
        chars = tuple(DeclaredCharacter(c.name, c.functional, tuple(cv_pow(v, m) for v in c.values)) for c in self.characters)
        return LatticeData(self.generator_names, coords, chars, self.symbols)

    def evaluate(self, functional: Functional) -> Tuple[CharacterValue, ...]:
        """Value of exp(functional) at every generator."""
        if all(v.is_zero() for v in functional):
            return tuple(ONE for _ in self.generator_names)
        if self.coordinates is not None:
            return tuple(_evaluate_coordinates(functional, row) for row in self.coordinates)
        return self._evaluate_declared(functional)

    def _evaluate_declared(self, functional: Functional) -> Tuple[CharacterValue, ...]:
        if not self.characters:
            raise InvalidInputError("no declared characters to express a functional")
        columns = [[RATIONALS.rational(c) for c in functional_coords(ch.functional)] for ch in self.characters]
        target = [RATIONALS.rational(c) for c in functional_coords(functional)]
        if any(len(col) != len(target) for col in columns):
            raise InvalidInputError("declared characters do not match the dimension of V")
        solution = solve(Matrix.from_columns(RATIONALS, columns), target)
        if solution is None:
            rendered = ", ".join(str(v) for v in functional)
            raise InvalidInputError(f"functional ({rendered}) is not a rational combination of the declared characters")
        out = []
        for j in range(len(self.generator_names)):
            acc = ONE
            for x, ch in zip(solution, self.characters):
                e = x.to_fraction()
                if e:
                    acc = acc * cv_pow(ch.values[j], e)
            out.append(acc)
        return tuple(out)


def _evaluate_coordinates(functional: Functional, coords: Sequence[LogReal]) -> CharacterValue:
    modulus = LogReal()
    imaginary = LogReal()
    for value, c in zip(functional, coords):
        if c.is_zero() or value.is_zero():
            continue
        re, im = value.real_part(), value.imag_part()
        if not (re.is_rational() and im.is_rational()):
            raise InvalidInputError(f"coordinate form needs rational weight values, got {value}")
        modulus = modulus + c.scale(re.to_fraction())
        imaginary = imaginary + c.scale(im.to_fraction())
    if imaginary.coefficient(UNIT_SYMBOL):
        rational = imaginary.coefficient(UNIT_SYMBOL)
        raise IrrationalPhaseError(
            f"phase exp(i·{rational}) is not a rational multiple of 2π; declare a symbol (e.g. \"t\" in \"symbols\")"
            " and give the coordinate as {\"t\": ...} so the phase is carried as an angle",
            detail={"phase": str(rational)},
        )
    lift = imaginary.coefficient(PI_SYMBOL) / 2
    return CharacterValue(modulus, Phase(lift), imaginary.without(PI_SYMBOL))


@dataclass(frozen=True)
class LatticeEvaluation:
    """values[j][m] = χ_m(g_j) for the basis characters of a CharacterLattice."""

    generator_names: Tuple[str, ...]
    values: Tuple[Tuple[CharacterValue, ...], ...]

    @property
    def rank(self) -> int:
        return len(self.values[0]) if self.values else 0

    def at(self, exponent: Sequence[Fraction]) -> Tuple[CharacterValue, ...]:
        out = []
        for row in self.values:
            acc = ONE
            for e, v in zip(exponent, row):
                if e:
                    acc = acc * cv_pow(v, e)
            out.append(acc)
        return tuple(out)

    def is_trivial(self, exponent: Sequence[Fraction]) -> bool:
        return all(cv_is_one(v) for v in self.at(exponent))

    def index_scale(self, exponent: Sequence[Fraction]) -> Optional[int]:
        """Smallest m ≥ 1 with the character trivial on the m-th powers, or None."""
        m = 1
        for v in self.at(exponent):
            d = lift_denominator(v)
            if d is None:
                return None
            m = lcm(m, d)
        return m

    def scaled(self, m: int) -> "LatticeEvaluation":
        return LatticeEvaluation(self.generator_names, tuple(tuple(cv_pow(v, m) for v in row) for row in self.values))

    def linear_rows(self) -> List[List[Fraction]]:
        """Rows whose common kernel is {E : modulus and angle of χ^E vanish at every generator}."""
        rows: List[List[Fraction]] = []
        for row in self.values:
            symbols = sorted({s for v in row for s in v.modulus.symbols()})
            for s in symbols:
                rows.append([v.modulus.coefficient(s) for v in row])
            symbols = sorted({s for v in row for s in v.angle.symbols()})
            for s in symbols:
                rows.append([v.angle.coefficient(s) for v in row])
        return rows

    def to_json(self) -> Dict[str, List[Dict]]:
        return {name: [v.to_json() for v in row] for name, row in zip(self.generator_names, self.values)}


def evaluate_lattice(lattice: CharacterLattice, data: LatticeData) -> LatticeEvaluation:
    per_char = [data.evaluate(chi) for chi in lattice.basis]
    values = tuple(tuple(per_char[m][j] for m in range(lattice.rank)) for j in range(len(data.generator_names)))
    logger.debug("evaluate_lattice: %d generators x %d characters", len(data.generator_names), lattice.rank)
    return LatticeEvaluation(data.generator_names, values)


def restrict_trivial(exponent: Sequence[Fraction], lat: LatticeEvaluation) -> bool:
    """True iff χ^E is one at every generator."""
    if lat.values and len(exponent) != lat.rank:
        raise InvalidInputError(f"exponent has length {len(exponent)}, lattice rank is {lat.rank}")
    return lat.is_trivial(exponent)


__all__ = [
    "UNIT_SYMBOL",
    "DeclaredCharacter",
    "LatticeData",
    "LatticeEvaluation",
    "evaluate_lattice",
    "restrict_trivial",
]
