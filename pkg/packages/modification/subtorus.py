"""Choosing the subtorus S from lattice data.

K̄ ⊂ Z^r is a saturated sublattice of exponent vectors; the projector P maps
exponents onto Q·K̄ along a complement that is stable under complex
conjugation of characters, so modified brackets stay real.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import lcm
from typing import Dict, List, Optional, Sequence, Set, Tuple

from packages.exact.fields import RATIONALS
from packages.lattice.evaluation import LatticeEvaluation
from packages.lattice.weight_system import CharacterLattice, Exponent, WeightSystem
from packages.linalg.lattices import integer_kernel, lattice_basis, rational_kernel, saturate
from packages.linalg.matrix import EchelonBasis, Matrix, inverse
from packages.shared.config import settings
from packages.shared.errors import ExplicitSublatticeNotTrivialOnGammaError, InvalidInputError

logger = logging.getLogger(__name__)


class SubtorusMode(Enum):
    AUTO = "auto"
    CLOSURE = "closure"
    FULL = "full"
    EXPLICIT = "explicit"


@dataclass(frozen=True)
class SubtorusChoice:
    mode: SubtorusMode
    trivial_sublattice: Tuple[Tuple[int, ...], ...]
    complement: Tuple[Tuple[Fraction, ...], ...]
    projector: Tuple[Tuple[Fraction, ...], ...]
    index_scale: Optional[int] = 1

    @property
    def rank(self) -> int:
        return len(self.trivial_sublattice)

    @property
    def ambient_rank(self) -> int:
        return len(self.projector)

    def is_trivial(self) -> bool:
        return self.rank == 0

    def is_full(self) -> bool:
        return self.rank == self.ambient_rank

    def project(self, exponent: Sequence[Fraction]) -> Tuple[Fraction, ...]:
        return tuple(sum((row[m] * Fraction(exponent[m]) for m in range(len(exponent))), Fraction(0)) for row in self.projector)

    def to_json(self) -> Dict[str, object]:
        return {
            "mode": self.mode.value,
            "trivial_sublattice": [list(r) for r in self.trivial_sublattice],
            "complement": [[str(c) for c in r] for r in self.complement],
            "projector": [[str(c) for c in r] for r in self.projector],
            "index_scale": self.index_scale,
        }


def subset_sums(exponents: Sequence[Exponent], rank: int) -> Set[Exponent]:
    """All {0,1}-combinations Σ_{i∈I} E_i, deduplicated as they are generated."""
    nonzero = [e for e in exponents if any(e)]
    if len(nonzero) > settings.subset_limit:
        raise InvalidInputError(
            f"{len(nonzero)} nonzero weights exceed the subset enumeration limit {settings.subset_limit}"
        )
    sums: Set[Exponent] = {tuple([0] * rank)}
    for e in nonzero:
        sums |= {tuple(a + b for a, b in zip(s, e)) for s in sums}
    return sums


def _conj_action(lattice: CharacterLattice) -> Matrix:
    """σ on column exponent vectors: column m holds the exponents of conj(χ_m)."""
    rows = lattice.conj_matrix()
    r = lattice.rank
    return Matrix(RATIONALS, [[RATIONALS.rational(rows[m][k]) for m in range(r)] for k in range(r)], r)


def _stable_complement(trivial: Sequence[Sequence[int]], lattice: CharacterLattice) -> List[Tuple[Fraction, ...]]:
    r = lattice.rank
    sigma = _conj_action(lattice)
    ident = Matrix.identity(RATIONALS, r)
    candidates: List[Tuple[Fraction, ...]] = []
    for shifted in (sigma - ident, sigma + ident):
        rows = [[c.to_fraction() for c in row] for row in shifted.rows]
        candidates.extend(tuple(v) for v in rational_kernel(rows, r))
    basis = EchelonBasis(RATIONALS, r)
    for v in trivial:
        basis.add([RATIONALS.rational(c) for c in v])
    chosen: List[Tuple[Fraction, ...]] = []
    for v in candidates:
        if basis.add([RATIONALS.rational(c) for c in v]):
            chosen.append(v)
    if len(basis) != r:
        raise InvalidInputError("trivial sublattice has no conjugation-stable complement")
    return chosen


def _projector(trivial: Sequence[Sequence[int]], complement: Sequence[Sequence[Fraction]], r: int) -> Tuple[Tuple[Fraction, ...], ...]:
    if r == 0:
        return ()
    columns = [[RATIONALS.rational(c) for c in v] for v in list(trivial) + list(complement)]
    b = Matrix.from_columns(RATIONALS, columns)
    keep = Matrix.from_sparse(RATIONALS, r, r, {(k, k): RATIONALS.one() for k in range(len(trivial))})
    p = b @ keep @ inverse(b)
    return tuple(tuple(p[i, j].to_fraction() for j in range(r)) for i in range(r))


def _choice(mode: SubtorusMode, trivial: Sequence[Sequence[int]], lattice: CharacterLattice, lat: LatticeEvaluation) -> SubtorusChoice:
    r = lattice.rank
    trivial = [tuple(int(c) for c in v) for v in trivial]
    complement = _stable_complement(trivial, lattice)
    scale: Optional[int] = 1
    for v in trivial:
        s = lat.index_scale(v)
        scale = None if s is None or scale is None else lcm(scale, s)
    choice = SubtorusChoice(mode, tuple(trivial), tuple(complement), _projector(trivial, complement, r), scale)
    logger.debug("choose_subtorus(%s): rank %d of %d, index scale %s", mode.value, choice.rank, r, scale)
    return choice


def choose_subtorus(
    ws: WeightSystem,
    lat: LatticeEvaluation,
    mode: SubtorusMode = SubtorusMode.AUTO,
    explicit: Optional[Sequence[Sequence[int]]] = None,
) -> SubtorusChoice:
    return choose_subtorus_on(ws.lattice, ws.exponents, lat, mode, explicit)


def choose_subtorus_on(
    lattice: CharacterLattice,
    exponents: Sequence[Exponent],
    lat: LatticeEvaluation,
    mode: SubtorusMode = SubtorusMode.AUTO,
    explicit: Optional[Sequence[Sequence[int]]] = None,
) -> SubtorusChoice:
    """Subtorus for any character lattice whose generators carry the given exponents."""
    r = lattice.rank
    if mode is SubtorusMode.AUTO:
        trivial_sums = [s for s in sorted(subset_sums(exponents, r)) if any(s) and lat.is_trivial(s)]
        return _choice(mode, saturate([[Fraction(c) for c in s] for s in trivial_sums], r), lattice, lat)
    if mode is SubtorusMode.CLOSURE:
        return _choice(mode, integer_kernel(lat.linear_rows(), r), lattice, lat)
    if mode is SubtorusMode.FULL:
        return _choice(mode, [[int(i == j) for j in range(r)] for i in range(r)], lattice, lat)
    if explicit is None:
        raise InvalidInputError("explicit subtorus mode needs a sublattice basis")
    for v in explicit:
        if len(v) != r:
            raise InvalidInputError(f"explicit sublattice vectors need {r} entries")
        if not lat.is_trivial(v):
            raise ExplicitSublatticeNotTrivialOnGammaError(
                f"exponent vector {list(v)} is not trivial on the lattice", hypothesis="explicit_sublattice"
            )
    rows = lattice_basis([[Fraction(c) for c in v] for v in explicit])
    return _choice(mode, [[int(c) for c in row] for row in rows], lattice, lat)


def kasuya_condition(ws: WeightSystem, lat: LatticeEvaluation) -> bool:
    """Every nontrivial product character α_I restricts nontrivially to Γ."""
    return not any(any(s) and lat.is_trivial(s) for s in subset_sums(ws.exponents, ws.rank))


def mostow_torus_check(ws: WeightSystem, lat: LatticeEvaluation) -> bool:
    return choose_subtorus(ws, lat, SubtorusMode.AUTO).is_trivial()


def parse_subtorus_flag(flag: str) -> Tuple[SubtorusMode, Optional[str]]:
    """`auto`, `closure`, `full` or `explicit:<path>`."""
    if flag.startswith("explicit:"):
        return SubtorusMode.EXPLICIT, flag.split(":", 1)[1]
    try:
        return SubtorusMode(flag), None
    except ValueError:
        raise InvalidInputError(f"unknown subtorus mode {flag!r}") from None


__all__ = [
    "SubtorusMode",
    "SubtorusChoice",
    "subset_sums",
    "choose_subtorus",
    "choose_subtorus_on",
    "kasuya_condition",
    "mostow_torus_check",
    "parse_subtorus_flag",
]
