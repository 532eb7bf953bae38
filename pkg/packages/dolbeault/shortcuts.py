"""Hodge numbers of (ğ, J̆) via the abelian and parallelizable shortcuts."""
from __future__ import annotations

import logging
from enum import Enum
from math import comb
from typing import Dict, Optional, Tuple

from packages.dolbeault.bigraded import HodgeTable, ce_dolbeault, hodge_numbers, torus_table
from packages.dolbeault.breve import BrevePair
from packages.dolbeault.frames import plain_frame
from packages.dolbeault.structure import ComplexStructure, is_abelian_structure, is_bi_invariant
from packages.exact.fields import FieldElement
from packages.lie.cochains import betti, ce_complex
from packages.lie.presentation import LieAlgebraPresentation, frame_structure_constants
from packages.linalg.matrix import vec_conj
from packages.shared.errors import InternalAssertionError, ModeHypothesisFailure

logger = logging.getLogger(__name__)


class ShortcutMode(Enum):
    ABELIAN = "abelian"
    PARALLELIZABLE = "parallelizable"
    GENERAL = "general"


def abelian_table(g: LieAlgebraPresentation, j: ComplexStructure, threads: Optional[int] = None) -> HodgeTable:
    """Abelian J: ∂̄ vanishes on every (0, 1)-form, so h^{0,q} = C(n, q).

    The rest is the Koszul cohomology of the (1, 0)-part of ∂̄; it reduces to
    the torus table exactly when ∂̄ vanishes on the (1, 0)-forms as well.
    """
    b = ce_dolbeault(g, j)
    for i, bidegree in enumerate(b.bidegrees):
        if bidegree == (0, 1) and b.generator_dbar.get(i):
            raise InternalAssertionError("∂̄ does not vanish on a (0, 1)-form of an abelian structure")
    if not any(b.generator_dbar.values()):
        return torus_table(b.n)
    return hodge_numbers(b, threads)


def antiholomorphic_algebra(g: LieAlgebraPresentation, j: ComplexStructure) -> LieAlgebraPresentation:
    """g^{0,1} as a complex Lie algebra, in the conjugate of the v − iJv frame."""
    holomorphic = plain_frame(g, j)
    n = len(holomorphic)
    frame = holomorphic + [vec_conj(v) for v in holomorphic]
    constants, _ = frame_structure_constants(g, frame)
    spec = g.spec.complexified()
    restricted: Dict[Tuple[int, int], Dict[int, FieldElement]] = {}
    for (a, b), vec in constants.items():
        if a < n or b < n:
            continue
        if any(i < n for i in vec):
            raise ModeHypothesisFailure("g^{0,1} is not a subalgebra", hypothesis="parallelizable")
        restricted[(a - n, b - n)] = {i - n: c for i, c in vec.items()}
    names = tuple(f"w{k + 1}" for k in range(n))
    return LieAlgebraPresentation(spec, names, restricted, (), tuple(range(n)))


def shortcut_hodge(bp: BrevePair, mode: ShortcutMode, threads: Optional[int] = None) -> HodgeTable:
    return shortcut_table(bp.algebra, bp.j, mode, threads)


def shortcut_table(g: LieAlgebraPresentation, j: ComplexStructure, mode: ShortcutMode, threads: Optional[int] = None) -> HodgeTable:
    n = g.dim // 2
    if mode is ShortcutMode.GENERAL:
        return hodge_numbers(ce_dolbeault(g, j), threads)
    if mode is ShortcutMode.ABELIAN:
        if not is_abelian_structure(g, j):
            raise ModeHypothesisFailure("J̆ is not abelian", hypothesis="abelian_structure")
        return abelian_table(g, j, threads)
    if not is_bi_invariant(g, j):
        raise ModeHypothesisFailure("ğ is not a complex Lie algebra: ad does not commute with J̆", hypothesis="parallelizable")
    numbers = betti(ce_complex(antiholomorphic_algebra(g, j)), threads)
    logger.debug("shortcut_hodge: H*(g^{0,1}) = %s", numbers)
    return [[comb(n, p) * numbers[q] for q in range(n + 1)] for p in range(n + 1)]


def preferred_mode(g: LieAlgebraPresentation, j: ComplexStructure) -> ShortcutMode:
    if is_abelian_structure(g, j):
        return ShortcutMode.ABELIAN
    if is_bi_invariant(g, j):
        return ShortcutMode.PARALLELIZABLE
    return ShortcutMode.GENERAL


__all__ = [
    "ShortcutMode",
    "abelian_table",
    "antiholomorphic_algebra",
    "shortcut_hodge",
    "shortcut_table",
    "preferred_mode",
]
