from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import List, Sequence, Tuple

from packages.exact.fields import FieldElement, FieldSpec
from packages.lie.presentation import LieAlgebraPresentation
from packages.linalg.jordan import is_semisimple, jordan_chevalley
from packages.linalg.matrix import Matrix
from packages.shared.errors import NonSemisimpleDerivationError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class AdSMap:
    """ad_s(A_j) for the V basis, in the presentation basis; zero on n."""

    v_indices: Tuple[int, ...]
    matrices: Tuple[Matrix, ...]

    def __len__(self) -> int:
        return len(self.matrices)

    def of_vector(self, x: Sequence[FieldElement], spec: FieldSpec) -> Matrix:
        """ad_s(x): linear in the V-component of x."""
        dim = len(x)
        acc = Matrix.zeros(spec, dim, dim)
        for pos, idx in enumerate(self.v_indices):
            c = x[idx]
            if not c.is_zero():
                acc = acc + self.matrices[pos].coerce(spec).scale(c)
        return acc


def derivation_defect(g: LieAlgebraPresentation, d: Matrix) -> Tuple[int, int] | None:
    """First basis pair where D[x,y] ≠ [Dx,y] + [x,Dy], or None."""
    for a in range(g.dim):
        xa = g.basis_vector(a, d.spec)
        da = d.apply(xa)
        for b in range(a + 1, g.dim):
            xb = g.basis_vector(b, d.spec)
            lhs = d.apply(g.bracket(xa, xb))
            rhs1 = g.bracket(da, xb)
            rhs2 = g.bracket(xa, d.apply(xb))
            if any(not (p - q - r).is_zero() for p, q, r in zip(lhs, rhs1, rhs2)):
                return a, b
    return None


def compute_ad_s(g: LieAlgebraPresentation) -> AdSMap:
    """Semisimple parts of ad_A for the V basis, with the AdSMap invariants checked."""
    matrices: List[Matrix] = []
    for idx in g.v_indices:
        s = jordan_chevalley(g.ad(idx)).s
        defect = derivation_defect(g, s)
        if defect is not None:
            a, b = defect
            raise NonSemisimpleDerivationError(
                f"semisimple part of ad {g.basis_names[idx]} is not a derivation on ({g.basis_names[a]}, {g.basis_names[b]})"
            )
        matrices.append(s)
    for a in range(len(matrices)):
        if not is_semisimple(matrices[a]):
            raise NonSemisimpleDerivationError(f"ad_s({g.basis_names[g.v_indices[a]]}) is not semisimple")
        for b in range(a + 1, len(matrices)):
            if not matrices[a].commutator(matrices[b]).is_zero():
                raise NonSemisimpleDerivationError(
                    f"ad_s({g.basis_names[g.v_indices[a]]}) and ad_s({g.basis_names[g.v_indices[b]]}) do not commute"
                )
    logger.debug("compute_ad_s: %d semisimple derivations", len(matrices))
    return AdSMap(tuple(g.v_indices), tuple(matrices))


__all__ = ["AdSMap", "compute_ad_s", "derivation_defect"]
