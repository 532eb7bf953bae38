from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from packages.exact.fields import RATIONALS, FieldElement, FieldSpec
from packages.linalg.eigen import split_roots
from packages.linalg.jordan import characteristic_polynomial, is_semisimple
from packages.linalg.matrix import Matrix, Vector, kernel, unit_vector
from packages.shared.errors import NonSquareError, NotCommutingError, NotSemisimpleError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class WeightSpace:
    """Joint eigenspace: M_j v = weight[j]·v for every operator of the family."""

    weight: Tuple[FieldElement, ...]
    basis: Tuple[Vector, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)


def joint_weight_decomposition(
    family: Sequence[Matrix],
    *,
    field: Optional[FieldSpec] = None,
    dim: Optional[int] = None,
) -> List[WeightSpace]:
    """Simultaneous diagonalization of commuting semisimple matrices over `field`.

    Weight spaces are ordered by the canonical root order of each operator in
    turn, so the result is reproducible.
    """
    if not family:
        if field is None or dim is None:
            raise ValueError("an empty family needs explicit field and dim")
        return [WeightSpace((), tuple(unit_vector(field, dim, k) for k in range(dim)))]
    size = family[0].n_rows
    for m in family:
        if not m.is_square() or m.n_rows != size:
            raise NonSquareError("family members must be square matrices of equal size")
    target = field or family[0].spec.complexified()
    mats = [m.coerce(target) for m in family]
    for a in range(len(mats)):
        for b in range(a + 1, len(mats)):
            if not mats[a].commutator(mats[b]).is_zero():
                raise NotCommutingError(f"operators {a} and {b} do not commute", hypothesis="commuting_family")
    for k, m in enumerate(mats):
        if not is_semisimple(m):
            raise NotSemisimpleError(f"operator {k} is not semisimple", hypothesis="semisimple_family")

    spaces: List[Tuple[Tuple[FieldElement, ...], List[Vector]]] = [
        ((), [unit_vector(target, size, k) for k in range(size)])
    ]
    for m in mats:
        roots = split_roots(characteristic_polynomial(m), target)
        refined: List[Tuple[Tuple[FieldElement, ...], List[Vector]]] = []
        for weight, basis in spaces:
            b_mat = Matrix.from_columns(target, basis)
            found = 0
            for lam in roots:
                shifted = m - Matrix.identity(target, size).scale(lam)
                coords = kernel(shifted @ b_mat)
                if not coords:
                    continue
                vectors = [b_mat.apply(c) for c in coords]
                refined.append((weight + (lam,), vectors))
                found += len(vectors)
            if found != len(basis):
                raise NotSemisimpleError("restriction to a weight space is not diagonalizable", hypothesis="semisimple_family")
        spaces = refined
    logger.debug("joint_weight_decomposition: %d weight spaces in dimension %d", len(spaces), size)
    return [WeightSpace(w, tuple(b)) for w, b in spaces]


def eigenbasis_matrix(spaces: Sequence[WeightSpace], field: Optional[FieldSpec] = None) -> Matrix:
    """Weight-space bases as columns; 0×0 over `field` (default Q) when there are none."""
    columns = [v for s in spaces for v in s.basis]
    if not columns or not columns[0]:
        return Matrix(field or RATIONALS, [], 0)
    return Matrix.from_columns(columns[0][0].spec, columns)


__all__ = ["WeightSpace", "joint_weight_decomposition", "eigenbasis_matrix"]
