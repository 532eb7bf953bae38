"""Holomorphic frames adapted to the torus action.

The frame of g_C is ordered [X_1..X_k, Y_1..Y_m, X̄_1..X̄_k, Ȳ_1..Ȳ_m]: X_l = A − iJA
spans V^{1,0}, and Y_i are joint eigenvectors of ad_s spanning n^{1,0}.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import List, Sequence, Tuple

from packages.dolbeault.structure import ComplexStructure, preserves
from packages.exact.fields import FieldSpec
from packages.lattice.types import Functional
from packages.lattice.unitary import BaseFrame
from packages.lie.adjoint import AdSMap
from packages.lie.presentation import LieAlgebraPresentation
from packages.linalg.matrix import Matrix, Vector, independent_subset, kernel, vec_conj
from packages.linalg.weights import joint_weight_decomposition
from packages.shared.errors import HypothesisFailure

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class HolomorphicFrame:
    spec: FieldSpec
    base: BaseFrame
    x_vectors: Tuple[Vector, ...]
    y_vectors: Tuple[Vector, ...]
    y_weights: Tuple[Functional, ...]

    @property
    def k(self) -> int:
        return len(self.x_vectors)

    @property
    def m(self) -> int:
        return len(self.y_vectors)

    @property
    def n(self) -> int:
        """Complex dimension."""
        return self.k + self.m

    @property
    def vectors(self) -> Tuple[Vector, ...]:
        holomorphic = self.x_vectors + self.y_vectors
        return holomorphic + tuple(vec_conj(v) for v in holomorphic)

    @property
    def bidegrees(self) -> Tuple[Tuple[int, int], ...]:
        return tuple((1, 0) for _ in range(self.n)) + tuple((0, 1) for _ in range(self.n))

    def conj_x_position(self, l: int) -> int:
        return self.n + l

    def is_y(self, i: int) -> bool:
        return self.k <= i < self.n

    def is_y_bar(self, i: int) -> bool:
        return i >= self.n + self.k


def _i_eigenvectors(j: Matrix, vectors: Sequence[Vector]) -> List[Vector]:
    """Basis of span(vectors) ∩ ker(J − i)."""
    if not vectors:
        return []
    spec = j.spec
    b = Matrix.from_columns(spec, vectors)
    shifted = j - Matrix.identity(spec, j.n_rows).scale(spec.imaginary_unit())
    return [b.apply(c) for c in kernel(shifted @ b)]


def base_vectors(g: LieAlgebraPresentation, j: ComplexStructure, spec: FieldSpec) -> List[Vector]:
    """X_l = A − iJA over a greedy independent subset of the V basis."""
    if not preserves(g, j, g.v_indices):
        raise HypothesisFailure("J does not preserve the base V", hypothesis="j_preserves_v")
    i = spec.imaginary_unit()
    candidates: List[Vector] = []
    for idx in g.v_indices:
        a = g.basis_vector(idx, spec)
        ja = j.apply(a)
        candidates.append(tuple(x - i * y for x, y in zip(a, ja)))
    keep = independent_subset(candidates, spec, g.dim)
    chosen = [candidates[k] for k in keep]
    if 2 * len(chosen) != len(g.v_indices):
        raise HypothesisFailure("V^{1,0} does not have half the dimension of V", hypothesis="j_preserves_v")
    return chosen


def holomorphic_eigenframe(g: LieAlgebraPresentation, ads: AdSMap, j: ComplexStructure, spec: FieldSpec) -> Tuple[List[Vector], List[Functional]]:
    """Joint ad_s eigenvectors spanning n^{1,0}, with their weight functionals."""
    jc = j.j_matrix.coerce(spec)
    spaces = joint_weight_decomposition(list(ads.matrices), field=spec, dim=g.dim)
    v_pos = list(g.v_indices)
    vectors: List[Vector] = []
    weights: List[Functional] = []
    for space in spaces:
        basis = list(space.basis)
        if all(c.is_zero() for c in space.weight) and v_pos:
            b_mat = Matrix.from_columns(spec, basis)
            basis = [b_mat.apply(c) for c in kernel(b_mat.submatrix(v_pos, list(range(b_mat.n_cols))))]
        for y in _i_eigenvectors(jc, basis):
            vectors.append(y)
            weights.append(tuple(space.weight))
    if 2 * len(vectors) != len(g.n_indices):
        raise HypothesisFailure(
            "ad_s eigenvectors do not span n^{1,0}; ad_s must commute with J on n", hypothesis="eigenframe"
        )
    return vectors, weights


def holomorphic_frame(g: LieAlgebraPresentation, ads: AdSMap, j: ComplexStructure) -> HolomorphicFrame:
    spec = g.spec.complexified()
    xs = base_vectors(g, j, spec)
    ys, weights = holomorphic_eigenframe(g, ads, j, spec)
    base = BaseFrame.from_vectors([tuple(x[idx] for idx in g.v_indices) for x in xs])
    logger.debug("holomorphic_frame: k=%d, m=%d", len(xs), len(ys))
    return HolomorphicFrame(spec, base, tuple(xs), tuple(ys), tuple(weights))


def plain_frame(g: LieAlgebraPresentation, j: ComplexStructure) -> List[Vector]:
    """v − iJv over a greedy independent subset of the basis; spans g^{1,0}."""
    spec = g.spec.complexified()
    i = spec.imaginary_unit()
    candidates = []
    for k in range(g.dim):
        v = g.basis_vector(k, spec)
        candidates.append(tuple(x - i * y for x, y in zip(v, j.apply(v))))
    keep = independent_subset(candidates, spec, g.dim)
    if 2 * len(keep) != g.dim:
        raise HypothesisFailure("g^{1,0} does not have half the dimension of g", hypothesis="j_squared")
    return [candidates[k] for k in keep]


__all__ = [
    "HolomorphicFrame",
    "base_vectors",
    "holomorphic_eigenframe",
    "holomorphic_frame",
    "plain_frame",
]
