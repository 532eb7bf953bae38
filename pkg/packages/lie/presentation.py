"""Finite presentations of real Lie algebras by structure constants.

Constants are stored sparsely for j < k only: [x_j, x_k] = Σ_i c^i_{jk} x_i.
The declared splitting g = V ⊕ n is part of the presentation and is verified
by `packages.lie.validation.validate`, never computed.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Any, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from packages.exact.fields import FieldElement, FieldSpec
from packages.linalg.matrix import Matrix, Vector, inverse, unit_vector, zero_vector
from packages.shared.errors import InvalidInputError

logger = logging.getLogger(__name__)

Bracket = Dict[int, FieldElement]
StructureConstants = Dict[Tuple[int, int], Bracket]


def _clean(constants: Mapping[Tuple[int, int], Mapping[int, FieldElement]]) -> StructureConstants:
    out: StructureConstants = {}
    for (j, k), vec in constants.items():
        if j == k:
            if any(not v.is_zero() for v in vec.values()):
                raise InvalidInputError(f"[x_{j}, x_{j}] must vanish")
            continue
        sign = 1
        if j > k:
            j, k, sign = k, j, -1
        slot = out.setdefault((j, k), {})
        for i, v in vec.items():
            total = slot.get(i, v.spec.zero()) + (v if sign == 1 else -v)
            if total.is_zero():
                slot.pop(i, None)
            else:
                slot[i] = total
    return {key: dict(sorted(vec.items())) for key, vec in sorted(out.items()) if vec}


@dataclass(frozen=True, eq=False)
class LieAlgebraPresentation:
    spec: FieldSpec
    basis_names: Tuple[str, ...]
    structure: StructureConstants
    v_indices: Tuple[int, ...] = ()
    n_indices: Tuple[int, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "structure", _clean(self.structure))
        if len(set(self.basis_names)) != len(self.basis_names):
            raise InvalidInputError("basis names must be distinct")
        if sorted(self.v_indices + self.n_indices) != list(range(self.dim)):
            raise InvalidInputError("v and n must partition the basis")
        for (j, k), vec in self.structure.items():
            if not (0 <= j < k < self.dim) or any(not 0 <= i < self.dim for i in vec):
                raise InvalidInputError(f"structure constant index out of range at ({j}, {k})")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LieAlgebraPresentation):
            return NotImplemented
        return (
            self.spec == other.spec
            and self.basis_names == other.basis_names
            and self.structure == other.structure
            and self.v_indices == other.v_indices
            and self.n_indices == other.n_indices
        )

    # construction

    @classmethod
    def from_triples(
        cls,
        spec: FieldSpec,
        basis_names: Sequence[str],
        triples: Iterable[Tuple[int, int, int, Any]],
        *,
        v_indices: Sequence[int] = (),
        n_indices: Optional[Sequence[int]] = None,
    ) -> "LieAlgebraPresentation":
        """Build from sparse (j, k, i, value) triples meaning c^i_{jk} = value."""
        constants: Dict[Tuple[int, int], Dict[int, FieldElement]] = {}
        dim = len(basis_names)
        for j, k, i, value in triples:
            if j == k:
                raise InvalidInputError(f"bracket of {basis_names[j]} with itself cannot be declared")
            if j > k:
                j, k, value = k, j, spec.parse(value) * -1
            else:
                value = spec.parse(value)
            slot = constants.setdefault((j, k), {})
            if i in slot:
                raise InvalidInputError(f"duplicate structure constant c^{i}_{j}{k}")
            slot[i] = value
        v = tuple(v_indices)
        n = tuple(n_indices) if n_indices is not None else tuple(x for x in range(dim) if x not in v)
        return cls(spec, tuple(basis_names), constants, v, n)

    def with_structure(self, structure: StructureConstants) -> "LieAlgebraPresentation":
        return LieAlgebraPresentation(self.spec, self.basis_names, structure, self.v_indices, self.n_indices)

    def with_splitting(self, v_indices: Sequence[int], n_indices: Sequence[int]) -> "LieAlgebraPresentation":
        return LieAlgebraPresentation(self.spec, self.basis_names, self.structure, tuple(v_indices), tuple(n_indices))

    # basic data

    @property
    def dim(self) -> int:
        return len(self.basis_names)

    def index(self, name: str) -> int:
        try:
            return self.basis_names.index(name)
        except ValueError:
            raise InvalidInputError(f"unknown basis element {name!r}") from None

    def constant(self, i: int, j: int, k: int) -> FieldElement:
        """c^i_{jk} with antisymmetry applied."""
        if j == k:
            return self.spec.zero()
        if j < k:
            return self.structure.get((j, k), {}).get(i, self.spec.zero())
        return -self.structure.get((k, j), {}).get(i, self.spec.zero())

    def basis_bracket(self, j: int, k: int) -> Bracket:
        if j == k:
            return {}
        if j < k:
            return dict(self.structure.get((j, k), {}))
        return {i: -v for i, v in self.structure.get((k, j), {}).items()}

    def is_abelian(self) -> bool:
        return not self.structure

    def basis_vector(self, k: int, spec: Optional[FieldSpec] = None) -> Vector:
        return unit_vector(spec or self.spec, self.dim, k)

    # brackets on coordinate vectors

    def bracket(self, x: Sequence[FieldElement], y: Sequence[FieldElement]) -> Vector:
        """Bilinear extension of the bracket; works over the field of the inputs."""
        spec = x[0].spec if x else self.spec
        acc = list(zero_vector(spec, self.dim))
        support_x = [(j, a) for j, a in enumerate(x) if not a.is_zero()]
        support_y = [(k, b) for k, b in enumerate(y) if not b.is_zero()]
        for j, a in support_x:
            for k, b in support_y:
                if j == k:
                    continue
                coefficient = a * b
                for i, c in self.basis_bracket(j, k).items():
                    acc[i] = acc[i] + coefficient * spec.coerce(c)
        return tuple(acc)

    def ad_matrix(self, x: Sequence[FieldElement]) -> Matrix:
        """Matrix of ad_x in the presentation basis (columns are images of basis vectors)."""
        spec = x[0].spec if x else self.spec
        columns = [self.bracket(x, unit_vector(spec, self.dim, k)) for k in range(self.dim)]
        return Matrix.from_columns(spec, columns, self.dim)

    def ad(self, k: int) -> Matrix:
        return self.ad_matrix(self.basis_vector(k))

    def span_contains(self, indices: Sequence[int], vector: Sequence[FieldElement]) -> bool:
        allowed = set(indices)
        return all(v.is_zero() for i, v in enumerate(vector) if i not in allowed)

    def triples(self) -> List[Tuple[int, int, int, FieldElement]]:
        return [(j, k, i, v) for (j, k), vec in self.structure.items() for i, v in vec.items()]

    def to_json(self) -> Dict[str, Any]:
        return {
            "basis": list(self.basis_names),
            "v": [self.basis_names[i] for i in self.v_indices],
            "n": [self.basis_names[i] for i in self.n_indices],
            "brackets": [
                {
                    "x": self.basis_names[j],
                    "y": self.basis_names[k],
                    "result": {self.basis_names[i]: v.to_json() for i, v in vec.items()},
                }
                for (j, k), vec in self.structure.items()
            ],
        }


def frame_structure_constants(
    g: LieAlgebraPresentation, frame: Sequence[Sequence[FieldElement]]
) -> Tuple[StructureConstants, Matrix]:
    """Structure constants of g_C in a (complex) frame, plus the inverse frame matrix.

    The frame is given by coordinate columns in the presentation basis; it must
    be a basis. Returned constants are keyed by frame indices (a < b).
    """
    spec = frame[0][0].spec
    frame_matrix = Matrix.from_columns(spec, frame)
    back = inverse(frame_matrix)
    constants: StructureConstants = {}
    for a in range(len(frame)):
        for b in range(a + 1, len(frame)):
            image = g.bracket(frame[a], frame[b])
            if all(v.is_zero() for v in image):
                continue
            coords = back.apply(image)
            vec = {c: v for c, v in enumerate(coords) if not v.is_zero()}
            if vec:
                constants[(a, b)] = vec
    return constants, back


__all__ = [
    "Bracket",
    "StructureConstants",
    "LieAlgebraPresentation",
    "frame_structure_constants",
]
