"""Exact dense matrices over a FieldSpec and elimination routines.

Elimination works on sparse row dictionaries internally; pivots are chosen
deterministically (first nonzero in column order, rows in input order) and each
pivot costs exactly one field inverse.
"""
from __future__ import annotations

import logging
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

from packages.exact.fields import FieldElement, FieldSpec
from packages.shared.errors import FieldDivisionByZeroError, FieldMismatchError, NonSquareError

logger = logging.getLogger(__name__)

Vector = Tuple[FieldElement, ...]
SparseRow = Dict[int, FieldElement]


class Matrix:
    __slots__ = ("spec", "rows", "n_rows", "n_cols")

    def __init__(self, spec: FieldSpec, rows: Sequence[Sequence[FieldElement]], n_cols: Optional[int] = None) -> None:
        frozen = tuple(tuple(r) for r in rows)
        cols = n_cols if n_cols is not None else (len(frozen[0]) if frozen else 0)
        for r in frozen:
            if len(r) != cols:
                raise ValueError(f"ragged matrix: expected {cols} columns, got {len(r)}")
        object.__setattr__(self, "spec", spec)
        object.__setattr__(self, "rows", frozen)
        object.__setattr__(self, "n_rows", len(frozen))
        object.__setattr__(self, "n_cols", cols)

    def __setattr__(self, name: str, value: Any) -> None:
        raise AttributeError("Matrix is immutable")

    # constructors

    @classmethod
    def zeros(cls, spec: FieldSpec, n_rows: int, n_cols: int) -> "Matrix":
        zero = spec.zero()
        return cls(spec, [[zero] * n_cols for _ in range(n_rows)], n_cols)

    @classmethod
    def identity(cls, spec: FieldSpec, n: int) -> "Matrix":
        zero, one = spec.zero(), spec.one()
        return cls(spec, [[one if i == j else zero for j in range(n)] for i in range(n)], n)

    @classmethod
    def from_values(cls, spec: FieldSpec, rows: Sequence[Sequence[Any]]) -> "Matrix":
        return cls(spec, [[spec.parse(v) for v in row] for row in rows])

    @classmethod
    def from_columns(cls, spec: FieldSpec, columns: Sequence[Sequence[FieldElement]], n_rows: Optional[int] = None) -> "Matrix":
        if not columns:
            return cls(spec, [[] for _ in range(n_rows or 0)], 0)
        height = len(columns[0])
        return cls(spec, [[columns[j][i] for j in range(len(columns))] for i in range(height)], len(columns))

    @classmethod
    def from_sparse(cls, spec: FieldSpec, n_rows: int, n_cols: int, entries: Dict[Tuple[int, int], FieldElement]) -> "Matrix":
        zero = spec.zero()
        grid = [[zero] * n_cols for _ in range(n_rows)]
        for (i, j), v in entries.items():
            grid[i][j] = v
        return cls(spec, grid, n_cols)

    # access

    def __getitem__(self, key: Tuple[int, int]) -> FieldElement:
        i, j = key
        return self.rows[i][j]

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self.rows)

    def columns(self) -> List[Vector]:
        return [self.column(j) for j in range(self.n_cols)]

    def is_square(self) -> bool:
        return self.n_rows == self.n_cols

    def require_square(self) -> None:
        if not self.is_square():
            raise NonSquareError(f"expected a square matrix, got {self.n_rows}x{self.n_cols}")

    def is_zero(self) -> bool:
        return all(v.is_zero() for r in self.rows for v in r)

    def trace(self) -> FieldElement:
        self.require_square()
        acc = self.spec.zero()
        for i in range(self.n_rows):
            acc = acc + self.rows[i][i]
        return acc

    # arithmetic

    def _check(self, other: "Matrix") -> None:
        if not (other.spec is self.spec or other.spec == self.spec):
            raise FieldMismatchError("matrices over different fields")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        return Matrix(self.spec, [[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.n_cols)

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        return Matrix(self.spec, [[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.n_cols)

    def __neg__(self) -> "Matrix":
        return Matrix(self.spec, [[-a for a in r] for r in self.rows], self.n_cols)

    def scale(self, c: Any) -> "Matrix":
        return Matrix(self.spec, [[a * c for a in r] for r in self.rows], self.n_cols)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.n_cols != other.n_rows:
            raise ValueError(f"shape mismatch {self.n_rows}x{self.n_cols} @ {other.n_rows}x{other.n_cols}")
        zero = self.spec.zero()
        out = []
        other_rows = other.rows
        for r in self.rows:
            acc = [zero] * other.n_cols
            for k, a in enumerate(r):
                if a.is_zero():
                    continue
                for j, b in enumerate(other_rows[k]):
                    if not b.is_zero():
                        acc[j] = acc[j] + a * b
            out.append(acc)
        return Matrix(self.spec, out, other.n_cols)

    def apply(self, vector: Sequence[FieldElement]) -> Vector:
        zero = self.spec.zero()
        out = []
        for r in self.rows:
            acc = zero
            for a, x in zip(r, vector):
                if not a.is_zero() and not x.is_zero():
                    acc = acc + a * x
            out.append(acc)
        return tuple(out)

    def transpose(self) -> "Matrix":
        return Matrix(self.spec, [list(self.column(j)) for j in range(self.n_cols)], self.n_rows)

    def power(self, k: int) -> "Matrix":
        self.require_square()
        result = Matrix.identity(self.spec, self.n_rows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def commutator(self, other: "Matrix") -> "Matrix":
        return self @ other - other @ self

    def conj(self) -> "Matrix":
        return Matrix(self.spec, [[a.conj() for a in r] for r in self.rows], self.n_cols)

    def coerce(self, spec: FieldSpec) -> "Matrix":
        if spec is self.spec or spec == self.spec:
            return self
        return Matrix(spec, [[spec.coerce(a) for a in r] for r in self.rows], self.n_cols)

    def is_real(self) -> bool:
        return all(a.is_real() for r in self.rows for a in r)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Matrix":
        return Matrix(self.spec, [[self.rows[i][j] for j in cols] for i in rows], len(cols))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.n_rows == other.n_rows and self.n_cols == other.n_cols and self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def __repr__(self) -> str:
        return f"Matrix({self.n_rows}x{self.n_cols})"

    def to_json(self) -> List[List[Any]]:
        return [[a.to_json() for a in r] for r in self.rows]


# vectors

def zero_vector(spec: FieldSpec, n: int) -> Vector:
    return (spec.zero(),) * n


def unit_vector(spec: FieldSpec, n: int, k: int) -> Vector:
    zero, one = spec.zero(), spec.one()
    return tuple(one if i == k else zero for i in range(n))


def vec_add(a: Sequence[FieldElement], b: Sequence[FieldElement]) -> Vector:
    return tuple(x + y for x, y in zip(a, b))


def vec_sub(a: Sequence[FieldElement], b: Sequence[FieldElement]) -> Vector:
    return tuple(x - y for x, y in zip(a, b))


def vec_scale(a: Sequence[FieldElement], c: Any) -> Vector:
    return tuple(x * c for x in a)


def vec_is_zero(a: Sequence[FieldElement]) -> bool:
    return all(x.is_zero() for x in a)


def vec_conj(a: Sequence[FieldElement]) -> Vector:
    return tuple(x.conj() for x in a)


# elimination

def _to_sparse(row: Sequence[FieldElement]) -> SparseRow:
    return {j: v for j, v in enumerate(row) if not v.is_zero()}


def _reduce_rows(rows: List[SparseRow], n_cols: int) -> Tuple[List[SparseRow], List[int]]:
    """Gauss–Jordan to reduced row echelon form; returns pivot rows and pivot columns."""
    pending = [r for r in rows if r]
    pivots: List[Tuple[int, SparseRow]] = []
    for col in range(n_cols):
        chosen = None
        for idx, r in enumerate(pending):
            if col in r:
                chosen = idx
                break
        if chosen is None:
            continue
        row = pending.pop(chosen)
        inv = row[col].inverse()
        row = {j: v * inv for j, v in row.items()}
        # clear this column everywhere else
        for k, r in enumerate(pending):
            factor = r.get(col)
            if factor is not None:
                pending[k] = _axpy(r, row, factor)
        for k, (pc, r) in enumerate(pivots):
            factor = r.get(col)
            if factor is not None:
                pivots[k] = (pc, _axpy(r, row, factor))
        pivots.append((col, row))
        pending = [r for r in pending if r]
        if not pending:
            break
    return [r for _, r in pivots], [c for c, _ in pivots]


def _axpy(target: SparseRow, source: SparseRow, factor: FieldElement) -> SparseRow:
    """target - factor * source, dropping zeros."""
    out = dict(target)
    for j, v in source.items():
        new = out.get(j)
        value = (new - factor * v) if new is not None else -(factor * v)
        if value.is_zero():
            out.pop(j, None)
        else:
            out[j] = value
    return out


def rref(m: Matrix) -> Tuple[List[SparseRow], List[int]]:
    return _reduce_rows([_to_sparse(r) for r in m.rows], m.n_cols)


def rank(m: Matrix) -> int:
    if m.n_rows == 0 or m.n_cols == 0:
        return 0
    rows, _ = rref(m)
    return len(rows)


def rank_kernel(m: Matrix) -> Tuple[int, List[Vector]]:
    """Rank and a kernel basis in reduced echelon parametrization (one vector per free column)."""
    spec = m.spec
    rows, pivot_cols = rref(m) if m.n_rows else ([], [])
    pivot_set = set(pivot_cols)
    zero, one = spec.zero(), spec.one()
    kernel: List[Vector] = []
    for free in range(m.n_cols):
        if free in pivot_set:
            continue
        v = [zero] * m.n_cols
        v[free] = one
        for pc, r in zip(pivot_cols, rows):
            entry = r.get(free)
            if entry is not None:
                v[pc] = -entry
        kernel.append(tuple(v))
    return len(rows), kernel


def kernel(m: Matrix) -> List[Vector]:
    return rank_kernel(m)[1]


def solve(m: Matrix, b: Sequence[FieldElement]) -> Optional[Vector]:
    """One solution x of m x = b (free variables zero), or None when inconsistent."""
    spec = m.spec
    augmented = [_to_sparse(list(r) + [b[i]]) for i, r in enumerate(m.rows)]
    rows, pivot_cols = _reduce_rows(augmented, m.n_cols + 1)
    if m.n_cols in pivot_cols:
        return None
    x = [spec.zero()] * m.n_cols
    for pc, r in zip(pivot_cols, rows):
        value = r.get(m.n_cols)
        if value is not None:
            x[pc] = value
    return tuple(x)


def inverse(m: Matrix) -> Matrix:
    m.require_square()
    n = m.n_rows
    spec = m.spec
    one = spec.one()
    augmented = []
    for i, r in enumerate(m.rows):
        row = _to_sparse(r)
        row[n + i] = one
        augmented.append(row)
    rows, pivot_cols = _reduce_rows(augmented, 2 * n)
    if len(rows) < n or pivot_cols[:n] != list(range(n)):
        raise FieldDivisionByZeroError("matrix is singular")
    zero = spec.zero()
    return Matrix(spec, [[rows[i].get(n + j, zero) for j in range(n)] for i in range(n)], n)


def solve_matrix(m: Matrix, rhs: Matrix) -> Matrix:
    """X with m X = rhs for invertible m."""
    return inverse(m) @ rhs


class EchelonBasis:
    """Incrementally maintained reduced basis of a subspace of K^n.

    `add` returns False for vectors already in the span, which gives greedy
    independent-subset selection in input order.
    """

    def __init__(self, spec: FieldSpec, n: int) -> None:
        self.spec = spec
        self.n = n
        self._rows: Dict[int, SparseRow] = {}
        self.vectors: List[Vector] = []

    def __len__(self) -> int:
        return len(self.vectors)

    def reduce(self, vector: Sequence[FieldElement]) -> SparseRow:
        row = _to_sparse(vector)
        for col in sorted(self._rows):
            factor = row.get(col)
            if factor is not None:
                row = _axpy(row, self._rows[col], factor)
        return row

    def contains(self, vector: Sequence[FieldElement]) -> bool:
        return not self.reduce(vector)

    def add(self, vector: Sequence[FieldElement]) -> bool:
        row = self.reduce(vector)
        if not row:
            return False
        col = min(row)
        inv = row[col].inverse()
        row = {j: v * inv for j, v in row.items()}
        for c, other in list(self._rows.items()):
            factor = other.get(col)
            if factor is not None:
                self._rows[c] = _axpy(other, row, factor)
        self._rows[col] = row
        self.vectors.append(tuple(vector))
        return True


def independent_subset(vectors: Iterable[Sequence[FieldElement]], spec: FieldSpec, n: int) -> List[int]:
    basis = EchelonBasis(spec, n)
    return [k for k, v in enumerate(vectors) if basis.add(v)]


def span_basis(vectors: Iterable[Sequence[FieldElement]], spec: FieldSpec, n: int) -> List[Vector]:
    basis = EchelonBasis(spec, n)
    for v in vectors:
        basis.add(v)
    return list(basis.vectors)


def coordinates_in(basis: Sequence[Sequence[FieldElement]], vector: Sequence[FieldElement], spec: FieldSpec) -> Optional[Vector]:
    """Coefficients of `vector` in the columns `basis`, or None if outside the span."""
    if not basis:
        return () if vec_is_zero(vector) else None
    return solve(Matrix.from_columns(spec, basis), vector)


__all__ = [
    "Matrix",
    "Vector",
    "zero_vector",
    "unit_vector",
    "vec_add",
    "vec_sub",
    "vec_scale",
    "vec_is_zero",
    "vec_conj",
    "rref",
    "rank",
    "rank_kernel",
    "kernel",
    "solve",
    "inverse",
    "solve_matrix",
    "EchelonBasis",
    "independent_subset",
    "span_basis",
    "coordinates_in",
]
