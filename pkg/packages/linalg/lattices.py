"""Integer lattices: Hermite normal form, integer kernels and saturation.

Normal forms come from sympy.matrices.normalforms. sympy's HNF spans the
columns, so row lattices are passed transposed; the basis rows returned here
are the HNF columns. Integer kernels are read off the Smith decomposition
S = U·A·V: the columns of V past the rank span ker A ∩ Z^n.
"""
from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import List, Sequence

import sympy
from sympy.matrices.normalforms import hermite_normal_form, smith_normal_decomp
from sympy.polys.domains import ZZ

from packages.exact.fields import RATIONALS, sympy_rational
from packages.linalg.matrix import Matrix, rank_kernel
from packages.shared.errors import InternalAssertionError

IntRow = List[int]


def hermite_basis(rows: Sequence[Sequence[int]]) -> List[IntRow]:
    """Canonical Z-basis (HNF) of the lattice spanned by integer rows; zero rows dropped."""
    nonzero = [list(r) for r in rows if any(r)]
    if not nonzero:
        return []
    h = hermite_normal_form(sympy.Matrix(nonzero).T)
    return [[int(v) for v in h.col(k)] for k in range(h.cols)]


def _common_denominator(vectors: Sequence[Sequence[Fraction]]) -> int:
    d = 1
    for v in vectors:
        for c in v:
            d = lcm(d, Fraction(c).denominator)
    return d


def lattice_basis(vectors: Sequence[Sequence[Fraction]]) -> List[List[Fraction]]:
    """Canonical (HNF) basis of the Z-module generated by rational vectors."""
    if not vectors:
        return []
    d = _common_denominator(vectors)
    scaled = [[int(Fraction(c) * d) for c in v] for v in vectors]
    return [[Fraction(c, d) for c in row] for row in hermite_basis(scaled)]


def integral_coordinates(basis: Sequence[Sequence[Fraction]], vector: Sequence[Fraction]) -> List[int]:
    """Coordinates of `vector` in a basis from lattice_basis; must be integral."""
    if not basis:
        if any(vector):
            raise InternalAssertionError("vector is outside the span of the lattice basis")
        return []
    columns = sympy.Matrix([[sympy_rational(Fraction(c)) for c in row] for row in basis]).T
    target = sympy.Matrix([sympy_rational(Fraction(c)) for c in vector])
    try:
        solution, params = columns.gauss_jordan_solve(target)
    except ValueError as exc:
        raise InternalAssertionError("vector is outside the span of the lattice basis") from exc
    if params.rows:
        raise InternalAssertionError("lattice basis rows are not independent")
    coords: List[int] = []
    for q in solution:
        if not q.is_integer:
            raise InternalAssertionError(f"vector is not in the lattice (coefficient {q})")
        coords.append(int(q))
    return coords


def rational_kernel(rows: Sequence[Sequence[Fraction]], n: int) -> List[List[Fraction]]:
    """Basis of {x ∈ Q^n : row·x = 0 for every row}."""
    if not rows:
        return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    m = Matrix(RATIONALS, [[RATIONALS.rational(Fraction(c)) for c in r] for r in rows], n)
    _, ker = rank_kernel(m)
    return [[c.to_fraction() for c in v] for v in ker]


def integer_kernel(rows: Sequence[Sequence[Fraction]], n: int) -> List[IntRow]:
    """Z-basis of {x ∈ Z^n : row·x = 0 for every row}, in Hermite normal form."""
    scaled = []
    for r in rows:
        d = _common_denominator([r])
        scaled.append([int(Fraction(c) * d) for c in r])
    scaled = [r for r in scaled if any(r)]
    if not scaled:
        return [[int(i == j) for j in range(n)] for i in range(n)]
    s, _, v = smith_normal_decomp(sympy.Matrix(scaled), domain=ZZ)
    rank = sum(1 for k in range(min(s.rows, s.cols)) if s[k, k] != 0)
    kernel_rows = [[int(x) for x in v.col(k)] for k in range(rank, n)]
    return hermite_basis(kernel_rows)


def saturate(vectors: Sequence[Sequence[Fraction]], n: int) -> List[IntRow]:
    """Z-basis of (Q-span of vectors) ∩ Z^n."""
    nonzero = [list(v) for v in vectors if any(v)]
    if not nonzero:
        return []
    annihilator = rational_kernel(nonzero, n)
    return integer_kernel(annihilator, n)


def rational_rank(vectors: Sequence[Sequence[Fraction]], n: int) -> int:
    if not vectors:
        return 0
    return n - len(rational_kernel(vectors, n))


__all__ = [
    "hermite_basis",
    "lattice_basis",
    "integral_coordinates",
    "rational_kernel",
    "integer_kernel",
    "saturate",
    "rational_rank",
]
