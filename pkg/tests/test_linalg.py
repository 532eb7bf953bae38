from __future__ import annotations

import random
from fractions import Fraction

import pytest
import sympy

from packages.exact.fields import GAUSSIAN_RATIONALS, RATIONALS, make_field
from packages.linalg.eigen import root_structure, split_roots
from packages.linalg.jordan import characteristic_polynomial, is_nilpotent, is_semisimple, jordan_chevalley
from packages.linalg.lattices import (
    hermite_basis,
    integer_kernel,
    integral_coordinates,
    lattice_basis,
    rational_rank,
    saturate,
)
from packages.linalg.matrix import EchelonBasis, Matrix, inverse, kernel, rank, solve
from packages.linalg.weights import eigenbasis_matrix, joint_weight_decomposition
from packages.shared.errors import EigenvalueOutsideFieldError, FieldDivisionByZeroError, NotCommutingError, NotSemisimpleError

Q = RATIONALS
SQRT2 = make_field("Q(sqrt2)", ["1", "0", "-2"])


def _m(rows, spec=Q):
    return Matrix.from_values(spec, rows)


def _random_matrix(rng: random.Random, n: int, lo: int = -3, hi: int = 3) -> Matrix:
    return _m([[rng.randint(lo, hi) for _ in range(n)] for _ in range(n)])


def _random_invertible(rng: random.Random, n: int) -> Matrix:
    while True:
        m = _random_matrix(rng, n)
        if rank(m) == n:
            return m


def test_rank_and_kernel():
    m = _m([[1, 2, 3], [2, 4, 6], [1, 0, 1]])
    assert rank(m) == 2
    (k,) = kernel(m)
    assert all(x.is_zero() for x in m.apply(k))


def test_kernel_does_not_depend_on_row_order():
    rng = random.Random(7)
    for _ in range(100):
        rows = [[rng.randint(-1, 1) for _ in range(4)] for _ in range(3)]
        shuffled = rows[:]
        rng.shuffle(shuffled)
        assert kernel(_m(rows)) == kernel(_m(shuffled))


def test_solve_reports_inconsistency():
    m = _m([[1, 1], [2, 2]])
    assert solve(m, [Q.one(), Q.rational(3)]) is None
    x = solve(m, [Q.one(), Q.rational(2)])
    assert m.apply(x) == (Q.one(), Q.rational(2))


def test_singular_inverse_raises():
    with pytest.raises(FieldDivisionByZeroError):
        inverse(_m([[1, 2], [2, 4]]))


def test_inverse_on_random_matrices():
    rng = random.Random(1103)
    for _ in range(200):
        m = _random_invertible(rng, 3)
        assert inverse(m) @ m == Matrix.identity(Q, 3)


def test_echelon_basis_keeps_input_order():
    basis = EchelonBasis(Q, 3)
    vectors = [(1, 0, 0), (2, 0, 0), (0, 1, 1), (1, 1, 1), (0, 0, 1)]
    added = [basis.add([Q.rational(c) for c in v]) for v in vectors]
    assert added == [True, False, True, False, True]


def test_characteristic_polynomial_of_rotation():
    poly = characteristic_polynomial(_m([[0, -1], [1, 0]]))
    assert poly == [Q.one(), Q.zero(), Q.one()]


def test_split_roots_needs_imaginary_unit():
    poly = [Q.one(), Q.zero(), Q.one()]
    with pytest.raises(EigenvalueOutsideFieldError):
        split_roots(poly, Q)
    i = GAUSSIAN_RATIONALS.imaginary_unit()
    assert split_roots(poly, GAUSSIAN_RATIONALS) == [-i, i]


def test_split_roots_over_quadratic_field():
    poly = [Q.rational(-2), Q.zero(), Q.one()]
    with pytest.raises(EigenvalueOutsideFieldError) as info:
        split_roots(poly, Q)
    assert info.value.exit_code == 1
    t = SQRT2.theta()
    assert set(split_roots([SQRT2.rational(-2), SQRT2.zero(), SQRT2.one()], SQRT2)) == {t, -t}


def test_root_structure_flags_nonlinear_factors():
    _, all_linear = root_structure([Q.rational(-1), Q.zero(), Q.one()], Q)
    assert all_linear
    _, all_linear = root_structure([Q.one(), Q.zero(), Q.one()], Q)
    assert not all_linear


def test_jordan_chevalley_of_a_jordan_block():
    pair = jordan_chevalley(_m([[2, 1], [0, 2]]))
    assert pair.s == _m([[2, 0], [0, 2]])
    assert pair.n == _m([[0, 1], [0, 0]])


def test_jordan_chevalley_on_random_matrices():
    rng = random.Random(424242)
    for case in range(200):
        if case % 2:
            m = _random_matrix(rng, 3, -2, 2)
        else:
            p = _random_invertible(rng, 3)
            a, b = rng.randint(-2, 2), rng.randint(-2, 2)
            j = _m([[a, 1, 0], [0, a, 0], [0, 0, b]])
            m = p @ j @ inverse(p)
        pair = jordan_chevalley(m)
        assert pair.s + pair.n == m
        assert pair.s.commutator(pair.n).is_zero()
        assert is_nilpotent(pair.n)
        assert is_semisimple(pair.s)


def test_joint_weights_of_commuting_family():
    a = _m([[1, 0, 0], [0, 1, 0], [0, 0, -1]])
    b = _m([[0, -1, 0], [1, 0, 0], [0, 0, 0]])
    spaces = joint_weight_decomposition([a, b])
    i = GAUSSIAN_RATIONALS.imaginary_unit()
    one = GAUSSIAN_RATIONALS.one()
    assert {s.weight for s in spaces} == {(one, i), (one, -i), (-one, 0 * one)}
    for space in spaces:
        assert space.dim == 1
        (v,) = space.basis
        for op, w in zip((a, b), space.weight):
            assert op.coerce(GAUSSIAN_RATIONALS).apply(v) == tuple(x * w for x in v)


def test_eigenbasis_matrix_reassembles_the_weight_spaces():
    a = _m([[1, 0, 0], [0, 1, 0], [0, 0, -1]])
    b = _m([[0, -1, 0], [1, 0, 0], [0, 0, 0]])
    p = eigenbasis_matrix(joint_weight_decomposition([a, b]))
    assert (p.n_rows, p.n_cols) == (3, 3)
    assert rank(p) == 3


def test_eigenbasis_matrix_of_nothing_is_empty():
    for spaces in ([], joint_weight_decomposition([], field=RATIONALS, dim=0)):
        p = eigenbasis_matrix(spaces)
        assert (p.n_rows, p.n_cols) == (0, 0)
    assert eigenbasis_matrix([], GAUSSIAN_RATIONALS).spec == GAUSSIAN_RATIONALS


def test_joint_weights_refuse_bad_families():
    with pytest.raises(NotCommutingError):
        joint_weight_decomposition([_m([[1, 0], [0, 2]]), _m([[0, 1], [1, 0]])])
    with pytest.raises(NotSemisimpleError):
        joint_weight_decomposition([_m([[0, 1], [0, 0]])])


def test_hermite_basis_spans_the_same_lattice():
    rng = random.Random(99)
    for _ in range(200):
        rows = [[rng.randint(-5, 5) for _ in range(3)] for _ in range(rng.randint(1, 4))]
        basis = hermite_basis(rows)
        assert len(basis) == rational_rank([[Fraction(c) for c in r] for r in rows], 3)
        as_fractions = [[Fraction(c) for c in b] for b in basis]
        for r in rows:
            integral_coordinates(as_fractions, [Fraction(c) for c in r])
        if len(rows) == 3 and len(basis) == 3:
            assert abs(sympy.Matrix(basis).det()) == abs(sympy.Matrix(rows).det())


def test_integer_kernel_is_a_primitive_basis():
    rng = random.Random(5)
    for _ in range(100):
        rows = [[Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(4)] for _ in range(rng.randint(1, 3))]
        ker = integer_kernel(rows, 4)
        assert len(ker) == 4 - rational_rank(rows, 4)
        assert all(sum(Fraction(a) * b for a, b in zip(k, r)) == 0 for k in ker for r in rows)
        if ker:
            assert saturate([[Fraction(c) for c in k] for k in ker], 4) == ker


def test_integer_kernel_and_saturation():
    ker = integer_kernel([[Fraction(1), Fraction(1), Fraction(-2)]], 3)
    assert len(ker) == 2
    assert all(r[0] + r[1] - 2 * r[2] == 0 for r in ker)
    assert saturate([[Fraction(2), Fraction(2)]], 2) in ([[1, 1]], [[-1, -1]])


def test_lattice_basis_and_integral_coordinates():
    half = Fraction(1, 2)
    basis = lattice_basis([[half, Fraction(0)], [Fraction(0), Fraction(1)], [half, Fraction(1)]])
    assert len(basis) == 2
    assert integral_coordinates(basis, [Fraction(3, 2), Fraction(2)]) is not None
