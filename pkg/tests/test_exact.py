from __future__ import annotations

import random
from fractions import Fraction

import pytest
import sympy
from sympy.polys.domains import QQ

from packages.exact.characters import CharacterValue, LogReal, Phase, cv_is_one, cv_pow, lift_denominator
from packages.exact.fields import GAUSSIAN_RATIONALS, RATIONALS, make_field, to_fraction
from packages.exact.polynomials import poly_divmod, poly_gcd, poly_mul, squarefree_part
from packages.shared.errors import FieldDivisionByZeroError, FieldMismatchError, InvalidInputError

SQRT2 = make_field("Q(sqrt2)", ["1", "0", "-2"])
CUBE2 = make_field("Q(cbrt2)", ["1", "0", "0", "-2"])


def _random_element(spec, rng: random.Random):
    return spec.element([Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(spec.width)])


def _nonzero(spec, rng: random.Random):
    while True:
        x = _random_element(spec, rng)
        if not x.is_zero():
            return x


def test_theta_satisfies_min_poly():
    t = SQRT2.theta()
    assert t * t == 2
    c = CUBE2.theta()
    assert c * c * c == 2
    assert not (c * c).is_rational()


def test_inverse_in_quadratic_field():
    x = SQRT2.one() + SQRT2.theta()
    assert x.inverse() == SQRT2.theta() - 1


def test_imaginary_unit_squares_to_minus_one():
    i = GAUSSIAN_RATIONALS.imaginary_unit()
    assert i * i == -1
    assert i.is_imaginary()
    assert (i + 1).conj() == 1 - i


def test_real_field_has_no_imaginary_unit():
    with pytest.raises(FieldMismatchError):
        RATIONALS.imaginary_unit()


def test_division_by_zero():
    with pytest.raises(FieldDivisionByZeroError):
        SQRT2.one() / SQRT2.zero()
    with pytest.raises(FieldDivisionByZeroError):
        SQRT2.one() / 0


def test_mixing_fields_is_refused():
    with pytest.raises(FieldMismatchError):
        SQRT2.theta() + CUBE2.theta()


def test_coerce_between_real_and_complexified():
    c = SQRT2.complexified()
    x = c.coerce(SQRT2.theta())
    assert x.is_real()
    assert SQRT2.coerce(x) == SQRT2.theta()
    with pytest.raises(FieldMismatchError):
        SQRT2.coerce(c.imaginary_unit())


def test_reducible_min_poly_rejected():
    with pytest.raises(InvalidInputError):
        make_field("bad", ["1", "0", "-4"])
    with pytest.raises(InvalidInputError):
        make_field("bad", ["2", "0", "-1"])


def test_floats_are_refused():
    with pytest.raises(InvalidInputError):
        to_fraction(0.5)
    assert to_fraction("3/4") == Fraction(3, 4)


def test_field_axioms_hold_on_random_elements():
    rng = random.Random(20240611)
    spec = SQRT2.complexified()
    for _ in range(200):
        a, b, c = _random_element(spec, rng), _nonzero(spec, rng), _random_element(spec, rng)
        assert (a * b) / b == a
        assert a * (b + c) == a * b + a * c
        assert b * b.inverse() == 1
        assert (a * b).conj() == a.conj() * b.conj()


def test_cubic_field_inverse_on_random_elements():
    rng = random.Random(7)
    for _ in range(200):
        x = _nonzero(CUBE2, rng)
        assert x * x.inverse() == 1


def test_polynomial_gcd_and_squarefree_part():
    q = RATIONALS
    x_minus_1 = [q.rational(-1), q.one()]
    x_plus_2 = [q.rational(2), q.one()]
    p = poly_mul(poly_mul(x_minus_1, x_minus_1, q), x_plus_2, q)
    assert poly_gcd(p, x_minus_1, q) == x_minus_1
    assert squarefree_part(p, q) == poly_mul(x_minus_1, x_plus_2, q)
    quotient, remainder = poly_divmod(p, x_plus_2, q)
    assert not remainder
    assert quotient == poly_mul(x_minus_1, x_minus_1, q)


def test_log_real_drops_zero_terms():
    v = LogReal.of({"a": "1", "b": "0"})
    assert v.symbols() == ("a",)
    assert (v - v).is_zero()


def test_phase_lift_is_kept_unreduced():
    half = CharacterValue(phase=Phase(Fraction(1, 2)))
    assert not cv_is_one(half)
    assert cv_is_one(cv_pow(half, 2))
    assert lift_denominator(half) == 2
    assert cv_pow(half, Fraction(1, 2)).phase.lift == Fraction(1, 4)


def test_lift_denominator_needs_unit_modulus():
    v = CharacterValue(modulus=LogReal.of({"a": "1"}))
    assert lift_denominator(v) is None
    assert (v * v.inverse()).is_one()


def test_character_value_rejects_unknown_keys():
    with pytest.raises(InvalidInputError):
        CharacterValue.from_json({"modulus": {}, "phaze": "1"})


def test_field_parts_live_in_sympy_domains():
    assert RATIONALS.domain == QQ
    x = SQRT2.one() + SQRT2.theta()
    assert SQRT2.domain.of_type(x.re)
    assert x.coeffs == (Fraction(1), Fraction(1))
    assert sympy.simplify(SQRT2.domain.to_sympy(x.re) - 1 - sympy.sqrt(2)) == 0


def test_squarefree_part_with_gaussian_coefficients():
    g = GAUSSIAN_RATIONALS
    i = g.imaginary_unit()
    x_minus_i = [-i, g.one()]
    x_plus_1 = [g.one(), g.one()]
    p = poly_mul(poly_mul(x_minus_i, x_minus_i, g), x_plus_1, g)
    assert p[0] == -1
    assert squarefree_part(p, g) == poly_mul(x_minus_i, x_plus_1, g)
    assert poly_gcd(p, x_minus_i, g) == x_minus_i


def test_gcd_over_complexified_quadratic_field():
    spec = SQRT2.complexified()
    root = spec.imaginary_unit() * spec.theta()
    linear = [-root, spec.one()]
    square = poly_mul(linear, linear, spec)
    assert square == [spec.rational(-2), -root * 2, spec.one()]
    assert squarefree_part(square, spec) == linear
