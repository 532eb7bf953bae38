from __future__ import annotations

import random
from fractions import Fraction

import pytest

from packages.exact.characters import CharacterValue, LogReal, Phase
from packages.exact.fields import GAUSSIAN_RATIONALS
from packages.lattice.evaluation import DeclaredCharacter, LatticeData, evaluate_lattice, restrict_trivial
from packages.lattice.unitary import BaseFrame, ComplexWeight, solve_delta, unitary_parts
from packages.lattice.weight_system import build_weight_system, conj_functional
from packages.lie.adjoint import compute_ad_s
from packages.shared.errors import InvalidInputError, IrrationalPhaseError, NotUnitaryError, UnknownSymbolError

C = GAUSSIAN_RATIONALS
I = C.imaginary_unit()


def _rotation_lattice(pi_multiple: str) -> LatticeData:
    return LatticeData(("g1",), ((LogReal.of({"pi": pi_multiple}),),))


def test_rotation_weights(rotation):
    ws = build_weight_system(rotation, compute_ad_s(rotation))
    assert ws.rank == 1
    assert ws.char_basis in (((I,),), ((-I,),))
    assert ws.exponents[0] == (0,)
    assert sorted(e[0] for e in ws.exponents[1:]) == [-1, 1]


def test_conjugation_permutes_the_eigenbasis(corpus_doc):
    for name in ("nakamura", "mostow_fibration", "real_split_example"):
        g = corpus_doc(name).algebra
        ws = build_weight_system(g, compute_ad_s(g))
        for i, j in enumerate(ws.sigma):
            assert ws.sigma[j] == i
            assert ws.weights[j] == conj_functional(ws.weights[i])
            assert ws.vector(j) == tuple(c.conj() for c in ws.vector(i))


def test_nilpotent_algebra_has_no_characters(heisenberg):
    ws = build_weight_system(heisenberg, compute_ad_s(heisenberg))
    assert ws.rank == 0
    assert all(e == () for e in ws.exponents)


def test_rotation_by_pi_is_nontrivial(rotation):
    ws = build_weight_system(rotation, compute_ad_s(rotation))
    lat = evaluate_lattice(ws.lattice, _rotation_lattice("1"))
    assert not restrict_trivial((1,), lat)
    assert restrict_trivial((2,), lat)
    assert lat.index_scale((1,)) == 2
    assert lat.scaled(2).is_trivial((1,))


def test_rotation_by_two_pi_is_trivial(rotation):
    ws = build_weight_system(rotation, compute_ad_s(rotation))
    lat = evaluate_lattice(ws.lattice, _rotation_lattice("2"))
    assert restrict_trivial((1,), lat)
    assert lat.index_scale((1,)) == 1


def test_exponent_length_is_checked(rotation):
    ws = build_weight_system(rotation, compute_ad_s(rotation))
    lat = evaluate_lattice(ws.lattice, _rotation_lattice("1"))
    with pytest.raises(InvalidInputError):
        restrict_trivial((1, 0), lat)


def test_irrational_phase_is_refused():
    data = LatticeData(("g1",), ((LogReal.of({"1": "1"}),),))
    with pytest.raises(IrrationalPhaseError, match="declare a symbol") as info:
        data.evaluate((I,))
    assert info.value.detail == {"phase": "1"}
    assert info.value.exit_code == 2


def test_undeclared_symbols_are_refused():
    with pytest.raises(UnknownSymbolError):
        LatticeData(("g1",), ((LogReal.of({"a": "1"}),),))
    assert LatticeData(("g1",), ((LogReal.of({"a": "1"}),),), symbols=("a",)).evaluate((C.one(),))[0].modulus == LogReal.of({"a": "1"})


def test_declared_characters_combine_rationally():
    chi = DeclaredCharacter("chi", (I,), (CharacterValue(phase=Phase(Fraction(1, 2))),))
    data = LatticeData(("g1",), characters=(chi,))
    (value,) = data.evaluate((I * 2,))
    assert value.is_one()
    (value,) = data.evaluate((-I,))
    assert value.phase.lift == Fraction(-1, 2)
    with pytest.raises(InvalidInputError):
        data.evaluate((C.one(),))


def test_scaled_lattice_data_raises_values_to_the_power():
    data = _rotation_lattice("1/3").scaled(3)
    (value,) = data.evaluate((I,))
    assert value.phase.lift == Fraction(1, 2)


def _random_weight(rng: random.Random, k: int) -> ComplexWeight:
    def entry():
        return C.element([Fraction(rng.randint(-6, 6), rng.randint(1, 4)), Fraction(rng.randint(-6, 6), rng.randint(1, 4))])

    return ComplexWeight(tuple(entry() for _ in range(k)), tuple(entry() for _ in range(k)))


def test_unitary_parts_on_random_weights():
    rng = random.Random(5150)
    for _ in range(200):
        w = _random_weight(rng, 2)
        beta, gamma = unitary_parts(w)
        assert beta.is_unitary() and gamma.is_unitary()
        assert (w - beta).is_holomorphic()
        delta = solve_delta(beta)
        assert delta.is_holomorphic()
        assert delta.conj() - delta == beta


def test_solve_delta_needs_a_unitary_character():
    w = ComplexWeight((C.one(),), (C.zero(),))
    with pytest.raises(NotUnitaryError):
        solve_delta(w)


def test_base_frame_round_trip():
    frame = BaseFrame.from_vectors([(C.one(), -I)])
    functional = (C.one(), C.zero())
    weight = frame.weight_of(functional)
    assert frame.functional_of(weight) == functional
