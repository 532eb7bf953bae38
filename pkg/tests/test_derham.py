from __future__ import annotations

import random
from fractions import Fraction

import pytest

from packages.derham.nilshadow import a_gamma_subcomplex, nilshadow_complex, twisted_monomials
from packages.derham.report import INCONCLUSIVE, PASS, derham_report, is_poincare_symmetric
from packages.exact.characters import LogReal
from packages.lattice.evaluation import LatticeData, evaluate_lattice
from packages.lattice.weight_system import build_weight_system
from packages.lie.adjoint import compute_ad_s
from packages.lie.cochains import betti
from packages.modification.subtorus import SubtorusMode, choose_subtorus, mostow_torus_check


def _report(doc, mode=SubtorusMode.AUTO):
    g = doc.algebra
    ws = build_weight_system(g, compute_ad_s(g))
    lat = evaluate_lattice(ws.lattice, doc.lattice_data())
    return derham_report(g, ws, lat, choose_subtorus(ws, lat, mode))


@pytest.mark.parametrize(
    "name, expected",
    [
        ("ex_mod_gamma1", [1, 1, 1, 1]),
        ("ex_mod_gamma2", [1, 3, 3, 1]),
        ("heisenberg", [1, 2, 2, 1]),
        ("nakamura", [1, 2, 5, 8, 5, 2, 1]),
        ("real_split_example", [1, 2, 5, 8, 5, 2, 1]),
    ],
)
def test_corpus_betti_numbers(corpus_doc, name, expected):
    report = _report(corpus_doc(name))
    assert report.verdict == PASS
    assert report.de_rham_betti == expected
    assert report.betti_gS == expected
    assert all(report.checks.values())


def test_nakamura_differs_from_the_algebra(corpus_doc):
    report = _report(corpus_doc("nakamura"))
    assert report.betti_g == [1, 2, 3, 4, 3, 2, 1]
    assert report.de_rham_betti != report.betti_g


def test_gamma1_matches_the_algebra(corpus_doc):
    report = _report(corpus_doc("ex_mod_gamma1"))
    assert report.de_rham_betti == report.betti_g
    assert report.subtorus["trivial_sublattice"] == []


def test_full_subtorus_on_gamma1_is_inconclusive(corpus_doc):
    report = _report(corpus_doc("ex_mod_gamma1"), SubtorusMode.FULL)
    assert report.verdict == INCONCLUSIVE
    assert not report.checks["pi_s_trivial"]
    assert report.index_scale == 2
    assert report.betti_A_gamma == [1, 1, 1, 1]
    assert report.betti_gS == [1, 3, 3, 1]


def test_mostow_torus_gives_a_pass_with_trivial_subtorus(corpus_doc):
    for name in ("ex_mod_gamma1", "heisenberg", "kodaira", "real_split_example"):
        doc = corpus_doc(name)
        g = doc.algebra
        ws = build_weight_system(g, compute_ad_s(g))
        lat = evaluate_lattice(ws.lattice, doc.lattice_data())
        if mostow_torus_check(ws, lat):
            report = derham_report(g, ws, lat, choose_subtorus(ws, lat))
            assert report.verdict == PASS
            assert report.subtorus["trivial_sublattice"] == []


def test_a_gamma_admits_only_trivial_monomials(corpus_doc):
    doc = corpus_doc("nakamura")
    g = doc.algebra
    ws = build_weight_system(g, compute_ad_s(g))
    lat = evaluate_lattice(ws.lattice, doc.lattice_data())
    sub = a_gamma_subcomplex(nilshadow_complex(g, ws), lat)
    assert all(lat.is_trivial(m.char_exponent) for m in twisted_monomials(sub))
    assert is_poincare_symmetric(betti(sub))


def test_rotation_angle_decides_the_betti_numbers(rotation):
    ws = build_weight_system(rotation, compute_ad_s(rotation))
    rng = random.Random(60221)
    for _ in range(200):
        angle = Fraction(rng.randint(-12, 12), rng.randint(1, 4))
        if not angle:
            continue
        data = LatticeData(("g1",), ((LogReal.of({"pi": angle}),),))
        lat = evaluate_lattice(ws.lattice, data)
        report = derham_report(rotation, ws, lat, choose_subtorus(ws, lat))
        assert report.verdict == PASS
        expected = [1, 3, 3, 1] if (angle / 2).denominator == 1 else [1, 1, 1, 1]
        assert report.de_rham_betti == expected
