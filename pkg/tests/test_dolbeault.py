from __future__ import annotations

import random
from fractions import Fraction
from math import comb

import pytest

from packages.dolbeault import pipelines
from packages.dolbeault.bigraded import ce_dolbeault, hodge_numbers, is_serre_symmetric, torus_table
from packages.dolbeault.pipelines import Pipeline, run_hodge, run_split
from packages.dolbeault.shortcuts import ShortcutMode, abelian_table, preferred_mode, shortcut_table
from packages.dolbeault.structure import (
    ComplexStructure,
    holomorphic_mostow_check,
    is_abelian_structure,
    is_bi_invariant,
    is_integrable,
    structure_is_valid,
    validate_complex_structure,
)
from packages.lie.adjoint import compute_ad_s
from packages.shared.errors import HypothesisFailure, ModeHypothesisFailure, PipelineDisagreementError

from builders import algebra, complex_structure

KODAIRA_TABLE = [[1, 2, 1], [1, 2, 1], [1, 2, 1]]
TORUS_3 = [[1, 3, 3, 1], [3, 9, 9, 3], [3, 9, 9, 3], [1, 3, 3, 1]]
KODAIRA_NAMES = ["A1", "A2", "B1", "B2"]


def _kodaira_j() -> ComplexStructure:
    return ComplexStructure(complex_structure(KODAIRA_NAMES, [("A1", "A2"), ("B1", "B2")]))


def test_iwasawa_is_complex_parallelizable(iwasawa, iwasawa_j):
    assert is_integrable(iwasawa, iwasawa_j)
    assert is_bi_invariant(iwasawa, iwasawa_j)
    assert not is_abelian_structure(iwasawa, iwasawa_j)
    assert preferred_mode(iwasawa, iwasawa_j) is ShortcutMode.PARALLELIZABLE


def test_iwasawa_shortcut_agrees_with_the_full_complex(iwasawa, iwasawa_j):
    expected = [[comb(3, p) * [1, 2, 2, 1][q] for q in range(4)] for p in range(4)]
    assert shortcut_table(iwasawa, iwasawa_j, ShortcutMode.PARALLELIZABLE) == expected
    assert shortcut_table(iwasawa, iwasawa_j, ShortcutMode.GENERAL) == expected
    assert is_serre_symmetric(expected)


def test_abelian_mode_refuses_a_non_abelian_structure(iwasawa, iwasawa_j):
    with pytest.raises(ModeHypothesisFailure):
        shortcut_table(iwasawa, iwasawa_j, ShortcutMode.ABELIAN)


def test_kodaira_abelian_and_general_agree(kodaira):
    j = _kodaira_j()
    assert is_abelian_structure(kodaira, j)
    assert preferred_mode(kodaira, j) is ShortcutMode.ABELIAN
    assert shortcut_table(kodaira, j, ShortcutMode.ABELIAN) == KODAIRA_TABLE
    assert shortcut_table(kodaira, j, ShortcutMode.GENERAL) == KODAIRA_TABLE


def test_kodaira_is_not_parallelizable(kodaira):
    with pytest.raises(ModeHypothesisFailure):
        shortcut_table(kodaira, _kodaira_j(), ShortcutMode.PARALLELIZABLE)


def test_abelian_table_of_an_abelian_algebra_is_the_torus():
    g = algebra(KODAIRA_NAMES, [])
    assert abelian_table(g, _kodaira_j()) == torus_table(2)


def test_torus_table_and_serre_symmetry():
    assert torus_table(2) == [[1, 2, 1], [2, 4, 2], [1, 2, 1]]
    assert is_serre_symmetric(torus_table(3))
    assert not is_serre_symmetric([[1, 0], [1, 1]])


def test_dolbeault_euler_characteristic_vanishes(kodaira):
    b = ce_dolbeault(kodaira, _kodaira_j())
    assert b.euler_characteristic() == 0
    assert b.dims[(1, 1)] == 4


def test_mostow_fibration_structure_is_not_integrable(corpus_doc):
    doc = corpus_doc("mostow_fibration")
    report = validate_complex_structure(doc.algebra, doc.j)
    assert not structure_is_valid(report)
    assert "nijenhuis" in [c.name for c in report.failures()]
    assert not holomorphic_mostow_check(doc.algebra, compute_ad_s(doc.algebra), doc.j)


def test_split_needs_a_declared_action(corpus_doc):
    doc = corpus_doc("kodaira")
    with pytest.raises(HypothesisFailure):
        run_split(doc.algebra, doc.j, doc.lattice_data, None)


def test_kodaira_dolbb(corpus_doc):
    doc = corpus_doc("kodaira")
    report = run_hodge(doc.algebra, doc.j, doc.lattice_data, Pipeline.DOLBB)
    assert report.pipeline == "dolbb"
    assert report.hodge == KODAIRA_TABLE
    assert report.serre_symmetric


@pytest.mark.parametrize("name", ["final_remark", "abelian_example"])
@pytest.mark.parametrize("pipeline", [Pipeline.DOLBB, Pipeline.SPLIT, Pipeline.BREVE])
def test_modified_pair_is_a_torus(corpus_doc, name, pipeline):
    doc = corpus_doc(name)
    report = run_hodge(doc.algebra, doc.j, doc.lattice_data, pipeline, action=doc.action)
    assert report.hodge == TORUS_3
    if report.comparison is not None:
        assert report.comparison.agree


def test_auto_records_the_first_pipeline_that_ran(corpus_doc):
    doc = corpus_doc("final_remark")
    report = run_hodge(doc.algebra, doc.j, doc.lattice_data, Pipeline.AUTO, action=doc.action)
    assert report.pipeline == "dolbb"
    assert [a.pipeline for a in report.attempts] == ["dolbb"]
    assert report.attempts[0].ran


def test_scaled_kodaira_keeps_its_hodge_numbers():
    rng = random.Random(2024)
    j = _kodaira_j()
    for _ in range(200):
        c = Fraction(rng.choice([-1, 1]) * rng.randint(1, 40), rng.randint(1, 40))
        g = algebra(KODAIRA_NAMES, [("A1", "A2", "B1", str(c))])
        table = hodge_numbers(ce_dolbeault(g, j))
        assert table == KODAIRA_TABLE
        assert is_serre_symmetric(table)
        assert [table[0][q] for q in range(3)] == [comb(2, q) for q in range(3)]
        assert sum((-1) ** (p + q) * table[p][q] for p in range(3) for q in range(3)) == 0


# y_k is holomorphic, ybar_k antiholomorphic; each generator is a wedge of two of them.
NONSPLIT_PAIRS = [
    frozenset(pair)
    for a, b in [("2", "3"), ("4", "5")]
    for pair in [("y" + a, "y" + b), ("y" + a, "ybar" + b), ("y" + b, "ybar" + a), ("ybar" + a, "ybar" + b)]
]


def _exterior_counts(generators, size):
    """Bidegree counts of the distinct nonzero monomials the generators span."""
    monomials = {frozenset()}
    for g in generators:
        monomials |= {m | g for m in monomials if not m & g}
    counts = [[0] * size for _ in range(size)]
    for m in monomials:
        holomorphic = sum(1 for f in m if not f.startswith("ybar"))
        counts[holomorphic][len(m) - holomorphic] += 1
    return counts


def _convolve(a, b):
    size = len(a) + len(b) - 1
    out = [[0] * size for _ in range(size)]
    for p, row in enumerate(a):
        for q, x in enumerate(row):
            for r, other in enumerate(b):
                for s, y in enumerate(other):
                    out[p + r][q + s] += x * y
    return out


def test_nonsplit_table_is_the_kodaira_factor_times_the_invariant_wedges(kodaira, corpus_doc):
    factor = hodge_numbers(ce_dolbeault(kodaira, _kodaira_j()))
    wedges = _exterior_counts(NONSPLIT_PAIRS, 5)
    assert wedges[0] == [1, 0, 2, 0, 1]
    assert wedges[1][1] == 4
    expected = _convolve(factor, wedges)
    assert expected == corpus_doc("nonsplit").expectations.hodge


@pytest.mark.slow
def test_nonsplit_dolbb_matches_the_tensor_product(kodaira, corpus_doc):
    doc = corpus_doc("nonsplit")
    report = run_hodge(doc.algebra, doc.j, doc.lattice_data, Pipeline.DOLBB)
    expected = _convolve(hodge_numbers(ce_dolbeault(kodaira, _kodaira_j())), _exterior_counts(NONSPLIT_PAIRS, 5))
    assert report.hodge == expected
    assert report.serre_symmetric


def test_breve_disagreeing_with_dolbb_is_an_internal_error(corpus_doc, monkeypatch):
    doc = corpus_doc("final_remark")
    monkeypatch.setattr(pipelines, "shortcut_table", lambda *args, **kwargs: [[9] * 4 for _ in range(4)])
    with pytest.raises(PipelineDisagreementError) as info:
        run_hodge(doc.algebra, doc.j, doc.lattice_data, Pipeline.BREVE)
    assert info.value.exit_code == 3
    assert info.value.detail["dolbb"] == TORUS_3


def test_parallelizable_nakamura_modes_agree(corpus_doc):
    doc = corpus_doc("nakamura")
    assert is_bi_invariant(doc.algebra, doc.j)
    expected = [[comb(3, p)] * 4 for p in range(4)]
    assert shortcut_table(doc.algebra, doc.j, ShortcutMode.PARALLELIZABLE) == expected
    assert shortcut_table(doc.algebra, doc.j, ShortcutMode.GENERAL) == expected
    for mode in (ShortcutMode.PARALLELIZABLE, ShortcutMode.GENERAL):
        report = run_hodge(doc.algebra, doc.j, doc.lattice_data, Pipeline.BREVE, mode=mode)
        assert report.pipeline == f"breve-{mode.value}"
        assert report.hodge == TORUS_3
        assert report.comparison.agree
