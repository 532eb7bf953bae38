from __future__ import annotations

import random

import pytest
from sympy.combinatorics import Permutation

from packages.exact.fields import RATIONALS
from packages.lie.adjoint import compute_ad_s, derivation_defect
from packages.lie.cochains import betti, ce_complex, sort_sign
from packages.lie.presentation import LieAlgebraPresentation
from packages.lie.validation import jacobi_violation, validate
from packages.linalg.matrix import Matrix, rank
from packages.shared.errors import InvalidInputError

from builders import algebra


def _jacobi_broken() -> LieAlgebraPresentation:
    return algebra(["a", "b", "c"], [("a", "b", "a", "1"), ("a", "c", "b", "1")])


def test_antisymmetry_is_applied_on_input(heisenberg):
    flipped = algebra(["x", "y", "z"], [("y", "x", "z", "-1")])
    assert flipped == heisenberg
    assert heisenberg.constant(2, 1, 0) == -1


def test_duplicate_constants_rejected():
    with pytest.raises(InvalidInputError):
        algebra(["x", "y", "z"], [("x", "y", "z", "1"), ("y", "x", "z", "1")])


def test_splitting_must_partition_the_basis(heisenberg):
    with pytest.raises(InvalidInputError):
        heisenberg.with_splitting([0], [0, 1])


def test_heisenberg_betti(heisenberg):
    assert betti(ce_complex(heisenberg)) == [1, 2, 2, 1]


def test_kodaira_betti(kodaira):
    assert betti(ce_complex(kodaira)) == [1, 3, 4, 3, 1]


def test_iwasawa_betti(iwasawa):
    assert betti(ce_complex(iwasawa)) == [1, 4, 8, 10, 8, 4, 1]


def test_rotation_betti_ignores_the_lattice(rotation):
    assert betti(ce_complex(rotation)) == [1, 1, 1, 1]


def test_betti_with_thread_pool(iwasawa):
    assert betti(ce_complex(iwasawa), threads=4) == betti(ce_complex(iwasawa), threads=1)


def test_validate_accepts_heisenberg(heisenberg):
    report = validate(heisenberg)
    assert report.passed
    assert [c.name for c in report.checks] == [
        "jacobi",
        "n_ideal",
        "derived_in_n",
        "n_nilpotent",
        "v_condition",
        "solvable",
        "unimodular",
    ]


def test_validate_names_the_jacobi_triple():
    report = validate(_jacobi_broken())
    jacobi = report.get("jacobi")
    assert not jacobi.passed
    assert jacobi.detail["triple"] == ["a", "b", "c"]
    assert jacobi_violation(_jacobi_broken()) == (0, 1, 2)


def test_validate_flags_non_unimodular():
    g = algebra(["X", "Y"], [("X", "Y", "Y", "1")], v=["X"])
    report = validate(g)
    assert not report.get("unimodular").passed
    assert report.get("unimodular").detail["elements"] == ["X"]


def test_validate_flags_v_condition():
    g = algebra(["X", "Y", "Z"], [("X", "Y", "Y", "1"), ("X", "Z", "Z", "-1")], v=["X", "Y"])
    report = validate(g)
    assert report.get("n_ideal").passed
    assert not report.get("v_condition").passed
    assert report.get("v_condition").detail["pair"] == ["X", "Y"]
    assert not report.get("derived_in_n").passed


def test_ad_s_of_a_rotation_is_itself(rotation):
    ads = compute_ad_s(rotation)
    assert len(ads) == 1
    assert ads.matrices[0] == rotation.ad(0)


def test_ad_s_drops_the_jordan_block():
    g = algebra(["X", "Y1", "Y2"], [("X", "Y1", "Y1", "1"), ("X", "Y2", "Y1", "1"), ("X", "Y2", "Y2", "1")], v=["X"])
    (s,) = compute_ad_s(g).matrices
    expected = Matrix.from_values(RATIONALS, [[0, 0, 0], [0, 1, 0], [0, 0, 1]])
    assert s == expected
    assert derivation_defect(g, s) is None


def test_derivation_defect_detects_non_derivations(heisenberg):
    d = Matrix.from_values(RATIONALS, [[1, 0, 0], [0, 0, 0], [0, 0, 0]])
    assert derivation_defect(heisenberg, d) == (0, 1)


def test_sort_sign_matches_permutation_parity():
    rng = random.Random(31337)
    for _ in range(200):
        size = rng.randint(1, 7)
        items = rng.sample(range(12), size)
        sign, ordered = sort_sign(items)
        assert list(ordered) == sorted(items)
        ranks = [sorted(items).index(x) for x in items]
        assert sign == (1 if Permutation(ranks).is_even else -1)
    assert sort_sign([1, 2, 1]) is None


def test_two_step_nilpotent_algebras_satisfy_poincare_duality():
    rng = random.Random(2718)
    names = ["x1", "x2", "x3", "z1", "z2"]
    pairs = [("x1", "x2"), ("x1", "x3"), ("x2", "x3")]
    for _ in range(200):
        entries = []
        for x, y in pairs:
            for z in ("z1", "z2"):
                c = rng.randint(-2, 2)
                if c:
                    entries.append((x, y, z, str(c)))
        g = algebra(names, entries)
        assert jacobi_violation(g) is None
        b = betti(ce_complex(g))
        assert b == b[::-1]
        assert b[0] == 1
        image = Matrix.from_values(
            RATIONALS,
            [[g.constant(i, *pair) for pair in ((0, 1), (0, 2), (1, 2))] for i in (3, 4)],
        )
        assert b[1] == 5 - rank(image)
