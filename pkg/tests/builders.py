"""Small presentations for tests, written as (x, y, target, coefficient) entries."""
from __future__ import annotations

from typing import Sequence, Tuple

from packages.exact.fields import RATIONALS, FieldSpec
from packages.lie.presentation import LieAlgebraPresentation
from packages.linalg.matrix import Matrix

Entry = Tuple[str, str, str, str]


def algebra(names: Sequence[str], brackets: Sequence[Entry], v: Sequence[str] = (), spec: FieldSpec = RATIONALS) -> LieAlgebraPresentation:
    index = {name: k for k, name in enumerate(names)}
    triples = [(index[x], index[y], index[t], c) for x, y, t, c in brackets]
    return LieAlgebraPresentation.from_triples(spec, names, triples, v_indices=[index[n] for n in v])


def complex_structure(names: Sequence[str], pairs: Sequence[Tuple[str, str]], spec: FieldSpec = RATIONALS) -> Matrix:
    """J with J(a) = b and J(b) = -a for every (a, b)."""
    index = {name: k for k, name in enumerate(names)}
    entries = {}
    for a, b in pairs:
        entries[(index[b], index[a])] = spec.one()
        entries[(index[a], index[b])] = -spec.one()
    return Matrix.from_sparse(spec, len(names), len(names), entries)
