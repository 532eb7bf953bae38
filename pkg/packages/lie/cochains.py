"""Exterior-algebra cochain complexes with derivation differentials.

A differential is given on generators as a combination of 2-monomials and
extended by the graded Leibniz rule. Monomials are sorted index tuples; the
wedge sign is the parity of the sorting permutation. Every complex built here
has d∘d = 0 checked at construction.
"""
from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Type

from packages.exact.fields import FieldElement, FieldSpec
from packages.lie.presentation import LieAlgebraPresentation, StructureConstants
from packages.linalg.matrix import Matrix, rank
from packages.shared.config import settings
from packages.shared.errors import DifferentialSquareError, InternalAssertionError, NotClosedUnderDifferentialError

logger = logging.getLogger(__name__)

Monomial = Tuple[int, ...]
GeneratorDifferential = Dict[int, Dict[Monomial, FieldElement]]
Chain = Dict[Monomial, FieldElement]


def sort_sign(sequence: Sequence[int]) -> Tuple[int, Monomial] | None:
    """(sign, sorted) for a sequence of distinct indices; None if an index repeats."""
    if len(set(sequence)) != len(sequence):
        return None
    items = list(sequence)
    sign = 1
    for i in range(len(items)):
        for j in range(len(items) - 1 - i):
            if items[j] > items[j + 1]:
                items[j], items[j + 1] = items[j + 1], items[j]
                sign = -sign
    return sign, tuple(items)


def wedge(a: Monomial, b: Monomial) -> Tuple[int, Monomial] | None:
    return sort_sign(a + b)


def _add(chain: Chain, key: Monomial, value: FieldElement) -> None:
    total = chain.get(key)
    total = value if total is None else total + value
    if total.is_zero():
        chain.pop(key, None)
    else:
        chain[key] = total


def apply_derivation(monomial: Monomial, gen_diff: Mapping[int, Mapping[Monomial, FieldElement]]) -> Chain:
    """d(x_{i1} ∧ … ∧ x_{ip}) = Σ_k (−1)^k x_{i1} ∧ … ∧ d x_{ik} ∧ … ∧ x_{ip}."""
    out: Chain = {}
    for k, gen in enumerate(monomial):
        image = gen_diff.get(gen)
        if not image:
            continue
        left, right = monomial[:k], monomial[k + 1:]
        for term, coefficient in image.items():
            placed = sort_sign(left + term + right)
            if placed is None:
                continue
            sign, key = placed
            if k % 2:
                sign = -sign
            _add(out, key, coefficient if sign == 1 else -coefficient)
    return out


def apply_to_chain(chain: Mapping[Monomial, FieldElement], gen_diff: Mapping[int, Mapping[Monomial, FieldElement]]) -> Chain:
    out: Chain = {}
    for m, c in chain.items():
        for key, value in apply_derivation(m, gen_diff).items():
            _add(out, key, c * value)
    return out


def ce_generator_differential(structure: StructureConstants, n: int, spec: FieldSpec) -> GeneratorDifferential:
    """d x^c = −Σ_{a<b} C^c_{ab} x^a ∧ x^b (so d x(Y, Z) = −x([Y, Z]))."""
    diff: GeneratorDifferential = {c: {} for c in range(n)}
    for (a, b), vec in structure.items():
        for c, value in vec.items():
            _add(diff[c], (a, b), -spec.coerce(value))
    return diff


def differential_matrix(
    spec: FieldSpec,
    source: Sequence[Monomial],
    target: Sequence[Monomial],
    gen_diff: Mapping[int, Mapping[Monomial, FieldElement]],
    *,
    closure_error: Type[InternalAssertionError] = NotClosedUnderDifferentialError,
) -> Matrix:
    """Matrix of d from span(source) into span(target); columns follow source."""
    index = {m: r for r, m in enumerate(target)}
    entries: Dict[Tuple[int, int], FieldElement] = {}
    for col, m in enumerate(source):
        for key, value in apply_derivation(m, gen_diff).items():
            row = index.get(key)
            if row is None:
                raise closure_error(f"d{m} has a component on {key}, which is outside the complex")
            entries[(row, col)] = value
    return Matrix.from_sparse(spec, len(target), len(source), entries)


def check_square_zero(
    basis: Iterable[Monomial], gen_diff: Mapping[int, Mapping[Monomial, FieldElement]]
) -> None:
    for m in basis:
        twice = apply_to_chain(apply_derivation(m, gen_diff), gen_diff)
        if twice:
            raise DifferentialSquareError(f"d∘d is nonzero on monomial {m}")


def ranks(matrices: Sequence[Matrix], threads: Optional[int] = None) -> List[int]:
    """Ranks in input order; per-degree work may run on a thread pool."""
    workers = threads or settings.threads
    if workers <= 1 or len(matrices) <= 1:
        return [rank(m) if m.n_rows and m.n_cols else 0 for m in matrices]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda m: rank(m) if m.n_rows and m.n_cols else 0, matrices))


@dataclass
class CochainComplex:
    spec: FieldSpec
    bases: List[List[Monomial]]
    differentials: List[Matrix]
    generator_differential: GeneratorDifferential = field(default_factory=dict)
    tags: Dict[Monomial, Tuple] = field(default_factory=dict)

    @property
    def dims(self) -> List[int]:
        return [len(b) for b in self.bases]

    def euler_characteristic(self) -> int:
        return sum((-1) ** p * n for p, n in enumerate(self.dims))


def build_complex(
    spec: FieldSpec,
    n_gens: int,
    gen_diff: GeneratorDifferential,
    *,
    admit: Optional[Callable[[Monomial], bool]] = None,
    closure_error: Type[InternalAssertionError] = NotClosedUnderDifferentialError,
) -> CochainComplex:
    bases: List[List[Monomial]] = []
    for p in range(n_gens + 1):
        layer = [m for m in combinations(range(n_gens), p) if admit is None or admit(m)]
        bases.append(layer)
    check_square_zero((m for layer in bases for m in layer), gen_diff)
    differentials = [
        differential_matrix(spec, bases[p], bases[p + 1], gen_diff, closure_error=closure_error)
        for p in range(n_gens)
    ]
    logger.debug("build_complex: %d generators, dims %s", n_gens, [len(b) for b in bases])
    return CochainComplex(spec, bases, differentials, gen_diff)


def ce_complex(g: LieAlgebraPresentation) -> CochainComplex:
    """Chevalley–Eilenberg complex of g over its own field, basis = p-subsets of the dual basis."""
    diff = ce_generator_differential(g.structure, g.dim, g.spec)
    return build_complex(g.spec, g.dim, diff)


def betti(c: CochainComplex, threads: Optional[int] = None) -> List[int]:
    """b_p = dim ker d_p − rank d_{p−1}."""
    rk = ranks(c.differentials, threads)
    out = []
    for p, n in enumerate(c.dims):
        outgoing = rk[p] if p < len(rk) else 0
        incoming = rk[p - 1] if p > 0 else 0
        out.append(n - outgoing - incoming)
    if sum((-1) ** p * b for p, b in enumerate(out)) != c.euler_characteristic():
        raise InternalAssertionError("Euler characteristic mismatch between cohomology and cochains")
    return out


__all__ = [
    "Monomial",
    "GeneratorDifferential",
    "Chain",
    "sort_sign",
    "wedge",
    "apply_derivation",
    "apply_to_chain",
    "ce_generator_differential",
    "differential_matrix",
    "check_square_zero",
    "ranks",
    "CochainComplex",
    "build_complex",
    "ce_complex",
    "betti",
]
