"""Bigraded complexes with ∂̄, the subalgebra B_Γ and Hodge numbers.

Generators are the duals of a frame of g_C whose first half spans g^{1,0}.
A generator may carry a tag: a character t_i of the base, so the generator
stands for the form t_i·(dual of the i-th frame vector). Then

    ∂̄ω_i = Σ_l q_l(t_i) x̄_l ∧ ω_i + (bidegree (p_i, q_i+1) part of −Σ c^i_{ab} ω_a ∧ ω_b)

and ∂̄ extends to monomials by the Leibniz rule. Monomials are admitted when
the product of their tags is trivial on Γ.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from packages.dolbeault.frames import HolomorphicFrame, holomorphic_frame, plain_frame
from packages.dolbeault.structure import (
    ComplexStructure,
    holomorphic_mostow_result,
    is_abelian_structure,
    structure_is_valid,
    validate_complex_structure,
)
from packages.exact.fields import FieldElement, FieldSpec
from packages.lattice.evaluation import LatticeData, LatticeEvaluation, evaluate_lattice
from packages.lattice.unitary import ComplexWeight, unitary_parts
from packages.lattice.weight_system import CharacterLattice, Exponent, check_additivity
from packages.lie.adjoint import AdSMap
from packages.lie.cochains import GeneratorDifferential, Monomial, check_square_zero, differential_matrix, ranks, sort_sign
from packages.lie.presentation import LieAlgebraPresentation, StructureConstants, frame_structure_constants
from packages.lie.validation import CheckResult
from packages.linalg.matrix import Matrix, vec_conj
from packages.shared.errors import HypothesisFailure, InternalAssertionError, NonClosedDifferentialError

logger = logging.getLogger(__name__)

Bidegree = Tuple[int, int]
HodgeTable = List[List[int]]


@dataclass
class BigradedComplex:
    spec: FieldSpec
    n: int
    bidegrees: Tuple[Bidegree, ...]
    bases: Dict[Bidegree, List[Monomial]]
    dbar: Dict[Bidegree, Matrix]
    generator_dbar: GeneratorDifferential
    tag_exponents: Tuple[Exponent, ...] = ()
    assumptions: List[str] = field(default_factory=list)

    @property
    def dims(self) -> Dict[Bidegree, int]:
        return {key: len(b) for key, b in self.bases.items()}

    def euler_characteristic(self) -> int:
        return sum((-1) ** (p + q) * len(b) for (p, q), b in self.bases.items())


@dataclass(frozen=True)
class TaggedFrame:
    """A holomorphic frame with unitary tags on the Y and Ȳ generators."""

    frame: HolomorphicFrame
    constants: StructureConstants
    tags: Tuple[ComplexWeight, ...]
    tag_lattice: CharacterLattice
    tag_exponents: Tuple[Exponent, ...]


def bidegree_of(monomial: Monomial, bidegrees: Sequence[Bidegree]) -> Bidegree:
    p = sum(bidegrees[i][0] for i in monomial)
    return p, len(monomial) - p


def _accumulate(slot: Dict[Monomial, FieldElement], key: Monomial, value: FieldElement) -> None:
    total = slot[key] + value if key in slot else value
    if total.is_zero():
        slot.pop(key, None)
    else:
        slot[key] = total


def dbar_generator_differential(
    constants: StructureConstants,
    bidegrees: Sequence[Bidegree],
    tag_q: Optional[Sequence[Sequence[FieldElement]]] = None,
    conj_base: Sequence[int] = (),
) -> GeneratorDifferential:
    diff: GeneratorDifferential = {i: {} for i in range(len(bidegrees))}
    for i, q in enumerate(tag_q or ()):
        for l, c in enumerate(q):
            if c.is_zero():
                continue
            placed = sort_sign((conj_base[l], i))
            if placed is None:
                raise InternalAssertionError("a base generator carries a nonzero tag")
            sign, key = placed
            _accumulate(diff[i], key, c if sign == 1 else -c)
    for (a, b), vec in constants.items():
        raised = bidegrees[a][1] + bidegrees[b][1]
        for i, c in vec.items():
            if raised == bidegrees[i][1] + 1:
                _accumulate(diff[i], (a, b), -c)
    return diff


def assemble(
    spec: FieldSpec,
    bidegrees: Sequence[Bidegree],
    gen_diff: GeneratorDifferential,
    *,
    admit: Optional[Callable[[Monomial], bool]] = None,
    tag_exponents: Sequence[Exponent] = (),
) -> BigradedComplex:
    n_gens = len(bidegrees)
    n = n_gens // 2
    bases: Dict[Bidegree, List[Monomial]] = {(p, q): [] for p in range(n + 1) for q in range(n + 1)}
    for size in range(n_gens + 1):
        for m in combinations(range(n_gens), size):
            if admit is None or admit(m):
                bases[bidegree_of(m, bidegrees)].append(m)
    check_square_zero((m for layer in bases.values() for m in layer), gen_diff)
    dbar = {
        (p, q): differential_matrix(spec, bases[(p, q)], bases[(p, q + 1)], gen_diff, closure_error=NonClosedDifferentialError)
        for p in range(n + 1)
        for q in range(n)
    }
    logger.debug("assemble: %d generators, %d admitted monomials", n_gens, sum(len(b) for b in bases.values()))
    return BigradedComplex(spec, n, tuple(bidegrees), bases, dbar, gen_diff, tuple(tag_exponents))


def hodge_numbers(b: BigradedComplex, threads: Optional[int] = None) -> HodgeTable:
    """h^{p,q} = dim ker ∂̄^{p,q} − rank ∂̄^{p,q−1}."""
    keys = sorted(b.dbar)
    rank_of = dict(zip(keys, ranks([b.dbar[k] for k in keys], threads)))
    table = [[0] * (b.n + 1) for _ in range(b.n + 1)]
    for (p, q), basis in b.bases.items():
        table[p][q] = len(basis) - rank_of.get((p, q), 0) - rank_of.get((p, q - 1), 0)
    alternating = sum((-1) ** (p + q) * table[p][q] for p in range(b.n + 1) for q in range(b.n + 1))
    if alternating != b.euler_characteristic():
        raise InternalAssertionError("Euler characteristic mismatch between Dolbeault cohomology and cochains")
    return table


def is_serre_symmetric(table: HodgeTable) -> bool:
    n = len(table) - 1
    return all(table[p][q] == table[n - p][n - q] for p in range(n + 1) for q in range(n + 1))


def torus_table(n: int) -> HodgeTable:
    return [[comb(n, p) * comb(n, q) for q in range(n + 1)] for p in range(n + 1)]


def ce_dolbeault(g: LieAlgebraPresentation, j: ComplexStructure) -> BigradedComplex:
    """Untagged ∂̄ complex of (g, J): the Dolbeault cohomology of the Lie algebra."""
    holomorphic = plain_frame(g, j)
    frame = holomorphic + [vec_conj(v) for v in holomorphic]
    constants, _ = frame_structure_constants(g, frame)
    bidegrees = tuple((1, 0) for _ in holomorphic) + tuple((0, 1) for _ in holomorphic)
    return assemble(g.spec.complexified(), bidegrees, dbar_generator_differential(constants, bidegrees))


def dolbeault_preconditions(g: LieAlgebraPresentation, ads: AdSMap, j: ComplexStructure) -> List[CheckResult]:
    report = validate_complex_structure(g, j, ads)
    checks: List[CheckResult] = [
        CheckResult(
            name="integrable",
            passed=structure_is_valid(report),
            message="; ".join(c.message for c in report.failures() if c.name in ("dimension", "even_dimension", "j_squared", "nijenhuis")) or "ok",
        ),
    ]
    for name in ("preserves_n", "adS_commuting"):
        found = report.get(name)
        checks.append(found if found is not None else CheckResult(name=name, passed=False, message="not evaluated"))
    checks.append(holomorphic_mostow_result(g, ads, j))
    return checks


def require(checks: Sequence[CheckResult]) -> None:
    for c in checks:
        if not c.passed:
            raise HypothesisFailure(f"{c.name}: {c.message}", hypothesis=c.name, detail=c.detail)


def tagged_frame(g: LieAlgebraPresentation, ads: AdSMap, j: ComplexStructure) -> TaggedFrame:
    """Frame, frame structure constants and the unitary tags β_i (on Y_i) and γ_i (on Ȳ_i)."""
    frame = holomorphic_frame(g, ads, j)
    spec = frame.spec
    vectors = frame.vectors
    constants, _ = frame_structure_constants(g, list(vectors))
    zero = ComplexWeight.zero(spec, frame.k)
    beta: List[ComplexWeight] = []
    gamma: List[ComplexWeight] = []
    for w in frame.y_weights:
        b, c = unitary_parts(frame.base.weight_of(w))
        beta.append(b)
        gamma.append(c)
    tags = tuple([zero] * frame.k + beta + [zero] * frame.k + gamma)
    functionals = [frame.base.functional_of(t) for t in tags]
    lattice = CharacterLattice.generated_by(functionals, spec, len(g.v_indices))
    exponents = tuple(lattice.exponents_of(f) for f in functionals)
    check_additivity(constants, exponents)
    return TaggedFrame(frame, constants, tags, lattice, exponents)


def build_from_tagged(tf: TaggedFrame, lat: LatticeEvaluation) -> BigradedComplex:
    frame = tf.frame
    conj_base = [frame.conj_x_position(l) for l in range(frame.k)]
    gen_diff = dbar_generator_differential(tf.constants, frame.bidegrees, [t.q for t in tf.tags], conj_base)
    rank = tf.tag_lattice.rank

    def admit(m: Monomial) -> bool:
        acc = [0] * rank
        for i in m:
            acc = [a + b for a, b in zip(acc, tf.tag_exponents[i])]
        return lat.is_trivial(acc)

    return assemble(frame.spec, frame.bidegrees, gen_diff, admit=admit, tag_exponents=tf.tag_exponents)


def nilmanifold_assumption(g: LieAlgebraPresentation, j: ComplexStructure) -> str:
    """H_∂̄(n) ≅ H_∂̄(N/Γ∩N) is declared, and holds automatically when J is abelian on n."""
    if is_abelian_structure(g, j, g.n_indices):
        return "nilmanifold_dolbeault_isomorphism: satisfied (J abelian on n)"
    return "nilmanifold_dolbeault_isomorphism: assumed"


def build_B_gamma(
    g: LieAlgebraPresentation, ads: AdSMap, j: ComplexStructure, data: LatticeData, *, scale: int = 1
) -> BigradedComplex:
    require(dolbeault_preconditions(g, ads, j))
    tf = tagged_frame(g, ads, j)
    lat = evaluate_lattice(tf.tag_lattice, data.scaled(scale))
    out = build_from_tagged(tf, lat)
    out.assumptions.append(nilmanifold_assumption(g, j))
    logger.debug("build_B_gamma: tag lattice rank %d, index scale %d", tf.tag_lattice.rank, scale)
    return out


__all__ = [
    "Bidegree",
    "HodgeTable",
    "BigradedComplex",
    "TaggedFrame",
    "bidegree_of",
    "dbar_generator_differential",
    "assemble",
    "hodge_numbers",
    "is_serre_symmetric",
    "torus_table",
    "ce_dolbeault",
    "dolbeault_preconditions",
    "require",
    "tagged_frame",
    "build_from_tagged",
    "nilmanifold_assumption",
    "build_B_gamma",
]
