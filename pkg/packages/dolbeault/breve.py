"""The modified pair (ğ, J̆).

The S-components β̃_i, γ̃_i of the unitary tags are taken along the closure
subtorus of the tag lattice; δ_i solves δ̄_i/δ_i = β̃_iγ̃_i. The real diagonal
derivation family D(A) acting by β̃_iδ_i on Y_i and γ̃_iδ_i on Ȳ_i is subtracted
from the bracket; J̆ keeps the matrix of J.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import combinations
from typing import Any, Dict, List, Optional, Tuple

from packages.dolbeault.bigraded import TaggedFrame, dolbeault_preconditions, require, tagged_frame
from packages.dolbeault.structure import ComplexStructure, structure_is_valid, validate_complex_structure
from packages.lattice.evaluation import LatticeData, evaluate_lattice
from packages.lattice.types import Functional
from packages.lattice.unitary import ComplexWeight, solve_delta
from packages.lie.adjoint import AdSMap
from packages.lie.presentation import LieAlgebraPresentation
from packages.lie.validation import ValidationReport, validate
from packages.linalg.matrix import Matrix
from packages.modification.modified import checked_algebra, diagonal_derivations, twisted_structure
from packages.modification.subtorus import SubtorusChoice, SubtorusMode, choose_subtorus_on
from packages.shared.errors import ConjugationClosureFailure, HypothesisFailure, InternalAssertionError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BrevePair:
    algebra: LieAlgebraPresentation
    j: ComplexStructure
    source: LieAlgebraPresentation
    choice: SubtorusChoice
    beta_tilde: Tuple[ComplexWeight, ...]
    gamma_tilde: Tuple[ComplexWeight, ...]
    delta: Tuple[ComplexWeight, ...]
    validation: ValidationReport
    tagged: TaggedFrame

    @property
    def n(self) -> int:
        return self.algebra.dim // 2

    @property
    def index_scale(self) -> Optional[int]:
        return self.choice.index_scale

    def provenance(self) -> Dict[str, Any]:
        return {
            "subtorus": self.choice.to_json(),
            "replacements": [
                {"beta_tilde": b.to_json(), "gamma_tilde": c.to_json(), "delta": d.to_json()}
                for b, c, d in zip(self.beta_tilde, self.gamma_tilde, self.delta)
            ],
        }


def require_abelian_base(g: LieAlgebraPresentation) -> None:
    for a, b in combinations(g.v_indices, 2):
        if g.basis_bracket(a, b):
            raise HypothesisFailure(
                f"base is not abelian: [{g.basis_names[a]}, {g.basis_names[b]}] ≠ 0", hypothesis="abelian_base"
            )


def breve_pair(g: LieAlgebraPresentation, ads: AdSMap, j: ComplexStructure, data: LatticeData) -> BrevePair:
    require_abelian_base(g)
    require(dolbeault_preconditions(g, ads, j))
    tf = tagged_frame(g, ads, j)
    frame = tf.frame
    lat = evaluate_lattice(tf.tag_lattice, data)
    choice = choose_subtorus_on(tf.tag_lattice, tf.tag_exponents, lat, SubtorusMode.CLOSURE)

    def s_part(i: int) -> ComplexWeight:
        return frame.base.weight_of(tf.tag_lattice.functional(choice.project(tf.tag_exponents[i])))

    zero = ComplexWeight.zero(frame.spec, frame.k)
    beta_t: List[ComplexWeight] = []
    gamma_t: List[ComplexWeight] = []
    deltas: List[ComplexWeight] = []
    mu: List[ComplexWeight] = []
    mu_bar: List[ComplexWeight] = []
    for i in range(frame.m):
        b = s_part(frame.k + i)
        c = s_part(frame.n + frame.k + i)
        d = solve_delta(b + c)
        on_y, on_y_bar = b + d, c + d
        if on_y.conj() != on_y_bar:
            raise ConjugationClosureFailure(f"replacement on Ȳ_{i + 1} is not the conjugate of the one on Y_{i + 1}")
        beta_t.append(b)
        gamma_t.append(c)
        deltas.append(d)
        mu.append(on_y)
        mu_bar.append(on_y_bar)

    weights = [zero] * frame.k + mu + [zero] * frame.k + mu_bar
    functionals: List[Functional] = [frame.base.functional_of(w) for w in weights]
    q = Matrix.from_columns(frame.spec, list(frame.vectors))
    derivations = diagonal_derivations(q, functionals, len(g.v_indices), real_spec=g.spec, label="breve")
    algebra = checked_algebra(g, twisted_structure(g, derivations))
    if not structure_is_valid(validate_complex_structure(algebra, j)):
        raise InternalAssertionError("J̆ is not an integrable complex structure on the modified algebra")
    report = validate(algebra)
    logger.debug("breve_pair: closure subtorus rank %d, index scale %s, %d brackets", choice.rank, choice.index_scale, len(algebra.structure))
    return BrevePair(
        algebra=algebra,
        j=j,
        source=g,
        choice=choice,
        beta_tilde=tuple(beta_t),
        gamma_tilde=tuple(gamma_t),
        delta=tuple(deltas),
        validation=report,
        tagged=tf,
    )


__all__ = ["BrevePair", "require_abelian_base", "breve_pair"]
