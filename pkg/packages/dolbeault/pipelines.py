"""Hodge-number pipelines: dolbb, split, breve and the auto cascade.

Every pipeline needs lattice data for the base it runs on, so callers hand in
a resolver that produces LatticeData for a given presentation (the declared
splitting decides which basis elements form V).
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Any, Callable, Dict, List, Optional, Sequence

from pydantic import BaseModel, Field

from packages.dolbeault.bigraded import (
    HodgeTable,
    build_B_gamma,
    dolbeault_preconditions,
    hodge_numbers,
    is_serre_symmetric,
    nilmanifold_assumption,
)
from packages.dolbeault.breve import breve_pair
from packages.dolbeault.shortcuts import ShortcutMode, preferred_mode, shortcut_table
from packages.dolbeault.structure import ComplexStructure, preserves
from packages.lattice.evaluation import LatticeData
from packages.lattice.weight_system import build_weight_system
from packages.lie.adjoint import compute_ad_s
from packages.lie.presentation import LieAlgebraPresentation
from packages.lie.validation import CheckResult
from packages.modification.conditions import AlgebraClassification, classify_algebra
from packages.shared.errors import HypothesisFailure, PipelineDisagreementError, SolvcoError

logger = logging.getLogger(__name__)

LatticeResolver = Callable[[LieAlgebraPresentation], LatticeData]


class Pipeline(Enum):
    DOLBB = "dolbb"
    SPLIT = "split"
    BREVE = "breve"
    AUTO = "auto"


@dataclass(frozen=True)
class SplitAction:
    """A C^n ⋉ N splitting: abelian base acting on the ideal N."""

    base: Sequence[int]
    ideal: Sequence[int]


class PipelineAttempt(BaseModel):
    pipeline: str = Field(..., description="Pipeline that was tried")
    ran: bool = Field(..., description="Whether it produced a table")
    message: str = Field(default="ok", description="Broken precondition when it did not run")


class PipelineComparison(BaseModel):
    against: str = Field(..., description="Pipeline used as the reference")
    index_scale: int = Field(default=1, description="Lifts of the lattice were multiplied by this before comparing")
    agree: bool = Field(..., description="Tables are entry-wise equal")
    reference: HodgeTable = Field(default_factory=list, description="Reference Hodge table")


class HodgeReport(BaseModel):
    pipeline: str = Field(..., description="dolbb, split, breve-abelian, breve-parallelizable or breve-general")
    hodge: HodgeTable = Field(..., description="h^{p,q}, indexed [p][q]")
    serre_symmetric: bool = Field(..., description="h^{p,q} = h^{n-p,n-q}")
    assumptions: List[str] = Field(default_factory=list, description="Declared hypotheses that cannot be verified from the presentation")
    checks: Dict[str, CheckResult] = Field(default_factory=dict, description="Preconditions evaluated on the way")
    attempts: List[PipelineAttempt] = Field(default_factory=list, description="Pipelines tried, in order")
    breve: Optional[Dict[str, Any]] = Field(default=None, description="Character replacements of the modified pair")
    breve_classification: Optional[AlgebraClassification] = Field(default=None, description="Flags of the modified algebra")
    comparison: Optional[PipelineComparison] = Field(default=None, description="Cross-check against another pipeline")
    index_scale: Optional[int] = Field(default=None, description="Finite-index passage needed by the closure subtorus")


def _checks(results: Sequence[CheckResult]) -> Dict[str, CheckResult]:
    return {c.name: c for c in results}


def _report(pipeline: str, table: HodgeTable, **extra: Any) -> HodgeReport:
    symmetric = is_serre_symmetric(table)
    if not symmetric:
        logger.warning("%s: Hodge table is not Serre symmetric", pipeline)
    return HodgeReport(pipeline=pipeline, hodge=table, serre_symmetric=symmetric, **extra)


def run_dolbb(g: LieAlgebraPresentation, j: ComplexStructure, resolve: LatticeResolver, threads: Optional[int] = None) -> HodgeReport:
    ads = compute_ad_s(g)
    checks = dolbeault_preconditions(g, ads, j)
    complex_ = build_B_gamma(g, ads, j, resolve(g))
    table = hodge_numbers(complex_, threads)
    return _report("dolbb", table, assumptions=list(complex_.assumptions), checks=_checks(checks))


def run_split(
    g: LieAlgebraPresentation,
    j: ComplexStructure,
    resolve: LatticeResolver,
    action: Optional[SplitAction],
    threads: Optional[int] = None,
) -> HodgeReport:
    """Same builder, with weights from the semisimple part of the action on the declared ideal."""
    if action is None:
        raise HypothesisFailure("no C^n ⋉ N action declared", hypothesis="split_action")
    h = g.with_splitting(action.base, action.ideal)
    for a in h.v_indices:
        for b in h.v_indices:
            if a < b and h.basis_bracket(a, b):
                raise HypothesisFailure("action base is not abelian", hypothesis="abelian_base")
    if not preserves(h, j, h.v_indices):
        raise HypothesisFailure("J does not preserve the action base", hypothesis="j_preserves_v")
    ads = compute_ad_s(h)
    checks = dolbeault_preconditions(h, ads, j)
    complex_ = build_B_gamma(h, ads, j, resolve(h))
    table = hodge_numbers(complex_, threads)
    return _report("split", table, assumptions=list(complex_.assumptions), checks=_checks(checks))


def _classification(g: LieAlgebraPresentation) -> Optional[AlgebraClassification]:
    try:
        return classify_algebra(build_weight_system(g, compute_ad_s(g)))
    except SolvcoError as exc:
        logger.info("classification of the modified algebra skipped: %s", exc)
        return None


def run_breve(
    g: LieAlgebraPresentation,
    j: ComplexStructure,
    resolve: LatticeResolver,
    mode: Optional[ShortcutMode] = None,
    threads: Optional[int] = None,
) -> HodgeReport:
    ads = compute_ad_s(g)
    data = resolve(g)
    checks = dolbeault_preconditions(g, ads, j)
    bp = breve_pair(g, ads, j, data)
    chosen = mode or preferred_mode(bp.algebra, bp.j)
    table = shortcut_table(bp.algebra, bp.j, chosen, threads)
    scale = bp.index_scale or 1
    reference = hodge_numbers(build_B_gamma(g, ads, j, data, scale=scale), threads)
    comparison = PipelineComparison(against="dolbb", index_scale=scale, agree=reference == table, reference=reference)
    if not comparison.agree:
        logger.error("breve-%s disagrees with dolbb at index scale %d", chosen.value, scale)
        raise PipelineDisagreementError(
            f"breve-{chosen.value} table {table} differs from dolbb table {reference} at index scale {scale}",
            detail={"breve": table, "dolbb": reference, "index_scale": scale, "mode": chosen.value},
        )
    assumptions = [nilmanifold_assumption(bp.algebra, bp.j)]
    return _report(
        f"breve-{chosen.value}",
        table,
        assumptions=assumptions,
        checks=_checks(checks),
        breve=bp.provenance(),
        breve_classification=_classification(bp.algebra),
        comparison=comparison,
        index_scale=bp.index_scale,
    )


def run_hodge(
    g: LieAlgebraPresentation,
    j: ComplexStructure,
    resolve: LatticeResolver,
    pipeline: Pipeline = Pipeline.AUTO,
    *,
    action: Optional[SplitAction] = None,
    mode: Optional[ShortcutMode] = None,
    threads: Optional[int] = None,
) -> HodgeReport:
    """Run one pipeline, or dolbb → split → breve for AUTO, recording every attempt."""
    if pipeline is Pipeline.DOLBB:
        return run_dolbb(g, j, resolve, threads)
    if pipeline is Pipeline.SPLIT:
        return run_split(g, j, resolve, action, threads)
    if pipeline is Pipeline.BREVE:
        return run_breve(g, j, resolve, mode, threads)

    attempts: List[PipelineAttempt] = []
    runners: List[tuple[str, Callable[[], HodgeReport]]] = [
        ("dolbb", lambda: run_dolbb(g, j, resolve, threads)),
        ("split", lambda: run_split(g, j, resolve, action, threads)),
        ("breve", lambda: run_breve(g, j, resolve, mode, threads)),
    ]
    last: Optional[HypothesisFailure] = None
    for name, run in runners:
        try:
            report = run()
        except HypothesisFailure as exc:
            logger.info("auto: %s not applicable: %s", name, exc)
            attempts.append(PipelineAttempt(pipeline=name, ran=False, message=str(exc)))
            last = exc
            continue
        attempts.append(PipelineAttempt(pipeline=name, ran=True))
        report.attempts = attempts
        return report
    assert last is not None
    raise HypothesisFailure(
        "no Hodge pipeline applies: " + "; ".join(f"{a.pipeline}: {a.message}" for a in attempts),
        hypothesis=last.hypothesis,
        detail={"attempts": [a.model_dump() for a in attempts]},
    )


__all__ = [
    "LatticeResolver",
    "Pipeline",
    "SplitAction",
    "PipelineAttempt",
    "PipelineComparison",
    "HodgeReport",
    "run_dolbb",
    "run_split",
    "run_breve",
    "run_hodge",
]
