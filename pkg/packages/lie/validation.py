"""Structured validation of presentations.

Every check produces a CheckResult; nothing here raises for a failed check so
callers (the CLI in particular) can print all diagnostics at once.
"""
from __future__ import annotations

import logging
from itertools import combinations
from typing import Any, Dict, List, Optional, Sequence

from pydantic import BaseModel, Field

from packages.exact.fields import FieldElement
from packages.lie.presentation import LieAlgebraPresentation
from packages.linalg.jordan import jordan_chevalley
from packages.linalg.matrix import EchelonBasis, Vector

logger = logging.getLogger(__name__)


class CheckResult(BaseModel):
    name: str = Field(..., description="Stable identifier of the check")
    passed: bool = Field(..., description="Whether the check succeeded")
    message: str = Field(default="", description="Human readable diagnostic")
    detail: Dict[str, Any] = Field(default_factory=dict, description="Machine readable context, e.g. the failing triple")


class ValidationReport(BaseModel):
    checks: List[CheckResult] = Field(default_factory=list, description="Checks in execution order")

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> List[CheckResult]:
        return [c for c in self.checks if not c.passed]

    def get(self, name: str) -> Optional[CheckResult]:
        for c in self.checks:
            if c.name == name:
                return c
        return None


def _ok(name: str, message: str = "ok", **detail: Any) -> CheckResult:
    return CheckResult(name=name, passed=True, message=message, detail=detail)


def _fail(name: str, message: str, **detail: Any) -> CheckResult:
    return CheckResult(name=name, passed=False, message=message, detail=detail)


def jacobi_violation(g: LieAlgebraPresentation) -> Optional[tuple[int, int, int]]:
    """First basis triple (i<j<k) violating the Jacobi identity, or None."""
    for i, j, k in combinations(range(g.dim), 3):
        xi, xj, xk = g.basis_vector(i), g.basis_vector(j), g.basis_vector(k)
        total = g.bracket(g.bracket(xi, xj), xk)
        for a, b in ((g.bracket(xj, xk), xi), (g.bracket(xk, xi), xj)):
            total = tuple(s + t for s, t in zip(total, g.bracket(a, b)))
        if any(not v.is_zero() for v in total):
            return i, j, k
    return None


def _span_closure_series(g: LieAlgebraPresentation, start: Sequence[Vector], act: Sequence[Vector]) -> List[int]:
    """Dimensions of C_1 = span(start), C_{k+1} = span[act, C_k] until stable or zero."""
    dims: List[int] = []
    current = list(start)
    for _ in range(g.dim + 1):
        basis = EchelonBasis(g.spec, g.dim)
        for a in act:
            for c in current:
                basis.add(g.bracket(a, c))
        dims.append(len(basis))
        if not basis.vectors or (len(dims) > 1 and dims[-1] == dims[-2]):
            break
        current = basis.vectors
    return dims


def lower_central_terminates(g: LieAlgebraPresentation, indices: Sequence[int]) -> bool:
    vectors = [g.basis_vector(i) for i in indices]
    if not vectors:
        return True
    return _span_closure_series(g, vectors, vectors)[-1] == 0


def derived_series_terminates(g: LieAlgebraPresentation) -> bool:
    current = [g.basis_vector(i) for i in range(g.dim)]
    for _ in range(g.dim + 1):
        basis = EchelonBasis(g.spec, g.dim)
        for a, b in combinations(current, 2):
            basis.add(g.bracket(a, b))
        if not basis.vectors:
            return True
        if len(basis) == len(current):
            return False
        current = basis.vectors
    return False


def _zero(values: Sequence[FieldElement]) -> bool:
    return all(v.is_zero() for v in values)


def validate(g: LieAlgebraPresentation) -> ValidationReport:
    checks: List[CheckResult] = []
    names = g.basis_names

    triple = jacobi_violation(g)
    if triple is None:
        checks.append(_ok("jacobi"))
    else:
        i, j, k = triple
        checks.append(_fail("jacobi", f"Jacobi identity fails on ({names[i]}, {names[j]}, {names[k]})", triple=[names[i], names[j], names[k]]))

    ideal_fail = None
    for a in range(g.dim):
        for m in g.n_indices:
            if not g.span_contains(g.n_indices, g.bracket(g.basis_vector(a), g.basis_vector(m))):
                ideal_fail = (names[a], names[m])
                break
        if ideal_fail:
            break
    checks.append(_ok("n_ideal") if ideal_fail is None else _fail("n_ideal", f"[{ideal_fail[0]}, {ideal_fail[1]}] leaves n", pair=list(ideal_fail)))

    derived_fail = None
    for a, b in combinations(range(g.dim), 2):
        if not g.span_contains(g.n_indices, g.bracket(g.basis_vector(a), g.basis_vector(b))):
            derived_fail = (names[a], names[b])
            break
    checks.append(_ok("derived_in_n") if derived_fail is None else _fail("derived_in_n", f"[{derived_fail[0]}, {derived_fail[1]}] is not in n", pair=list(derived_fail)))

    if lower_central_terminates(g, g.n_indices):
        checks.append(_ok("n_nilpotent"))
    else:
        checks.append(_fail("n_nilpotent", "lower central series of n does not reach zero"))

    v_fail = None
    for a in g.v_indices:
        s = jordan_chevalley(g.ad(a)).s
        for b in g.v_indices:
            if not _zero(s.apply(g.basis_vector(b))):
                v_fail = (names[a], names[b])
                break
        if v_fail:
            break
    checks.append(_ok("v_condition") if v_fail is None else _fail("v_condition", f"(ad {v_fail[0]})_s({v_fail[1]}) is not zero", pair=list(v_fail)))

    checks.append(_ok("solvable") if derived_series_terminates(g) else _fail("solvable", "derived series does not reach zero"))

    traces = {names[k]: g.ad(k).trace() for k in range(g.dim)}
    bad = [n for n, t in traces.items() if not t.is_zero()]
    checks.append(_ok("unimodular") if not bad else _fail("unimodular", f"trace of ad is nonzero on {', '.join(bad)}", elements=bad))

    report = ValidationReport(checks=checks)
    logger.debug("validate: %d checks, %d failures", len(checks), len(report.failures()))
    return report


__all__ = [
    "CheckResult",
    "ValidationReport",
    "jacobi_violation",
    "lower_central_terminates",
    "derived_series_terminates",
    "validate",
]
