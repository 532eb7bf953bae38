"""Run reports and regression against document expectations."""
from __future__ import annotations

import logging
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field

from packages.derham.report import DerhamReport
from packages.documents.loader import dumps
from packages.documents.schema import Expectations
from packages.dolbeault.pipelines import HodgeReport
from packages.dolbeault.structure import structure_is_valid
from packages.lie.validation import CheckResult, ValidationReport
from packages.modification.conditions import AlgebraClassification, IntegrabilityReport
from packages.modification.subtorus import parse_subtorus_flag
from packages.shared.config import TOOLKIT_VERSION

logger = logging.getLogger(__name__)

PASS = "pass"
FAIL = "fail"


class ModifyReport(BaseModel):
    subtorus: Dict[str, Any] = Field(default_factory=dict, description="The subtorus choice")
    original: AlgebraClassification = Field(..., description="Flags of g")
    modified: AlgebraClassification = Field(..., description="Flags of g^S")
    kasuya_condition: bool = Field(..., description="No nontrivial product of weights is trivial on Γ")
    mostow_torus: bool = Field(..., description="The auto subtorus is trivial")
    integrability: Optional[IntegrabilityReport] = Field(default=None, description="J on g and on g^S")
    holomorphic_mostow: Dict[str, bool] = Field(default_factory=dict, description="Infinitesimal check on g and on g^S")
    algebra: Dict[str, Any] = Field(default_factory=dict, description="Presentation of g^S")
    emitted: Optional[str] = Field(default=None, description="Path the modified document was written to")


class RunReport(BaseModel):
    command: str
    document: str
    input_hash: str = Field(..., description="sha256 of the input bytes")
    toolkit_version: str = Field(default=TOOLKIT_VERSION)
    verdict: str = Field(default=PASS, description="pass or fail; errors carry their own verdict")
    exit_code: int = 0
    validation: Optional[ValidationReport] = None
    complex_structure: Optional[ValidationReport] = None
    weights: Optional[Dict[str, Any]] = None
    derham: Optional[DerhamReport] = None
    hodge: Optional[HodgeReport] = None
    modify: Optional[ModifyReport] = None
    expectations: List[CheckResult] = Field(default_factory=list, description="Regression against recorded expectations")
    error: Optional[Dict[str, Any]] = None
    timing_seconds: Optional[float] = Field(default=None, description="The only run-dependent field")


def _expect(name: str, expected: Any, got: Any, informational: bool) -> CheckResult:
    ok = expected == got
    if not ok and informational:
        return CheckResult(name=name, passed=True, message="informational mismatch", detail={"expected": expected, "got": got})
    return CheckResult(name=name, passed=ok, message="ok" if ok else "mismatch", detail={"expected": expected, "got": got})


def _pipeline_listed(expected: Expectations, pipeline: str) -> bool:
    return not expected.pipelines or pipeline.split("-")[0] in expected.pipelines


def compare_expectations(expected: Optional[Expectations], report: RunReport) -> List[CheckResult]:
    if expected is None:
        return []
    info = expected.informational
    out: List[CheckResult] = []
    if report.validation is not None and expected.valid is not None:
        out.append(_expect("valid", expected.valid, report.validation.passed, info))
    if report.complex_structure is not None and expected.integrable is not None:
        out.append(_expect("integrable", expected.integrable, structure_is_valid(report.complex_structure), info))
    if report.derham is not None:
        same_mode = parse_subtorus_flag(expected.subtorus)[0].value == report.derham.subtorus.get("mode")
        if expected.betti is not None and same_mode:
            out.append(_expect("betti", expected.betti, report.derham.de_rham_betti, info))
        if expected.betti_g is not None:
            out.append(_expect("betti_g", expected.betti_g, report.derham.betti_g, info))
        if expected.betti_differs_from_g is not None:
            out.append(_expect("betti_differs_from_g", expected.betti_differs_from_g, report.derham.de_rham_betti != report.derham.betti_g, info))
    if report.hodge is not None and expected.hodge is not None and _pipeline_listed(expected, report.hodge.pipeline):
        out.append(_expect("hodge", expected.hodge, report.hodge.hodge, info))
    if report.modify is not None:
        if expected.modified_nilpotent is not None:
            out.append(_expect("modified_nilpotent", expected.modified_nilpotent, report.modify.modified.nilpotent, info))
        hm = expected.holomorphic_mostow
        if hm is not None:
            if hm.original is not None and "original" in report.modify.holomorphic_mostow:
                out.append(_expect("holomorphic_mostow_original", hm.original, report.modify.holomorphic_mostow["original"], info))
            if hm.modified is not None and "modified" in report.modify.holomorphic_mostow:
                out.append(_expect("holomorphic_mostow_modified", hm.modified, report.modify.holomorphic_mostow["modified"], info))
    failed = [c.name for c in out if not c.passed]
    if failed:
        logger.warning("%s: expectation mismatch in %s", report.document, ", ".join(failed))
    return out


def render(report: RunReport, *, timing: bool = True) -> str:
    """Sorted-key JSON; identical inputs give identical bytes once timing is dropped."""
    exclude = None if timing else {"timing_seconds"}
    return dumps(report.model_dump(mode="json", exclude=exclude))


__all__ = ["PASS", "FAIL", "ModifyReport", "RunReport", "compare_expectations", "render"]
