"""The four commands, each turning one input document into a RunReport."""
from __future__ import annotations

import logging
import time
from pathlib import Path
from typing import Any, Callable, Dict, Optional

from packages.derham.report import INCONCLUSIVE, derham_report
from packages.documents.loader import InputDocument, dumps, load_document, load_explicit_sublattice, modified_document
from packages.documents.reports import FAIL, PASS, ModifyReport, RunReport, compare_expectations
from packages.dolbeault.pipelines import Pipeline, run_hodge
from packages.dolbeault.shortcuts import ShortcutMode
from packages.dolbeault.structure import holomorphic_mostow_check, structure_is_valid, validate_complex_structure
from packages.lattice.evaluation import LatticeEvaluation, evaluate_lattice
from packages.lattice.weight_system import WeightSystem, build_weight_system
from packages.lie.adjoint import compute_ad_s
from packages.lie.validation import validate
from packages.modification.conditions import c_mod_integrability, classify_algebra
from packages.modification.modified import modified_algebra
from packages.modification.subtorus import (
    SubtorusChoice,
    SubtorusMode,
    choose_subtorus,
    kasuya_condition,
    mostow_torus_check,
    parse_subtorus_flag,
)
from packages.shared.config import settings
from packages.shared.errors import (
    EXIT_HYPOTHESIS,
    EXIT_INTERNAL,
    EXIT_INVALID_INPUT,
    HypothesisFailure,
    InvalidInputError,
    SolvcoError,
    ValidationFailure,
)

logger = logging.getLogger(__name__)


def _weights_summary(ws: WeightSystem) -> Dict[str, Any]:
    return {
        "rank": ws.rank,
        "char_basis": [[v.to_json() for v in chi] for chi in ws.char_basis],
        "exponents": [list(e) for e in ws.exponents],
    }


def require_valid(doc: InputDocument) -> None:
    """Raise ValidationFailure for the first failing presentation check."""
    report = validate(doc.algebra)
    for check in report.failures():
        raise ValidationFailure(check.name, check.message)


def _weight_system(doc: InputDocument) -> WeightSystem:
    g = doc.algebra
    return build_weight_system(g, compute_ad_s(g))


def _subtorus(ws: WeightSystem, lat: LatticeEvaluation, flag: str) -> SubtorusChoice:
    mode, path = parse_subtorus_flag(flag)
    explicit = load_explicit_sublattice(path) if mode is SubtorusMode.EXPLICIT and path else None
    return choose_subtorus(ws, lat, mode, explicit)


def cmd_validate(doc: InputDocument, **_: Any) -> RunReport:
    report = RunReport(command="validate", document=doc.name, input_hash=doc.digest)
    report.validation = validate(doc.algebra)
    passed = report.validation.passed
    if doc.j is not None:
        report.complex_structure = validate_complex_structure(doc.algebra, doc.j)
        passed = passed and structure_is_valid(report.complex_structure)
    if report.validation.passed:
        report.weights = _weights_summary(_weight_system(doc))
    if not passed:
        report.verdict = FAIL
        report.exit_code = EXIT_INVALID_INPUT
    return report


def cmd_betti(doc: InputDocument, *, subtorus: str = "auto", threads: Optional[int] = None, **_: Any) -> RunReport:
    require_valid(doc)
    ws = _weight_system(doc)
    lat = evaluate_lattice(ws.lattice, doc.lattice_data())
    choice = _subtorus(ws, lat, subtorus)
    report = RunReport(command="betti", document=doc.name, input_hash=doc.digest)
    report.derham = derham_report(doc.algebra, ws, lat, choice, threads)
    if report.derham.verdict != PASS:
        report.verdict = INCONCLUSIVE
        report.exit_code = EXIT_HYPOTHESIS
    return report


def cmd_hodge(
    doc: InputDocument,
    *,
    pipeline: str = "auto",
    mode: Optional[str] = None,
    threads: Optional[int] = None,
    **_: Any,
) -> RunReport:
    require_valid(doc)
    j = doc.require_complex_structure()
    check = validate_complex_structure(doc.algebra, j)
    if not structure_is_valid(check):
        first = check.failures()[0]
        raise ValidationFailure(first.name, first.message)
    try:
        chosen = Pipeline(pipeline)
        shortcut = ShortcutMode(mode) if mode else None
    except ValueError as exc:
        raise InvalidInputError(str(exc)) from None
    report = RunReport(command="hodge", document=doc.name, input_hash=doc.digest)
    report.complex_structure = check
    report.hodge = run_hodge(doc.algebra, j, doc.lattice_data, chosen, action=doc.action, mode=shortcut, threads=threads)
    return report


def cmd_modify(
    doc: InputDocument,
    *,
    subtorus: str = "auto",
    emit: Optional[str] = None,
    threads: Optional[int] = None,
    **_: Any,
) -> RunReport:
    require_valid(doc)
    g = doc.algebra
    ws = _weight_system(doc)
    lat = evaluate_lattice(ws.lattice, doc.lattice_data())
    choice = _subtorus(ws, lat, subtorus)
    mod = modified_algebra(g, ws, choice)
    mod_ads = compute_ad_s(mod.algebra)
    result = ModifyReport(
        subtorus=choice.to_json(),
        original=classify_algebra(ws),
        modified=classify_algebra(build_weight_system(mod.algebra, mod_ads)),
        kasuya_condition=kasuya_condition(ws, lat),
        mostow_torus=mostow_torus_check(ws, lat),
        algebra=mod.algebra.to_json(),
    )
    if doc.j is not None:
        result.integrability = c_mod_integrability(g, ws, doc.j, choice)
        result.holomorphic_mostow = {
            "original": holomorphic_mostow_check(g, ws.ads, doc.j),
            "modified": holomorphic_mostow_check(mod.algebra, mod_ads, doc.j),
        }
    if emit:
        Path(emit).write_text(dumps(modified_document(doc, mod.algebra)), encoding="utf-8")
        result.emitted = emit
        logger.info("modify: wrote %s", emit)
    report = RunReport(command="modify", document=doc.name, input_hash=doc.digest)
    report.modify = result
    return report


COMMANDS: Dict[str, Callable[..., RunReport]] = {
    "validate": cmd_validate,
    "betti": cmd_betti,
    "hodge": cmd_hodge,
    "modify": cmd_modify,
}

VERDICTS = {1: "hypothesis_failure", 2: "invalid_input", 3: "internal_error"}


def execute(command: str, path: str | Path, **options: Any) -> RunReport:
    """Load, run and regress; every SolvcoError becomes a report with its exit code."""
    started = time.perf_counter()
    options.setdefault("threads", settings.threads)
    name = Path(path).stem
    doc: Optional[InputDocument] = None
    try:
        doc = load_document(path)
        report = COMMANDS[command](doc, **options)
    except SolvcoError as exc:
        if isinstance(exc, HypothesisFailure):
            logger.info("%s %s: %s", command, name, exc)
        else:
            logger.error("%s %s: %s", command, name, exc)
        report = RunReport(
            command=command,
            document=doc.name if doc is not None else name,
            input_hash=doc.digest if doc is not None else "",
            verdict=VERDICTS.get(exc.exit_code, "internal_error"),
            exit_code=exc.exit_code,
            error=exc.to_dict(),
        )
    if doc is not None and report.error is None:
        report.expectations = compare_expectations(doc.expectations, report)
        if report.exit_code == 0 and any(not c.passed for c in report.expectations):
            report.verdict = FAIL
            report.exit_code = EXIT_INTERNAL
    report.timing_seconds = round(time.perf_counter() - started, 3)
    return report


__all__ = ["COMMANDS", "execute", "require_valid", "cmd_validate", "cmd_betti", "cmd_hodge", "cmd_modify"]
