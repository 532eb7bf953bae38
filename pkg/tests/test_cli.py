from __future__ import annotations

import json
from pathlib import Path

import pytest

from apps.cli.main import main
from packages.documents.loader import load_document

CORPUS_DIR = Path(__file__).resolve().parents[1] / "corpus"

JACOBI_BROKEN = {
    "schema_version": "1",
    "name": "broken",
    "field": {"name": "Q", "min_poly": ["1", "0"]},
    "algebra": {
        "basis": ["a", "b", "c"],
        "brackets": [
            {"x": "a", "y": "b", "result": {"a": "1"}},
            {"x": "a", "y": "c", "result": {"b": "1"}},
        ],
    },
}


def _run(capsys, *argv: str):
    code = main([*argv, "--no-timing"])
    return code, json.loads(capsys.readouterr().out)


def _write(tmp_path: Path, name: str, data: dict) -> str:
    path = tmp_path / name
    path.write_text(json.dumps(data), encoding="utf-8")
    return str(path)


def test_jacobi_violation_exits_with_invalid_input(capsys, tmp_path):
    code, report = _run(capsys, "validate", _write(tmp_path, "broken.json", JACOBI_BROKEN))
    assert code == 2
    assert report["verdict"] == "fail"
    jacobi = report["validation"]["checks"][0]
    assert jacobi["name"] == "jacobi"
    assert jacobi["detail"]["triple"] == ["a", "b", "c"]


def test_betti_on_a_broken_algebra_reports_the_failed_check(capsys, tmp_path):
    code, report = _run(capsys, "betti", _write(tmp_path, "broken.json", JACOBI_BROKEN))
    assert code == 2
    assert report["verdict"] == "invalid_input"
    assert report["error"]["error"] == "ValidationFailure"


def test_unreadable_file(capsys, tmp_path):
    code, report = _run(capsys, "validate", str(tmp_path / "missing.json"))
    assert code == 2
    assert report["document"] == "missing"


def test_mostow_fibration_validate_fails_as_recorded(capsys):
    code, report = _run(capsys, "validate", str(CORPUS_DIR / "mostow_fibration.json"))
    assert code == 2
    assert report["expectations"]
    assert all(c["passed"] for c in report["expectations"])


def test_betti_on_gamma2(capsys):
    code, report = _run(capsys, "betti", str(CORPUS_DIR / "ex_mod_gamma2.json"))
    assert code == 0
    assert report["verdict"] == "pass"
    assert report["derham"]["de_rham_betti"] == [1, 3, 3, 1]
    assert all(c["passed"] for c in report["expectations"])


def test_inconclusive_betti_exits_with_hypothesis_failure(capsys):
    code, report = _run(capsys, "betti", str(CORPUS_DIR / "ex_mod_gamma1.json"), "--subtorus", "full")
    assert code == 1
    assert report["verdict"] == "inconclusive"
    assert report["derham"]["checks"]["pi_s_trivial"] is False


def test_expectation_mismatch_exits_with_internal_error(capsys, tmp_path):
    data = json.loads((CORPUS_DIR / "ex_mod_gamma2.json").read_text(encoding="utf-8"))
    data["expectations"]["betti"] = [1, 1, 1, 1]
    code, report = _run(capsys, "betti", _write(tmp_path, "gamma2.json", data))
    assert code == 3
    assert report["verdict"] == "fail"
    assert [c["name"] for c in report["expectations"] if not c["passed"]] == ["betti"]


def test_modify_emits_a_loadable_document(capsys, tmp_path):
    out = tmp_path / "gamma2_mod.json"
    code, report = _run(capsys, "modify", str(CORPUS_DIR / "ex_mod_gamma2.json"), "--emit", str(out))
    assert code == 0
    assert report["modify"]["modified"]["nilpotent"]
    assert report["modify"]["emitted"] == str(out)
    emitted = load_document(out)
    assert emitted.name == "ex_mod_gamma2-modified"
    assert emitted.expectations is None


def test_json_copy_and_byte_identical_reruns(capsys, tmp_path):
    target = str(CORPUS_DIR / "heisenberg.json")
    copy_path = tmp_path / "report.json"
    assert main(["betti", target, "--no-timing", "--json", str(copy_path)]) == 0
    first = capsys.readouterr().out
    assert main(["betti", target, "--no-timing"]) == 0
    second = capsys.readouterr().out
    assert first == second
    assert copy_path.read_text(encoding="utf-8") == first


def test_hodge_without_complex_structure(capsys):
    code, report = _run(capsys, "hodge", str(CORPUS_DIR / "heisenberg.json"))
    assert code == 2
    assert report["error"]["error"] == "InvalidInputError"


def test_unknown_command_is_rejected():
    with pytest.raises(SystemExit):
        main(["explode", "x.json"])
