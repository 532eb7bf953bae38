from __future__ import annotations

import copy
import json
from pathlib import Path

import pytest

from apps.cli.commands import execute
from packages.documents.loader import modified_document, parse_document
from packages.documents.reports import RunReport, compare_expectations, render
from packages.documents.schema import Expectations
from packages.lie.validation import CheckResult, ValidationReport
from packages.shared.errors import InvalidInputError, NonSquareError, ParseError, UnknownSymbolError


CORPUS_DIR = Path(__file__).resolve().parents[1] / "corpus"

BASE = {
    "schema_version": "1",
    "name": "rotation",
    "field": {"name": "Q", "min_poly": ["1", "0"]},
    "symbols": ["a"],
    "algebra": {
        "basis": ["T", "V1", "W1"],
        "v": ["T"],
        "brackets": [
            {"x": "T", "y": "V1", "result": {"W1": "1"}},
            {"x": "T", "y": "W1", "result": {"V1": "-1"}},
        ],
    },
    "lattice": {"generators": [{"name": "g1", "coordinates": {"T": {"pi": "2"}}}]},
}


def _doc(**changes):
    data = copy.deepcopy(BASE)
    data.update(changes)
    return data


def _parse(data):
    return parse_document(json.dumps(data))


def test_parses_a_minimal_document():
    doc = _parse(BASE)
    assert doc.name == "rotation"
    assert doc.algebra.dim == 3
    assert doc.j is None
    assert doc.expectations is None
    assert len(doc.digest) == 64
    assert doc.lattice_data().generator_names == ("g1",)


def test_malformed_json_reports_line_and_column():
    with pytest.raises(ParseError) as info:
        parse_document('{\n  "name": "x",\n  oops\n}')
    assert info.value.line == 3
    assert info.value.column is not None
    assert info.value.to_dict()["exit_code"] == 2


def test_unknown_keys_are_rejected():
    with pytest.raises(ParseError) as info:
        _parse(_doc(colour="blue"))
    assert info.value.path == "colour"


def test_unsupported_schema_version():
    with pytest.raises(ParseError, match="schema_version"):
        _parse(_doc(schema_version="2"))


def test_brackets_must_name_basis_elements():
    data = _doc()
    data["algebra"]["brackets"].append({"x": "T", "y": "Q", "result": {"V1": "1"}})
    with pytest.raises(InvalidInputError, match="'Q'"):
        _parse(data)


def test_duplicate_bracket_pairs_are_rejected():
    data = _doc()
    data["algebra"]["brackets"].append({"x": "V1", "y": "T", "result": {"W1": "-1"}})
    with pytest.raises(InvalidInputError, match="declared twice"):
        _parse(data)


@pytest.mark.parametrize("symbol", ["pi", "1"])
def test_reserved_symbols(symbol):
    with pytest.raises(InvalidInputError, match="reserved"):
        _parse(_doc(symbols=[symbol]))


def test_undeclared_symbol_in_coordinates():
    data = _doc(lattice={"generators": [{"name": "g1", "coordinates": {"T": {"b": "1"}}}]})
    with pytest.raises(UnknownSymbolError):
        _parse(data)


def test_coordinates_outside_v():
    data = _doc(lattice={"generators": [{"name": "g1", "coordinates": {"V1": {"a": "1"}}}]})
    with pytest.raises(InvalidInputError, match="not in V"):
        _parse(data)


def test_complex_structure_needs_exactly_one_form():
    four = _doc(
        algebra={"basis": ["A1", "A2", "B1", "B2"], "brackets": []},
        lattice={},
        symbols=[],
    )
    with pytest.raises(InvalidInputError, match="exactly one"):
        _parse(dict(four, complex_structure={}))
    with pytest.raises(NonSquareError):
        _parse(dict(four, complex_structure={"matrix": [["0", "-1"], ["1", "0"]]}))
    with pytest.raises(InvalidInputError, match="misses"):
        _parse(dict(four, complex_structure={"images": {"A1": {"A2": "1"}}}))


def test_matrix_and_images_describe_the_same_structure():
    four = _doc(algebra={"basis": ["A1", "A2"], "brackets": []}, lattice={}, symbols=[])
    by_matrix = _parse(dict(four, complex_structure={"matrix": [["0", "-1"], ["1", "0"]]}))
    by_images = _parse(dict(four, complex_structure={"images": {"A1": {"A2": "1"}, "A2": {"A1": "-1"}}}))
    assert by_matrix.j.to_json() == by_images.j.to_json()


def test_modified_document_drops_expectations(corpus_doc):
    doc = corpus_doc("ex_mod_gamma2")
    data = modified_document(doc, doc.algebra)
    assert "expectations" not in data
    assert data["name"] == "ex_mod_gamma2-modified"
    assert _parse(data).algebra.dim == doc.algebra.dim


def _validation_report(passed: bool) -> RunReport:
    report = RunReport(command="validate", document="d", input_hash="0")
    report.validation = ValidationReport(checks=[CheckResult(name="jacobi", passed=passed)])
    return report


def test_compare_expectations():
    results = compare_expectations(Expectations(valid=True), _validation_report(False))
    assert [(c.name, c.passed) for c in results] == [("valid", False)]
    assert compare_expectations(None, _validation_report(True)) == []


def test_informational_mismatches_do_not_fail():
    results = compare_expectations(Expectations(valid=True, informational=True), _validation_report(False))
    assert results[0].passed
    assert results[0].message == "informational mismatch"


def test_render_without_timing_is_deterministic():
    path = CORPUS_DIR / "kodaira.json"
    first = render(execute("validate", path), timing=False)
    second = render(execute("validate", path), timing=False)
    assert first == second
    assert "timing_seconds" not in json.loads(first)
