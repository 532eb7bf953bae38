from __future__ import annotations

from pathlib import Path
from typing import Callable

import pytest

from packages.documents.loader import InputDocument, load_document
from packages.dolbeault.structure import ComplexStructure
from packages.lie.presentation import LieAlgebraPresentation

from builders import algebra, complex_structure

PROJECT_ROOT = Path(__file__).resolve().parents[1]
CORPUS_DIR = PROJECT_ROOT / "corpus"


@pytest.fixture
def heisenberg() -> LieAlgebraPresentation:
    return algebra(["x", "y", "z"], [("x", "y", "z", "1")])


@pytest.fixture
def kodaira() -> LieAlgebraPresentation:
    return algebra(["A1", "A2", "B1", "B2"], [("A1", "A2", "B1", "1")])


@pytest.fixture
def rotation() -> LieAlgebraPresentation:
    """R ⋉ R^2 with T rotating (V1, W1)."""
    return algebra(["T", "V1", "W1"], [("T", "V1", "W1", "1"), ("T", "W1", "V1", "-1")], v=["T"])


@pytest.fixture
def iwasawa() -> LieAlgebraPresentation:
    names = ["X1", "Y1", "X2", "Y2", "X3", "Y3"]
    return algebra(
        names,
        [
            ("X1", "X2", "X3", "1"),
            ("X1", "Y2", "Y3", "1"),
            ("Y1", "X2", "Y3", "1"),
            ("Y1", "Y2", "X3", "-1"),
        ],
    )


@pytest.fixture
def iwasawa_j() -> ComplexStructure:
    names = ["X1", "Y1", "X2", "Y2", "X3", "Y3"]
    return ComplexStructure(complex_structure(names, [("X1", "Y1"), ("X2", "Y2"), ("X3", "Y3")]))


@pytest.fixture
def corpus_doc() -> Callable[[str], InputDocument]:
    def load(name: str) -> InputDocument:
        return load_document(CORPUS_DIR / f"{name}.json")

    return load
