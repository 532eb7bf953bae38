"""Parse input documents into presentations, lattice data and complex structures."""
from __future__ import annotations

import hashlib
import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

from pydantic import ValidationError

from packages.documents.schema import SCHEMA_VERSION, ExplicitSublattice, Expectations, InputDocumentModel
from packages.dolbeault.pipelines import SplitAction
from packages.dolbeault.structure import ComplexStructure
from packages.exact.characters import PI_SYMBOL, CharacterValue, LogReal
from packages.exact.fields import FieldSpec, make_field
from packages.lattice.evaluation import UNIT_SYMBOL, DeclaredCharacter, LatticeData
from packages.lie.presentation import LieAlgebraPresentation
from packages.linalg.matrix import Matrix
from packages.shared.errors import InvalidInputError, NonSquareError, ParseError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class InputDocument:
    model: InputDocumentModel
    spec: FieldSpec
    algebra: LieAlgebraPresentation
    j: Optional[ComplexStructure]
    action: Optional[SplitAction]
    digest: str
    path: Optional[Path] = None

    @property
    def name(self) -> str:
        return self.model.name

    @property
    def expectations(self) -> Optional[Expectations]:
        return self.model.expectations

    def require_complex_structure(self) -> ComplexStructure:
        if self.j is None:
            raise InvalidInputError(f"document {self.name} declares no complex_structure")
        return self.j

    def lattice_data(self, g: Optional[LieAlgebraPresentation] = None) -> LatticeData:
        """Lattice data along the V of `g` (default: the declared splitting)."""
        return lattice_data_for(self.model, self.spec, g or self.algebra)


def _parse_json(text: str, source: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{source}: {exc.msg}", line=exc.lineno, column=exc.colno) from None


def _validate_model(data: Any, source: str) -> InputDocumentModel:
    try:
        return InputDocumentModel.model_validate(data)
    except ValidationError as exc:
        first = exc.errors()[0]
        where = ".".join(str(p) for p in first["loc"])
        raise ParseError(f"{source}: {where}: {first['msg']}", path=where) from None


def _indices(g_names: Sequence[str], names: Sequence[str], what: str) -> Tuple[int, ...]:
    out = []
    for name in names:
        if name not in g_names:
            raise InvalidInputError(f"{what} refers to unknown basis element {name!r}")
        out.append(g_names.index(name))
    return tuple(out)


def _algebra(model: InputDocumentModel, spec: FieldSpec) -> LieAlgebraPresentation:
    block = model.algebra
    names = list(block.basis)
    v = _indices(names, block.v, "algebra.v")
    n = _indices(names, block.n, "algebra.n") if block.n is not None else None
    triples = []
    seen = set()
    for entry in block.brackets:
        j, k = _indices(names, [entry.x, entry.y], "algebra.brackets")
        pair = (min(j, k), max(j, k))
        if pair in seen:
            raise InvalidInputError(f"bracket [{entry.x}, {entry.y}] is declared twice")
        seen.add(pair)
        for target, value in entry.result.items():
            (i,) = _indices(names, [target], "algebra.brackets")
            triples.append((j, k, i, value))
    return LieAlgebraPresentation.from_triples(spec, names, triples, v_indices=v, n_indices=n)


def _complex_structure(model: InputDocumentModel, spec: FieldSpec, g: LieAlgebraPresentation) -> Optional[ComplexStructure]:
    block = model.complex_structure
    if block is None:
        return None
    if (block.matrix is None) == (block.images is None):
        raise InvalidInputError("complex_structure needs exactly one of matrix or images")
    names = list(g.basis_names)
    if block.matrix is not None:
        if len(block.matrix) != g.dim or any(len(row) != g.dim for row in block.matrix):
            raise NonSquareError(f"complex_structure.matrix must be {g.dim}x{g.dim}")
        return ComplexStructure(Matrix.from_values(spec, block.matrix))
    images = block.images or {}
    missing = [x for x in names if x not in images]
    if missing:
        raise InvalidInputError(f"complex_structure.images misses {', '.join(missing)}")
    entries = {}
    for x, image in images.items():
        (col,) = _indices(names, [x], "complex_structure.images")
        for y, value in image.items():
            (row,) = _indices(names, [y], "complex_structure.images")
            entries[(row, col)] = spec.parse(value)
    return ComplexStructure(Matrix.from_sparse(spec, g.dim, g.dim, entries))


def _check_symbols(symbols: Sequence[str]) -> None:
    if len(set(symbols)) != len(symbols):
        raise InvalidInputError("symbols must be distinct")
    for s in symbols:
        if s in (PI_SYMBOL, UNIT_SYMBOL):
            raise InvalidInputError(f"symbol name {s!r} is reserved")


def lattice_data_for(model: InputDocumentModel, spec: FieldSpec, g: LieAlgebraPresentation) -> LatticeData:
    block = model.lattice
    v_names = [g.basis_names[i] for i in g.v_indices]
    coordinate_form = any(gen.coordinates for gen in block.generators)
    coordinates = None
    if coordinate_form:
        rows = []
        for gen in block.generators:
            stray = sorted(set(gen.coordinates) - set(v_names))
            if stray:
                raise InvalidInputError(f"generator {gen.name} has coordinates along {', '.join(stray)}, which are not in V")
            rows.append(tuple(LogReal.of(gen.coordinates.get(name)) for name in v_names))
        coordinates = tuple(rows)
    complex_spec = spec.complexified()
    characters = []
    for ch in block.characters:
        stray = sorted(set(ch.functional) - set(v_names))
        if stray:
            raise InvalidInputError(f"character {ch.name} is evaluated on {', '.join(stray)}, which are not in V")
        functional = tuple(complex_spec.parse(ch.functional.get(name, "0")) for name in v_names)
        values = tuple(CharacterValue.from_json(v.model_dump()) for v in ch.values)
        characters.append(DeclaredCharacter(ch.name, functional, values))
    if block.generators:
        generator_names = tuple(gen.name for gen in block.generators)
    else:
        count = len(block.characters[0].values) if block.characters else 0
        generator_names = tuple(f"g{k + 1}" for k in range(count))
    return LatticeData(generator_names, coordinates, tuple(characters), tuple(model.symbols))


def parse_document(text: str, source: str = "<document>", path: Optional[Path] = None) -> InputDocument:
    model = _validate_model(_parse_json(text, source), source)
    if model.schema_version != SCHEMA_VERSION:
        raise ParseError(f"{source}: unsupported schema_version {model.schema_version!r}", path="schema_version")
    spec = make_field(model.field.name, model.field.min_poly, i_adjoined=model.field.i_adjoined, embedding_hint=model.field.embedding_hint)
    _check_symbols(model.symbols)
    g = _algebra(model, spec)
    j = _complex_structure(model, spec, g)
    action = None
    if model.action is not None:
        names = list(g.basis_names)
        action = SplitAction(_indices(names, model.action.base, "action.base"), _indices(names, model.action.ideal, "action.ideal"))
    digest = hashlib.sha256(text.encode("utf-8")).hexdigest()
    doc = InputDocument(model, spec, g, j, action, digest, path)
    doc.lattice_data()
    logger.debug("parse_document: %s, dim %d, %d brackets", model.name, g.dim, len(g.structure))
    return doc


def load_document(path: str | Path) -> InputDocument:
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise InvalidInputError(f"cannot read {p}: {exc.strerror}") from None
    return parse_document(text, source=p.name, path=p)


def load_explicit_sublattice(path: str | Path) -> List[List[int]]:
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise InvalidInputError(f"cannot read {p}: {exc.strerror}") from None
    data = _parse_json(text, p.name)
    try:
        return ExplicitSublattice.model_validate(data).sublattice
    except ValidationError as exc:
        first = exc.errors()[0]
        raise ParseError(f"{p.name}: {first['msg']}", path=".".join(str(x) for x in first["loc"])) from None


def modified_document(doc: InputDocument, g: LieAlgebraPresentation, suffix: str = "modified") -> Dict[str, Any]:
    """The document with its algebra replaced by `g`; expectations are dropped."""
    data = doc.model.model_dump(mode="json", exclude_none=True)
    data.pop("expectations", None)
    data["name"] = f"{doc.name}-{suffix}"
    data["algebra"] = g.to_json()
    return data


def dumps(data: Any) -> str:
    return json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


__all__ = [
    "InputDocument",
    "lattice_data_for",
    "parse_document",
    "load_document",
    "load_explicit_sublattice",
    "modified_document",
    "dumps",
]
