"""Invariant complex structures on presented Lie algebras."""
from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import combinations
from typing import List, Optional, Sequence

from packages.exact.fields import FieldElement
from packages.lie.adjoint import AdSMap, compute_ad_s
from packages.lie.presentation import LieAlgebraPresentation
from packages.lie.validation import CheckResult, ValidationReport
from packages.linalg.matrix import EchelonBasis, Matrix, Vector, vec_sub
from packages.shared.errors import InvalidInputError, SolvcoError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ComplexStructure:
    j_matrix: Matrix

    def __post_init__(self) -> None:
        if not self.j_matrix.is_square():
            raise InvalidInputError("complex structure must be a square matrix")

    @property
    def dim(self) -> int:
        return self.j_matrix.n_rows

    def apply(self, x: Sequence[FieldElement]) -> Vector:
        return self.j_matrix.coerce(x[0].spec).apply(x) if x else ()

    def to_json(self) -> List[List[object]]:
        return self.j_matrix.to_json()


def _zero(values: Sequence[FieldElement]) -> bool:
    return all(v.is_zero() for v in values)


def _check(name: str, failure: Optional[str], **detail: object) -> CheckResult:
    if failure is None:
        return CheckResult(name=name, passed=True, message="ok")
    return CheckResult(name=name, passed=False, message=failure, detail=detail)


def nijenhuis(g: LieAlgebraPresentation, j: ComplexStructure, x: Vector, y: Vector) -> Vector:
    jx, jy = j.apply(x), j.apply(y)
    out = vec_sub(g.bracket(jx, jy), g.bracket(x, y))
    out = vec_sub(out, j.apply(g.bracket(jx, y)))
    return vec_sub(out, j.apply(g.bracket(x, jy)))


def is_integrable(g: LieAlgebraPresentation, j: ComplexStructure) -> bool:
    return all(
        _zero(nijenhuis(g, j, g.basis_vector(a), g.basis_vector(b))) for a, b in combinations(range(g.dim), 2)
    )


def is_abelian_structure(g: LieAlgebraPresentation, j: ComplexStructure, indices: Optional[Sequence[int]] = None) -> bool:
    """[JX, JY] = [X, Y] on every pair of basis elements from `indices` (default: all)."""
    for a, b in combinations(range(g.dim) if indices is None else indices, 2):
        x, y = g.basis_vector(a), g.basis_vector(b)
        if not _zero(vec_sub(g.bracket(j.apply(x), j.apply(y)), g.bracket(x, y))):
            return False
    return True


def is_bi_invariant(g: LieAlgebraPresentation, j: ComplexStructure) -> bool:
    """ad_X ∘ J = J ∘ ad_X for every X, i.e. g is a complex Lie algebra."""
    for a in range(g.dim):
        ad = g.ad(a)
        if not (ad @ j.j_matrix - j.j_matrix @ ad).is_zero():
            return False
    return True


def preserves(g: LieAlgebraPresentation, j: ComplexStructure, indices: Sequence[int]) -> bool:
    return all(g.span_contains(indices, j.apply(g.basis_vector(k))) for k in indices)


def commutes_on(m: Matrix, j: ComplexStructure, vectors: Sequence[Vector]) -> bool:
    jm = j.j_matrix.coerce(m.spec)
    return all(_zero(vec_sub(m.apply(jm.apply(v)), jm.apply(m.apply(v)))) for v in vectors)


def validate_complex_structure(
    g: LieAlgebraPresentation, j: ComplexStructure, ads: Optional[AdSMap] = None
) -> ValidationReport:
    """J² = −I and Nijenhuis are requirements; preserves_n, abelian and adS_commuting are flags."""
    names = g.basis_names
    checks: List[CheckResult] = []
    if j.dim != g.dim:
        checks.append(_check("dimension", f"J is {j.dim}x{j.dim}, algebra has dimension {g.dim}"))
        return ValidationReport(checks=checks)
    checks.append(_check("even_dimension", None if g.dim % 2 == 0 else "odd dimension"))
    square = j.j_matrix @ j.j_matrix + Matrix.identity(g.spec, g.dim)
    checks.append(_check("j_squared", None if square.is_zero() else "J² ≠ −I"))

    bad = None
    for a, b in combinations(range(g.dim), 2):
        if not _zero(nijenhuis(g, j, g.basis_vector(a), g.basis_vector(b))):
            bad = (names[a], names[b])
            break
    checks.append(_check("nijenhuis", None if bad is None else f"Nijenhuis tensor is nonzero on ({bad[0]}, {bad[1]})", pair=list(bad or ())))

    checks.append(_check("preserves_n", None if preserves(g, j, g.n_indices) else "J does not preserve n"))
    checks.append(_check("abelian", None if is_abelian_structure(g, j) else "[JX, JY] ≠ [X, Y] for some pair"))

    if ads is None:
        try:
            ads = compute_ad_s(g)
        except SolvcoError as exc:
            checks.append(_check("adS_commuting", f"ad_s unavailable: {exc}"))
            ads = None
    if ads is not None:
        offenders = [
            names[idx] for idx, m in zip(ads.v_indices, ads.matrices) if not (m @ j.j_matrix - j.j_matrix @ m).is_zero()
        ]
        checks.append(_check("adS_commuting", None if not offenders else f"ad_s does not commute with J for {', '.join(offenders)}", elements=offenders))

    report = ValidationReport(checks=checks)
    logger.debug("validate_complex_structure: %d checks, %d failures", len(checks), len(report.failures()))
    return report


def structure_is_valid(report: ValidationReport) -> bool:
    """The flags preserves_n, abelian and adS_commuting do not make J invalid."""
    required = ("dimension", "even_dimension", "j_squared", "nijenhuis")
    return all(c.passed for c in report.checks if c.name in required)


def generated_subalgebra(g: LieAlgebraPresentation, indices: Sequence[int]) -> List[Vector]:
    basis = EchelonBasis(g.spec, g.dim)
    for k in indices:
        basis.add(g.basis_vector(k))
    grew = True
    while grew:
        grew = False
        current = list(basis.vectors)
        for x, y in combinations(current, 2):
            if basis.add(g.bracket(x, y)):
                grew = True
    return list(basis.vectors)


def holomorphic_mostow_result(g: LieAlgebraPresentation, ads: AdSMap, j: ComplexStructure) -> CheckResult:
    """Infinitesimal holomorphic-Mostow check on n: ad_s and ad of the V-generated subalgebra commute with J|_n."""
    if not preserves(g, j, g.n_indices):
        return _check("holomorphic_mostow", "J does not preserve n", ran="preserves_n")
    n_vectors = [g.basis_vector(k) for k in g.n_indices]
    for idx, m in zip(ads.v_indices, ads.matrices):
        if not commutes_on(m, j, n_vectors):
            return _check("holomorphic_mostow", f"ad_s({g.basis_names[idx]}) does not commute with J on n", ran="ad_s", element=g.basis_names[idx])
    for x in generated_subalgebra(g, g.v_indices):
        if not commutes_on(g.ad_matrix(x), j, n_vectors):
            return _check("holomorphic_mostow", "ad of the V-generated subalgebra does not commute with J on n", ran="ad_subalgebra")
    return CheckResult(name="holomorphic_mostow", passed=True, message="ok", detail={"ran": ["ad_s", "ad_subalgebra"]})


def holomorphic_mostow_check(g: LieAlgebraPresentation, ads: AdSMap, j: ComplexStructure) -> bool:
    return holomorphic_mostow_result(g, ads, j).passed


__all__ = [
    "ComplexStructure",
    "nijenhuis",
    "is_integrable",
    "is_abelian_structure",
    "is_bi_invariant",
    "preserves",
    "commutes_on",
    "validate_complex_structure",
    "structure_is_valid",
    "generated_subalgebra",
    "holomorphic_mostow_result",
    "holomorphic_mostow_check",
]
