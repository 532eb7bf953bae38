"""The modified algebra g^S.

The S-component of ad_s acts diagonally on the eigenbasis by the characters
β_i = P·E_i; subtracting it from the bracket gives
[x, y]_S = [x, y] − D(x)y + D(y)x with D(A_v) = Q·diag(β_i(A_v))·Q⁻¹ on V and
zero on n.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from packages.exact.fields import FieldSpec
from packages.lattice.types import Functional
from packages.lattice.weight_system import WeightSystem
from packages.lie.presentation import LieAlgebraPresentation, StructureConstants
from packages.lie.validation import jacobi_violation
from packages.linalg.matrix import Matrix, inverse
from packages.modification.subtorus import SubtorusChoice
from packages.shared.errors import HypothesisFailure, JacobiFailure

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ModifiedAlgebra:
    base: LieAlgebraPresentation
    algebra: LieAlgebraPresentation
    choice: SubtorusChoice
    beta_exponents: Tuple[Tuple[Fraction, ...], ...]
    beta_functionals: Tuple[Functional, ...]
    derivations: Tuple[Matrix, ...]

    @property
    def structure_constants_S(self) -> StructureConstants:
        return self.algebra.structure


def diagonal_derivations(
    eigenbasis: Matrix, functionals: Sequence[Functional], n_v: int, *, real_spec: Optional[FieldSpec] = None, label: str = "modification"
) -> Tuple[Matrix, ...]:
    """Q·diag(f_i(A_v))·Q⁻¹ for every V position v; real matrices over `real_spec` when given."""
    spec = eigenbasis.spec
    back = inverse(eigenbasis)
    dim = eigenbasis.n_rows
    out: List[Matrix] = []
    for v in range(n_v):
        diag = Matrix.from_sparse(spec, dim, dim, {(i, i): f[v] for i, f in enumerate(functionals) if not f[v].is_zero()})
        d = eigenbasis @ diag @ back
        if real_spec is not None:
            if not d.is_real():
                raise HypothesisFailure(
                    f"{label} derivation on V position {v} is not real; the subtorus is not conjugation stable",
                    hypothesis="conjugation_stable_subtorus",
                )
            d = d.coerce(real_spec)
        out.append(d)
    return tuple(out)


def twisted_structure(g: LieAlgebraPresentation, derivations: Sequence[Matrix]) -> StructureConstants:
    """[x_a, x_b] − D(x_a)x_b + D(x_b)x_a, with D(x_a) = derivations[pos] for the pos-th V element."""
    d_of: Dict[int, Matrix] = {idx: derivations[pos] for pos, idx in enumerate(g.v_indices)}
    constants: StructureConstants = {}
    for a in range(g.dim):
        for b in range(a + 1, g.dim):
            vec = g.basis_bracket(a, b)
            if a in d_of:
                for i in range(g.dim):
                    c = d_of[a][i, b]
                    if not c.is_zero():
                        vec[i] = vec.get(i, g.spec.zero()) - c
            if b in d_of:
                for i in range(g.dim):
                    c = d_of[b][i, a]
                    if not c.is_zero():
                        vec[i] = vec.get(i, g.spec.zero()) + c
            if vec:
                constants[(a, b)] = vec
    return constants


def checked_algebra(g: LieAlgebraPresentation, structure: StructureConstants) -> LieAlgebraPresentation:
    out = g.with_structure(structure)
    violation = jacobi_violation(out)
    if violation is not None:
        names = ", ".join(g.basis_names[k] for k in violation)
        raise JacobiFailure(f"modified bracket violates Jacobi on ({names})")
    return out


def modified_algebra(g: LieAlgebraPresentation, ws: WeightSystem, choice: SubtorusChoice) -> ModifiedAlgebra:
    exponents = tuple(choice.project(e) for e in ws.exponents)
    functionals = tuple(ws.lattice.functional(b) for b in exponents)
    derivations = diagonal_derivations(ws.eigenbasis, functionals, len(g.v_indices), real_spec=g.spec)
    algebra = checked_algebra(g, twisted_structure(g, derivations))
    logger.debug("modified_algebra: subtorus rank %d, %d brackets", choice.rank, len(algebra.structure))
    return ModifiedAlgebra(g, algebra, choice, exponents, functionals, derivations)


__all__ = [
    "ModifiedAlgebra",
    "diagonal_derivations",
    "twisted_structure",
    "checked_algebra",
    "modified_algebra",
]
