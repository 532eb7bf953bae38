"""Classification flags and integrability of J before and after modification."""
from __future__ import annotations

import logging

from pydantic import BaseModel, Field

from packages.dolbeault.structure import ComplexStructure, is_integrable
from packages.lattice.weight_system import WeightSystem
from packages.lie.presentation import LieAlgebraPresentation
from packages.modification.modified import modified_algebra
from packages.modification.subtorus import SubtorusChoice

logger = logging.getLogger(__name__)


class AlgebraClassification(BaseModel):
    nilpotent: bool = Field(..., description="All weights of ad_s vanish")
    completely_solvable: bool = Field(..., description="All weights take real values")
    i_type: bool = Field(..., description="(I)-type (imaginary weights): every weight is purely imaginary")
    unimodular: bool = Field(..., description="tr ad_X = 0 for every X")


class IntegrabilityReport(BaseModel):
    integrable_on_g: bool = Field(..., description="Nijenhuis tensor of J vanishes on g")
    integrable_on_modified: bool = Field(..., description="Nijenhuis tensor of J vanishes on g^S")
    made_integrable: bool = Field(..., description="J is integrable on g^S but not on g")


def classify_algebra(ws: WeightSystem) -> AlgebraClassification:
    values = [v for w in ws.weights for v in w]
    g = ws.g
    return AlgebraClassification(
        nilpotent=all(v.is_zero() for v in values),
        completely_solvable=all(v.is_real() for v in values),
        i_type=all(v.is_imaginary() for v in values),
        unimodular=all(g.ad(k).trace().is_zero() for k in range(g.dim)),
    )


def c_mod_integrability(
    g: LieAlgebraPresentation, ws: WeightSystem, j: ComplexStructure, choice: SubtorusChoice
) -> IntegrabilityReport:
    before = is_integrable(g, j)
    after = is_integrable(modified_algebra(g, ws, choice).algebra, j)
    logger.debug("c_mod_integrability: before=%s after=%s", before, after)
    return IntegrabilityReport(integrable_on_g=before, integrable_on_modified=after, made_integrable=after and not before)


__all__ = ["AlgebraClassification", "IntegrabilityReport", "classify_algebra", "c_mod_integrability"]
