"""de Rham Betti numbers of G/Γ through A_Γ and the modified algebra g^S."""
from __future__ import annotations

import logging
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field

from packages.derham.nilshadow import a_gamma_subcomplex, generator_exponents, nilshadow_complex
from packages.lattice.evaluation import LatticeEvaluation
from packages.lattice.weight_system import WeightSystem
from packages.lie.cochains import betti, ce_complex
from packages.lie.presentation import LieAlgebraPresentation
from packages.modification.modified import modified_algebra
from packages.modification.subtorus import SubtorusChoice

logger = logging.getLogger(__name__)

PASS = "pass"
INCONCLUSIVE = "inconclusive"


class DerhamReport(BaseModel):
    checks: Dict[str, bool] = Field(default_factory=dict, description="pi_s_trivial, inclusion, betti_agree, poincare_duality")
    betti_A_gamma: List[int] = Field(default_factory=list, description="Betti numbers of the Γ-invariant subcomplex")
    betti_gS: List[int] = Field(default_factory=list, description="Betti numbers of the modified algebra g^S")
    betti_g: List[int] = Field(default_factory=list, description="Betti numbers of g itself, for comparison")
    de_rham_betti: List[int] = Field(default_factory=list, description="Reported de Rham Betti numbers of G/Γ")
    verdict: str = Field(default=INCONCLUSIVE, description="pass or inconclusive; never a non-isomorphism claim")
    index_scale: Optional[int] = Field(default=None, description="m such that the m-th powers of the generators satisfy π_S(Γ̃) = 1")
    subtorus: Dict[str, Any] = Field(default_factory=dict, description="The subtorus choice the report was computed with")
    admitted_monomials: int = Field(default=0, description="Size of A_Γ")


def is_poincare_symmetric(numbers: List[int]) -> bool:
    return numbers == list(reversed(numbers))


def derham_report(
    g: LieAlgebraPresentation,
    ws: WeightSystem,
    lat: LatticeEvaluation,
    choice: SubtorusChoice,
    threads: Optional[int] = None,
) -> DerhamReport:
    mod = modified_algebra(g, ws, choice)
    pi_s_trivial = all(lat.is_trivial(b) for b in mod.beta_exponents)

    full = nilshadow_complex(g, ws)
    a_gamma = a_gamma_subcomplex(full, lat)
    exponents = generator_exponents(full)
    inclusion = True
    for layer in a_gamma.bases:
        for m in layer:
            e_i = [sum((exponents[i][k] for i in m), 0) for k in range(ws.rank)]
            if list(choice.project(e_i)) != e_i:
                inclusion = False
                break
        if not inclusion:
            break

    betti_a = betti(a_gamma, threads)
    betti_s = betti(ce_complex(mod.algebra), threads)
    betti_g = betti(ce_complex(g), threads)
    agree = betti_a == betti_s
    checks = {
        "pi_s_trivial": pi_s_trivial,
        "inclusion": inclusion,
        "betti_agree": agree,
        "poincare_duality": is_poincare_symmetric(betti_a),
    }
    verdict = PASS if pi_s_trivial and inclusion and agree else INCONCLUSIVE
    logger.debug("derham_report: verdict %s, betti %s", verdict, betti_a)
    return DerhamReport(
        checks=checks,
        betti_A_gamma=betti_a,
        betti_gS=betti_s,
        betti_g=betti_g,
        de_rham_betti=betti_a,
        verdict=verdict,
        index_scale=None if pi_s_trivial else choice.index_scale,
        subtorus=choice.to_json(),
        admitted_monomials=sum(a_gamma.dims),
    )


__all__ = ["PASS", "INCONCLUSIVE", "DerhamReport", "is_poincare_symmetric", "derham_report"]
