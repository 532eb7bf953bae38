"""Characters of the complex base written as exp(Σ p_l z_l + q_l z̄_l).

z_l are the coordinates dual to a holomorphic frame X_l = A − iJA of the base.
A ComplexWeight converts to and from a functional on V through the matrix Φ
of V-coordinates of (X_1, …, X_k, X̄_1, …, X̄_k).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import List, Sequence, Tuple

from packages.exact.fields import GAUSSIAN_RATIONALS, FieldElement, FieldSpec
from packages.lattice.types import Functional
from packages.linalg.matrix import Matrix, Vector, inverse
from packages.shared.errors import InternalAssertionError, NotUnitaryError


@dataclass(frozen=True)
class ComplexWeight:
    """p: coefficients of z_l; q: coefficients of z̄_l."""

    p: Tuple[FieldElement, ...]
    q: Tuple[FieldElement, ...]

    @classmethod
    def zero(cls, spec: FieldSpec, k: int) -> "ComplexWeight":
        return cls(tuple(spec.zero() for _ in range(k)), tuple(spec.zero() for _ in range(k)))

    def __add__(self, other: "ComplexWeight") -> "ComplexWeight":
        return ComplexWeight(
            tuple(a + b for a, b in zip(self.p, other.p)),
            tuple(a + b for a, b in zip(self.q, other.q)),
        )

    def __neg__(self) -> "ComplexWeight":
        return ComplexWeight(tuple(-a for a in self.p), tuple(-a for a in self.q))

    def __sub__(self, other: "ComplexWeight") -> "ComplexWeight":
        return self + (-other)

    def scale(self, c: object) -> "ComplexWeight":
        return ComplexWeight(tuple(a * c for a in self.p), tuple(a * c for a in self.q))

    def conj(self) -> "ComplexWeight":
        """Weight of the conjugate character: (q̄, p̄)."""
        return ComplexWeight(tuple(a.conj() for a in self.q), tuple(a.conj() for a in self.p))

    def is_zero(self) -> bool:
        return all(a.is_zero() for a in self.p + self.q)

    def is_holomorphic(self) -> bool:
        return all(a.is_zero() for a in self.q)

    def is_unitary(self) -> bool:
        """Re of the exponent vanishes identically, i.e. q = −p̄."""
        return all((b + a.conj()).is_zero() for a, b in zip(self.p, self.q))

    def to_json(self) -> dict:
        return {"p": [a.to_json() for a in self.p], "q": [a.to_json() for a in self.q]}


@dataclass(frozen=True)
class BaseFrame:
    """Holomorphic frame of the base in V-coordinates."""

    vectors: Tuple[Vector, ...]
    phi: Matrix
    phi_inv: Matrix

    @classmethod
    def from_vectors(cls, vectors: Sequence[Vector]) -> "BaseFrame":
        """`vectors` are the V-coordinates of X_1..X_k; conjugates are appended."""
        if not vectors:
            empty = Matrix(GAUSSIAN_RATIONALS, [], 0)
            return cls((), empty, empty)
        spec = vectors[0][0].spec
        columns = list(vectors) + [tuple(c.conj() for c in v) for v in vectors]
        phi = Matrix.from_columns(spec, columns)
        return cls(tuple(vectors), phi, inverse(phi))

    @property
    def k(self) -> int:
        return len(self.vectors)

    def weight_of(self, functional: Functional) -> ComplexWeight:
        if not self.vectors:
            return ComplexWeight((), ())
        values = [sum((f * self.phi[v, c] for v, f in enumerate(functional)), self.phi.spec.zero()) for c in range(2 * self.k)]
        return ComplexWeight(tuple(values[: self.k]), tuple(values[self.k:]))

    def functional_of(self, weight: ComplexWeight) -> Functional:
        if not self.vectors:
            return ()
        row = list(weight.p) + list(weight.q)
        n = self.phi_inv.n_cols
        return tuple(
            sum((row[c] * self.phi_inv[c, v] for c in range(len(row))), self.phi.spec.zero()) for v in range(n)
        )


def unitary_parts(w: ComplexWeight) -> Tuple[ComplexWeight, ComplexWeight]:
    """(β, γ): unitary with α·β⁻¹ and ᾱ·γ⁻¹ holomorphic.

    β = (−q̄, q), γ = (−p, p̄); both identities are re-checked on the result.
    """
    beta = ComplexWeight(tuple(-b.conj() for b in w.q), tuple(w.q))
    gamma = ComplexWeight(tuple(-a for a in w.p), tuple(a.conj() for a in w.p))
    if not (beta.is_unitary() and gamma.is_unitary()):
        raise InternalAssertionError("unitary parts are not unitary")
    if not (w - beta).is_holomorphic() or not (w.conj() - gamma).is_holomorphic():
        raise InternalAssertionError("unitary parts leave an antiholomorphic residue")
    return beta, gamma


def solve_delta(u: ComplexWeight) -> ComplexWeight:
    """Holomorphic δ with δ̄/δ = u for unitary u; δ = (−p_u, 0)."""
    if not u.is_unitary():
        raise NotUnitaryError("solve_delta needs a unitary character", hypothesis="unitary")
    delta = ComplexWeight(tuple(-a for a in u.p), tuple(a.spec.zero() for a in u.p))
    if delta.conj() - delta != u:
        raise InternalAssertionError("δ̄/δ does not recompose to the given unitary character")
    return delta


def base_weights(base: BaseFrame, functionals: Sequence[Functional]) -> List[ComplexWeight]:
    return [base.weight_of(f) for f in functionals]


__all__ = [
    "ComplexWeight",
    "BaseFrame",
    "unitary_parts",
    "solve_delta",
    "base_weights",
]
