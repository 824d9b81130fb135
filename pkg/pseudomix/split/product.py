"""
Split of a Hermitian operator into its product-diagonal part and the rest.

For a basis {e_k (x) f_l}, M = A + H where A keeps the diagonal matrix
elements <e_k f_l|M|e_k f_l> and H = M - A holds every other element, i.e.
the sum over all (i, j) != (k, l). The two parts are HS-orthogonal and H is
traceless.
"""

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator

from pseudomix.exceptions import InvalidInputError
from pseudomix.linalg import HermitianState, fro_norm
from pseudomix.split.basis import UnitaryPair

WEIGHT_DUST = 1e-12
UNIT_TOL = 1e-12


class ProductTerm(BaseModel):
    """weight * |vec1 (x) vec2><vec1 (x) vec2|, banked at extraction ``step``."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    weight: float
    vec1: np.ndarray
    vec2: np.ndarray
    step: int = Field(default=0, ge=0)

    @field_validator("vec1", "vec2", mode="before")
    @classmethod
    def _unit_vector(cls, value) -> np.ndarray:
        vec = np.array(value, dtype=np.complex128).reshape(-1)
        norm = np.linalg.norm(vec)
        if abs(norm - 1.0) > UNIT_TOL:
            raise ValueError(f"vector norm is {norm!r}, expected 1")
        vec.setflags(write=False)
        return vec

    def product_vector(self) -> np.ndarray:
        return np.kron(self.vec1, self.vec2)

    def projector(self) -> np.ndarray:
        psi = self.product_vector()
        return np.outer(psi, psi.conj())

    def fidelity(self, other: "ProductTerm") -> float:
        """|<vec1|vec1'>|^2 |<vec2|vec2'>|^2, the overlap of the two projectors."""
        return float(
            abs(np.vdot(self.vec1, other.vec1)) ** 2
            * abs(np.vdot(self.vec2, other.vec2)) ** 2
        )


class SplitResult(BaseModel):
    """Diagonal weights of M in ``basis`` plus the off-diagonal remainder."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    basis: UnitaryPair
    diag_weights: np.ndarray  # shape (d1, d2), indexed by (k, l)
    remainder: HermitianState
    tr_a2: float
    tr_h2: float

    def diag_part(self) -> HermitianState:
        return diagonal_operator(self.basis, self.diag_weights)


def diagonal_weights(M: HermitianState, basis: UnitaryPair) -> np.ndarray:
    """<e_k f_l|M|e_k f_l> for all (k, l), as a (d1, d2) real array."""
    if M.dims != basis.dims:
        raise InvalidInputError(f"Basis dims {basis.dims} do not match operator dims {M.dims}")
    W = basis.kron()
    weights = np.einsum("rc,rs,sc->c", W.conj(), M.entries, W).real
    return weights.reshape(M.dims.d1, M.dims.d2)


def diagonal_operator(basis: UnitaryPair, weights: np.ndarray) -> HermitianState:
    """sum_{kl} weights[k, l] |e_k f_l><e_k f_l| in the computational basis."""
    dims = basis.dims
    W = basis.kron()
    matrix = (W * np.asarray(weights, dtype=float).reshape(-1)) @ W.conj().T
    return HermitianState.from_matrix(matrix, dims.d1, dims.d2)


def split(M: HermitianState, basis: UnitaryPair) -> SplitResult:
    """Orthogonal split M = A + H for the product basis ``basis``."""
    weights = diagonal_weights(M, basis)
    remainder = M - diagonal_operator(basis, weights)
    return SplitResult(
        basis=basis,
        diag_weights=weights,
        remainder=remainder,
        tr_a2=float(np.sum(weights**2)),
        tr_h2=fro_norm(remainder) ** 2,
    )


def objective(M: HermitianState, basis: UnitaryPair) -> float:
    """Tr A^2 = sum_{kl} <e_k f_l|M|e_k f_l>^2, without forming the remainder."""
    return float(np.sum(diagonal_weights(M, basis) ** 2))


def kept_weights(weights: np.ndarray, prune: float) -> np.ndarray:
    """weights with entries at or below max(prune, dust) set to zero."""
    threshold = max(prune, WEIGHT_DUST)
    return np.where(np.abs(weights) > threshold, weights, 0.0)


def diag_to_terms(s: SplitResult, prune: float, *, step: int = 0) -> list[ProductTerm]:
    """One ProductTerm per (k, l) with |weight| > prune."""
    weights = kept_weights(s.diag_weights, prune)
    d1, d2 = weights.shape
    terms = []
    for k in range(d1):
        for l in range(d2):
            weight = float(weights[k, l])
            if weight == 0.0:
                continue
            vec1, vec2 = s.basis.vectors(k, l)
            terms.append(ProductTerm(weight=weight, vec1=vec1, vec2=vec2, step=step))
    return terms
