"""
Product bases {u e_k (x) v f_l} given by a pair of unitaries.
"""

from typing import Any, Self

import numpy as np
from pydantic import BaseModel, ConfigDict, ValidationError, field_validator, model_validator
from scipy.linalg import polar

from pseudomix.exceptions import InvalidInputError
from pseudomix.linalg import BipartiteDims, HermitianState

UNITARY_TOL = 1e-12


def unitarity_defect(matrix: np.ndarray) -> float:
    """||U^dagger U - I||_F."""
    eye = np.eye(matrix.shape[1])
    return float(np.linalg.norm(matrix.conj().T @ matrix - eye, "fro"))


def two_level_unitary(d: int, p: int, q: int, psi: float, phi: float) -> np.ndarray:
    """Identity on C^d except on the (p, q) plane.

    The (p, q) block is [[c, -e^{-i phi} s], [e^{i phi} s, c]] with
    c = cos(psi / 2), s = sin(psi / 2).
    """
    c, s = np.cos(psi / 2), np.sin(psi / 2)
    phase = np.exp(1j * phi)
    g = np.eye(d, dtype=np.complex128)
    g[p, p] = c
    g[q, p] = phase * s
    g[p, q] = -np.conj(phase) * s
    g[q, q] = c
    return g


class UnitaryPair(BaseModel):
    """Unitaries u (on H1) and v (on H2); the product basis is columns of u (x) v."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    u: np.ndarray
    v: np.ndarray

    @field_validator("u", "v", mode="before")
    @classmethod
    def _check_unitary(cls, value: Any) -> np.ndarray:
        matrix = np.array(value, dtype=np.complex128)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise ValueError(f"expected a square matrix, got shape {matrix.shape}")
        defect = unitarity_defect(matrix)
        if not defect <= UNITARY_TOL:
            raise ValueError(f"matrix is not unitary: ||U^dagger U - I||_F = {defect:.3e}")
        matrix.setflags(write=False)
        return matrix

    @model_validator(mode="after")
    def _nonempty(self) -> Self:
        if self.u.shape[0] == 0 or self.v.shape[0] == 0:
            raise ValueError("factor dimensions must be positive")
        return self

    @classmethod
    def from_matrices(cls, u: Any, v: Any) -> "UnitaryPair":
        try:
            return cls(u=u, v=v)
        except ValidationError as e:
            raise InvalidInputError(f"Invalid unitary pair: {e}") from e

    @classmethod
    def identity(cls, dims: BipartiteDims) -> "UnitaryPair":
        return cls(u=np.eye(dims.d1), v=np.eye(dims.d2))

    @classmethod
    def orthonormalized(cls, u: np.ndarray, v: np.ndarray) -> "UnitaryPair":
        """Nearest unitaries (polar factors) of u and v."""
        return cls.from_matrices(polar(u)[0], polar(v)[0])

    @property
    def dims(self) -> BipartiteDims:
        return BipartiteDims(d1=self.u.shape[0], d2=self.v.shape[0])

    def kron(self) -> np.ndarray:
        """The D x D unitary u (x) v; column k * d2 + l is e_k (x) f_l."""
        return np.kron(self.u, self.v)

    def vectors(self, k: int, l: int) -> tuple[np.ndarray, np.ndarray]:
        return self.u[:, k].copy(), self.v[:, l].copy()

    def rotate(self, M: HermitianState) -> np.ndarray:
        """(u (x) v)^dagger M (u (x) v): M written in this product basis."""
        if M.dims != self.dims:
            raise InvalidInputError(f"Basis dims {self.dims} do not match operator dims {M.dims}")
        W = self.kron()
        return W.conj().T @ M.entries @ W
