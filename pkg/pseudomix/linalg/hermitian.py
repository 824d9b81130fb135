"""
Dense Hermitian operators on a bipartite Hilbert space.

Matrices are indexed over the composite basis e_i (x) f_j with composite
index ``i * d2 + j``.
"""

from typing import Any, Self

import numpy as np
from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    ValidationError,
    field_validator,
    model_validator,
)

from pseudomix.exceptions import InvalidInputError


HERMITIAN_TOL = 1e-10
DENSITY_TOL = 1e-10


def hermiticity_defect(matrix: np.ndarray) -> float:
    """Largest entry-wise deviation from M = M^dagger."""
    if matrix.size == 0:
        return 0.0
    return float(np.max(np.abs(matrix - matrix.conj().T)))


def _readonly(array: np.ndarray) -> np.ndarray:
    array.setflags(write=False)
    return array


class BipartiteDims(BaseModel):
    """Dimensions of the two factor spaces."""

    model_config = ConfigDict(frozen=True)

    d1: int = Field(ge=1)
    d2: int = Field(ge=1)

    @property
    def D(self) -> int:
        return self.d1 * self.d2

    def composite_index(self, i: int, j: int) -> int:
        if not (0 <= i < self.d1 and 0 <= j < self.d2):
            raise InvalidInputError(f"Index ({i}, {j}) outside {self.d1}x{self.d2}")
        return i * self.d2 + j

    def factor_indices(self, index: int) -> tuple[int, int]:
        if not 0 <= index < self.D:
            raise InvalidInputError(f"Composite index {index} outside [0, {self.D})")
        return divmod(index, self.d2)

    def __str__(self) -> str:
        return f"{self.d1}x{self.d2}"


class HermitianState(BaseModel):
    """A Hermitian D x D matrix on H1 (x) H2.

    Entries within ``HERMITIAN_TOL`` of Hermitian are symmetrized to
    (M + M^dagger) / 2 on construction; anything further off is rejected.
    Use :meth:`from_matrix` to get :class:`InvalidInputError` instead of a
    pydantic ``ValidationError``.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    dims: BipartiteDims
    entries: np.ndarray

    @field_validator("entries", mode="before")
    @classmethod
    def _coerce_entries(cls, value: Any) -> np.ndarray:
        matrix = np.array(value, dtype=np.complex128)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise ValueError(f"expected a square matrix, got shape {matrix.shape}")
        if not np.all(np.isfinite(matrix)):
            raise ValueError("matrix has non-finite entries")
        defect = hermiticity_defect(matrix)
        if defect > HERMITIAN_TOL:
            raise ValueError(
                f"matrix is not Hermitian: max |M - M^dagger| = {defect:.3e}"
            )
        return _readonly((matrix + matrix.conj().T) / 2)

    @model_validator(mode="after")
    def _check_shape(self) -> Self:
        D = self.dims.D
        if self.entries.shape != (D, D):
            raise ValueError(
                f"matrix shape {self.entries.shape} does not match dims {self.dims} "
                f"(expected ({D}, {D}))"
            )
        return self

    @classmethod
    def from_matrix(
        cls, matrix: Any, d1: int, d2: int, *, density: bool = False
    ) -> "HermitianState":
        """Build a state, raising InvalidInputError on bad input.

        With ``density=True`` the unit-trace and PSD conditions are checked too.
        """
        try:
            state = cls(dims=BipartiteDims(d1=d1, d2=d2), entries=matrix)
        except ValidationError as e:
            raise InvalidInputError(f"Invalid Hermitian state: {e}") from e
        if density:
            state.require_density()
        return state

    @classmethod
    def zeros(cls, dims: BipartiteDims) -> "HermitianState":
        return cls(dims=dims, entries=np.zeros((dims.D, dims.D)))

    @property
    def D(self) -> int:
        return self.dims.D

    def trace(self) -> float:
        return float(np.trace(self.entries).real)

    def tensor(self) -> np.ndarray:
        """View as a (d1, d2, d1, d2) tensor."""
        d1, d2 = self.dims.d1, self.dims.d2
        return self.entries.reshape(d1, d2, d1, d2)

    def with_entries(self, matrix: np.ndarray) -> "HermitianState":
        """A new state on the same dims."""
        return HermitianState.from_matrix(matrix, self.dims.d1, self.dims.d2)

    def require_density(self, tol: float = DENSITY_TOL) -> Self:
        """Raise InvalidInputError unless trace is 1 and the spectrum is >= -tol."""
        trace = self.trace()
        if abs(trace - 1.0) > tol:
            raise InvalidInputError(f"Density matrix trace is {trace!r}, expected 1")
        min_eigenvalue = float(np.linalg.eigvalsh(self.entries)[0])
        if min_eigenvalue < -tol:
            raise InvalidInputError(
                f"Density matrix is not positive semidefinite "
                f"(min eigenvalue {min_eigenvalue:.3e})"
            )
        return self

    def __add__(self, other: "HermitianState") -> "HermitianState":
        _require_same_dims(self, other)
        return self.with_entries(self.entries + other.entries)

    def __sub__(self, other: "HermitianState") -> "HermitianState":
        _require_same_dims(self, other)
        return self.with_entries(self.entries - other.entries)


class SpectralDecomposition(BaseModel):
    """Eigenvalues (descending) with orthonormal eigenvector columns."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        vectors = self.eigenvectors
        return (vectors * self.eigenvalues) @ vectors.conj().T

    def coefficients(self, t: int, dims: BipartiteDims) -> np.ndarray:
        """Column t as a (d1, d2) coefficient array."""
        return self.eigenvectors[:, t].reshape(dims.d1, dims.d2)


def _require_same_dims(X: HermitianState, Y: HermitianState) -> None:
    if X.dims != Y.dims:
        raise InvalidInputError(f"Dimension mismatch: {X.dims} vs {Y.dims}")


def eigh(M: HermitianState) -> SpectralDecomposition:
    """Spectral decomposition with eigenvalues sorted in descending order."""
    eigenvalues, eigenvectors = np.linalg.eigh(M.entries)
    order = np.argsort(-eigenvalues, kind="stable")
    return SpectralDecomposition(
        eigenvalues=_readonly(eigenvalues[order]),
        eigenvectors=_readonly(eigenvectors[:, order]),
    )


def hs_inner(X: HermitianState, Y: HermitianState) -> complex:
    """Hilbert-Schmidt inner product Tr X^dagger Y."""
    _require_same_dims(X, Y)
    return complex(np.vdot(X.entries, Y.entries))


def fro_norm(X: HermitianState) -> float:
    return float(np.linalg.norm(X.entries, "fro"))


def op_norm(X: HermitianState) -> float:
    """Largest absolute eigenvalue."""
    if X.D == 0:
        return 0.0
    return float(np.max(np.abs(np.linalg.eigvalsh(X.entries))))
