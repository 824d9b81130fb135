from enum import StrEnum
from typing import Any

import numpy as np
from pydantic import BaseModel, ConfigDict

from pseudomix.linalg import DENSITY_TOL, hermiticity_defect


class ViolationKind(StrEnum):
    SHAPE = "shape"
    FINITE = "finite"
    HERMITICITY = "hermiticity"
    TRACE = "trace"
    POSITIVITY = "positivity"


class Violation(BaseModel):
    """One failed density-matrix property with its measured magnitude."""

    model_config = ConfigDict(frozen=True)

    kind: ViolationKind
    magnitude: float
    message: str

    def __str__(self) -> str:
        return f"{self.kind}: {self.message}"


def validate_density(
    M: Any, tol: float = DENSITY_TOL, *, expected_size: int | None = None
) -> list[Violation]:
    """Check M against the density-matrix conditions.

    Returns an empty list for a valid density matrix. Structural failures
    (shape, non-finite entries) are reported alone since the spectral checks
    are meaningless after them.
    """
    try:
        matrix = np.array(M, dtype=np.complex128)
    except (TypeError, ValueError) as e:
        return [Violation(kind=ViolationKind.SHAPE, magnitude=float("nan"), message=str(e))]

    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        return [
            Violation(
                kind=ViolationKind.SHAPE,
                magnitude=float("nan"),
                message=f"expected a square matrix, got shape {matrix.shape}",
            )
        ]
    if expected_size is not None and matrix.shape[0] != expected_size:
        return [
            Violation(
                kind=ViolationKind.SHAPE,
                magnitude=float(matrix.shape[0]),
                message=f"expected {expected_size} rows, got {matrix.shape[0]}",
            )
        ]
    if not np.all(np.isfinite(matrix)):
        return [
            Violation(
                kind=ViolationKind.FINITE,
                magnitude=float("nan"),
                message="matrix has non-finite entries",
            )
        ]

    violations = []
    defect = hermiticity_defect(matrix)
    if defect > tol:
        violations.append(
            Violation(
                kind=ViolationKind.HERMITICITY,
                magnitude=defect,
                message=f"max |M - M^dagger| = {defect:.3e}",
            )
        )
    trace_error = abs(np.trace(matrix) - 1.0)
    if trace_error > tol:
        violations.append(
            Violation(
                kind=ViolationKind.TRACE,
                magnitude=float(trace_error),
                message=f"|Tr M - 1| = {trace_error:.3e}",
            )
        )
    if matrix.size:
        hermitian_part = (matrix + matrix.conj().T) / 2
        min_eigenvalue = float(np.linalg.eigvalsh(hermitian_part)[0])
        if min_eigenvalue < -tol:
            violations.append(
                Violation(
                    kind=ViolationKind.POSITIVITY,
                    magnitude=-min_eigenvalue,
                    message=f"min eigenvalue {min_eigenvalue:.3e}",
                )
            )
    return violations
