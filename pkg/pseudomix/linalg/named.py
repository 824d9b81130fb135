"""
Reference states used as oracles and examples.
"""

import numpy as np

from pseudomix.exceptions import InvalidInputError
from pseudomix.linalg.hermitian import HermitianState


def product_state(e: np.ndarray, f: np.ndarray) -> HermitianState:
    """Projector on the normalized product vector e (x) f."""
    e = np.asarray(e, dtype=np.complex128)
    f = np.asarray(f, dtype=np.complex128)
    psi = np.kron(e / np.linalg.norm(e), f / np.linalg.norm(f))
    return HermitianState.from_matrix(np.outer(psi, psi.conj()), e.size, f.size)


def maximally_entangled(d: int) -> HermitianState:
    """Projector on (|00> + |11> + ... + |d-1 d-1>) / sqrt(d)."""
    if d < 1:
        raise InvalidInputError(f"d must be positive, got {d}")
    psi = np.eye(d, dtype=np.complex128).reshape(d * d) / np.sqrt(d)
    return HermitianState.from_matrix(np.outer(psi, psi.conj()), d, d)


def bell_state() -> HermitianState:
    return maximally_entangled(2)


def maximally_mixed(d1: int, d2: int) -> HermitianState:
    D = d1 * d2
    return HermitianState.from_matrix(np.eye(D) / D, d1, d2)


def werner_state(p: float) -> HermitianState:
    """Two-qubit Werner state p * Bell + (1 - p) * I / 4."""
    if not 0.0 <= p <= 1.0:
        raise InvalidInputError(f"Werner weight must be in [0, 1], got {p}")
    rho = p * bell_state().entries + (1.0 - p) * np.eye(4) / 4
    return HermitianState.from_matrix(rho, 2, 2)
