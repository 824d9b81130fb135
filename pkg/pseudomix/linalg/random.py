"""
Seeded random states and unitaries.
"""

import numpy as np
from scipy.stats import unitary_group

from pseudomix.exceptions import InvalidInputError
from pseudomix.linalg.hermitian import BipartiteDims, HermitianState

Seed = int | np.random.Generator


def _rng(seed: Seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def ginibre_matrix(nrow: int, ncol: int, seed: Seed) -> np.ndarray:
    """Complex matrix with independent standard normal real and imaginary parts."""
    rng = _rng(seed)
    return rng.standard_normal((nrow, ncol)) + 1j * rng.standard_normal((nrow, ncol))


def random_density(dims: BipartiteDims, rank: int, seed: Seed) -> HermitianState:
    """Random density matrix of the given rank from the induced measure.

    Samples G (D x rank) from the Ginibre ensemble and returns G G^dagger / Tr.
    """
    if not 1 <= rank <= dims.D:
        raise InvalidInputError(f"rank must be in [1, {dims.D}], got {rank}")
    mat = ginibre_matrix(dims.D, rank, seed)
    rho = mat @ mat.conj().T
    rho = (rho + rho.conj().T) / 2
    return HermitianState.from_matrix(rho / np.trace(rho).real, dims.d1, dims.d2)


def haar_unitary(d: int, seed: Seed) -> np.ndarray:
    """Haar-random d x d unitary."""
    if d == 1:
        return np.ones((1, 1), dtype=np.complex128)
    return np.asarray(unitary_group.rvs(d, random_state=_rng(seed)), dtype=np.complex128)


def random_unit_vector(d: int, seed: Seed) -> np.ndarray:
    vec = ginibre_matrix(d, 1, seed)[:, 0]
    return vec / np.linalg.norm(vec)


def random_product_mixture(
    dims: BipartiteDims, n_terms: int, seed: Seed
) -> HermitianState:
    """Separable state: random convex mixture of random product projectors."""
    if n_terms < 1:
        raise InvalidInputError(f"n_terms must be positive, got {n_terms}")
    rng = _rng(seed)
    weights = rng.dirichlet(np.ones(n_terms))
    rho = np.zeros((dims.D, dims.D), dtype=np.complex128)
    for weight in weights:
        psi = np.kron(random_unit_vector(dims.d1, rng), random_unit_vector(dims.d2, rng))
        rho += weight * np.outer(psi, psi.conj())
    return HermitianState.from_matrix(rho / np.trace(rho).real, dims.d1, dims.d2)
