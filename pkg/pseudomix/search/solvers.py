"""
Solvers for a single two-level rotation.

A two-level rotation of the (p, q) plane of one factor changes only the
diagonal weights w_p, w_q of the 2 x 2 blocks it mixes. Writing the rotation
as a point n = (cos psi, sin psi cos phi, sin psi sin phi) on the unit
sphere, the objective becomes const + 2 n^T Q n with Q a 3 x 3 positive
semidefinite form built from the blocks. The identity rotation is
n0 = (1, 0, 0). A solver returns (psi, phi) for a strictly better n, or None.
"""

from abc import ABC, abstractmethod

import numpy as np
from scipy.optimize import minimize_scalar

from pseudomix.search.config import SearchConfig


Rotation = tuple[float, float]


def sphere_point(psi: np.ndarray | float, phi: np.ndarray | float) -> np.ndarray:
    return np.stack(
        [np.cos(psi), np.sin(psi) * np.cos(phi), np.sin(psi) * np.sin(phi)], axis=-1
    )


def form_value(Q: np.ndarray, psi: np.ndarray | float, phi: np.ndarray | float) -> np.ndarray:
    n = sphere_point(psi, phi)
    return np.einsum("...i,ij,...j->...", n, Q, n)


class RotationSolver(ABC):
    """Abstract base class for two-level rotation solvers."""

    def __init__(self, config: SearchConfig):
        self.config = config

    @abstractmethod
    def solve(self, Q: np.ndarray) -> Rotation | None:
        """Return (psi, phi) improving n^T Q n over n0, or None."""
        pass


class GridRotationSolver(RotationSolver):
    """Coarse grid over (psi, phi), then bounded 1-D refinement in psi and in phi.

    The refinement uses scipy's bounded scalar minimizer (golden-section
    steps with parabolic acceleration) on one grid cell either side of the
    best grid point.
    """

    XATOL = 1e-12

    def _refine(self, func, center: float, half_width: float) -> tuple[float, float]:
        result = minimize_scalar(
            lambda t: -func(t),
            bounds=(center - half_width, center + half_width),
            method="bounded",
            options={"xatol": self.XATOL},
        )
        return float(result.x), float(-result.fun)

    def solve(self, Q: np.ndarray) -> Rotation | None:
        points = self.config.angle_grid
        # n and -n give the same value, so the hemisphere psi in [0, pi/2] suffices
        psi_step = (np.pi / 2) / points
        phi_step = 2 * np.pi / points
        psis = (np.arange(points) + 0.5) * psi_step
        phis = np.arange(points) * phi_step
        grid_psi, grid_phi = np.meshgrid(psis, phis, indexing="ij")
        values = form_value(Q, grid_psi, grid_phi)
        best = np.unravel_index(int(np.argmax(values)), values.shape)
        psi, phi = float(grid_psi[best]), float(grid_phi[best])
        value = float(values[best])

        refined_psi, refined_value = self._refine(
            lambda t: float(form_value(Q, t, phi)), psi, psi_step
        )
        if refined_value > value:
            psi, value = refined_psi, refined_value
        refined_phi, refined_value = self._refine(
            lambda t: float(form_value(Q, psi, t)), phi, phi_step
        )
        if refined_value > value:
            phi, value = refined_phi, refined_value

        if value > Q[0, 0]:
            return psi, phi
        return None


class JacobiRotationSolver(RotationSolver):
    """Closed form: the top eigenvector of Q, as in Jacobi-angle joint diagonalization."""

    def solve(self, Q: np.ndarray) -> Rotation | None:
        eigenvalues, eigenvectors = np.linalg.eigh(Q)
        n = eigenvectors[:, -1]
        if n[0] < 0:
            n = -n
        if not eigenvalues[-1] > Q[0, 0]:
            return None
        psi = float(np.arccos(np.clip(n[0], -1.0, 1.0)))
        phi = float(np.arctan2(n[2], n[1]))
        return psi, phi


ROTATION_SOLVERS: dict[str, type[RotationSolver]] = {
    "grid": GridRotationSolver,
    "jacobi": JacobiRotationSolver,
}


def get_rotation_solver(config: SearchConfig) -> RotationSolver:
    solver_class = ROTATION_SOLVERS.get(config.rotation_solver)
    if not solver_class:
        raise ValueError(f"Unsupported rotation solver: {config.rotation_solver}")
    return solver_class(config)
