"""
Coordinate ascent of Tr A^2 over two-level rotations of u and v.
"""

from itertools import combinations
import logging

import numpy as np

from pseudomix.exceptions import InvalidInputError
from pseudomix.linalg import BipartiteDims, HermitianState
from pseudomix.search.config import SearchConfig, SearchResult
from pseudomix.search.solvers import RotationSolver, get_rotation_solver
from pseudomix.split import UnitaryPair, objective, two_level_unitary

logger = logging.getLogger(__name__)


def _plane_indices(
    dims: BipartiteDims, factor: int, p: int, q: int
) -> tuple[np.ndarray, np.ndarray]:
    """Composite indices of the (p, q) plane of ``factor`` for every index of the other factor."""
    if factor == 1:
        others = np.arange(dims.d2)
        return p * dims.d2 + others, q * dims.d2 + others
    others = np.arange(dims.d1) * dims.d2
    return others + p, others + q


def rotation_form(
    rotated: np.ndarray, dims: BipartiteDims, factor: int, p: int, q: int
) -> np.ndarray:
    """The 3 x 3 form Q of a (p, q) rotation on ``factor``, given M in the current basis.

    Each 2 x 2 block [[a, b], [b*, d]] contributes gamma = ((a - d) / 2, Re b, -Im b).
    """
    idx_p, idx_q = _plane_indices(dims, factor, p, q)
    a = rotated[idx_p, idx_p].real
    d = rotated[idx_q, idx_q].real
    b = rotated[idx_p, idx_q]
    gamma = np.stack([(a - d) / 2, b.real, -b.imag], axis=1)
    return gamma.T @ gamma


def _sweep(
    M: HermitianState, basis: UnitaryPair, solver: RotationSolver
) -> tuple[np.ndarray, np.ndarray, int]:
    """One pass over every (p, q) plane of u, then of v."""
    dims = M.dims
    u, v = np.array(basis.u), np.array(basis.v)
    planes = [(1, p, q) for p, q in combinations(range(dims.d1), 2)]
    planes += [(2, p, q) for p, q in combinations(range(dims.d2), 2)]
    accepted = 0
    for factor, p, q in planes:
        W = np.kron(u, v)
        rotated = W.conj().T @ M.entries @ W
        rotation = solver.solve(rotation_form(rotated, dims, factor, p, q))
        if rotation is None:
            continue
        psi, phi = rotation
        if factor == 1:
            u = u @ two_level_unitary(dims.d1, p, q, psi, phi)
        else:
            v = v @ two_level_unitary(dims.d2, p, q, psi, phi)
        accepted += 1
    return u, v, accepted


def ascend(M: HermitianState, init: UnitaryPair, cfg: SearchConfig) -> SearchResult:
    """Monotone local ascent of objective(M, .) starting from ``init``.

    Stops when a sweep improves the objective by less than ``sweep_tol``
    relative, or after ``max_sweeps``. Each sweep ends with a polar
    re-orthonormalization; a sweep whose result falls below the previous
    objective is discarded.
    """
    if M.dims != init.dims:
        raise InvalidInputError(f"Basis dims {init.dims} do not match operator dims {M.dims}")
    solver = get_rotation_solver(cfg)
    basis = init
    current = objective(M, basis)
    history = [current]
    sweeps = 0
    for sweeps in range(1, cfg.max_sweeps + 1):
        u, v, accepted = _sweep(M, basis, solver)
        if accepted == 0:
            break
        candidate = UnitaryPair.orthonormalized(u, v)
        value = objective(M, candidate)
        if value < current:
            logger.debug(f"Sweep {sweeps} lost {current - value:.3e} to rounding; stopping")
            break
        improvement = value - current
        basis, current = candidate, value
        history.append(current)
        if improvement <= cfg.sweep_tol * current:
            break
    logger.debug(f"Ascent finished after {sweeps} sweeps at objective {current:.6e}")
    return SearchResult(
        basis=basis,
        objective=current,
        sweeps_used=sweeps,
        restarts_used=1,
        objective_history=history,
    )
