"""
Multi-restart maximization of Tr A^2 over U(d1) x U(d2).
"""

import logging

from joblib import Parallel, delayed
import numpy as np

from pseudomix.exceptions import InvalidInputError, StallError
from pseudomix.linalg import HermitianState, fro_norm, haar_unitary
from pseudomix.search.ascent import ascend
from pseudomix.search.config import SearchConfig, SearchResult
from pseudomix.search.probe import pair_probe
from pseudomix.split import UnitaryPair

logger = logging.getLogger(__name__)

PROBE_RESTART = 1


def restart_rng(cfg: SearchConfig, step: int, restart: int) -> np.random.Generator:
    """Independent stream for one restart, derived from (seed, step, restart)."""
    return np.random.default_rng([cfg.seed, step, restart])


def initial_bases(
    M: HermitianState, cfg: SearchConfig, probe: SearchResult, step: int = 0
) -> list[UnitaryPair]:
    """Restart 0 is the identity, restart 1 the best probe basis, the rest Haar-random."""
    dims = M.dims
    bases = [UnitaryPair.identity(dims), probe.basis]
    for restart in range(2, cfg.restarts):
        rng = restart_rng(cfg, step, restart)
        bases.append(UnitaryPair(u=haar_unitary(dims.d1, rng), v=haar_unitary(dims.d2, rng)))
    return bases[: cfg.restarts]


def maximize(M: HermitianState, cfg: SearchConfig, *, step: int = 0) -> SearchResult:
    """Best product basis over all restarts and the probe fallback.

    Ties go to the lowest restart index, so the result does not depend on
    ``cfg.n_jobs``.
    """
    norm2 = fro_norm(M) ** 2
    if norm2 == 0.0:
        raise InvalidInputError("Cannot maximize the product diagonal of a zero operator")

    probe = pair_probe(M)
    bases = initial_bases(M, cfg, probe, step)
    results = Parallel(n_jobs=cfg.n_jobs, prefer="threads")(
        delayed(ascend)(M, basis, cfg) for basis in bases
    )

    best_index = 0
    for index, result in enumerate(results):
        if result.objective > results[best_index].objective:
            best_index = index
    best = results[best_index]
    # restart 1 is seeded with the probe basis
    used_probe_fallback = best_index == PROBE_RESTART
    if probe.objective > best.objective:
        best, used_probe_fallback = probe, True

    floor = cfg.stall_floor * norm2
    if best.objective <= floor:
        logger.error(
            f"Basis search stalled: best objective {best.objective:.3e} <= floor "
            f"{floor:.3e} with ||M||_F^2 = {norm2:.3e}"
        )
        raise StallError(
            f"No product basis with Tr A^2 above {floor:.3e} (best {best.objective:.3e})"
        )

    return best.model_copy(
        update={
            "restarts_used": len(results),
            "used_probe_fallback": used_probe_fallback,
        }
    )
