"""
The extraction loop: rho = A(1) + ... + A(n) + H(n).

Each step maximizes Tr A^2 over product bases for the current remainder,
banks the diagonal component as weighted product projectors and continues
with the off-diagonal part. By orthogonality
Tr H(n-1)^2 = Tr A(n)^2 + Tr H(n)^2, so the HS norm of the remainder
strictly decreases while A(n) != 0.
"""

import logging
import math

import numpy as np

from pseudomix.exceptions import StallError
from pseudomix.linalg import HermitianState, fro_norm
from pseudomix.pipeline.config import PipelineConfig
from pseudomix.pipeline.exceptions import DecompositionStallError
from pseudomix.pipeline.models import Decomposition, StepStat, terms_matrix
from pseudomix.search import maximize
from pseudomix.split import (
    WEIGHT_DUST,
    ProductTerm,
    diag_to_terms,
    diagonal_operator,
    kept_weights,
    split,
)

logger = logging.getLogger(__name__)

BOOKKEEPING_TOL = 1e-10


def decompose(rho: HermitianState, cfg: PipelineConfig | None = None) -> Decomposition:
    """Iteratively extract product-diagonal components of ``rho``.

    Stops when ||H(n)||_F <= tol_residual (converged) or after max_steps
    (not converged; the partial sum plus residual is still exact). Weights
    at or below ``weight_prune`` are not banked and stay in the remainder.

    Raises:
        InvalidInputError: rho is not a density matrix.
        DecompositionStallError: a step found no nonzero diagonal; carries
            the partial decomposition.
    """
    cfg = cfg or PipelineConfig()
    rho.require_density()
    scale = max(1.0, fro_norm(rho))

    remainder = rho
    terms: list[ProductTerm] = []
    stats: list[StepStat] = []
    banked_total = np.zeros_like(rho.entries)
    tr_h2 = fro_norm(rho) ** 2
    converged = math.sqrt(tr_h2) <= cfg.tol_residual

    def partial() -> Decomposition:
        return Decomposition(
            input=rho, terms=list(terms), residual=remainder, stats=list(stats)
        )

    step = 0
    while not converged and step < cfg.max_steps:
        step += 1
        try:
            found = maximize(remainder, cfg.search, step=step)
        except StallError as e:
            raise DecompositionStallError(
                f"Step {step} stalled with ||H||_F = {math.sqrt(tr_h2):.3e}: {e}",
                partial(),
            ) from e

        s = split(remainder, found.basis)
        weights = kept_weights(s.diag_weights, cfg.weight_prune)
        tr_a2 = float(np.sum(weights**2))
        if not tr_a2 > 0.0:
            logger.error(f"Step {step}: every diagonal weight is below the prune level")
            raise DecompositionStallError(
                f"Step {step} extracted nothing above weight_prune={cfg.weight_prune}",
                partial(),
            )

        banked = diagonal_operator(found.basis, weights)
        remainder = remainder - banked
        banked_total += banked.entries
        step_terms = diag_to_terms(s, cfg.weight_prune, step=step)
        terms.extend(step_terms)

        tr_h2_after = fro_norm(remainder) ** 2
        stats.append(
            StepStat(
                step=step,
                tr_a2=tr_a2,
                tr_h2_before=tr_h2,
                tr_h2_after=tr_h2_after,
                objective=found.objective,
                residual_hs=math.sqrt(tr_h2_after),
                used_probe_fallback=found.used_probe_fallback,
                n_terms=len(step_terms),
            )
        )
        drift = float(np.linalg.norm(rho.entries - banked_total - remainder.entries, "fro"))
        if drift > BOOKKEEPING_TOL * scale:
            logger.warning(f"Step {step}: bookkeeping drift {drift:.3e}")
        logger.debug(
            f"Step {step}: Tr A^2 = {tr_a2:.6e}, Tr H^2 {tr_h2:.6e} -> {tr_h2_after:.6e}"
            f"{' (probe fallback)' if found.used_probe_fallback else ''}"
        )
        tr_h2 = tr_h2_after
        converged = math.sqrt(tr_h2) <= cfg.tol_residual

    if converged:
        logger.info(
            f"Converged in {step} steps with {len(terms)} terms, "
            f"||H||_F = {math.sqrt(tr_h2):.3e}"
        )
    else:
        logger.warning(
            f"Not converged after {step} steps: ||H||_F = {math.sqrt(tr_h2):.3e} "
            f"> {cfg.tol_residual:.3e}"
        )

    decomposition = Decomposition(
        input=rho, terms=terms, residual=remainder, stats=stats, converged=converged
    )
    if cfg.coalesce:
        decomposition = coalesce(
            decomposition, cfg.coalesce_fidelity, tol_residual=cfg.tol_residual
        )
    return decomposition


def group_by_fidelity(terms: list[ProductTerm], fidelity: float) -> np.ndarray:
    """For each term, the index of the first term whose projector it overlaps above ``fidelity``.

    Terms are scanned in order against the representatives found so far; a
    term matching none of them becomes a representative and maps to itself.
    """
    owners = np.arange(len(terms))
    if not terms:
        return owners
    vec1 = np.array([term.vec1 for term in terms])
    vec2 = np.array([term.vec2 for term in terms])
    rep1, rep2 = np.empty_like(vec1), np.empty_like(vec2)
    rep_index = np.empty(len(terms), dtype=np.intp)
    count = 0
    for i in range(len(terms)):
        if count:
            overlaps = (
                np.abs(rep1[:count].conj() @ vec1[i]) ** 2
                * np.abs(rep2[:count].conj() @ vec2[i]) ** 2
            )
            hits = np.flatnonzero(overlaps > fidelity)
            if hits.size:
                owners[i] = rep_index[hits[0]]
                continue
        rep1[count], rep2[count], rep_index[count] = vec1[i], vec2[i], i
        count += 1
    return owners


def coalesce(
    d: Decomposition, fidelity: float = 1.0 - 1e-10, *, tol_residual: float | None = None
) -> Decomposition:
    """Merge terms whose projectors overlap above ``fidelity`` by adding weights.

    The first term of each group keeps its vectors; the projector mismatch of
    the merged terms is moved into the residual, so the bookkeeping identity
    is unchanged.
    """
    owners = group_by_fidelity(d.terms, fidelity)
    totals = np.zeros(len(d.terms))
    np.add.at(totals, owners, [term.weight for term in d.terms])

    merged = [
        d.terms[index].model_copy(update={"weight": float(totals[index])})
        for index in np.unique(owners)
        if abs(totals[index]) > WEIGHT_DUST
    ]
    residual = d.input.with_entries(d.input.entries - terms_matrix(merged, d.dims))
    converged = d.converged
    if tol_residual is not None:
        converged = converged and fro_norm(residual) <= tol_residual
    logger.info(f"Coalesced {len(d.terms)} terms into {len(merged)}")
    return d.model_copy(
        update={"terms": merged, "residual": residual, "converged": converged}
    )
