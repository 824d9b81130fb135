"""
End-to-end pipeline runs on batches of random states.

The full batches run the shipped defaults and are marked ``slow``; the quick
batch uses closed-form rotations on a handful of states.
"""

import numpy as np
import pytest

from pseudomix.linalg import BipartiteDims, fro_norm, random_density, werner_state
from pseudomix.oracles import Verdict, ppt_check, validate_density, verify_report
from pseudomix.pipeline import PipelineConfig, assemble, decompose, reconstruct

N_STATES = 50
N_QUICK_STATES = 4


def check_run(rho, d, tol_residual):
    """Every invariant that must hold on any pipeline run."""
    assert d.bookkeeping_error() <= 1e-10 * max(1.0, fro_norm(rho))
    banked = sum(s.tr_a2 for s in d.stats)
    assert abs(fro_norm(rho) ** 2 - banked - d.residual_hs**2) <= 1e-9
    norms = [s.tr_h2_after for s in d.stats]
    assert all(b < a for a, b in zip(norms, norms[1:]))
    if not d.converged:
        return
    p = assemble(d)
    assert abs(p.a - p.b - 1.0) <= 1e-9
    assert validate_density(p.plus_state(rho.dims), 1e-9) == []
    if p.minus_terms:
        assert validate_density(p.minus_state(rho.dims), 1e-9) == []
    assert fro_norm(rho - reconstruct(p, rho.dims)) <= tol_residual + 1e-9
    assert verify_report(rho, p).passed
    verdict = ppt_check(rho)
    if verdict.verdict == Verdict.NPT:
        assert p.b > 0


@pytest.mark.slow
@pytest.mark.parametrize("d1,d2", [(2, 2), (2, 3)])
def test_random_states_converge_with_defaults(d1, d2):
    """Fifty random 2x2 and 2x3 states reach residual 1e-6 under the default config."""
    cfg = PipelineConfig()
    dims = BipartiteDims(d1=d1, d2=d2)
    for seed in range(N_STATES):
        rho = random_density(dims, rank=1 + seed % dims.D, seed=seed)
        d = decompose(rho, cfg)
        assert d.residual_hs <= 1e-6, f"seed {seed}: residual {d.residual_hs:.3e} after {d.steps} steps"
        check_run(rho, d, cfg.tol_residual)


@pytest.mark.parametrize("d1,d2", [(2, 2), (2, 3)])
def test_random_states_converge(d1, d2, fast_search):
    """A few random 2x2 and 2x3 states reach residual 1e-6 with closed-form rotations."""
    cfg = PipelineConfig(tol_residual=1e-6, search=fast_search)
    dims = BipartiteDims(d1=d1, d2=d2)
    for seed in range(N_QUICK_STATES):
        rho = random_density(dims, rank=1 + seed % dims.D, seed=seed)
        d = decompose(rho, cfg)
        assert d.converged, f"seed {seed}: residual {d.residual_hs:.3e} after {d.steps} steps"
        assert d.residual_hs <= 1e-6
        check_run(rho, d, cfg.tol_residual)


def test_three_by_three_bookkeeping(fast_search):
    """3x3 runs keep exact bookkeeping and strict decrease whether or not they converge."""
    cfg = PipelineConfig(max_steps=40, search=fast_search)
    rho = random_density(BipartiteDims(d1=3, d2=3), rank=9, seed=1)
    check_run(rho, decompose(rho, cfg), cfg.tol_residual)


@pytest.mark.parametrize("p", [0.2, 0.5])
def test_werner_states(p, fast_pipeline):
    """Werner states decompose; the NPT one needs a negative part."""
    rho = werner_state(p)
    d = decompose(rho, fast_pipeline)
    assert d.converged
    check_run(rho, d, fast_pipeline.tol_residual)
    if p == 0.5:
        assert assemble(d).b > 0


def test_coalesced_run_verifies(fast_search):
    """Coalescing keeps the pseudomixture verifiable."""
    cfg = PipelineConfig(coalesce=True, tol_residual=1e-6, search=fast_search)
    rho = random_density(BipartiteDims(d1=2, d2=2), rank=2, seed=8)
    d = decompose(rho, cfg)
    assert d.bookkeeping_error() <= 1e-10
    if d.converged:
        assert verify_report(rho, assemble(d)).passed


def test_runs_are_deterministic(fast_search):
    """Same input and config, identical terms."""
    cfg = PipelineConfig(tol_residual=1e-6, search=fast_search)
    rho = random_density(BipartiteDims(d1=2, d2=3), rank=3, seed=4)
    a, b = decompose(rho, cfg), decompose(rho, cfg)
    assert [t.weight for t in a.terms] == [t.weight for t in b.terms]
    assert all(np.array_equal(x.vec1, y.vec1) for x, y in zip(a.terms, b.terms))
