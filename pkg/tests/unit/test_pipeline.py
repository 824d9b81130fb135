"""
Unit tests for the extraction loop and pseudomixture assembly.
"""

import numpy as np
import pytest

from pseudomix.exceptions import InvalidInputError, StallError
from pseudomix.linalg import HermitianState, fro_norm, haar_unitary
from pseudomix.pipeline import (
    Decomposition,
    DecompositionStallError,
    PipelineConfig,
    ProductTerm,
    Pseudomixture,
    assemble,
    coalesce,
    decompose,
    group_by_fidelity,
    reconstruct,
)
from pseudomix.search import SearchConfig, maximize

PLUS = np.array([1, 1]) / np.sqrt(2)
MINUS = np.array([1, -1]) / np.sqrt(2)


def assert_telescoping(rho: HermitianState, d: Decomposition) -> None:
    for stat in d.stats:
        assert abs(stat.tr_h2_before - stat.tr_a2 - stat.tr_h2_after) <= 1e-10
        assert stat.residual_hs == pytest.approx(np.sqrt(stat.tr_h2_after), abs=1e-15)
    banked = sum(stat.tr_a2 for stat in d.stats)
    assert abs(fro_norm(rho) ** 2 - banked - d.residual_hs**2) <= 1e-9


class TestDecompose:
    """Test the main extraction loop."""

    def test_product_state(self, ket00):
        """|00> converges in one step with a single unit-weight term."""
        d = decompose(ket00)
        assert d.converged
        assert d.steps == 1
        assert len(d.terms) == 1
        assert d.terms[0].weight == pytest.approx(1.0, abs=1e-12)
        assert d.residual_hs <= 1e-10

    def test_maximally_mixed(self, mixed22):
        """I/4 converges in one step with four quarter-weight terms."""
        d = decompose(mixed22)
        assert d.converged
        assert d.steps == 1
        assert len(d.terms) == 4
        assert all(abs(t.weight - 0.25) <= 1e-12 for t in d.terms)
        assert d.residual_hs <= 1e-12

    def test_bell_state(self, bell):
        """Bell converges and the banked Tr A^2 sum to Tr rho^2 = 1."""
        d = decompose(bell)
        assert d.converged
        assert d.residual_hs <= 1e-8
        assert d.stats[0].tr_a2 == pytest.approx(0.5, abs=1e-6)
        assert sum(s.tr_a2 for s in d.stats) == pytest.approx(1.0, abs=1e-9)
        assert_telescoping(bell, d)
        assert d.bookkeeping_error() <= 1e-10

    def test_invariants_on_random_state(self, random23, fast_pipeline):
        """Bookkeeping, trace conservation and strict decrease hold on a 2x3 run."""
        d = decompose(random23, fast_pipeline)
        assert d.bookkeeping_error() <= 1e-10 * max(1.0, fro_norm(random23))
        assert abs(d.weight_sum() + d.residual.trace() - 1.0) <= 1e-10
        norms = [d.stats[0].tr_h2_before] + [s.tr_h2_after for s in d.stats]
        assert all(b < a for a, b in zip(norms, norms[1:]))
        assert all(t.step >= 1 for t in d.terms)
        assert_telescoping(random23, d)

    def test_trace_conserved_at_every_step(self, random23, fast_pipeline, mocker):
        """Banked weights plus the remainder trace stay at one before every step."""
        search = mocker.patch("pseudomix.pipeline.decompose.maximize", wraps=maximize)
        d = decompose(random23, fast_pipeline)
        assert search.call_count == d.steps
        for call in search.call_args_list:
            remainder, step = call.args[0], call.kwargs["step"]
            banked = sum(t.weight for t in d.terms if t.step < step)
            assert abs(banked + remainder.trace() - 1.0) <= 1e-10
            assert abs(remainder.trace() - (1.0 if step == 1 else 0.0)) <= 1e-10
        assert abs(d.weight_sum() + d.residual.trace() - 1.0) <= 1e-10

    def test_max_steps_is_flagged(self, bell):
        """Stopping at max_steps returns an exact but unconverged result."""
        d = decompose(bell, PipelineConfig(max_steps=1))
        assert not d.converged
        assert d.steps == 1
        assert d.residual_hs == pytest.approx(np.sqrt(0.5), abs=1e-6)
        assert d.bookkeeping_error() <= 1e-10

    def test_rejects_non_density(self):
        """Inputs must be density matrices."""
        rho = HermitianState.from_matrix(np.diag([0.6, 0.6, -0.1, -0.1]), 2, 2)
        with pytest.raises(InvalidInputError):
            decompose(rho)

    def test_stall_carries_partial(self, bell, mocker):
        """A stalled search surfaces as DecompositionStallError with the partial result."""
        mocker.patch("pseudomix.pipeline.decompose.maximize", side_effect=StallError("stuck"))
        with pytest.raises(DecompositionStallError) as excinfo:
            decompose(bell)
        partial = excinfo.value.partial
        assert partial.steps == 0
        assert partial.terms == []
        assert partial.bookkeeping_error() == 0.0
        assert isinstance(excinfo.value, StallError)

    def test_pruned_weights_stay_in_residual(self, random23):
        """A large prune level leaves small weights in the remainder, keeping bookkeeping exact."""
        cfg = PipelineConfig(
            weight_prune=0.05, max_steps=1, search=SearchConfig(restarts=2, rotation_solver="jacobi")
        )
        d = decompose(random23, cfg)
        assert all(abs(t.weight) > 0.05 for t in d.terms)
        assert d.bookkeeping_error() <= 1e-10

    def test_coalesce_option(self, mixed22):
        """Coalescing keeps the bookkeeping identity."""
        d = decompose(mixed22, PipelineConfig(coalesce=True))
        assert d.bookkeeping_error() <= 1e-10
        assert len(d.terms) == 4


class TestCoalesce:
    """Test merging of duplicate terms."""

    def test_merges_identical_projectors(self, ket00):
        """Two half-weight copies of |00> merge into one unit term."""
        half = ProductTerm(weight=0.5, vec1=[1, 0], vec2=[1, 0])
        d = Decomposition(
            input=ket00,
            terms=[half, half.model_copy(update={"step": 2})],
            residual=HermitianState.zeros(ket00.dims),
            converged=True,
        )
        merged = coalesce(d)
        assert len(merged.terms) == 1
        assert merged.terms[0].weight == pytest.approx(1.0)
        assert merged.residual_hs <= 1e-15
        assert merged.converged

    def test_cancelling_terms_vanish(self, ket00):
        """Opposite weights on the same projector cancel out."""
        plus = ProductTerm(weight=0.25, vec1=[0, 1], vec2=[0, 1])
        one = ProductTerm(weight=1.0, vec1=[1, 0], vec2=[1, 0])
        d = Decomposition(
            input=ket00,
            terms=[one, plus, plus.model_copy(update={"weight": -0.25})],
            residual=HermitianState.zeros(ket00.dims),
        )
        assert len(coalesce(d).terms) == 1

    def test_group_by_fidelity_ignores_global_phase(self):
        """Terms equal up to a phase share the first representative; orthogonal ones do not."""
        terms = [
            ProductTerm(weight=0.5, vec1=PLUS, vec2=[1, 0]),
            ProductTerm(weight=0.2, vec1=MINUS, vec2=[1, 0]),
            ProductTerm(weight=0.3, vec1=1j * PLUS, vec2=[-1, 0]),
            ProductTerm(weight=0.1, vec1=PLUS, vec2=[0, 1]),
        ]
        assert group_by_fidelity(terms, 1.0 - 1e-10).tolist() == [0, 1, 0, 3]
        assert group_by_fidelity([], 0.5).size == 0

    def test_group_by_fidelity_matches_pairwise_scan(self, rng):
        """Vectorized grouping agrees with a term-by-term scan over many repeated bases."""
        bases = [(haar_unitary(3, rng), haar_unitary(3, rng)) for _ in range(5)]
        terms = []
        for step in range(60):
            u, v = bases[int(rng.integers(len(bases)))]
            k, l = int(rng.integers(3)), int(rng.integers(3))
            phase = np.exp(1j * rng.uniform(0, 2 * np.pi))
            terms.append(ProductTerm(weight=0.1, vec1=phase * u[:, k], vec2=v[:, l], step=step))
        owners = group_by_fidelity(terms, 1.0 - 1e-10)
        representatives = []
        for i, term in enumerate(terms):
            match = next((r for r in representatives if terms[r].fidelity(term) > 1.0 - 1e-10), i)
            if match == i:
                representatives.append(i)
            assert owners[i] == match
        assert len(np.unique(owners)) == len(representatives) < len(terms)


class TestAssemble:
    """Test pseudomixture assembly and reconstruction."""

    def test_product_state(self, ket00):
        """A product pure state gives a = 1, b = 0 and one plus term."""
        p = assemble(decompose(ket00))
        assert p.a == 1.0 and p.b == 0.0
        assert len(p.plus_terms) == 1 and p.minus_terms == []
        assert np.allclose(reconstruct(p, ket00.dims).entries, ket00.entries, atol=1e-10)

    def test_bell_pseudomixture(self, bell):
        """Bell needs a negative part and reconstructs within the residual."""
        d = decompose(bell)
        p = assemble(d)
        assert abs(p.a - p.b - 1.0) <= 1e-9
        assert p.b >= 1e-3
        assert sum(t.weight for t in p.plus_terms) == pytest.approx(1.0, abs=1e-12)
        assert sum(t.weight for t in p.minus_terms) == pytest.approx(1.0, abs=1e-12)
        assert all(t.weight > 0 for t in p.plus_terms + p.minus_terms)
        error = fro_norm(bell - reconstruct(p, bell.dims))
        assert error <= p.residual_hs + 1e-9

    def test_single_term_reconstruct(self, ket00):
        """a = 1, b = 0 with the |0>|0> term reconstructs |00><00|."""
        p = Pseudomixture(a=1.0, b=0.0, plus_terms=[ProductTerm(weight=1.0, vec1=[1, 0], vec2=[1, 0])])
        assert np.array_equal(reconstruct(p, ket00.dims).entries, ket00.entries)

    def test_empty_terms(self, ket00):
        """Nothing to assemble is invalid input."""
        d = Decomposition(input=ket00, terms=[], residual=ket00)
        with pytest.raises(InvalidInputError):
            assemble(d)

    def test_prune_drops_tiny_terms(self, ket00):
        """Terms below weight_prune are left out of both parts."""
        tiny = ProductTerm(weight=-1e-13, vec1=[0, 1], vec2=[0, 1])
        one = ProductTerm(weight=1.0, vec1=[1, 0], vec2=[1, 0])
        d = Decomposition(input=ket00, terms=[one, tiny], residual=HermitianState.zeros(ket00.dims))
        p = assemble(d)
        assert p.b == 0.0 and p.minus_terms == []
        assert p.a == 1.0
