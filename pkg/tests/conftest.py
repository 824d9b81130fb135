"""
Shared fixtures: reference states and fast search configurations.
"""

import numpy as np
import pytest

from pseudomix.linalg import (
    BipartiteDims,
    HermitianState,
    bell_state,
    maximally_mixed,
    product_state,
    random_density,
)
from pseudomix.pipeline import PipelineConfig
from pseudomix.search import SearchConfig


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240601)


@pytest.fixture
def bell() -> HermitianState:
    return bell_state()


@pytest.fixture
def ket00() -> HermitianState:
    return product_state(np.array([1, 0]), np.array([1, 0]))


@pytest.fixture
def mixed22() -> HermitianState:
    return maximally_mixed(2, 2)


@pytest.fixture
def random23() -> HermitianState:
    return random_density(BipartiteDims(d1=2, d2=3), rank=6, seed=11)


@pytest.fixture
def fast_search() -> SearchConfig:
    """Closed-form rotations and fewer restarts, for bulk runs."""
    return SearchConfig(restarts=4, rotation_solver="jacobi")


@pytest.fixture
def fast_pipeline(fast_search) -> PipelineConfig:
    return PipelineConfig(search=fast_search)


def random_traceless(D: int, rng: np.random.Generator) -> np.ndarray:
    """Random traceless Hermitian D x D matrix."""
    G = rng.standard_normal((D, D)) + 1j * rng.standard_normal((D, D))
    H = (G + G.conj().T) / 2
    return H - np.trace(H).real / D * np.eye(D)
