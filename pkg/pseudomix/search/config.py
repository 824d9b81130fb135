from typing import Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from pseudomix.split import UnitaryPair


class SearchConfig(BaseModel):
    """Configuration for the basis search."""

    model_config = ConfigDict(frozen=True)

    restarts: int = Field(default=8, ge=1)
    max_sweeps: int = Field(default=200, ge=1)
    # relative objective improvement per sweep below which ascent stops
    sweep_tol: float = Field(default=1e-10, gt=0.0, lt=1.0)
    angle_grid: int = Field(default=16, ge=1)
    stall_floor: float = Field(default=1e-14, gt=0.0)
    seed: int = Field(default=0, ge=0, lt=2**64)
    rotation_solver: Literal["grid", "jacobi"] = "grid"
    n_jobs: int = Field(default=1, ge=1)


class SearchResult(BaseModel):
    """Best product basis found for one operator."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    basis: UnitaryPair
    objective: float = Field(ge=0.0)
    sweeps_used: int = 0
    restarts_used: int = 0
    used_probe_fallback: bool = False
    objective_history: list[float] = Field(default_factory=list)
    probe_expectation: float | None = None

    def same_as(self, other: "SearchResult") -> bool:
        """Exact equality of every field."""
        return (
            self.objective == other.objective
            and self.sweeps_used == other.sweeps_used
            and self.restarts_used == other.restarts_used
            and self.used_probe_fallback == other.used_probe_fallback
            and self.objective_history == other.objective_history
            and self.probe_expectation == other.probe_expectation
            and np.array_equal(self.basis.u, other.basis.u)
            and np.array_equal(self.basis.v, other.basis.v)
        )
