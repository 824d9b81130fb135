"""
Search for the product basis maximizing Tr A^2.
"""

from pseudomix.search.ascent import ascend, rotation_form
from pseudomix.search.config import SearchConfig, SearchResult
from pseudomix.search.maximize import initial_bases, maximize, restart_rng
from pseudomix.search.probe import Probe, pair_probe, probe_expectations, probe_family
from pseudomix.search.solvers import (
    ROTATION_SOLVERS,
    GridRotationSolver,
    JacobiRotationSolver,
    RotationSolver,
    get_rotation_solver,
)

__all__ = [
    "ascend",
    "rotation_form",
    "SearchConfig",
    "SearchResult",
    "initial_bases",
    "maximize",
    "restart_rng",
    "Probe",
    "pair_probe",
    "probe_expectations",
    "probe_family",
    "ROTATION_SOLVERS",
    "GridRotationSolver",
    "JacobiRotationSolver",
    "RotationSolver",
    "get_rotation_solver",
]
