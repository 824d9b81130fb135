from pseudomix.exceptions import InvalidInputError, PseudomixError, StallError
from pseudomix.linalg import BipartiteDims, HermitianState
from pseudomix.oracles import ppt_check, validate_density, verify_report
from pseudomix.pipeline import (
    Decomposition,
    DecompositionStallError,
    PipelineConfig,
    Pseudomixture,
    assemble,
    decompose,
    reconstruct,
)
from pseudomix.search import SearchConfig, maximize
from pseudomix.version import __version__

__all__ = [
    "InvalidInputError",
    "PseudomixError",
    "StallError",
    "BipartiteDims",
    "HermitianState",
    "ppt_check",
    "validate_density",
    "verify_report",
    "Decomposition",
    "DecompositionStallError",
    "PipelineConfig",
    "Pseudomixture",
    "assemble",
    "decompose",
    "reconstruct",
    "SearchConfig",
    "maximize",
    "__version__",
]
