"""
Iterative extraction of product-diagonal components and pseudomixture assembly.
"""

from pseudomix.pipeline.assemble import assemble, reconstruct
from pseudomix.pipeline.config import PipelineConfig
from pseudomix.pipeline.decompose import coalesce, decompose, group_by_fidelity
from pseudomix.pipeline.exceptions import DecompositionStallError
from pseudomix.pipeline.models import (
    Decomposition,
    Pseudomixture,
    StepStat,
    terms_matrix,
)
from pseudomix.split import ProductTerm

__all__ = [
    "assemble",
    "reconstruct",
    "PipelineConfig",
    "coalesce",
    "decompose",
    "group_by_fidelity",
    "DecompositionStallError",
    "Decomposition",
    "Pseudomixture",
    "StepStat",
    "terms_matrix",
    "ProductTerm",
]
