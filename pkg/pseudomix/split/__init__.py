"""
Product-diagonal split of Hermitian operators.
"""

from pseudomix.split.basis import (
    UNITARY_TOL,
    UnitaryPair,
    two_level_unitary,
    unitarity_defect,
)
from pseudomix.split.product import (
    WEIGHT_DUST,
    ProductTerm,
    SplitResult,
    diag_to_terms,
    diagonal_operator,
    diagonal_weights,
    kept_weights,
    objective,
    split,
)

__all__ = [
    "UNITARY_TOL",
    "UnitaryPair",
    "two_level_unitary",
    "unitarity_defect",
    "WEIGHT_DUST",
    "ProductTerm",
    "SplitResult",
    "diag_to_terms",
    "diagonal_operator",
    "diagonal_weights",
    "kept_weights",
    "objective",
    "split",
]
