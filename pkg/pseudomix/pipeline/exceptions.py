"""
Custom exceptions for the extraction pipeline.
"""

from typing import TYPE_CHECKING

from pseudomix.exceptions import StallError

if TYPE_CHECKING:
    from pseudomix.pipeline.models import Decomposition


class DecompositionStallError(StallError):
    """Raised when a step cannot extract a nonzero diagonal; carries the partial result."""

    def __init__(self, message: str, partial: "Decomposition"):
        super().__init__(message)
        self.partial = partial
