"""
Custom exceptions for pseudomix.
"""


class PseudomixError(Exception):
    """Base exception for pseudomix errors."""


class InvalidInputError(PseudomixError, ValueError):
    """Raised when an operator, basis, state or configuration is invalid."""


class StallError(PseudomixError):
    """Raised when the basis search cannot find a nonzero product diagonal."""
