"""
Independent oracles: density validation, PPT classification, report verification.
"""

from pseudomix.oracles.ppt import (
    DECISIVE_DIMS,
    PPT_TOL,
    PptVerdict,
    Verdict,
    is_decisive,
    partial_transpose,
    ppt_check,
)
from pseudomix.oracles.validation import Violation, ViolationKind, validate_density
from pseudomix.oracles.verify import (
    VERIFY_TOL,
    CheckResult,
    VerificationSummary,
    verify_report,
)

__all__ = [
    "DECISIVE_DIMS",
    "PPT_TOL",
    "PptVerdict",
    "Verdict",
    "is_decisive",
    "partial_transpose",
    "ppt_check",
    "ViolationKind",
    "Violation",
    "validate_density",
    "VERIFY_TOL",
    "CheckResult",
    "VerificationSummary",
    "verify_report",
]
