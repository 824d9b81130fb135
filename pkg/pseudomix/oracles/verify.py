"""
Independent verification of a pseudomixture against its input state.

Every quantity is recomputed from the raw terms; nothing from the
decomposition run is trusted.
"""

import logging

import numpy as np
from pydantic import BaseModel, ConfigDict

from pseudomix.exceptions import InvalidInputError
from pseudomix.linalg import HermitianState
from pseudomix.oracles.ppt import Verdict, ppt_check
from pseudomix.oracles.validation import validate_density
from pseudomix.pipeline import Pseudomixture, ProductTerm

logger = logging.getLogger(__name__)

VERIFY_TOL = 1e-9


class CheckResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    name: str
    passed: bool
    value: float | None = None
    threshold: float | None = None
    message: str = ""

    def __str__(self) -> str:
        status = "ok" if self.passed else "FAIL"
        detail = f" {self.message}" if self.message else ""
        if self.value is not None:
            detail += f" (value {self.value:.3e}"
            detail += f", threshold {self.threshold:.3e})" if self.threshold is not None else ")"
        return f"[{status}] {self.name}{detail}"


class VerificationSummary(BaseModel):
    model_config = ConfigDict(frozen=True)

    checks: list[CheckResult]

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def failures(self) -> list[CheckResult]:
        return [check for check in self.checks if not check.passed]

    def extend(self, checks: list[CheckResult]) -> "VerificationSummary":
        return VerificationSummary(checks=[*self.checks, *checks])


def _within(name: str, value: float, threshold: float, message: str = "") -> CheckResult:
    return CheckResult(
        name=name,
        passed=bool(value <= threshold),
        value=float(value),
        threshold=float(threshold),
        message=message,
    )


def _require_dims(rho: HermitianState, terms: list[ProductTerm]) -> None:
    for term in terms:
        if term.vec1.size != rho.dims.d1 or term.vec2.size != rho.dims.d2:
            raise InvalidInputError(
                f"Term vectors of sizes {term.vec1.size}x{term.vec2.size} "
                f"do not match state dims {rho.dims}"
            )


def _weight_checks(part: str, terms: list[ProductTerm], tol: float) -> list[CheckResult]:
    weights = np.array([term.weight for term in terms], dtype=float)
    smallest = float(weights.min()) if weights.size else 0.0
    return [
        CheckResult(
            name=f"{part}_weights_positive",
            passed=bool(np.all(weights > 0.0)),
            value=smallest,
            message="every normalized weight must be positive",
        ),
        _within(f"{part}_weights_sum", abs(float(weights.sum()) - 1.0), tol),
    ]


def _state_check(part: str, matrix: np.ndarray, tol: float) -> CheckResult:
    violations = validate_density(matrix, tol)
    return CheckResult(
        name=f"{part}_state_density",
        passed=not violations,
        message="; ".join(str(violation) for violation in violations),
    )


def verify_report(
    rho: HermitianState, pseudomixture: Pseudomixture, *, tol: float = VERIFY_TOL
) -> VerificationSummary:
    """Recompute rho(+), rho(-) and every pseudomixture identity from scratch.

    Raises:
        InvalidInputError: the terms do not live on rho's dims.
    """
    p = pseudomixture
    _require_dims(rho, p.plus_terms)
    _require_dims(rho, p.minus_terms)
    dims = rho.dims

    checks = [
        _within("a_minus_b", abs(p.a - p.b - 1.0), tol, "a - b = 1"),
        CheckResult(name="a_b_nonnegative", passed=p.a >= 0.0 and p.b >= 0.0),
        CheckResult(
            name="plus_terms_present",
            passed=bool(p.plus_terms),
            message="rho(+) needs at least one term",
        ),
        CheckResult(
            name="minus_terms_consistent",
            passed=bool(p.minus_terms) or p.b <= tol,
            value=p.b,
            message="b > 0 requires minus terms",
        ),
    ]
    checks += _weight_checks("plus", p.plus_terms, tol)
    plus = p.plus_state(dims)
    checks.append(_state_check("plus", plus, tol))
    reconstruction = p.a * plus
    if p.minus_terms:
        checks += _weight_checks("minus", p.minus_terms, tol)
        minus = p.minus_state(dims)
        checks.append(_state_check("minus", minus, tol))
        reconstruction = reconstruction - p.b * minus

    error = float(np.linalg.norm(rho.entries - reconstruction, "fro"))
    checks.append(
        _within("reconstruction", error, p.residual_hs + tol, "||rho - (a rho+ - b rho-)||_F")
    )

    verdict = ppt_check(rho)
    if verdict.decisive and verdict.verdict == Verdict.NPT:
        checks.append(
            CheckResult(
                name="entangled_needs_minus_part",
                passed=p.b > 0.0,
                value=p.b,
                message=f"NPT input (min PT eigenvalue {verdict.min_pt_eigenvalue:.3e})",
            )
        )

    summary = VerificationSummary(checks=checks)
    for failure in summary.failures():
        logger.warning(f"Verification failed: {failure}")
    return summary
