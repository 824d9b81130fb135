import logging
import math

import numpy as np
from pydantic import ValidationError

from pseudomix.io.models import ReportFile, content_hash
from pseudomix.linalg import HermitianState
from pseudomix.oracles import (
    VERIFY_TOL,
    CheckResult,
    VerificationSummary,
    ppt_check,
    verify_report,
)
from pseudomix.pipeline import Pseudomixture

logger = logging.getLogger(__name__)


def _report_checks(rho: HermitianState, report: ReportFile, tol: float) -> list[CheckResult]:
    tr_rho2 = float(np.sum(np.abs(rho.entries) ** 2))
    final_tr_h2 = report.stats[-1].tr_h2_after if report.stats else tr_rho2
    banked = math.fsum(stat.tr_a2 for stat in report.stats)
    step_error = max(
        (abs(s.tr_h2_before - s.tr_a2 - s.tr_h2_after) for s in report.stats), default=0.0
    )
    recomputed_ppt = ppt_check(rho)

    checks = [
        CheckResult(
            name="input_hash",
            passed=report.input_hash == content_hash(rho),
            message="report belongs to this state file",
        ),
        CheckResult(name="step_count", passed=report.steps == len(report.stats)),
        CheckResult(
            name="telescoping",
            passed=abs(tr_rho2 - banked - final_tr_h2) <= tol,
            value=abs(tr_rho2 - banked - final_tr_h2),
            threshold=tol,
            message="Tr rho^2 = sum Tr A^2 + Tr H^2",
        ),
        CheckResult(
            name="step_telescoping",
            passed=step_error <= tol,
            value=step_error,
            threshold=tol,
        ),
        CheckResult(
            name="ppt_echo",
            passed=(
                report.ppt.verdict == recomputed_ppt.verdict
                and report.ppt.decisive == recomputed_ppt.decisive
                and abs(report.ppt.min_pt_eigenvalue - recomputed_ppt.min_pt_eigenvalue) <= tol
            ),
            value=recomputed_ppt.min_pt_eigenvalue,
        ),
    ]
    # coalescing moves projector mismatch into the residual after the stats were taken
    if not report.config.coalesce:
        gap = abs(math.sqrt(final_tr_h2) - report.residual_hs)
        checks.append(
            CheckResult(name="residual_echo", passed=gap <= tol, value=gap, threshold=tol)
        )
    if report.converged:
        checks.append(
            CheckResult(
                name="converged_flag",
                passed=report.residual_hs <= report.config.tol_residual,
                value=report.residual_hs,
                threshold=report.config.tol_residual,
            )
        )
    return checks


def _pseudomixture_check(
    rho: HermitianState, report: ReportFile
) -> tuple[Pseudomixture | None, CheckResult]:
    """Rebuild the pseudomixture from the stored terms, as a check rather than an error."""
    sizes = {(len(r.vec1), len(r.vec2)) for r in [*report.terms_plus, *report.terms_minus]}
    if sizes - {(rho.dims.d1, rho.dims.d2)}:
        message = f"term vector sizes {sorted(sizes)} do not match state dims {rho.dims}"
        return None, CheckResult(name="terms_valid", passed=False, message=message)
    try:
        pseudomixture = report.to_pseudomixture()
    except ValidationError as e:
        message = f"{e.error_count()} invalid field(s): {e.errors()[0]['msg']}"
        return None, CheckResult(name="terms_valid", passed=False, message=message)
    return pseudomixture, CheckResult(name="terms_valid", passed=True)


def verify_report_file(
    rho: HermitianState, report: ReportFile, *, tol: float = VERIFY_TOL
) -> VerificationSummary:
    """Check a stored report against its state file.

    On top of :func:`verify_report` this binds the report to the input by
    content hash and recomputes the per-step telescoping identity and the
    PPT echo. A dims mismatch or terms that do not form a valid
    pseudomixture (non-unit vectors, negative ``b``) are failed checks
    rather than errors.
    """
    if report.dims != rho.dims:
        return VerificationSummary(
            checks=[
                CheckResult(
                    name="dims",
                    passed=False,
                    message=f"report dims {report.dims} vs state dims {rho.dims}",
                )
            ]
        )
    pseudomixture, terms_check = _pseudomixture_check(rho, report)
    summary = VerificationSummary(checks=[*_report_checks(rho, report, tol), terms_check])
    if pseudomixture is None:
        logger.warning(f"Verification failed: {terms_check}")
        return summary
    return summary.extend(verify_report(rho, pseudomixture, tol=tol).checks)
