"""
Command-line interface: ``pseudomix decompose | validate | random | verify``.

Exit codes: 0 success, 2 max steps reached without convergence, 3 invalid
input or missing file, 4 optimizer stall, 5 verification failure.
"""

import logging
import sys
from enum import StrEnum
from pathlib import Path
from typing import Annotated, Optional

import typer
from pydantic import ValidationError

from pseudomix.exceptions import InvalidInputError
from pseudomix.io import (
    ReportFile,
    StateFile,
    read_report,
    read_state,
    verify_report_file,
    write_report,
    write_state,
)
from pseudomix.linalg import (
    DENSITY_TOL,
    BipartiteDims,
    HermitianState,
    random_density,
    werner_state,
)
from pseudomix.oracles import ppt_check, validate_density
from pseudomix.pipeline import (
    DecompositionStallError,
    PipelineConfig,
    assemble,
    decompose as run_decompose,
)
from pseudomix.search import SearchConfig

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_NOT_CONVERGED = 2
EXIT_INVALID = 3
EXIT_STALL = 4
EXIT_VERIFY_FAILED = 5

SOFT_CAP = 16

app = typer.Typer(
    name="pseudomix",
    help="Decompose bipartite density matrices into pseudomixtures of product projectors.",
    no_args_is_help=True,
)


class RotationSolverName(StrEnum):
    grid = "grid"
    jacobi = "jacobi"


def _configure_logging(verbose: bool) -> None:
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
        force=True,
    )


def _fail(message: str, code: int) -> typer.Exit:
    typer.echo(f"error: {message}", err=True)
    return typer.Exit(code=code)


def _pipeline_config(**options) -> PipelineConfig:
    search_keys = {"restarts", "seed", "rotation_solver", "n_jobs"}
    search = {k: v for k, v in options.items() if k in search_keys}
    pipeline = {k: v for k, v in options.items() if k not in search_keys}
    try:
        return PipelineConfig(search=SearchConfig(**search), **pipeline)
    except ValidationError as e:
        raise InvalidInputError(f"Invalid configuration: {e}") from e


def _decompose_report(state_file: StateFile, cfg: PipelineConfig) -> ReportFile:
    rho = state_file.to_state(density=True)
    if max(rho.dims.d1, rho.dims.d2) > SOFT_CAP:
        logger.warning(
            f"Dims {rho.dims} exceed the soft cap of {SOFT_CAP} per factor; "
            "dense kernels will be slow"
        )
    decomposition = run_decompose(rho, cfg)
    pseudomixture = assemble(decomposition, cfg.weight_prune)
    return ReportFile.from_run(decomposition, pseudomixture, ppt_check(rho), cfg)


@app.command()
def decompose(
    input: Annotated[Path, typer.Option("--input", "-i", help="State file (JSON).")],
    out: Annotated[Path, typer.Option("--out", "-o", help="Report file to write.")],
    tol_residual: Annotated[float, typer.Option(help="HS-norm stopping tolerance.")] = 1e-8,
    max_steps: Annotated[int, typer.Option(help="Maximum extraction steps.")] = 2000,
    restarts: Annotated[int, typer.Option(help="Search restarts per step.")] = 8,
    seed: Annotated[int, typer.Option(help="Seed of the restart streams.")] = 0,
    coalesce: Annotated[bool, typer.Option("--coalesce", help="Merge near-identical terms.")] = False,
    rotation_solver: Annotated[
        RotationSolverName, typer.Option(help="Two-level rotation solver.")
    ] = RotationSolverName.grid,
    jobs: Annotated[int, typer.Option(help="Parallel restart workers.")] = 1,
    verbose: Annotated[bool, typer.Option("--verbose", "-v")] = False,
) -> None:
    """Decompose a density matrix and write a report."""
    _configure_logging(verbose)
    try:
        cfg = _pipeline_config(
            tol_residual=tol_residual,
            max_steps=max_steps,
            coalesce=coalesce,
            restarts=restarts,
            seed=seed,
            rotation_solver=rotation_solver.value,
            n_jobs=jobs,
        )
        report = _decompose_report(read_state(input), cfg)
    except InvalidInputError as e:
        raise _fail(str(e), EXIT_INVALID)
    except DecompositionStallError as e:
        raise _fail(f"{e} (after {e.partial.steps} steps)", EXIT_STALL)

    write_report(out, report)
    typer.echo(
        f"a = {report.a:.12g}  b = {report.b:.12g}  steps = {report.steps}  "
        f"residual_hs = {report.residual_hs:.3e}  ppt = {report.ppt.verdict}"
    )
    if not report.converged:
        raise _fail(
            f"not converged after {report.steps} steps (report written to {out})",
            EXIT_NOT_CONVERGED,
        )


@app.command()
def validate(
    input: Annotated[Path, typer.Option("--input", "-i", help="State file (JSON).")],
    tol: Annotated[float, typer.Option(help="Density tolerance.")] = DENSITY_TOL,
    verbose: Annotated[bool, typer.Option("--verbose", "-v")] = False,
) -> None:
    """Check a state file for density-matrix violations and print its PPT verdict."""
    _configure_logging(verbose)
    try:
        state_file = read_state(input)
    except InvalidInputError as e:
        raise _fail(str(e), EXIT_INVALID)

    matrix = state_file.to_array()
    violations = validate_density(matrix, tol)
    if violations:
        for violation in violations:
            typer.echo(f"violation: {violation}")
        raise typer.Exit(code=EXIT_INVALID)

    # within --tol of Hermitian, which may be looser than the state constructor
    verdict = ppt_check(
        HermitianState.from_matrix((matrix + matrix.conj().T) / 2, state_file.d1, state_file.d2)
    )
    typer.echo(
        f"valid density matrix ({state_file.dims}); ppt = {verdict.verdict} "
        f"min_pt_eigenvalue = {verdict.min_pt_eigenvalue:.12g} "
        f"decisive = {str(verdict.decisive).lower()}"
    )


@app.command("random")
def random_state(
    out: Annotated[Path, typer.Option("--out", "-o", help="State file to write.")],
    d1: Annotated[int, typer.Option(help="Dimension of factor 1.")] = 2,
    d2: Annotated[int, typer.Option(help="Dimension of factor 2.")] = 2,
    rank: Annotated[Optional[int], typer.Option(help="Rank (default full).")] = None,
    seed: Annotated[int, typer.Option(help="Generator seed.")] = 0,
    werner: Annotated[
        Optional[float], typer.Option(help="Write the two-qubit Werner state with this weight.")
    ] = None,
) -> None:
    """Write a random density matrix (or a Werner state) as a state file."""
    _configure_logging(False)
    try:
        if werner is not None:
            state = werner_state(werner)
        else:
            dims = BipartiteDims(d1=d1, d2=d2)
            state = random_density(dims, rank=rank or dims.D, seed=seed)
    except (InvalidInputError, ValidationError) as e:
        raise _fail(str(e), EXIT_INVALID)
    write_state(out, StateFile.from_state(state))
    typer.echo(f"wrote {state.dims} state to {out}")


@app.command()
def verify(
    input: Annotated[Path, typer.Option("--input", "-i", help="State file (JSON).")],
    report: Annotated[Path, typer.Option("--report", "-r", help="Report file (JSON).")],
    recompute: Annotated[
        bool, typer.Option("--recompute", help="Rerun the decomposition from the config echo.")
    ] = False,
    verbose: Annotated[bool, typer.Option("--verbose", "-v")] = False,
) -> None:
    """Recheck a report against its state file."""
    _configure_logging(verbose)
    try:
        state_file = read_state(input)
        stored = read_report(report)
        summary = verify_report_file(state_file.to_state(), stored)
    except InvalidInputError as e:
        raise _fail(str(e), EXIT_INVALID)

    for check in summary.checks:
        typer.echo(str(check))
    if not summary.passed:
        raise _fail(f"{len(summary.failures())} check(s) failed", EXIT_VERIFY_FAILED)

    if recompute:
        try:
            rerun = _decompose_report(state_file, stored.config)
        except (InvalidInputError, DecompositionStallError) as e:
            raise _fail(f"recomputation failed: {e}", EXIT_VERIFY_FAILED)
        if rerun.model_dump_json() != stored.model_dump_json():
            raise _fail("recomputed report differs from the stored one", EXIT_VERIFY_FAILED)
        typer.echo("[ok] recompute")
    typer.echo("verification passed")


if __name__ == "__main__":
    app()
