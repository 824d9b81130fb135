"""
Partial transpose and the positive-partial-transpose test.

PPT is necessary for separability in every dimension and sufficient at
2x2 and 2x3 (either order), where the verdict is flagged as decisive.
"""

from enum import StrEnum
from typing import Literal

import numpy as np
from pydantic import BaseModel, ConfigDict

from pseudomix.exceptions import InvalidInputError
from pseudomix.linalg import DENSITY_TOL, BipartiteDims, HermitianState

PPT_TOL = DENSITY_TOL
DECISIVE_DIMS = frozenset({(2, 2), (2, 3), (3, 2)})

_PT_AXES = {1: (2, 1, 0, 3), 2: (0, 3, 2, 1)}


class Verdict(StrEnum):
    PPT = "PPT"
    NPT = "NPT"


class PptVerdict(BaseModel):
    model_config = ConfigDict(frozen=True)

    min_pt_eigenvalue: float
    verdict: Verdict
    decisive: bool


def is_decisive(dims: BipartiteDims) -> bool:
    return (dims.d1, dims.d2) in DECISIVE_DIMS


def partial_transpose(rho: HermitianState, factor: Literal[1, 2] = 2) -> HermitianState:
    """Transpose the indices of one tensor factor.

    For factor 1, entry [(i, j), (m, n)] of the result is entry [(m, j), (i, n)]
    of ``rho``; factor 2 swaps j and n instead.
    """
    if factor not in _PT_AXES:
        raise InvalidInputError(f"factor must be 1 or 2, got {factor!r}")
    D = rho.D
    transposed = rho.tensor().transpose(_PT_AXES[factor]).reshape(D, D)
    return rho.with_entries(transposed)


def ppt_check(rho: HermitianState) -> PptVerdict:
    """Classify rho by the smallest eigenvalue of its partial transpose."""
    min_eigenvalue = float(np.linalg.eigvalsh(partial_transpose(rho).entries)[0])
    verdict = Verdict.NPT if min_eigenvalue < -PPT_TOL else Verdict.PPT
    return PptVerdict(
        min_pt_eigenvalue=min_eigenvalue,
        verdict=verdict,
        decisive=is_decisive(rho.dims),
    )
