"""
JSON file formats for states and decomposition reports.

Complex numbers are stored as ``[re, im]`` pairs and matrices row-major over
the composite index ``i * d2 + j``. Floats are written in shortest
round-trip form, so a write/read cycle reproduces every value exactly.
"""

import hashlib
from typing import Self

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from pseudomix.linalg import BipartiteDims, HermitianState
from pseudomix.oracles import PptVerdict
from pseudomix.pipeline import (
    Decomposition,
    PipelineConfig,
    ProductTerm,
    Pseudomixture,
    StepStat,
)

ComplexPair = tuple[float, float]


def encode_vector(vector: np.ndarray) -> list[ComplexPair]:
    return [(float(z.real), float(z.imag)) for z in np.asarray(vector, dtype=np.complex128)]


def decode_vector(pairs: list[ComplexPair]) -> np.ndarray:
    if not pairs:
        return np.zeros(0, dtype=np.complex128)
    parts = np.asarray(pairs, dtype=float)
    return parts[:, 0] + 1j * parts[:, 1]


def content_hash(state: HermitianState) -> str:
    """SHA-256 over the dims and the little-endian complex128 matrix bytes."""
    digest = hashlib.sha256()
    digest.update(f"{state.dims.d1}x{state.dims.d2}".encode())
    digest.update(np.ascontiguousarray(state.entries, dtype="<c16").tobytes())
    return digest.hexdigest()


class StateFile(BaseModel):
    """A D x D complex matrix with its bipartite dims."""

    d1: int = Field(ge=1)
    d2: int = Field(ge=1)
    matrix: list[list[ComplexPair]]

    @model_validator(mode="after")
    def _check_size(self) -> Self:
        D = self.d1 * self.d2
        if len(self.matrix) != D:
            raise ValueError(f"expected {D} rows for {self.d1}x{self.d2}, got {len(self.matrix)}")
        for r, row in enumerate(self.matrix):
            if len(row) != D:
                raise ValueError(f"row {r} has {len(row)} entries, expected {D}")
        return self

    @property
    def dims(self) -> BipartiteDims:
        return BipartiteDims(d1=self.d1, d2=self.d2)

    def to_array(self) -> np.ndarray:
        D = self.d1 * self.d2
        parts = np.asarray(self.matrix, dtype=float).reshape(D, D, 2)
        return parts[..., 0] + 1j * parts[..., 1]

    def to_state(self, *, density: bool = False) -> HermitianState:
        """Raises InvalidInputError for non-Hermitian or (with density) non-density input."""
        return HermitianState.from_matrix(self.to_array(), self.d1, self.d2, density=density)

    @classmethod
    def from_state(cls, state: HermitianState) -> "StateFile":
        return cls(
            d1=state.dims.d1,
            d2=state.dims.d2,
            matrix=[encode_vector(row) for row in state.entries],
        )


class TermRecord(BaseModel):
    weight: float
    vec1: list[ComplexPair]
    vec2: list[ComplexPair]
    step: int = 0

    @classmethod
    def from_term(cls, term: ProductTerm) -> "TermRecord":
        return cls(
            weight=term.weight,
            vec1=encode_vector(term.vec1),
            vec2=encode_vector(term.vec2),
            step=term.step,
        )

    def to_term(self) -> ProductTerm:
        return ProductTerm(
            weight=self.weight,
            vec1=decode_vector(self.vec1),
            vec2=decode_vector(self.vec2),
            step=self.step,
        )


class ReportFile(BaseModel):
    """Self-contained result of one decomposition run."""

    model_config = ConfigDict(frozen=True)

    d1: int = Field(ge=1)
    d2: int = Field(ge=1)
    input_hash: str
    a: float
    b: float
    converged: bool
    steps: int
    residual_hs: float
    residual_op: float
    stats: list[StepStat]
    terms_plus: list[TermRecord]
    terms_minus: list[TermRecord]
    ppt: PptVerdict
    config: PipelineConfig

    @classmethod
    def from_run(
        cls,
        decomposition: Decomposition,
        pseudomixture: Pseudomixture,
        ppt: PptVerdict,
        config: PipelineConfig,
    ) -> "ReportFile":
        dims = decomposition.dims
        return cls(
            d1=dims.d1,
            d2=dims.d2,
            input_hash=content_hash(decomposition.input),
            a=pseudomixture.a,
            b=pseudomixture.b,
            converged=decomposition.converged,
            steps=decomposition.steps,
            residual_hs=pseudomixture.residual_hs,
            residual_op=decomposition.residual_op,
            stats=decomposition.stats,
            terms_plus=[TermRecord.from_term(t) for t in pseudomixture.plus_terms],
            terms_minus=[TermRecord.from_term(t) for t in pseudomixture.minus_terms],
            ppt=ppt,
            config=config,
        )

    @property
    def dims(self) -> BipartiteDims:
        return BipartiteDims(d1=self.d1, d2=self.d2)

    def to_pseudomixture(self) -> Pseudomixture:
        return Pseudomixture(
            a=self.a,
            b=self.b,
            plus_terms=[record.to_term() for record in self.terms_plus],
            minus_terms=[record.to_term() for record in self.terms_minus],
            residual_hs=self.residual_hs,
        )
