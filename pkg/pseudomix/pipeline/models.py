import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from pseudomix.linalg import BipartiteDims, HermitianState, fro_norm, op_norm
from pseudomix.split import ProductTerm


def terms_matrix(terms: list[ProductTerm], dims: BipartiteDims) -> np.ndarray:
    """sum_t weight_t |e_t f_t><e_t f_t| as a dense D x D matrix."""
    matrix = np.zeros((dims.D, dims.D), dtype=np.complex128)
    for term in terms:
        psi = term.product_vector()
        matrix += term.weight * np.outer(psi, psi.conj())
    return matrix


class StepStat(BaseModel):
    """Statistics of one extraction step."""

    model_config = ConfigDict(frozen=True)

    step: int
    tr_a2: float
    tr_h2_before: float
    tr_h2_after: float
    objective: float
    residual_hs: float
    used_probe_fallback: bool = False
    n_terms: int = 0


class Decomposition(BaseModel):
    """rho = sum of banked product terms + residual."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    input: HermitianState
    terms: list[ProductTerm] = Field(default_factory=list)
    residual: HermitianState
    stats: list[StepStat] = Field(default_factory=list)
    converged: bool = False

    @property
    def dims(self) -> BipartiteDims:
        return self.input.dims

    @property
    def steps(self) -> int:
        return len(self.stats)

    @property
    def residual_hs(self) -> float:
        return fro_norm(self.residual)

    @property
    def residual_op(self) -> float:
        return op_norm(self.residual)

    def weight_sum(self) -> float:
        return float(sum(term.weight for term in self.terms))

    def bookkeeping_error(self) -> float:
        """||input - (sum of terms + residual)||_F, recomputed from the terms."""
        total = terms_matrix(self.terms, self.dims) + self.residual.entries
        return float(np.linalg.norm(self.input.entries - total, "fro"))


class Pseudomixture(BaseModel):
    """rho = a * rho_plus - b * rho_minus with rho_plus, rho_minus separable."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    a: float = Field(ge=0.0)
    b: float = Field(ge=0.0)
    plus_terms: list[ProductTerm]
    minus_terms: list[ProductTerm] = Field(default_factory=list)
    residual_hs: float = Field(default=0.0, ge=0.0)

    def plus_state(self, dims: BipartiteDims) -> np.ndarray:
        return terms_matrix(self.plus_terms, dims)

    def minus_state(self, dims: BipartiteDims) -> np.ndarray:
        return terms_matrix(self.minus_terms, dims)
