from pydantic import BaseModel, ConfigDict, Field

from pseudomix.search import SearchConfig


class PipelineConfig(BaseModel):
    """Configuration for the extraction loop."""

    model_config = ConfigDict(frozen=True)

    tol_residual: float = Field(default=1e-8, gt=0.0)
    max_steps: int = Field(default=2000, ge=1)
    weight_prune: float = Field(default=1e-12, ge=0.0)
    coalesce: bool = False
    coalesce_fidelity: float = Field(default=1.0 - 1e-10, gt=0.0, le=1.0)
    search: SearchConfig = Field(default_factory=SearchConfig)
