from typing import List, Literal, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from ..grids import as_grid, check_span, uniform_grid

Scheme = Literal["catching-up", "fixed-point"]


class SolverConfig(BaseModel):
    """Configuration for one solver run."""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    scheme: Scheme = Field(default="catching-up", description="Time-stepping scheme")
    n: int = Field(default=400, ge=2, description="Number of uniform steps")
    grid: Optional[np.ndarray] = Field(
        default=None, description="Explicit grid; overrides n when given"
    )
    tol_fp: float = Field(default=1e-8, gt=0.0, description="Sup-norm stop for the fixed-point loop")
    max_iterations: int = Field(default=50, ge=1, description="Iteration budget N_max")
    tol_feas: float = Field(default=1e-9, gt=0.0, description="Feasibility tolerance")
    reparametrize: bool = Field(default=False, description="Run the fixed-point loop in Phi-time")

    @field_validator("grid", mode="before")
    @classmethod
    def _validate_grid(cls, value):
        if value is None:
            return None
        return as_grid(value)

    @model_validator(mode="after")
    def _sync_n(self) -> "SolverConfig":
        if self.grid is not None:
            self.n = self.grid.size - 1
        return self

    def make_grid(self, t0: float, t_end: float) -> np.ndarray:
        if self.grid is not None:
            check_span(self.grid, t0, t_end)
            return self.grid
        return uniform_grid(t0, t_end, self.n)

    def with_n(self, n: int) -> "SolverConfig":
        return self.model_copy(update={"n": n, "grid": None})


class FixedPointReport(BaseModel):
    iterations: int = Field(default=0, description="Applications of F performed")
    deltas: List[float] = Field(
        default_factory=list, description="Sup-norm deltas ||y_{m+1} - y_m||"
    )
    converged: bool = False
    residual: float = Field(
        default=float("inf"), description="||F(y*) - y*|| at the accepted iterate"
    )
    reparametrized: bool = False

    @field_validator("deltas")
    @classmethod
    def _finite(cls, deltas: List[float]) -> List[float]:
        if not all(np.isfinite(deltas)):
            raise ValueError("fixed-point deltas must be finite")
        return deltas

    def contracts(self, lag: int = 3, floor: float = 1e-14) -> bool:
        """deltas[m + lag] < deltas[m] wherever both exist and deltas[m] is above roundoff."""
        return all(
            self.deltas[m + lag] < self.deltas[m]
            for m in range(len(self.deltas) - lag)
            if self.deltas[m] > floor
        )
