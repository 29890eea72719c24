from typing import Callable, Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator


def zero(*args) -> float:
    return 0.0


Variant = Literal["I", "II-a", "II-b"]


class GronwallData(BaseModel):
    """Hypothesis data of the enhanced Gronwall inequalities.

    Variant I reads ``k3`` as a two-argument kernel K3(t, s); variants II-a and
    II-b read ``k3`` and ``k4`` as one-argument coefficients.
    """
    model_config = ConfigDict(arbitrary_types_allowed=True)

    t0: float = Field(description="Left end T0 of the interval")
    t_end: float = Field(description="Right end T of the interval")
    rho0: float = Field(ge=0.0, description="Initial value rho(T0)")
    epsilon: Callable = Field(default=zero, description="epsilon(t) >= 0")
    k1: Callable = Field(default=zero, description="K1(t) >= 0")
    k2: Callable = Field(default=zero, description="K2(t) >= 0")
    k3: Callable = Field(default=zero, description="K3(t, s) for I, K3(t) for II")
    k4: Callable = Field(default=zero, description="K4(t) >= 0, variants II only")
    variant: Variant = "I"

    @model_validator(mode="after")
    def _check_interval(self) -> "GronwallData":
        if not self.t_end > self.t0:
            raise ValueError(f"empty interval [{self.t0}, {self.t_end}]")
        return self


class BoundCurve(BaseModel):
    """Upper-bound curve on a time grid."""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    grid: np.ndarray
    values: np.ndarray
    variant: Variant
    step: float = Field(description="Largest grid step")
    quadrature_error: float = Field(
        default=0.0, description="Richardson estimate of the trapezoid error"
    )
    sqrt_scale: bool = Field(
        default=False, description="True when the curve bounds sqrt(rho) (variant II-b)"
    )

    def at(self, t: float) -> float:
        return float(np.interp(t, self.grid, self.values))

    def rows(self):
        return [(float(t), float(v)) for t, v in zip(self.grid, self.values)]

    @property
    def final(self) -> float:
        return float(self.values[-1])


def from_samples(grid, values) -> Callable:
    """Piecewise-linear handle through sampled node values (exact at the nodes)."""
    grid = np.asarray(grid, dtype=float)
    values = np.asarray(values, dtype=float)

    def handle(t, *_):
        return np.interp(t, grid, values)

    return handle
