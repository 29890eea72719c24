from typing import Callable, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from ..exceptions import InfeasibleStart, InvalidConfiguration
from ..grids import uniform_grid
from ..paths import ConstantPath, Path, as_path
from ..sets import MovingSet
from .forcing import Forcing
from .kernel import VolterraKernel


class ProblemSpec(BaseModel):
    """SP(x0, z, f, g): sweep by C(t) + z(t) with forcing f and Volterra memory g."""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    name: str = Field(default="problem", description="Label used in logs and output folders")
    t0: float = Field(description="Initial time T0")
    t_end: float = Field(description="Final time T")
    moving_set: MovingSet = Field(description="Set family C(t)")
    z: Path = Field(default_factory=lambda: ConstantPath(0.0), description="Perturbation z(t)")
    rate_bound: Optional[Callable] = Field(
        default=None, description="R(t) with ||z'(t)|| <= R(t); derived from z when omitted"
    )
    forcing: Forcing
    kernel: VolterraKernel
    x0: np.ndarray = Field(description="Initial point, must lie in C(T0) + z(T0)")
    feasibility_tol: float = Field(default=1e-9, gt=0.0)

    @field_validator("x0", mode="before")
    @classmethod
    def _as_vector(cls, value):
        return np.atleast_1d(np.asarray(value, dtype=float))

    @field_validator("rate_bound", mode="before")
    @classmethod
    def _as_rate(cls, value):
        if value is None or callable(value):
            return value
        declared = float(value)
        return lambda t: declared

    @field_validator("z", mode="before")
    @classmethod
    def _as_path(cls, value):
        return as_path(value)

    @model_validator(mode="after")
    def _check(self) -> "ProblemSpec":
        if not self.t_end > self.t0:
            raise ValueError(f"empty interval [{self.t0}, {self.t_end}]")
        d = self.moving_set.dim
        if self.x0.shape != (d,):
            raise InvalidConfiguration(f"x0 has shape {self.x0.shape}, expected ({d},)", "x0")
        for label, part in (("forcing", self.forcing), ("kernel", self.kernel)):
            if part.dim != d:
                raise InvalidConfiguration(f"{label} dimension {part.dim} != {d}", label)
        z0 = np.asarray(self.z.value(self.t0), dtype=float)
        if z0.ndim != 0 and z0.shape != (d,):
            raise InvalidConfiguration(f"z has shape {z0.shape}, expected ({d},)", "z")
        if self.rate_bound is None:
            self.rate_bound = self._derived_rate()
        distance = self.distance(self.t0, self.x0)
        if distance > self.feasibility_tol:
            raise InfeasibleStart(distance, self.feasibility_tol)
        return self

    def _derived_rate(self) -> Callable[[float], float]:
        bound = self.z.speed_bound
        if bound is not None:
            return lambda t: bound
        return self.z.speed

    # -- geometry of C(t) + z(t) -----------------------------------------

    @property
    def dim(self) -> int:
        return self.moving_set.dim

    def shift(self, t: float) -> np.ndarray:
        return np.broadcast_to(np.asarray(self.z.value(t), dtype=float), (self.dim,))

    def project(self, t: float, x) -> np.ndarray:
        """Projection onto C(t) + z(t)."""
        shift = self.shift(t)
        return shift + self.moving_set.project(t, np.asarray(x, dtype=float) - shift)

    def step_project(self, t: float, x) -> np.ndarray:
        shift = self.shift(t)
        return shift + self.moving_set.step_project(t, np.asarray(x, dtype=float) - shift)

    def distance(self, t: float, x) -> float:
        shift = self.shift(t)
        return self.moving_set.distance(t, np.asarray(x, dtype=float) - shift)

    def contains(self, t: float, x, tol: Optional[float] = None) -> bool:
        return self.distance(t, x) <= (self.feasibility_tol if tol is None else tol)

    # -- moduli helpers ---------------------------------------------------

    def motion_rate(self, t: float) -> float:
        return self.moving_set.motion_rate(t)

    @property
    def is_fixed_convex(self) -> bool:
        """C static and convex with a constant z (the fixed-set setting)."""
        return self.moving_set.convex and self.moving_set.is_static and self.z.is_constant

    def grid(self, n: int) -> np.ndarray:
        return uniform_grid(self.t0, self.t_end, n)

    def with_changes(self, **changes) -> "ProblemSpec":
        """Validated copy with some fields replaced."""
        data = {name: getattr(self, name) for name in type(self).model_fields}
        data.update(changes)
        return type(self)(**data)
