import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from ..dynamics import ProblemSpec, Trajectory, volterra_sum
from ..exceptions import UnsupportedKind
from ..sets import tangent_projection


class SlowResidual(BaseModel):
    """||d_k - proj_{T_C(x_k)}(h_k)|| along a trajectory."""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    grid: np.ndarray
    residuals: np.ndarray = Field(description="Residual per node")
    step: float

    @property
    def max(self) -> float:
        return float(np.max(self.residuals))


def slow_residual(traj: Trajectory, spec: ProblemSpec) -> SlowResidual:
    """Distance of the discrete velocity from the projected-dynamics velocity field.

    Only defined for a static convex C with constant z.
    """
    if not spec.moving_set.convex:
        raise UnsupportedKind(spec.moving_set.kind, "slow_residual (prox-regular set)")
    if not spec.is_fixed_convex:
        raise UnsupportedKind(spec.moving_set.kind, "slow_residual (moving set)")
    grid, states = traj.grid, traj.states
    shift = spec.shift(spec.t0)
    residuals = np.empty(grid.size)
    for k, t in enumerate(grid):
        h = spec.forcing.evaluate(t, states[k]) + volterra_sum(spec.kernel, grid, states, k)
        tangent = tangent_projection(
            spec.moving_set, t, states[k] - shift, h, tol=spec.feasibility_tol
        )
        residuals[k] = np.linalg.norm(traj.derivatives[k] - tangent)
    return SlowResidual(grid=grid, residuals=residuals, step=traj.step)
