"""A priori envelopes r(t) >= ||x(t)|| and theta(t) >= ||x'(t)|| from the problem data.

r(t) = ||x0|| e^{int gamma} + int (gamma + |v'| + R) e^{int_s^t gamma} ds
theta(t) = gamma (1 + r) + |v'| + R

In the fixed convex setting the |v'| and R drivers vanish.
"""
import math
from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field
from scipy.integrate import trapezoid

from ..dynamics import ProblemSpec, Trajectory, gamma_curve
from ..exceptions import GridMismatch
from ..grids import as_grid
from ..gronwall import classical_bound
from ..utils.logger import logger


class BoundEnvelope(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    grid: np.ndarray
    r: np.ndarray = Field(description="State envelope r(t_k)")
    theta: np.ndarray = Field(description="Speed envelope theta(t_k)")
    gamma: np.ndarray = Field(description="gamma(t_k) = 2 beta + 2 int sigma")
    x0_norm: float
    motion_rate: np.ndarray = Field(description="|v'(t_k)| as used (zero for fixed sets)")
    rate_bound: np.ndarray = Field(description="R(t_k) as used (zero for fixed sets)")
    fixed_set: bool = False

    @property
    def r_final(self) -> float:
        return float(self.r[-1])

    def eta(self) -> np.ndarray:
        return 2.0 * (1.0 + self.r) + self.motion_rate + self.rate_bound

    def contraction_constant(self, rho: float) -> float:
        """exp(int eta / rho + 1); rho = inf gives e."""
        if math.isinf(rho):
            return math.e
        return float(np.exp(trapezoid(self.eta(), self.grid) / rho + 1.0))


class EnvelopeReport(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    grid: np.ndarray
    state_norms: np.ndarray
    speed_norms: np.ndarray
    r_margins: np.ndarray = Field(description="r(t_k) - ||x_k||")
    theta_margins: np.ndarray = Field(
        description="max(theta_k, theta_{k+1}) - ||d_k|| for k < n"
    )
    tol: float

    @property
    def r_margin(self) -> float:
        return float(np.min(self.r_margins))

    @property
    def theta_margin(self) -> float:
        return float(np.min(self.theta_margins))

    @property
    def passed(self) -> bool:
        return self.r_margin >= -self.tol and self.theta_margin >= -self.tol


def compute_envelopes(
    spec: ProblemSpec, grid, fixed_set: Optional[bool] = None
) -> BoundEnvelope:
    """Envelopes on the grid; ``fixed_set`` defaults to whether C is static convex with constant z."""
    grid = as_grid(grid)
    if fixed_set is None:
        fixed_set = spec.is_fixed_convex
    gamma = gamma_curve(spec, grid)
    if fixed_set:
        motion = np.zeros(grid.size)
        rates = np.zeros(grid.size)
    else:
        motion = np.array([spec.motion_rate(t) for t in grid])
        rates = np.array([float(spec.rate_bound(t)) for t in grid])
    x0_norm = float(np.linalg.norm(spec.x0))
    r = classical_bound(grid, x0_norm, gamma, gamma + motion + rates)
    theta = gamma * (1.0 + r) + motion + rates
    logger.debug(f"{spec.name}: envelope r(T)={r[-1]:.6g}, theta(T)={theta[-1]:.6g}")
    return BoundEnvelope(
        grid=grid,
        r=r,
        theta=theta,
        gamma=gamma,
        x0_norm=x0_norm,
        motion_rate=motion,
        rate_bound=rates,
        fixed_set=bool(fixed_set),
    )


def check_envelopes(traj: Trajectory, env: BoundEnvelope, tol: float = 1e-9) -> EnvelopeReport:
    if traj.grid.shape != env.grid.shape or not np.allclose(traj.grid, env.grid, rtol=0.0, atol=1e-12):
        raise GridMismatch(message="trajectory and envelope use different grids")
    norms = traj.norms()
    speeds = traj.speeds()
    adjacent = np.maximum(env.theta[:-1], env.theta[1:])
    return EnvelopeReport(
        grid=env.grid,
        state_norms=norms,
        speed_norms=speeds,
        r_margins=env.r - norms,
        theta_margins=adjacent - speeds[:-1],
        tol=tol,
    )
