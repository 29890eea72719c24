"""Trapezoid quadrature of the Volterra memory and the curves built from the moduli."""
import numpy as np
from pydantic import BaseModel, ConfigDict, Field
from scipy.integrate import cumulative_trapezoid, trapezoid

from ..exceptions import InvalidConfiguration
from ..grids import as_grid, node_index
from .kernel import VolterraKernel
from .problem import ProblemSpec
from .trajectory import Trajectory


def volterra_sum(kernel: VolterraKernel, grid: np.ndarray, states: np.ndarray, k: int) -> np.ndarray:
    """int_{t_0}^{t_k} g(t_k, s, x(s)) ds over the first k + 1 nodes."""
    if k == 0 or kernel.is_zero:
        return np.zeros(kernel.dim)
    s = grid[: k + 1]
    values = kernel.evaluate_history(grid[k], s, states[: k + 1])
    return trapezoid(values, s, axis=0)


def accumulate_volterra(kernel: VolterraKernel, traj: Trajectory, t: float) -> np.ndarray:
    """Memory term at the node t from the trajectory prefix; GridMismatch off the grid."""
    k = node_index(traj.grid, t)
    return volterra_sum(kernel, traj.grid, traj.states, k)


def sigma_integral(kernel: VolterraKernel, grid: np.ndarray) -> np.ndarray:
    """int_{T0}^{t_k} sigma(t_k, s) ds at every node."""
    out = np.zeros(grid.size)
    if kernel.is_zero:
        return out
    for k in range(1, grid.size):
        s = grid[: k + 1]
        out[k] = trapezoid(kernel.growth(grid[k], s), s)
    return out


def gamma_curve(spec: ProblemSpec, grid) -> np.ndarray:
    """gamma(t) = 2 beta(t) + 2 int_{T0}^t sigma(t, s) ds."""
    grid = as_grid(grid)
    beta = np.array([spec.forcing.growth(t) for t in grid])
    return 2.0 * beta + 2.0 * sigma_integral(spec.kernel, grid)


class Reparametrization(BaseModel):
    """Time change s = Phi(t) = int_{T0}^t phi, phi >= 1."""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    grid: np.ndarray = Field(description="Original nodes t_k")
    phi: np.ndarray = Field(description="phi(t_k) >= 1")
    s_grid: np.ndarray = Field(description="Images Phi(t_k), starting at 0")
    radius: float = Field(description="Radius r(T) used for kappa and mu")

    @property
    def s_end(self) -> float:
        return float(self.s_grid[-1])

    def to_reparam(self, t):
        return np.interp(t, self.grid, self.s_grid)

    def to_original(self, s):
        """phi^{-1} restricted to grid images, linear in between."""
        return np.interp(s, self.s_grid, self.grid)


def phi_reparametrization(spec: ProblemSpec, r_T: float, grid) -> Reparametrization:
    """phi(t) = max{1, kappa_r(t), mu_r(t), beta(t), int sigma(t, s) ds} at r = r(T)."""
    if not r_T > 0.0:
        raise InvalidConfiguration(
            f"reparametrization needs a positive envelope radius r(T), got {r_T}", "reparametrize"
        )
    grid = as_grid(grid)
    kappa = np.array([spec.forcing.lipschitz(r_T, t) for t in grid])
    mu = np.array([spec.kernel.lipschitz(r_T, t) for t in grid])
    beta = np.array([spec.forcing.growth(t) for t in grid])
    memory = sigma_integral(spec.kernel, grid)
    phi = np.maximum.reduce([np.ones(grid.size), kappa, mu, beta, memory])
    return Reparametrization(
        grid=grid,
        phi=phi,
        s_grid=cumulative_trapezoid(phi, grid, initial=0.0),
        radius=float(r_T),
    )
