"""Numerical dominance check: integrate the equality version of a Gronwall
hypothesis and compare the solution against the bound curve."""
import numpy as np
from pydantic import BaseModel, ConfigDict, Field
from scipy.integrate import trapezoid

from ..exceptions import GridMismatch
from ..grids import as_grid, refine, sample
from ..utils.logger import logger
from .data import BoundCurve, GronwallData

SUBSTEPS = 10


class DominanceReport(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    variant: str
    grid: np.ndarray
    numeric: np.ndarray = Field(
        description="Equality solution at the bound nodes (sqrt scale for II-b)"
    )
    margin: float = Field(description="min over nodes of bound - numeric")
    tolerance: float = Field(description="quadrature estimate + integration tolerance")

    @property
    def passed(self) -> bool:
        return self.margin >= -self.tolerance

    @property
    def max_excess(self) -> float:
        return -self.margin


def _scalar(fn, t: float) -> float:
    return float(sample(fn, t))


def _integrate_kernel_form(data: GronwallData, fine: np.ndarray) -> np.ndarray:
    """RK4 for rho' = eps + K1 rho + K2 int_{T0}^t K3(t, s) rho(s) ds.

    The memory term at a stage time uses the stored history plus a trapezoid
    panel from the last node to the stage value.
    """
    rho = np.empty(fine.size)
    rho[0] = data.rho0

    def memory(t: float, upto: int, value: float) -> float:
        s = fine[: upto + 1]
        weights = sample(data.k3, t, s)
        total = trapezoid(weights * rho[: upto + 1], s) if upto > 0 else 0.0
        dt = t - fine[upto]
        if dt > 0.0:
            diagonal = float(sample(data.k3, t, t))
            total += 0.5 * dt * (weights[-1] * rho[upto] + diagonal * value)
        return float(total)

    def rhs(t: float, upto: int, value: float) -> float:
        return (
            _scalar(data.epsilon, t)
            + _scalar(data.k1, t) * value
            + _scalar(data.k2, t) * memory(t, upto, value)
        )

    for i in range(fine.size - 1):
        t, h = fine[i], fine[i + 1] - fine[i]
        r = rho[i]
        a = rhs(t, i, r)
        b = rhs(t + 0.5 * h, i, r + 0.5 * h * a)
        c = rhs(t + 0.5 * h, i, r + 0.5 * h * b)
        d = rhs(t + h, i, r + h * c)
        rho[i + 1] = r + h / 6.0 * (a + 2.0 * b + 2.0 * c + d)
    return rho


def _integrate_sqrt_form(data: GronwallData, fine: np.ndarray) -> np.ndarray:
    """RK4 for rho' = eps + K1 sqrt(rho) + K2 rho + K3 sqrt(rho) int K4 sqrt(rho).

    The memory integral is separable, so it rides along as a second state m' = K4 sqrt(rho).
    """
    state = np.empty((fine.size, 2))
    state[0] = (data.rho0, 0.0)

    def rhs(t: float, y: np.ndarray) -> np.ndarray:
        root = np.sqrt(max(y[0], 0.0))
        drho = (
            _scalar(data.epsilon, t)
            + _scalar(data.k1, t) * root
            + _scalar(data.k2, t) * y[0]
            + _scalar(data.k3, t) * root * y[1]
        )
        return np.array([drho, _scalar(data.k4, t) * root])

    for i in range(fine.size - 1):
        t, h = fine[i], fine[i + 1] - fine[i]
        y = state[i]
        a = rhs(t, y)
        b = rhs(t + 0.5 * h, y + 0.5 * h * a)
        c = rhs(t + 0.5 * h, y + 0.5 * h * b)
        d = rhs(t + h, y + h * c)
        state[i + 1] = y + h / 6.0 * (a + 2.0 * b + 2.0 * c + d)
    return state[:, 0]


def verify_dominance(
    bound: BoundCurve,
    data: GronwallData,
    grid,
    integration_tol: float = 1e-6,
    substeps: int = SUBSTEPS,
) -> DominanceReport:
    """Check that the equality solution of the hypothesis stays below the bound."""
    grid = as_grid(grid)
    if grid.size != bound.grid.size or not np.allclose(grid, bound.grid, rtol=0, atol=1e-12):
        raise GridMismatch(message="verify_dominance needs the grid of the bound curve")
    fine = refine(grid, substeps)
    if data.variant == "I":
        rho = _integrate_kernel_form(data, fine)
    else:
        rho = _integrate_sqrt_form(data, fine)
    numeric = rho[::substeps]
    if data.variant == "II-b":
        numeric = np.sqrt(np.maximum(numeric, 0.0))
    margin = float(np.min(bound.values - numeric))
    report = DominanceReport(
        variant=data.variant,
        grid=grid,
        numeric=numeric,
        margin=margin,
        tolerance=bound.quadrature_error + integration_tol,
    )
    logger.debug(f"dominance {data.variant}: margin {margin:.3e} (tol {report.tolerance:.1e})")
    return report
