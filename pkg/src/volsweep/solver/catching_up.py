"""Catching-up time-stepping: explicit forcing at the left node, then one projection."""
from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from ..dynamics import ProblemSpec, Trajectory, volterra_sum
from ..exceptions import InfeasibleStart, InvalidConfiguration, NotOnSet
from ..grids import as_grid, refine
from ..paths import Path
from ..sets import MovingSet
from ..utils.logger import logger
from .config import SolverConfig


class InnerSweepResult(BaseModel):
    """Catching-up run with frozen forcing plus the discrete velocity-bound check."""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    trajectory: Trajectory
    velocity_margins: np.ndarray = Field(
        description="||h_k|| + |v'(t_k)| + ||z'(t_k)|| - ||d_k - h_k|| per step"
    )

    @property
    def worst_margin(self) -> float:
        return float(np.min(self.velocity_margins))


def _shifted_projection(moving_set: MovingSet, z: Path, t: float, x: np.ndarray) -> np.ndarray:
    shift = np.broadcast_to(np.asarray(z.value(t), dtype=float), x.shape)
    return shift + moving_set.step_project(t, x - shift)


def _check_feasible(spec: ProblemSpec, grid: np.ndarray, states: np.ndarray, tol: float) -> None:
    for t, x in zip(grid[1:], states[1:]):
        distance = spec.distance(t, x)
        if distance > tol:
            raise NotOnSet(float(t), distance, tol)


def catching_up(spec: ProblemSpec, config: Optional[SolverConfig] = None) -> Trajectory:
    """x_{k+1} = proj_{C(t_{k+1}) + z(t_{k+1})}(x_k + h_k (f(t_k, x_k) + int_{T0}^{t_k} g))."""
    config = config or SolverConfig()
    grid = config.make_grid(spec.t0, spec.t_end)
    return _catching_up_on(spec, grid, config.tol_feas, "catching-up")


def _catching_up_on(spec: ProblemSpec, grid: np.ndarray, tol_feas: float, provenance) -> Trajectory:
    start = spec.distance(spec.t0, spec.x0)
    if start > tol_feas:
        raise InfeasibleStart(start, tol_feas)
    states = np.empty((grid.size, spec.dim))
    states[0] = spec.x0
    for k in range(grid.size - 1):
        t, h = grid[k], grid[k + 1] - grid[k]
        force = spec.forcing.evaluate(t, states[k]) + volterra_sum(spec.kernel, grid, states, k)
        states[k + 1] = spec.step_project(grid[k + 1], states[k] + h * force)
    _check_feasible(spec, grid, states, tol_feas)
    logger.debug(f"{spec.name}: catching-up on {grid.size - 1} steps, x(T)={states[-1]}")
    return Trajectory.from_states(grid, states, provenance)


def solve_inner_sweeping(
    moving_set: MovingSet,
    z: Path,
    forcing_values,
    grid,
    x0,
    set_times=None,
    tol_feas: float = 1e-9,
) -> InnerSweepResult:
    """Catching-up for x' in -N_{C(t)+z(t)}(x) + h(t) with h frozen at the nodes.

    ``grid`` carries the step sizes; ``set_times`` (defaults to ``grid``) are the
    times at which C and z are evaluated, which differ in reparametrized time.
    """
    grid = as_grid(grid)
    times = grid if set_times is None else np.asarray(set_times, dtype=float)
    values = np.asarray(forcing_values, dtype=float)
    if values.ndim == 1:
        values = values[:, None]
    if values.shape[0] != grid.size or times.shape != grid.shape:
        raise InvalidConfiguration("forcing values and set times must match the grid", "grid")
    x0 = np.asarray(x0, dtype=float)
    shift = np.broadcast_to(np.asarray(z.value(times[0]), dtype=float), x0.shape)
    start = moving_set.distance(times[0], x0 - shift)
    if start > tol_feas:
        raise InfeasibleStart(start, tol_feas)
    states = np.empty((grid.size, moving_set.dim))
    states[0] = x0
    for k in range(grid.size - 1):
        step = grid[k + 1] - grid[k]
        states[k + 1] = _shifted_projection(
            moving_set, z, times[k + 1], states[k] + step * values[k]
        )
    trajectory = Trajectory.from_states(grid, states, "fixed-point")

    # rates of C and z measured per unit of the stepping variable
    scale = np.diff(times) / np.diff(grid)
    scale = np.append(scale, scale[-1])
    drift = np.array(
        [moving_set.motion_rate(t) + z.speed(t) for t in times]
    ) * scale
    lhs = np.linalg.norm(trajectory.derivatives - values, axis=1)
    margins = np.linalg.norm(values, axis=1) + drift - lhs
    return InnerSweepResult(trajectory=trajectory, velocity_margins=margins[:-1])


def reference_solve(
    spec: ProblemSpec, config: Optional[SolverConfig] = None, fine_factor: int = 8
) -> Trajectory:
    """Catching-up on a grid refined by ``fine_factor``, restricted to the coarse nodes."""
    if fine_factor < 4:
        raise InvalidConfiguration(f"fine_factor must be >= 4, got {fine_factor}", "fine_factor")
    config = config or SolverConfig()
    coarse = config.make_grid(spec.t0, spec.t_end)
    fine = refine(coarse, fine_factor)
    trajectory = _catching_up_on(spec, fine, config.tol_feas, "reference")
    return trajectory.restrict(fine_factor, provenance="reference")
