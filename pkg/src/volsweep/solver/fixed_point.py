"""Fixed-point iteration on the history-dependent operator F.

F(y) truncates y onto r(t)B, builds the forcing h(y) from f and the Volterra
memory of the truncated curve, and runs the inner sweeping solver with h frozen.
The discrete F is causal, so iterates settle node by node like Picard iterates.
"""
from typing import Optional, Tuple

import numpy as np

from ..analysis.envelopes import BoundEnvelope, compute_envelopes
from ..dynamics import ProblemSpec, Trajectory, phi_reparametrization, volterra_sum
from ..exceptions import InfeasibleStart, NoConvergence
from ..utils.logger import logger
from .catching_up import solve_inner_sweeping
from .config import FixedPointReport, SolverConfig


def truncate(curve: np.ndarray, radii: np.ndarray) -> np.ndarray:
    """Nodewise projection of y_k onto r(t_k)B."""
    norms = np.linalg.norm(curve, axis=1)
    factors = np.where(norms > radii, radii / np.maximum(norms, 1e-300), 1.0)
    return curve * factors[:, None]


def forcing_curve(spec: ProblemSpec, grid: np.ndarray, curve: np.ndarray) -> np.ndarray:
    """h_k = f(t_k, y_k) + int_{T0}^{t_k} g(t_k, s, y(s)) ds."""
    values = np.empty_like(curve)
    for k, t in enumerate(grid):
        values[k] = spec.forcing.evaluate(t, curve[k]) + volterra_sum(spec.kernel, grid, curve, k)
    return values


def fixed_point_solve(
    spec: ProblemSpec,
    config: Optional[SolverConfig] = None,
    envelope: Optional[BoundEnvelope] = None,
) -> Tuple[Trajectory, FixedPointReport]:
    config = config or SolverConfig(scheme="fixed-point")
    grid = config.make_grid(spec.t0, spec.t_end)
    start = spec.distance(spec.t0, spec.x0)
    if start > config.tol_feas:
        raise InfeasibleStart(start, config.tol_feas)
    if envelope is None:
        envelope = compute_envelopes(spec, grid)
    radii = np.asarray(envelope.r, dtype=float)

    step_grid, scale = grid, np.ones(grid.size)
    if config.reparametrize:
        reparam = phi_reparametrization(spec, float(radii[-1]), grid)
        step_grid, scale = reparam.s_grid, reparam.phi
        logger.debug(f"{spec.name}: reparametrized onto [0, {reparam.s_end:.6g}]")

    def apply(curve: np.ndarray) -> np.ndarray:
        values = forcing_curve(spec, grid, truncate(curve, radii)) / scale[:, None]
        inner = solve_inner_sweeping(
            spec.moving_set, spec.z, values, step_grid, spec.x0, set_times=grid,
            tol_feas=config.tol_feas,
        )
        return inner.trajectory.states

    y = np.tile(spec.x0, (grid.size, 1))
    deltas = []
    converged = False
    residual = None
    for m in range(1, config.max_iterations + 1):
        w = apply(y)
        delta = float(np.max(np.linalg.norm(w - y, axis=1)))
        deltas.append(delta)
        logger.iteration(spec.name, "fixed-point", m, delta)
        y = w
        if delta <= config.tol_fp:
            # the returned iterate itself must pass ||F(y) - y|| <= tol_fp
            residual = float(np.max(np.linalg.norm(apply(y) - y, axis=1)))
            if residual <= config.tol_fp:
                converged = True
                break

    if not converged:
        residual = float(np.max(np.linalg.norm(apply(y) - y, axis=1)))
    report = FixedPointReport(
        iterations=len(deltas),
        deltas=deltas,
        converged=converged,
        residual=residual,
        reparametrized=config.reparametrize,
    )
    if not converged:
        raise NoConvergence(report)
    logger.stage(spec.name, f"fixed point after {report.iterations} iterations")
    return Trajectory.from_states(grid, y, "fixed-point"), report
