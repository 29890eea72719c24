"""Bound curves for the classical and the two enhanced Gronwall inequalities.

All integrals are composite trapezoid sums on the caller's grid.  Nested
integrals exp(int_s^t gamma) come from a single prefix table G of int_{T0} gamma,
so every curve costs O(n) once gamma is known; the two-argument kernel of
variant I costs O(n^2) because its inner integral depends on the outer time.
"""
from typing import Callable, Tuple

import numpy as np
from scipy.integrate import cumulative_trapezoid, trapezoid

from ..exceptions import (
    EpsilonNotZero,
    InvalidConfiguration,
    NegativeCoefficient,
)
from ..grids import as_grid, check_span, coarsen, sample
from ..utils.logger import logger
from .data import BoundCurve, GronwallData


def classical_bound(grid, rho0: float, rate, forcing) -> np.ndarray:
    """rho0*exp(int_{T0}^t rate) + int_{T0}^t forcing(s)*exp(int_s^t rate) ds on the grid."""
    grid = np.asarray(grid, dtype=float)
    rate = np.broadcast_to(np.asarray(rate, dtype=float), grid.shape)
    forcing = np.broadcast_to(np.asarray(forcing, dtype=float), grid.shape)
    prefix = cumulative_trapezoid(rate, grid, initial=0.0)
    growth = np.exp(prefix)
    inner = cumulative_trapezoid(forcing * np.exp(-prefix), grid, initial=0.0)
    return growth * (rho0 + inner)


def _nonnegative(name: str, grid: np.ndarray, values: np.ndarray) -> np.ndarray:
    bad = np.flatnonzero(values < 0.0)
    if bad.size:
        k = int(bad[0])
        raise NegativeCoefficient(name, float(grid[k]), float(values[k]))
    return values


def _require_variant(data: GronwallData, *allowed: str) -> None:
    if data.variant not in allowed:
        raise InvalidConfiguration(
            f"variant {data.variant} used where {' or '.join(allowed)} is required",
            "variant",
        )


def kernel_integral(kernel: Callable, grid: np.ndarray) -> np.ndarray:
    """int_{T0}^{t_k} K(t_k, s) ds for every node t_k (trapezoid over nodes s <= t_k)."""
    out = np.zeros(grid.size)
    for k in range(1, grid.size):
        s = grid[: k + 1]
        row = _nonnegative("K3", s, sample(kernel, grid[k], s))
        out[k] = trapezoid(row, s)
    return out


def _gamma_I(data: GronwallData, grid: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    eps = _nonnegative("epsilon", grid, sample(data.epsilon, grid))
    k1 = _nonnegative("K1", grid, sample(data.k1, grid))
    k2 = _nonnegative("K2", grid, sample(data.k2, grid))
    gamma = k1 + k2 * kernel_integral(data.k3, grid)
    return gamma, eps


def _gamma_II(data: GronwallData, grid: np.ndarray):
    eps = _nonnegative("epsilon", grid, sample(data.epsilon, grid))
    k1 = _nonnegative("K1", grid, sample(data.k1, grid))
    k2 = _nonnegative("K2", grid, sample(data.k2, grid))
    k3 = _nonnegative("K3", grid, sample(data.k3, grid))
    k4 = _nonnegative("K4", grid, sample(data.k4, grid))
    gamma = k2 + k3 * cumulative_trapezoid(k4, grid, initial=0.0)
    return gamma, eps, k1


def _values_I(data: GronwallData, grid: np.ndarray) -> np.ndarray:
    gamma, eps = _gamma_I(data, grid)
    return classical_bound(grid, data.rho0, gamma, eps)


def _values_II(data: GronwallData, grid: np.ndarray) -> np.ndarray:
    gamma, eps, k1 = _gamma_II(data, grid)
    return classical_bound(grid, data.rho0, gamma + k1, eps + k1)


def _values_II_sqrt(data: GronwallData, grid: np.ndarray) -> np.ndarray:
    gamma, eps, k1 = _gamma_II(data, grid)
    nonzero = np.flatnonzero(eps != 0.0)
    if nonzero.size:
        k = int(nonzero[0])
        raise EpsilonNotZero(float(grid[k]), float(eps[k]))
    return classical_bound(grid, np.sqrt(data.rho0), 0.5 * gamma, 0.5 * k1)


def _build(data: GronwallData, grid, evaluate, sqrt_scale: bool = False) -> BoundCurve:
    grid = as_grid(grid)
    check_span(grid, data.t0, data.t_end)
    values = evaluate(data, grid)
    error = 0.0
    if grid.size >= 5:
        coarse = coarsen(grid)
        coarse_values = evaluate(data, coarse)
        shared = np.interp(coarse, grid, values)
        # trapezoid error drops by 4 when the step halves
        error = float(np.max(np.abs(shared - coarse_values)) / 3.0)
    if not np.all(np.isfinite(values)):
        raise InvalidConfiguration("bound curve overflowed; shorten the interval", "grid")
    curve = BoundCurve(
        grid=grid,
        values=values,
        variant=data.variant,
        step=float(np.max(np.diff(grid))),
        quadrature_error=error,
        sqrt_scale=sqrt_scale,
    )
    logger.debug(
        f"Gronwall {data.variant}: bound(T)={curve.final:.10g}, "
        f"quadrature error ~{error:.2e} on {grid.size} nodes"
    )
    return curve


def gronwall_I(data: GronwallData, grid) -> BoundCurve:
    """Bound of the enhanced inequality I with gamma = K1 + K2*int K3(t, s) ds."""
    _require_variant(data, "I")
    return _build(data, grid, _values_I)


def gronwall_II(data: GronwallData, grid) -> BoundCurve:
    """Bound of the enhanced inequality II(a) with rate gamma + K1 and forcing eps + K1."""
    _require_variant(data, "II-a")
    return _build(data, grid, _values_II)


def gronwall_II_sqrt(data: GronwallData, grid) -> BoundCurve:
    """Bound on sqrt(rho) from the enhanced inequality II(b); needs epsilon == 0."""
    _require_variant(data, "II-b")
    return _build(data, grid, _values_II_sqrt, sqrt_scale=True)


def gronwall_bound(data: GronwallData, grid) -> BoundCurve:
    """Dispatch on ``data.variant``."""
    if data.variant == "I":
        return gronwall_I(data, grid)
    if data.variant == "II-a":
        return gronwall_II(data, grid)
    return gronwall_II_sqrt(data, grid)
