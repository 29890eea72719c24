"""Sup distances d_r(f1, f2)(t) and D_r(g1, g2)(t, s) over the ball rB.

Affine forcings and separable kernels get closed-form upper bounds through
operator norms.  Anything else is estimated on a fixed Halton sample of rB,
which gives lower estimates, and is flagged as such.
"""
from functools import lru_cache
from typing import Tuple

import numpy as np
from scipy.integrate import trapezoid
from scipy.stats import qmc

from ..dynamics import Forcing, VolterraKernel, operator_norm

SAMPLE_COUNT = 256
KERNEL_NODES = 17


@lru_cache(maxsize=16)
def _unit_ball_sample(dim: int, count: int) -> np.ndarray:
    """Deterministic points of the unit ball: the origin plus a radially folded Halton cube."""
    cube = qmc.Halton(d=dim, scramble=False).random(count - 1)
    pts = 2.0 * cube - 1.0
    norms = np.linalg.norm(pts, axis=1, keepdims=True)
    pts = np.where(norms > 1.0, pts / np.maximum(norms, 1e-300), pts)
    return np.vstack([np.zeros((1, dim)), pts])


def halton_ball(dim: int, radius: float, count: int = SAMPLE_COUNT) -> np.ndarray:
    return radius * _unit_ball_sample(dim, count)


def forcing_gap(f1: Forcing, f2: Forcing, radius: float, grid: np.ndarray) -> Tuple[np.ndarray, bool]:
    """(d_r(f1, f2)(t_k) for every node, estimated?)."""
    first, second = f1.affine_parts(grid[0]), f2.affine_parts(grid[0])
    if first is not None and second is not None:
        norm = operator_norm(first[0] - second[0])
        offsets = np.array(
            [np.linalg.norm(f1.affine_parts(t)[1] - f2.affine_parts(t)[1]) for t in grid]
        )
        return norm * radius + offsets, False
    points = halton_ball(f1.dim, radius)
    values = np.array(
        [
            max(float(np.linalg.norm(f1.evaluate(t, x) - f2.evaluate(t, x))) for x in points)
            for t in grid
        ]
    )
    return values, True


def _separable_gap(g1, g2, radius: float, t: float, s: np.ndarray, norms) -> np.ndarray:
    k1, _, c1 = g1.affine_parts(t, s)
    k2, _, c2 = g2.affine_parts(t, s)
    k1 = np.broadcast_to(k1, s.shape)
    k2 = np.broadcast_to(k2, s.shape)
    diff_norm, second_norm = norms
    linear = np.abs(k1) * diff_norm + np.abs(k1 - k2) * second_norm
    offsets = np.linalg.norm(k1[:, None] * c1 - k2[:, None] * c2, axis=1)
    return linear * radius + offsets


def kernel_gap_integral(
    g1: VolterraKernel, g2: VolterraKernel, radius: float, grid: np.ndarray
) -> Tuple[np.ndarray, bool]:
    """(int_{T0}^{t_k} D_r(g1, g2)(t_k, s) ds for every node, estimated?)."""
    out = np.zeros(grid.size)
    parts = (g1.affine_parts(grid[0], grid[:1]), g2.affine_parts(grid[0], grid[:1]))
    if parts[0] is not None and parts[1] is not None:
        norms = (operator_norm(parts[0][1] - parts[1][1]), operator_norm(parts[1][1]))
        for k in range(1, grid.size):
            s = grid[: k + 1]
            out[k] = trapezoid(_separable_gap(g1, g2, radius, grid[k], s, norms), s)
        return out, False

    # sampled sups on a coarse sub-grid, interpolated back to every node
    stride = max(1, (grid.size - 1) // (KERNEL_NODES - 1))
    coarse = grid[::stride]
    if coarse[-1] != grid[-1]:
        coarse = np.append(coarse, grid[-1])
    points = halton_ball(g1.dim, radius)
    coarse_out = np.zeros(coarse.size)
    for k in range(1, coarse.size):
        s = coarse[: k + 1]
        gaps = [
            float(
                np.max(
                    np.linalg.norm(
                        g1.evaluate_history(coarse[k], np.full(len(points), sj), points)
                        - g2.evaluate_history(coarse[k], np.full(len(points), sj), points),
                        axis=1,
                    )
                )
            )
            for sj in s
        ]
        coarse_out[k] = trapezoid(gaps, s)
    return np.interp(grid, coarse, coarse_out), True
