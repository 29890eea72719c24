"""Time grids and vectorized sampling of coefficient handles."""
from typing import Callable

import numpy as np

from .exceptions import GridMismatch, NonmonotoneGrid


def as_grid(grid) -> np.ndarray:
    """Validate a time grid: 1-D, at least two nodes, strictly increasing."""
    arr = np.asarray(grid, dtype=float)
    if arr.ndim != 1 or arr.size < 2:
        raise NonmonotoneGrid(0, f"a time grid needs >= 2 nodes, got shape {arr.shape}")
    steps = np.diff(arr)
    bad = np.flatnonzero(~(steps > 0.0))
    if bad.size:
        raise NonmonotoneGrid(int(bad[0]) + 1)
    return arr


def uniform_grid(t0: float, t_end: float, n: int) -> np.ndarray:
    """n uniform steps on [t0, t_end] (n + 1 nodes)."""
    if n < 1:
        raise NonmonotoneGrid(0, f"need at least one step, got n={n}")
    grid = np.linspace(t0, t_end, n + 1)
    return as_grid(grid)


def refine(grid: np.ndarray, factor: int) -> np.ndarray:
    """Split each interval into ``factor`` equal pieces; coarse nodes are kept exactly."""
    grid = as_grid(grid)
    if factor < 1:
        raise ValueError(f"refinement factor must be >= 1, got {factor}")
    pieces = [
        np.linspace(a, b, factor + 1)[:-1] for a, b in zip(grid[:-1], grid[1:])
    ]
    fine = np.concatenate(pieces + [grid[-1:]])
    fine[::factor] = grid
    return fine


def coarsen(grid: np.ndarray) -> np.ndarray:
    """Every other node, always keeping the final node."""
    coarse = grid[::2]
    if coarse[-1] != grid[-1]:
        coarse = np.append(coarse, grid[-1])
    return coarse


def node_index(grid: np.ndarray, t: float, atol: float = 1e-12) -> int:
    """Index of the node equal to ``t``; raises GridMismatch when t is not a node."""
    k = int(np.searchsorted(grid, t))
    for cand in (k - 1, k):
        if 0 <= cand < grid.size and abs(grid[cand] - t) <= atol * max(1.0, abs(t)):
            return cand
    raise GridMismatch(t)


def check_span(grid: np.ndarray, t0: float, t_end: float, atol: float = 1e-12) -> None:
    if abs(grid[0] - t0) > atol or abs(grid[-1] - t_end) > atol:
        raise GridMismatch(
            message=(
                f"grid spans [{grid[0]:.12g}, {grid[-1]:.12g}] but the interval is "
                f"[{t0:.12g}, {t_end:.12g}]"
            )
        )


def sample(fn: Callable, *args) -> np.ndarray:
    """Evaluate a scalar handle on broadcast array arguments.

    Handles written with numpy operations are called once on whole arrays; handles
    that reject arrays (math.*, Python branching) fall back to elementwise calls.
    """
    arrays = [np.asarray(a, dtype=float) for a in args]
    shape = np.broadcast(*arrays).shape
    try:
        out = np.asarray(fn(*arrays), dtype=float)
        return np.array(np.broadcast_to(out, shape), dtype=float)
    except (TypeError, ValueError):
        vec = np.vectorize(lambda *a: float(fn(*a)), otypes=[float])
        return np.array(vec(*arrays), dtype=float).reshape(shape)
