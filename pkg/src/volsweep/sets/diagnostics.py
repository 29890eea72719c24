"""Sampled diagnostics for moving sets: hypomonotonicity of truncated proximal
normals and Hausdorff motion against the declared modulus v(t)."""
from typing import List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from ..utils.logger import logger
from .cones import ConeVector
from .moving_set import MovingSet, _unit_directions

PERTURBATION_FACTOR = 1e-4


class HypomonotoneReport(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    kind: str
    t: float
    sample_count: int
    inverse_prox: float = Field(description="1/rho, 0 for convex kinds")
    worst_value: float = Field(
        description="min over pairs of <v1-v2, x1-x2> + (1/rho)||x1-x2||^2"
    )
    worst_pair: Optional[Tuple[ConeVector, ConeVector]] = None
    normals_found: int = Field(description="Samples that produced a nonzero proximal normal")
    tol: float

    @property
    def passed(self) -> bool:
        return self.worst_value >= -self.tol


class MotionReport(BaseModel):
    kind: str
    pairs_checked: int
    worst_margin: float = Field(description="min of |v(t)-v(s)| - excess(s, t)")
    worst_times: Tuple[float, float]
    tol: float

    @property
    def passed(self) -> bool:
        return self.worst_margin >= -self.tol


def proximal_normals(
    moving_set: MovingSet, t: float, sample_count: int, rng: np.random.Generator
) -> List[ConeVector]:
    """Unit proximal normals manufactured from outward-perturbed slice points.

    Each slice point is pushed by eps * (random unit direction) and projected back;
    the normalized residual is a proximal normal at the projection.  Points whose
    perturbation stays inside the slice yield the zero normal.
    """
    points = moving_set.sample_points(t, sample_count, rng)
    eps = PERTURBATION_FACTOR * moving_set.scale(t)
    dirs = _unit_directions(rng, sample_count, moving_set.dim)
    normals = []
    for p, u in zip(points, dirs):
        x_out = p + eps * u
        y = moving_set.project(t, x_out)
        diff = x_out - y
        size = float(np.linalg.norm(diff))
        if size > 1e-9 * eps:
            nu = diff / size
        else:
            nu = np.zeros(moving_set.dim)
        normals.append(ConeVector(base=y, direction=nu, tag="normal", t=t))
    return normals


def check_hypomonotone(
    moving_set: MovingSet,
    t: float,
    sample_count: int = 100,
    rng_seed: int = 0,
    tol: float = 1e-9,
) -> HypomonotoneReport:
    if sample_count < 2:
        raise ValueError(f"sample_count must be >= 2, got {sample_count}")
    rng = np.random.default_rng(rng_seed)
    normals = proximal_normals(moving_set, t, sample_count, rng)
    xs = np.array([c.base for c in normals])
    vs = np.array([c.direction for c in normals])
    inv_rho = moving_set.inverse_prox

    dx = xs[:, None, :] - xs[None, :, :]
    dv = vs[:, None, :] - vs[None, :, :]
    values = np.einsum("ijk,ijk->ij", dv, dx) + inv_rho * np.einsum("ijk,ijk->ij", dx, dx)
    iu = np.triu_indices(sample_count, k=1)
    upper = values[iu]
    worst_idx = int(np.argmin(upper))
    i, j = int(iu[0][worst_idx]), int(iu[1][worst_idx])
    worst = float(upper[worst_idx])

    found = int(np.count_nonzero(np.linalg.norm(vs, axis=1)))
    report = HypomonotoneReport(
        kind=moving_set.kind,
        t=t,
        sample_count=sample_count,
        inverse_prox=inv_rho,
        worst_value=worst,
        worst_pair=(normals[i], normals[j]),
        normals_found=found,
        tol=tol,
    )
    logger.debug(
        f"hypomonotonicity {moving_set.kind} t={t:.4g}: worst {worst:.3e} "
        f"({found}/{sample_count} nonzero normals)"
    )
    return report


def _excess(
    source: MovingSet, t_from: float, t_to: float, sample_count: int, rng
) -> float:
    pts = source.sample_points(t_from, sample_count, rng)
    return max(source.distance(t_to, p) for p in pts)


def motion_excess(
    moving_set: MovingSet, s: float, t: float, sample_count: int = 200, rng_seed: int = 0
) -> float:
    """Sampled Hausdorff distance between C(s) and C(t).

    The motion modulus requires C(t) within C(s) + |v(t)-v(s)|B for every ordered pair, so both
    excesses are estimated and the larger one is returned.
    """
    rng = np.random.default_rng(rng_seed)
    forward = _excess(moving_set, t, s, sample_count, rng)
    backward = _excess(moving_set, s, t, sample_count, rng)
    return max(forward, backward)


def check_motion(
    moving_set: MovingSet,
    grid,
    sample_count: int = 64,
    max_nodes: int = 12,
    rng_seed: int = 0,
    tol: float = 1e-9,
) -> MotionReport:
    """Validate the declared motion modulus on pairs of (subsampled) grid nodes."""
    grid = np.asarray(grid, dtype=float)
    stride = max(1, (grid.size - 1) // max(1, max_nodes - 1))
    nodes = list(grid[::stride])
    if nodes[-1] != grid[-1]:
        nodes.append(float(grid[-1]))
    pairs = [(nodes[0], b) for b in nodes[1:]] + list(zip(nodes[1:-1], nodes[2:]))
    worst = np.inf
    worst_times = (float(nodes[0]), float(nodes[0]))
    for s, t in pairs:
        declared = abs(moving_set.motion_value(t) - moving_set.motion_value(s))
        margin = declared - motion_excess(moving_set, s, t, sample_count, rng_seed)
        if margin < worst:
            worst, worst_times = margin, (float(s), float(t))
    if not pairs:
        worst = 0.0
    return MotionReport(
        kind=moving_set.kind,
        pairs_checked=len(pairs),
        worst_margin=float(worst),
        worst_times=worst_times,
        tol=tol,
    )
