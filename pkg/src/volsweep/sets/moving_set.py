"""Moving-set oracles C(t) for the supported set families.

Every kind exposes the metric projection onto its time slice, a sampler of slice
points (used by the diagnostics), the prox-regularity constant and the declared
motion modulus v(t).  Convex kinds have ``prox_constant == inf``.
"""
import math
from abc import ABC, abstractmethod
from typing import ClassVar, Optional, Union

import numpy as np

from ..exceptions import (
    InfeasibleSet,
    InvalidConfiguration,
    ProjectionAmbiguous,
    UnsupportedKind,
)
from ..paths import ConstantPath, Path, as_path

PathLike = Union[Path, float, np.ndarray, list]

# a time step may not land at distance rho or more from a prox-regular slice
AMBIGUITY_FACTOR = 1.0 - 1e-9
# relative distance to a sphere center below which no direction is defined
CENTER_TOL = 1e-12


def _unit_directions(rng: np.random.Generator, count: int, dim: int) -> np.ndarray:
    g = rng.standard_normal((count, dim))
    norms = np.linalg.norm(g, axis=1, keepdims=True)
    norms[norms == 0.0] = 1.0
    return g / norms


class MovingSet(ABC):
    """Base class for the moving sets C(t) the solver supports."""

    kind: ClassVar[str] = "abstract"
    convex: ClassVar[bool] = True

    def __init__(self, dim: int, motion: Optional[PathLike] = None):
        if dim < 1:
            raise InvalidConfiguration(f"dimension must be >= 1, got {dim}", "dimension")
        self.dim = int(dim)
        self.motion: Path = as_path(motion) if motion is not None else ConstantPath(0.0)

    # -- properties -------------------------------------------------------

    @property
    def prox_constant(self) -> float:
        return math.inf

    @property
    def inverse_prox(self) -> float:
        """1/rho, exactly 0 for convex kinds."""
        rho = self.prox_constant
        return 0.0 if math.isinf(rho) else 1.0 / rho

    @property
    def is_static(self) -> bool:
        return True

    def motion_value(self, t: float) -> float:
        return self.motion.scalar(t)

    def motion_rate(self, t: float) -> float:
        """|v'(t)| of the declared motion modulus."""
        return self.motion.speed(t)

    # -- geometry ---------------------------------------------------------

    def _check_point(self, x) -> np.ndarray:
        arr = np.asarray(x, dtype=float)
        if arr.shape != (self.dim,):
            raise InvalidConfiguration(
                f"expected a point of shape ({self.dim},), got {arr.shape}", self.kind
            )
        return arr

    def project(self, t: float, x) -> np.ndarray:
        """Metric projection of x onto C(t)."""
        return self._project(t, self._check_point(x))

    def step_project(self, t: float, x) -> np.ndarray:
        """Projection used by the time-stepping schemes.

        Prox-regular kinds refuse points at distance rho or more, where the step is too
        large for the projection to stay the unique nearest point.
        """
        x = self._check_point(x)
        y = self._project(t, x)
        if not self.convex:
            dist = float(np.linalg.norm(x - y))
            if dist >= self.prox_constant * AMBIGUITY_FACTOR:
                raise ProjectionAmbiguous(self.kind, t, dist, self.prox_constant)
        return y

    def distance(self, t: float, x) -> float:
        x = self._check_point(x)
        return float(np.linalg.norm(x - self._project(t, x)))

    def contains(self, t: float, x, tol: float = 1e-9) -> bool:
        return self.distance(t, x) <= tol

    @abstractmethod
    def _project(self, t: float, x: np.ndarray) -> np.ndarray:
        ...

    @abstractmethod
    def sample_points(self, t: float, count: int, rng: np.random.Generator) -> np.ndarray:
        """``count`` points of C(t), mixing interior and boundary points."""
        ...

    @abstractmethod
    def scale(self, t: float) -> float:
        """Diameter guess used to size diagnostic perturbations."""
        ...

    def tangent_cone_projection(
        self, t: float, x: np.ndarray, h: np.ndarray, tol: float = 1e-9
    ) -> np.ndarray:
        raise UnsupportedKind(self.kind, "tangent_projection")

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}(dim={self.dim})"


class WholeSpace(MovingSet):
    kind = "whole-space"

    def __init__(self, dim: int, extent: float = 4.0, motion: Optional[PathLike] = None):
        super().__init__(dim, motion)
        self.extent = float(extent)

    def _project(self, t, x):
        return x.copy()

    def sample_points(self, t, count, rng):
        return rng.uniform(-self.extent, self.extent, size=(count, self.dim))

    def scale(self, t):
        return self.extent

    def tangent_cone_projection(self, t, x, h, tol: float = 1e-9):
        return np.array(h, dtype=float)


class HalfSpace(MovingSet):
    """{x : <a, x> >= b(t)}."""

    kind = "half-space"

    def __init__(
        self,
        normal,
        offset: PathLike = 0.0,
        motion: Optional[PathLike] = None,
        extent: float = 4.0,
    ):
        a = np.asarray(normal, dtype=float)
        if a.ndim != 1:
            raise InvalidConfiguration("half-space normal must be a vector", "normal")
        norm = float(np.linalg.norm(a))
        if norm == 0.0:
            raise InfeasibleSet(self.kind, reason="zero normal vector")
        super().__init__(a.size, motion)
        self.normal = a
        self._unit = a / norm
        self._norm = norm
        self.offset = as_path(offset)
        self.extent = float(extent)

    @property
    def unit_normal(self) -> np.ndarray:
        return self._unit

    @property
    def is_static(self) -> bool:
        return self.offset.is_constant

    def level(self, t: float) -> float:
        """Offset along the unit normal, b(t)/||a||."""
        return self.offset.scalar(t) / self._norm

    def _project(self, t, x):
        gap = self.level(t) - float(self._unit @ x)
        if gap <= 0.0:
            return x.copy()
        return x + gap * self._unit

    def sample_points(self, t, count, rng):
        anchor = self.level(t) * self._unit
        raw = anchor + rng.uniform(-self.extent, self.extent, size=(count, self.dim))
        return np.array([self._project(t, p) for p in raw])

    def scale(self, t):
        return self.extent

    def tangent_cone_projection(self, t, x, h, tol: float = 1e-9):
        h = np.array(h, dtype=float)
        if float(self._unit @ x) - self.level(t) > tol:
            return h
        inward = float(self._unit @ h)
        if inward >= 0.0:
            return h
        return h - inward * self._unit


class Box(MovingSet):
    """Static box [lower, upper]."""

    kind = "box"

    def __init__(self, lower, upper, motion: Optional[PathLike] = None):
        lo = np.asarray(lower, dtype=float)
        hi = np.asarray(upper, dtype=float)
        if lo.shape != hi.shape or lo.ndim != 1:
            raise InvalidConfiguration("box corners must be vectors of equal size", "box")
        if np.any(lo > hi):
            raise InfeasibleSet(self.kind, reason="lower corner exceeds upper corner")
        super().__init__(lo.size, motion)
        self.lower = lo
        self.upper = hi

    def _project(self, t, x):
        return np.clip(x, self.lower, self.upper)

    def sample_points(self, t, count, rng):
        inner = count // 2
        span = self.upper - self.lower
        pts = [rng.uniform(self.lower, self.upper, size=(inner, self.dim))]
        outer = rng.uniform(self.lower - span, self.upper + span, size=(count - inner, self.dim))
        pts.append(np.clip(outer, self.lower, self.upper))
        return np.vstack(pts)

    def scale(self, t):
        diag = float(np.linalg.norm(self.upper - self.lower))
        return diag if diag > 0.0 else 1.0

    def tangent_cone_projection(self, t, x, h, tol: float = 1e-9):
        w = np.array(h, dtype=float)
        at_lower = x <= self.lower + tol
        at_upper = x >= self.upper - tol
        w = np.where(at_lower, np.maximum(w, 0.0), w)
        w = np.where(at_upper, np.minimum(w, 0.0), w)
        return w


class Ball(MovingSet):
    """Closed ball of fixed radius around a moving center c(t)."""

    kind = "ball"

    def __init__(self, center: PathLike, radius: float, motion: Optional[PathLike] = None):
        center_path = as_path(center)
        dim = int(np.size(center_path.value(0.0)))
        if radius < 0.0:
            raise InfeasibleSet(self.kind, reason=f"negative radius {radius}")
        super().__init__(dim, motion)
        self.center = center_path
        self.radius = float(radius)

    @property
    def is_static(self) -> bool:
        return self.center.is_constant

    def _project(self, t, x):
        c = self.center.value(t)
        u = x - c
        norm = float(np.linalg.norm(u))
        if norm <= self.radius:
            return x.copy()
        return c + (self.radius / norm) * u

    def sample_points(self, t, count, rng):
        c = self.center.value(t)
        dirs = _unit_directions(rng, count, self.dim)
        radii = self.radius * rng.uniform(0.0, 1.0, size=(count, 1)) ** (1.0 / self.dim)
        radii[count // 2:] = self.radius
        return c + radii * dirs

    def scale(self, t):
        return 2.0 * self.radius if self.radius > 0.0 else 1.0

    def tangent_cone_projection(self, t, x, h, tol: float = 1e-9):
        h = np.array(h, dtype=float)
        if self.radius == 0.0:
            return np.zeros_like(h)
        u = x - self.center.value(t)
        norm = float(np.linalg.norm(u))
        if norm < self.radius - tol:
            return h
        n = u / norm
        outward = float(n @ h)
        if outward <= 0.0:
            return h
        return h - outward * n


class Sphere(MovingSet):
    """Sphere of radius R around c(t); uniformly prox-regular with rho = R."""

    kind = "sphere"
    convex = False

    def __init__(self, center: PathLike, radius: float, motion: Optional[PathLike] = None):
        center_path = as_path(center)
        dim = int(np.size(center_path.value(0.0)))
        if radius <= 0.0:
            raise InfeasibleSet(self.kind, reason=f"radius must be positive, got {radius}")
        super().__init__(dim, motion)
        self.center = center_path
        self.radius = float(radius)

    @property
    def prox_constant(self) -> float:
        return self.radius

    @property
    def is_static(self) -> bool:
        return self.center.is_constant

    def distance(self, t, x):
        x = self._check_point(x)
        return abs(float(np.linalg.norm(x - self.center.value(t))) - self.radius)

    def _project(self, t, x):
        c = self.center.value(t)
        u = x - c
        norm = float(np.linalg.norm(u))
        if norm <= CENTER_TOL * max(1.0, self.radius):
            raise ProjectionAmbiguous(self.kind, t, self.radius - norm, self.prox_constant)
        return c + (self.radius / norm) * u

    def sample_points(self, t, count, rng):
        c = self.center.value(t)
        return c + self.radius * _unit_directions(rng, count, self.dim)

    def scale(self, t):
        return 2.0 * self.radius


class TranslatedConvex(MovingSet):
    """u(t) + K for a static convex base set K."""

    kind = "translated-convex"

    def __init__(self, base: MovingSet, translation: PathLike, motion: Optional[PathLike] = None):
        if not base.convex:
            raise InvalidConfiguration(
                f"translated-convex needs a convex base, got {base.kind}", "base"
            )
        super().__init__(base.dim, motion)
        self.base = base
        self.translation = as_path(translation)
        if np.shape(self.translation.value(0.0)) != (base.dim,):
            raise InvalidConfiguration("translation path dimension mismatch", "translation")

    @property
    def is_static(self) -> bool:
        return self.base.is_static and self.translation.is_constant

    def _project(self, t, x):
        u = self.translation.value(t)
        return u + self.base._project(t, x - u)

    def sample_points(self, t, count, rng):
        return self.base.sample_points(t, count, rng) + self.translation.value(t)

    def scale(self, t):
        return self.base.scale(t)

    def tangent_cone_projection(self, t, x, h, tol: float = 1e-9):
        return self.base.tangent_cone_projection(
            t, x - self.translation.value(t), h, tol=tol
        )
