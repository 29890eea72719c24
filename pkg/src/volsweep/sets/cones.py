from typing import Literal, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from ..exceptions import NotOnSet, UnsupportedKind
from .moving_set import MovingSet


class ConeVector(BaseModel):
    """A direction attached to a base point of C(t), tagged normal or tangent."""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    base: np.ndarray = Field(description="Base point x in C(t)")
    direction: np.ndarray = Field(description="Direction nu")
    tag: Literal["normal", "tangent"]
    t: float = Field(description="Time of the slice")


def tangent_projection(
    moving_set: MovingSet, t: float, x, h, tol: float = 1e-9
) -> np.ndarray:
    """Metric projection of h onto the tangent cone T_{C(t)}(x) of a convex slice."""
    if not moving_set.convex:
        raise UnsupportedKind(moving_set.kind, "tangent_projection")
    x = np.asarray(x, dtype=float)
    dist = moving_set.distance(t, x)
    if dist > tol:
        raise NotOnSet(t, dist, tol)
    return moving_set.tangent_cone_projection(t, x, np.asarray(h, dtype=float), tol=tol)


def moreau_decomposition(
    moving_set: MovingSet, t: float, x, h, tol: float = 1e-9
) -> Tuple[ConeVector, ConeVector]:
    """Split h = proj_T(h) + proj_N(h) at x; the two parts are orthogonal."""
    x = np.asarray(x, dtype=float)
    h = np.asarray(h, dtype=float)
    tangent = tangent_projection(moving_set, t, x, h, tol=tol)
    normal = h - tangent
    return (
        ConeVector(base=x, direction=tangent, tag="tangent", t=t),
        ConeVector(base=x, direction=normal, tag="normal", t=t),
    )
