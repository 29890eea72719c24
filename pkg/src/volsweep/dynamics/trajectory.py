from typing import Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..exceptions import GridMismatch
from ..grids import as_grid

Provenance = Literal["catching-up", "fixed-point", "reference"]


def forward_differences(grid: np.ndarray, states: np.ndarray) -> np.ndarray:
    """d_k = (x_{k+1} - x_k) / h_k; the last node reuses d_{n-1}."""
    steps = np.diff(grid)[:, None]
    d = np.empty_like(states)
    d[:-1] = np.diff(states, axis=0) / steps
    d[-1] = d[-2]
    return d


class Trajectory(BaseModel):
    """States x_k on a grid together with their forward differences."""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    grid: np.ndarray
    states: np.ndarray = Field(description="(n+1, d) array of node states")
    derivatives: np.ndarray = Field(description="(n+1, d) forward differences")
    provenance: Provenance

    @model_validator(mode="after")
    def _check_shapes(self) -> "Trajectory":
        self.grid = as_grid(self.grid)
        if self.states.ndim != 2 or self.states.shape[0] != self.grid.size:
            raise GridMismatch(
                message=f"{self.states.shape[0]} states for a grid of {self.grid.size} nodes"
            )
        if self.derivatives.shape != self.states.shape:
            raise GridMismatch(message="derivative array does not match the states")
        return self

    @classmethod
    def from_states(cls, grid, states, provenance: Provenance) -> "Trajectory":
        grid = as_grid(grid)
        states = np.asarray(states, dtype=float)
        if states.ndim == 1:
            states = states[:, None]
        return cls(
            grid=grid,
            states=states,
            derivatives=forward_differences(grid, states),
            provenance=provenance,
        )

    @property
    def dim(self) -> int:
        return self.states.shape[1]

    @property
    def step(self) -> float:
        return float(np.max(np.diff(self.grid)))

    @property
    def final(self) -> np.ndarray:
        return self.states[-1]

    def norms(self) -> np.ndarray:
        return np.linalg.norm(self.states, axis=1)

    def speeds(self) -> np.ndarray:
        return np.linalg.norm(self.derivatives, axis=1)

    def restrict(self, stride: int, provenance: Provenance = "reference") -> "Trajectory":
        """Every ``stride``-th node; derivatives are recomputed on the coarse grid."""
        return Trajectory.from_states(self.grid[::stride], self.states[::stride], provenance)

    def at(self, t: float) -> np.ndarray:
        """Piecewise-linear interpolation between nodes."""
        return np.array([np.interp(t, self.grid, self.states[:, j]) for j in range(self.dim)])

    def sup_distance(self, other: "Trajectory") -> float:
        """max_k ||x_k - y_k|| on a shared grid."""
        if other.grid.shape != self.grid.shape or not np.allclose(
            other.grid, self.grid, rtol=0.0, atol=1e-12
        ):
            raise GridMismatch(message="trajectories live on different grids")
        return float(np.max(np.linalg.norm(self.states - other.states, axis=1)))

    def interpolated_distance(self, other: "Trajectory") -> float:
        """max over this grid of ||x_k - y(t_k)|| with y interpolated linearly."""
        others = np.column_stack(
            [np.interp(self.grid, other.grid, other.states[:, j]) for j in range(self.dim)]
        )
        return float(np.max(np.linalg.norm(self.states - others, axis=1)))
