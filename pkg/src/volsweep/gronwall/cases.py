"""Built-in Gronwall cases with closed-form bounds where one exists."""
from typing import Callable, List, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict

from .data import GronwallData


class GronwallCase(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    name: str
    data: GronwallData
    closed_form: Optional[Callable] = None
    nodes: int = 201

    def grid(self) -> np.ndarray:
        return np.linspace(self.data.t0, self.data.t_end, self.nodes)


def _one(*args):
    return 1.0


def builtin_cases() -> List[GronwallCase]:
    return [
        GronwallCase(
            name="I-constant-rate",
            data=GronwallData(t0=0.0, t_end=1.0, rho0=1.0, k1=_one, variant="I"),
            closed_form=np.exp,
        ),
        GronwallCase(
            name="I-volterra-memory",
            data=GronwallData(t0=0.0, t_end=1.0, rho0=1.0, k2=_one, k3=_one, variant="I"),
            closed_form=lambda t: np.exp(0.5 * t**2),
        ),
        GronwallCase(
            name="II-a-classical",
            data=GronwallData(t0=0.0, t_end=1.0, rho0=1.0, k2=_one, variant="II-a"),
            closed_form=np.exp,
        ),
        GronwallCase(
            name="II-a-sqrt-forcing",
            data=GronwallData(t0=0.0, t_end=1.0, rho0=0.25, k1=_one, variant="II-a"),
            closed_form=lambda t: 0.25 * np.exp(t) + np.exp(t) - 1.0,
        ),
        GronwallCase(
            name="II-b-exponential",
            data=GronwallData(
                t0=0.0, t_end=1.0, rho0=4.0, k2=lambda t: 2.0, variant="II-b"
            ),
            closed_form=lambda t: 2.0 * np.exp(t),
        ),
        GronwallCase(
            name="II-b-linear",
            data=GronwallData(t0=0.0, t_end=1.0, rho0=0.0, k1=_one, variant="II-b"),
            closed_form=lambda t: 0.5 * t,
        ),
    ]
