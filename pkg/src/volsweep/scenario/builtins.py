"""Built-in scenario library.

The same documents ship as YAML under ``src/examples/scenarios``.
"""
from typing import Dict, List

from .schema import Scenario

_ZERO_KERNEL = {"kind": "zero"}

BUILTIN_SCENARIOS: Dict[str, dict] = {
    "trivial-static": {
        "name": "trivial-static",
        "dimension": 2,
        "interval": [0.0, 1.0],
        "set": {"kind": "ball", "center": [0.0, 0.0], "radius": 2.0},
        "forcing": {"kind": "affine", "A": [[0.0, 0.0], [0.0, 0.0]], "b": 0.0},
        "kernel": _ZERO_KERNEL,
        "x0": [0.6, 0.8],
        "verify": {"envelopes": True, "slow": True, "schemes": True},
    },
    "moving-half-line": {
        "name": "moving-half-line",
        "dimension": 1,
        "interval": [0.0, 1.0],
        "set": {
            "kind": "half-space",
            "normal": [1.0],
            "offset": {"kind": "linear", "start": 0.0, "velocity": 1.0},
        },
        "forcing": {"kind": "affine", "A": [[0.0]], "b": 0.0},
        "kernel": _ZERO_KERNEL,
        "x0": [0.0],
        "verify": {"envelopes": True, "schemes": True},
    },
    "linear-ode": {
        "name": "linear-ode",
        "dimension": 1,
        "interval": [0.0, 1.0],
        "set": {"kind": "whole-space"},
        "forcing": {"kind": "affine", "A": [[1.0]], "b": 0.0},
        "kernel": _ZERO_KERNEL,
        "x0": [1.0],
        "verify": {"envelopes": True, "schemes": True},
    },
    "memory-ramp": {
        "name": "memory-ramp",
        "dimension": 1,
        "interval": [0.0, 1.0],
        "set": {"kind": "whole-space"},
        "forcing": {"kind": "affine", "A": [[0.0]], "b": 0.0},
        "kernel": {"kind": "separable", "weight": 1.0, "B": [[0.0]], "c": [1.0]},
        "x0": [0.0],
        "verify": {"envelopes": True, "schemes": True},
    },
    "volterra-activation": {
        "name": "volterra-activation",
        "dimension": 1,
        "interval": [0.0, 2.0],
        "set": {"kind": "half-space", "normal": [1.0], "offset": 0.0},
        "forcing": {"kind": "affine", "A": [[0.0]], "b": [-1.0]},
        "kernel": {"kind": "separable", "weight": 1.0, "B": [[0.0]], "c": [1.0]},
        "x0": [0.0],
        "verify": {"envelopes": True, "slow": True, "schemes": True},
    },
    "exact-slow": {
        "name": "exact-slow",
        "dimension": 1,
        "interval": [0.0, 1.0],
        "set": {"kind": "half-space", "normal": [1.0], "offset": 0.0},
        "forcing": {"kind": "affine", "A": [[0.0]], "b": [-1.0]},
        "kernel": _ZERO_KERNEL,
        "x0": [0.0],
        "verify": {"envelopes": True, "slow": True, "schemes": True},
    },
    "half-plane-slide": {
        "name": "half-plane-slide",
        "dimension": 2,
        "interval": [0.0, 1.0],
        "set": {"kind": "half-space", "normal": [0.0, 1.0], "offset": 0.0},
        "forcing": {"kind": "affine", "A": [[0.0, 0.0], [0.0, 0.0]], "b": [1.0, -1.0]},
        "kernel": _ZERO_KERNEL,
        "x0": [0.0, 0.0],
        "verify": {"envelopes": True, "slow": True, "schemes": True},
    },
    "ball-slide": {
        "name": "ball-slide",
        "dimension": 2,
        "interval": [0.0, 1.0],
        "set": {"kind": "ball", "center": [0.0, 0.0], "radius": 1.0},
        "forcing": {"kind": "affine", "A": [[0.5, -2.0], [2.0, 0.5]], "b": 0.0},
        "kernel": _ZERO_KERNEL,
        "x0": [1.0, 0.0],
        "verify": {"envelopes": True, "slow": True, "schemes": True},
    },
    "sphere-rotation": {
        "name": "sphere-rotation",
        "dimension": 2,
        "interval": [0.0, 1.0],
        "set": {"kind": "sphere", "center": [0.0, 0.0], "radius": 1.0},
        "forcing": {"kind": "affine", "A": [[0.0, -1.0], [1.0, 0.0]], "b": 0.0},
        "kernel": _ZERO_KERNEL,
        "x0": [1.0, 0.0],
        "verify": {"envelopes": True, "schemes": True},
    },
    "moving-ball-fading-memory": {
        "name": "moving-ball-fading-memory",
        "dimension": 2,
        "interval": [0.0, 2.0],
        "set": {
            "kind": "ball",
            "center": {"kind": "linear", "start": [0.0, 0.0], "velocity": [0.5, 0.0]},
            "radius": 1.0,
        },
        "forcing": {"kind": "affine", "A": [[-0.5, 0.0], [0.0, -0.5]], "b": [0.0, 0.3]},
        "kernel": {
            "kind": "separable",
            "weight": {"kind": "exponential", "scale": 0.5, "rate": 1.0},
            "B": [[-0.5, 0.0], [0.0, -0.5]],
            "c": [0.2, 0.0],
        },
        "x0": [0.0, 0.0],
        "verify": {"envelopes": True, "schemes": True},
    },
    "sphere-oscillating-center": {
        "name": "sphere-oscillating-center",
        "dimension": 2,
        "interval": [0.0, 1.0],
        "set": {
            "kind": "sphere",
            "center": {
                "kind": "sinusoidal",
                "offset": [0.0, 0.0],
                "amplitude": [0.2, 0.0],
                "omega": 2.0,
            },
            "radius": 1.5,
        },
        "forcing": {"kind": "affine", "A": [[0.0, -0.5], [0.5, 0.0]], "b": 0.0},
        "kernel": {"kind": "separable", "weight": 0.3, "B": [[0.2, 0.0], [0.0, 0.2]], "c": 0.0},
        "x0": [1.5, 0.0],
        "verify": {"envelopes": True, "schemes": True},
    },
    "drifting-box": {
        "name": "drifting-box",
        "dimension": 2,
        "interval": [0.0, 1.5],
        "set": {"kind": "box", "lower": [-1.0, -1.0], "upper": [1.0, 1.0]},
        "forcing": {"kind": "affine", "A": [[-0.2, 0.0], [0.0, -0.2]], "b": [1.0, 0.0]},
        "kernel": _ZERO_KERNEL,
        "z": {"path": {"kind": "linear", "start": [0.0, 0.0], "velocity": [0.3, 0.1]}, "R": 0.4},
        "x0": [0.0, 0.0],
        "verify": {"envelopes": True, "schemes": True},
    },
}


def builtin_names() -> List[str]:
    return list(BUILTIN_SCENARIOS)


def builtin_scenario(name: str) -> Scenario:
    return Scenario.model_validate(BUILTIN_SCENARIOS[name])


def builtin_scenarios() -> List[Scenario]:
    return [builtin_scenario(name) for name in BUILTIN_SCENARIOS]
