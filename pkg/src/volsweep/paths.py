"""Time paths used for perturbations, set motions and offsets.

A path maps a time ``t`` to a value of fixed shape: a 0-d array for scalar paths
(offsets b(t), motion moduli v(t)) or a vector for z(t), c(t), u(t).
"""
from abc import ABC, abstractmethod
from typing import Callable, Optional

import numpy as np

from .exceptions import InvalidConfiguration


class Path(ABC):
    """Absolutely continuous path t -> value with a derivative evaluator."""

    @abstractmethod
    def value(self, t: float) -> np.ndarray:
        ...

    @abstractmethod
    def derivative(self, t: float) -> np.ndarray:
        ...

    def __call__(self, t: float) -> np.ndarray:
        return self.value(t)

    def scalar(self, t: float) -> float:
        return float(self.value(t))

    def speed(self, t: float) -> float:
        """Norm of the derivative, |v'(t)| or ||z'(t)||."""
        return float(np.linalg.norm(np.atleast_1d(self.derivative(t))))

    @property
    def speed_bound(self) -> Optional[float]:
        """Uniform bound on ``speed`` when it is known in closed form."""
        return None

    @property
    def is_constant(self) -> bool:
        return False

    @property
    def shape(self) -> tuple:
        return np.shape(self.value(0.0))


class ConstantPath(Path):
    def __init__(self, value):
        self._value = np.asarray(value, dtype=float)

    def value(self, t: float) -> np.ndarray:
        return self._value.copy()

    def derivative(self, t: float) -> np.ndarray:
        return np.zeros_like(self._value)

    @property
    def speed_bound(self) -> float:
        return 0.0

    @property
    def is_constant(self) -> bool:
        return True

    def __repr__(self) -> str:
        return f"ConstantPath({self._value.tolist()})"


class LinearPath(Path):
    """start + velocity * (t - t0)."""

    def __init__(self, start, velocity, t0: float = 0.0):
        self.start = np.asarray(start, dtype=float)
        self.velocity = np.asarray(velocity, dtype=float)
        self.t0 = float(t0)
        if self.start.shape != self.velocity.shape:
            raise InvalidConfiguration(
                f"LinearPath: start shape {self.start.shape} != velocity shape "
                f"{self.velocity.shape}",
                "velocity",
            )

    def value(self, t: float) -> np.ndarray:
        return self.start + self.velocity * (t - self.t0)

    def derivative(self, t: float) -> np.ndarray:
        return self.velocity.copy()

    @property
    def speed_bound(self) -> float:
        return float(np.linalg.norm(np.atleast_1d(self.velocity)))

    @property
    def is_constant(self) -> bool:
        return not np.any(self.velocity)

    def __repr__(self) -> str:
        return f"LinearPath({self.start.tolist()}, {self.velocity.tolist()}, t0={self.t0})"


class SinusoidalPath(Path):
    """offset + amplitude * sin(omega * t + phase)."""

    def __init__(self, offset, amplitude, omega: float, phase: float = 0.0):
        self.offset = np.asarray(offset, dtype=float)
        self.amplitude = np.asarray(amplitude, dtype=float)
        self.omega = float(omega)
        self.phase = float(phase)
        if self.offset.shape != self.amplitude.shape:
            raise InvalidConfiguration(
                f"SinusoidalPath: offset shape {self.offset.shape} != amplitude shape "
                f"{self.amplitude.shape}",
                "amplitude",
            )

    def value(self, t: float) -> np.ndarray:
        return self.offset + self.amplitude * np.sin(self.omega * t + self.phase)

    def derivative(self, t: float) -> np.ndarray:
        return self.amplitude * self.omega * np.cos(self.omega * t + self.phase)

    @property
    def speed_bound(self) -> float:
        return float(np.linalg.norm(np.atleast_1d(self.amplitude)) * abs(self.omega))

    @property
    def is_constant(self) -> bool:
        return self.omega == 0.0 or not np.any(self.amplitude)


class CallablePath(Path):
    """Path given by user callables; the derivative defaults to a central difference."""

    def __init__(
        self,
        fn: Callable[[float], object],
        derivative: Optional[Callable[[float], object]] = None,
        step: float = 1e-6,
    ):
        self._fn = fn
        self._derivative = derivative
        self._step = step

    def value(self, t: float) -> np.ndarray:
        return np.asarray(self._fn(t), dtype=float)

    def derivative(self, t: float) -> np.ndarray:
        if self._derivative is not None:
            return np.asarray(self._derivative(t), dtype=float)
        h = self._step
        return (self.value(t + h) - self.value(t - h)) / (2.0 * h)


def as_path(value) -> Path:
    """Wrap constants and callables as paths; paths pass through."""
    if isinstance(value, Path):
        return value
    if callable(value):
        return CallablePath(value)
    return ConstantPath(value)
