"""Single-valued forcing f(t, x) with growth modulus beta(t) and Lipschitz family kappa_r(t)."""
from abc import ABC, abstractmethod
from typing import Callable, Optional, Tuple, Union

import numpy as np

from ..exceptions import InvalidConfiguration
from ..paths import Path, as_path
from .moduli import operator_norm

Modulus = Union[float, Callable]


def _time_handle(value: Optional[Modulus]) -> Optional[Callable[[float], float]]:
    if value is None:
        return None
    if callable(value):
        return lambda t: float(value(t))
    constant = float(value)
    return lambda t: constant


class Forcing(ABC):
    """f : [T0, T] x R^d -> R^d."""

    kind: str = "abstract"

    def __init__(self, dim: int):
        self.dim = int(dim)

    @abstractmethod
    def evaluate(self, t: float, x: np.ndarray) -> np.ndarray:
        ...

    @abstractmethod
    def growth(self, t: float) -> float:
        """beta(t) with ||f(t, x)|| <= beta(t)(1 + ||x||)."""
        ...

    @abstractmethod
    def lipschitz(self, r: float, t: float) -> float:
        """kappa_r(t), the Lipschitz constant of f(t, .) on rB."""
        ...

    def affine_parts(self, t: float) -> Optional[Tuple[np.ndarray, np.ndarray]]:
        """(A, b(t)) when f(t, x) = A x + b(t), else None."""
        return None

    def __call__(self, t: float, x) -> np.ndarray:
        return self.evaluate(t, x)


class AffineForcing(Forcing):
    """f(t, x) = A x + b(t); kappa_r = ||A|| for every r."""

    kind = "affine"

    def __init__(
        self,
        matrix,
        offset: Union[Path, float, list, np.ndarray] = 0.0,
        growth: Optional[Modulus] = None,
        lipschitz: Optional[Modulus] = None,
    ):
        A = np.atleast_2d(np.asarray(matrix, dtype=float))
        if A.shape[0] != A.shape[1]:
            raise InvalidConfiguration(f"forcing matrix must be square, got {A.shape}", "forcing.A")
        super().__init__(A.shape[0])
        offset_path = as_path(offset)
        b0 = np.asarray(offset_path.value(0.0), dtype=float)
        if b0.ndim == 0:
            offset_path = as_path(lambda t, p=offset_path: np.full(self.dim, float(p.value(t))))
        elif b0.shape != (self.dim,):
            raise InvalidConfiguration(
                f"forcing offset has shape {b0.shape}, expected ({self.dim},)", "forcing.b"
            )
        self.A = A
        self.offset = offset_path
        self.norm_A = operator_norm(A)
        self._growth = _time_handle(growth)
        self._lipschitz = _time_handle(lipschitz)

    def evaluate(self, t, x):
        return self.A @ np.asarray(x, dtype=float) + self.offset.value(t)

    def growth(self, t):
        if self._growth is not None:
            return self._growth(t)
        return max(self.norm_A, float(np.linalg.norm(self.offset.value(t))))

    def lipschitz(self, r, t):
        if self._lipschitz is not None:
            return self._lipschitz(t)
        return self.norm_A

    def affine_parts(self, t):
        return self.A, self.offset.value(t)

    def __repr__(self) -> str:
        return f"AffineForcing(dim={self.dim}, ||A||={self.norm_A:.4g})"


class CallableForcing(Forcing):
    """User evaluator with declared moduli; the moduli are only sample-checked."""

    kind = "callable"

    def __init__(
        self,
        dim: int,
        fn: Callable[[float, np.ndarray], object],
        growth: Modulus,
        lipschitz: Union[float, Callable[[float, float], float]],
    ):
        super().__init__(dim)
        self._fn = fn
        self._growth = _time_handle(growth)
        if callable(lipschitz):
            self._lipschitz = lambda r, t: float(lipschitz(r, t))
        else:
            constant = float(lipschitz)
            self._lipschitz = lambda r, t: constant

    def evaluate(self, t, x):
        return np.asarray(self._fn(t, np.asarray(x, dtype=float)), dtype=float).reshape(self.dim)

    def growth(self, t):
        return self._growth(t)

    def lipschitz(self, r, t):
        return self._lipschitz(r, t)


def zero_forcing(dim: int) -> AffineForcing:
    return AffineForcing(np.zeros((dim, dim)), np.zeros(dim))
