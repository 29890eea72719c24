"""Volterra kernels g(t, s, x) on D = {s <= t}.

The built-in kernel is separable, g(t, s, x) = k(t, s)(B x + c), with a scalar
weight k.  History evaluation is vectorized over the s-nodes because the
quadrature revisits the whole prefix at every outer time.
"""
from abc import ABC, abstractmethod
from typing import Callable, Optional, Tuple, Union

import numpy as np

from ..exceptions import InvalidConfiguration
from .moduli import operator_norm

CAUSALITY_TOL = 1e-12


class KernelWeight(ABC):
    """Scalar weight k(t, s) of a separable kernel."""

    @abstractmethod
    def __call__(self, t: float, s) -> np.ndarray:
        ...

    @abstractmethod
    def sup_abs(self, t: float, t0: float) -> float:
        """sup over s in [t0, t] of |k(t, s)|."""
        ...


class ConstantWeight(KernelWeight):
    def __init__(self, value: float):
        self.value = float(value)

    def __call__(self, t, s):
        return np.full(np.shape(s), self.value, dtype=float)

    def sup_abs(self, t, t0):
        return abs(self.value)

    def __repr__(self) -> str:
        return f"ConstantWeight({self.value})"


class ExponentialWeight(KernelWeight):
    """scale * exp(-rate (t - s)) with rate >= 0 (fading memory)."""

    def __init__(self, scale: float, rate: float):
        if rate < 0.0:
            raise InvalidConfiguration(f"fading rate must be >= 0, got {rate}", "kernel.rate")
        self.scale = float(scale)
        self.rate = float(rate)

    def __call__(self, t, s):
        return self.scale * np.exp(-self.rate * (t - np.asarray(s, dtype=float)))

    def sup_abs(self, t, t0):
        return abs(self.scale)


class CallableWeight(KernelWeight):
    def __init__(self, fn: Callable, sup: Union[float, Callable[[float], float]]):
        self._fn = fn
        self._sup = sup

    def __call__(self, t, s):
        s = np.asarray(s, dtype=float)
        try:
            return np.broadcast_to(np.asarray(self._fn(t, s), dtype=float), s.shape).copy()
        except (TypeError, ValueError):
            return np.array([float(self._fn(t, v)) for v in s.ravel()]).reshape(s.shape)

    def sup_abs(self, t, t0):
        return float(self._sup(t)) if callable(self._sup) else abs(float(self._sup))


def _check_causal(t: float, s: np.ndarray) -> None:
    if np.any(s > t + CAUSALITY_TOL * max(1.0, abs(t))):
        raise ValueError(f"kernel queried outside D: s={float(np.max(s)):.12g} > t={t:.12g}")


class VolterraKernel(ABC):
    kind: str = "abstract"

    def __init__(self, dim: int):
        self.dim = int(dim)

    @abstractmethod
    def evaluate_history(self, t: float, s: np.ndarray, states: np.ndarray) -> np.ndarray:
        """Rows g(t, s_j, x_j) for a history (s_j, x_j) with every s_j <= t."""
        ...

    def evaluate(self, t: float, s: float, x) -> np.ndarray:
        x = np.asarray(x, dtype=float).reshape(1, self.dim)
        return self.evaluate_history(t, np.array([float(s)]), x)[0]

    @abstractmethod
    def growth(self, t: float, s) -> np.ndarray:
        """sigma(t, s) with ||g(t, s, x)|| <= sigma(t, s)(1 + ||x||); vectorized in s."""
        ...

    @abstractmethod
    def lipschitz(self, r: float, t: float) -> float:
        """mu_r(t), the Lipschitz constant of g(t, s, .) on rB uniformly in s <= t."""
        ...

    def affine_parts(self, t: float, s) -> Optional[Tuple[np.ndarray, np.ndarray, np.ndarray]]:
        """(k(t, s), B, c) for separable kernels, else None."""
        return None

    @property
    def is_zero(self) -> bool:
        return False


class ZeroKernel(VolterraKernel):
    kind = "zero"

    def evaluate_history(self, t, s, states):
        _check_causal(t, np.asarray(s))
        return np.zeros((np.size(s), self.dim))

    def growth(self, t, s):
        return np.zeros(np.shape(s))

    def lipschitz(self, r, t):
        return 0.0

    def affine_parts(self, t, s):
        return np.zeros(np.shape(s)), np.zeros((self.dim, self.dim)), np.zeros(self.dim)

    @property
    def is_zero(self) -> bool:
        return True

    def __repr__(self) -> str:
        return f"ZeroKernel(dim={self.dim})"


class SeparableKernel(VolterraKernel):
    """g(t, s, x) = k(t, s)(B x + c)."""

    kind = "separable"

    def __init__(
        self,
        weight: Union[KernelWeight, float],
        matrix,
        offset,
        t0: float = 0.0,
        growth: Optional[Callable] = None,
        lipschitz: Optional[Union[float, Callable]] = None,
    ):
        B = np.atleast_2d(np.asarray(matrix, dtype=float))
        if B.shape[0] != B.shape[1]:
            raise InvalidConfiguration(f"kernel matrix must be square, got {B.shape}", "kernel.B")
        super().__init__(B.shape[0])
        c = np.broadcast_to(np.asarray(offset, dtype=float), (self.dim,)).copy()
        self.weight = weight if isinstance(weight, KernelWeight) else ConstantWeight(weight)
        self.B = B
        self.c = c
        self.t0 = float(t0)
        self.norm_B = operator_norm(B)
        self._scale = max(self.norm_B, float(np.linalg.norm(c)))
        self._growth = growth
        self._lipschitz = lipschitz

    def evaluate_history(self, t, s, states):
        s = np.atleast_1d(np.asarray(s, dtype=float))
        _check_causal(t, s)
        states = np.asarray(states, dtype=float).reshape(s.size, self.dim)
        k = self.weight(t, s)
        return k[:, None] * (states @ self.B.T + self.c)

    def growth(self, t, s):
        if self._growth is not None:
            return np.asarray(self._growth(t, s), dtype=float) * np.ones(np.shape(s))
        return np.abs(self.weight(t, s)) * self._scale

    def lipschitz(self, r, t):
        if self._lipschitz is not None:
            return float(self._lipschitz(t)) if callable(self._lipschitz) else float(self._lipschitz)
        return self.weight.sup_abs(t, self.t0) * self.norm_B

    def affine_parts(self, t, s):
        return self.weight(t, np.asarray(s, dtype=float)), self.B, self.c

    def __repr__(self) -> str:
        return f"SeparableKernel(dim={self.dim}, weight={self.weight!r})"


class CallableKernel(VolterraKernel):
    """User kernel g(t, s, x) with declared sigma(t, s) and mu_r(t)."""

    kind = "callable"

    def __init__(
        self,
        dim: int,
        fn: Callable[[float, float, np.ndarray], object],
        growth: Union[float, Callable[[float, float], float]],
        lipschitz: Union[float, Callable[[float, float], float]],
    ):
        super().__init__(dim)
        self._fn = fn
        self._growth = growth
        self._lipschitz = lipschitz

    def evaluate_history(self, t, s, states):
        s = np.atleast_1d(np.asarray(s, dtype=float))
        _check_causal(t, s)
        states = np.asarray(states, dtype=float).reshape(s.size, self.dim)
        return np.array(
            [np.asarray(self._fn(t, sj, xj), dtype=float).reshape(self.dim)
             for sj, xj in zip(s, states)]
        ).reshape(s.size, self.dim)

    def growth(self, t, s):
        if callable(self._growth):
            s_arr = np.asarray(s, dtype=float)
            return np.vectorize(lambda v: float(self._growth(t, v)), otypes=[float])(s_arr)
        return np.full(np.shape(s), float(self._growth))

    def lipschitz(self, r, t):
        if callable(self._lipschitz):
            return float(self._lipschitz(r, t))
        return float(self._lipschitz)
