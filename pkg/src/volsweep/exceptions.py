from typing import Optional, Any, Sequence

import numpy as np


def _fmt_point(x: Any) -> str:
    arr = np.atleast_1d(np.asarray(x, dtype=float))
    return "(" + ", ".join(f"{v:.6g}" for v in arr) + ")"


class SweepError(Exception):
    """Base exception for all errors."""
    pass


class ProjectionAmbiguous(SweepError):
    """Raised when a prox-regular set is asked to project a point at distance >= rho."""

    def __init__(self, kind: str, t: float, distance: float, prox_constant: float):
        self.kind = kind
        self.t = t
        self.distance = distance
        self.prox_constant = prox_constant
        super().__init__(
            f"Projection onto {kind} at t={t:.6g} is ambiguous: distance {distance:.6g} "
            f">= prox-regularity constant {prox_constant:.6g} (refine the grid)"
        )


class InfeasibleSet(SweepError):
    """Raised when a time slice of a moving set is empty."""

    def __init__(self, kind: str, t: Optional[float] = None, reason: str = ""):
        self.kind = kind
        self.t = t
        self.reason = reason
        message = f"Set {kind} has an empty slice"
        if t is not None:
            message += f" at t={t:.6g}"
        if reason:
            message += f": {reason}"
        super().__init__(message)


class NotOnSet(SweepError):
    """Raised when a base point is expected on the set but lies off it."""

    def __init__(self, t: float, distance: float, tol: float):
        self.t = t
        self.distance = distance
        self.tol = tol
        super().__init__(
            f"Point is not on the set at t={t:.6g}: distance {distance:.3e} > tol {tol:.1e}"
        )


class UnsupportedKind(SweepError):
    """Raised when an operation is not defined for a set kind or problem class."""

    def __init__(self, kind: str, operation: str):
        self.kind = kind
        self.operation = operation
        super().__init__(f"Operation '{operation}' is not supported for {kind}")


class NegativeCoefficient(SweepError):
    """Raised when a Gronwall coefficient samples negative on the grid."""

    def __init__(self, name: str, t: float, value: float):
        self.name = name
        self.t = t
        self.value = value
        super().__init__(f"Coefficient {name} is negative at t={t:.6g}: {value:.6g}")


class NonmonotoneGrid(SweepError):
    """Raised when a time grid is not strictly increasing."""

    def __init__(self, index: int, message: Optional[str] = None):
        self.index = index
        super().__init__(message or f"Time grid is not strictly increasing at index {index}")


class EpsilonNotZero(SweepError):
    """Raised when the square-root Gronwall variant receives a nonzero epsilon."""

    def __init__(self, t: float, value: float):
        self.t = t
        self.value = value
        super().__init__(
            f"Variant II-b requires epsilon == 0, found {value:.6g} at t={t:.6g}"
        )


class GridMismatch(SweepError):
    """Raised when a time is not a node of the grid or two grids disagree."""

    def __init__(self, t: Optional[float] = None, message: Optional[str] = None):
        self.t = t
        if message is None:
            message = f"Time t={t:.12g} is not a grid node"
        super().__init__(message)


class InfeasibleStart(SweepError):
    """Raised when x0 does not lie in C(T0) + z(T0)."""

    def __init__(self, distance: float, tol: float):
        self.distance = distance
        self.tol = tol
        super().__init__(
            f"Initial point is infeasible: dist(x0, C(T0)+z(T0)) = {distance:.3e} > {tol:.1e}"
        )


class NoConvergence(SweepError):
    """Raised when the fixed-point loop exhausts its iteration budget."""

    def __init__(self, report: Any):
        self.report = report
        last = report.deltas[-1] if report.deltas else float("nan")
        super().__init__(
            f"Fixed-point iteration did not converge in {report.iterations} iterations "
            f"(last delta {last:.3e})"
        )


class VariantMismatch(SweepError):
    """Raised when the shared-z dependence bound is requested for different z paths."""

    def __init__(self, t: float, gap: float):
        self.t = t
        self.gap = gap
        super().__init__(
            f"Shared-z variant requested but z1 and z2 differ at t={t:.6g} (gap {gap:.3e})"
        )


class ModulusViolation(SweepError):
    """Raised when a declared growth or Lipschitz modulus is violated at a sampled point."""

    def __init__(
        self,
        hypothesis: str,
        t: float,
        x: Sequence[float],
        lhs: float,
        rhs: float,
        s: Optional[float] = None,
    ):
        self.hypothesis = hypothesis
        self.t = t
        self.s = s
        self.x = np.asarray(x, dtype=float)
        self.lhs = lhs
        self.rhs = rhs
        where = f"t={t:.6g}" if s is None else f"(t, s)=({t:.6g}, {s:.6g})"
        super().__init__(
            f"{hypothesis} violated at {where}, x={_fmt_point(x)}: "
            f"{lhs:.6g} > {rhs:.6g}"
        )


class InvalidConfiguration(SweepError):
    """Raised when there's an invalid configuration."""

    def __init__(self, message: str, config_key: Optional[str] = None):
        self.message = message
        self.config_key = config_key
        super_message = message
        if config_key:
            super_message = f"Invalid configuration for '{config_key}': {message}"
        super().__init__(super_message)


class ScenarioError(SweepError):
    """Raised when a scenario file cannot be parsed or validated."""

    def __init__(self, message: str, path: Optional[str] = None, line: Optional[int] = None):
        self.message = message
        self.path = path
        self.line = line
        prefix = path or "<scenario>"
        if line is not None:
            prefix = f"{prefix}:{line}"
        super().__init__(f"{prefix}: {message}")
