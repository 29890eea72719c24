"""Operator norms and sampled validation of the forcing and kernel moduli."""
from typing import Optional

import numpy as np

from ..exceptions import ModulusViolation
from ..utils.logger import logger

POWER_ITERATIONS = 50
POWER_TOL = 1e-12
REL_SLACK = 1e-9
ABS_SLACK = 1e-12


def operator_norm(
    matrix, iterations: int = POWER_ITERATIONS, tol: float = POWER_TOL
) -> float:
    """Spectral norm ||A||_2 by power iteration on A^T A.

    Falls back to an SVD when the iteration has not settled, which happens when the
    two largest singular values are close.
    """
    A = np.atleast_2d(np.asarray(matrix, dtype=float))
    if not np.any(A):
        return 0.0
    rng = np.random.default_rng(0)
    v = rng.standard_normal(A.shape[1])
    v /= np.linalg.norm(v)
    estimate = 0.0
    for _ in range(iterations):
        w = A.T @ (A @ v)
        size = float(np.linalg.norm(w))
        if size == 0.0:
            break
        v = w / size
        new_estimate = float(np.sqrt(size))
        if abs(new_estimate - estimate) <= tol * max(1.0, new_estimate):
            return new_estimate
        estimate = new_estimate
    logger.debug("power iteration did not settle, using SVD for the operator norm")
    return float(np.linalg.norm(A, 2))


def _ball_samples(rng: np.random.Generator, count: int, dim: int, radius: float) -> np.ndarray:
    dirs = rng.standard_normal((count, dim))
    dirs /= np.maximum(np.linalg.norm(dirs, axis=1, keepdims=True), 1e-300)
    radii = radius * rng.uniform(0.0, 1.0, size=(count, 1)) ** (1.0 / dim)
    radii[: count // 4] = radius
    return dirs * radii


def _exceeds(lhs: float, rhs: float) -> bool:
    return lhs > rhs * (1.0 + REL_SLACK) + ABS_SLACK


def validate_moduli(
    spec,
    r_test: Optional[float] = None,
    samples: int = 32,
    time_nodes: int = 9,
    seed: int = 0,
) -> None:
    """Sample the growth and Lipschitz inequalities of f and g and the R(t) declaration.

    Raises ModulusViolation at the first sampled violation.
    """
    rng = np.random.default_rng(seed)
    dim = spec.dim
    if r_test is None:
        r_test = max(1.0, 2.0 * float(np.linalg.norm(spec.x0)))
    times = np.linspace(spec.t0, spec.t_end, time_nodes)
    f, g = spec.forcing, spec.kernel

    for t in times:
        xs = _ball_samples(rng, samples, dim, r_test)
        ys = _ball_samples(rng, samples, dim, r_test)
        beta = f.growth(t)
        kappa = f.lipschitz(r_test, t)
        for x, y in zip(xs, ys):
            lhs = float(np.linalg.norm(f.evaluate(t, x)))
            rhs = beta * (1.0 + float(np.linalg.norm(x)))
            if _exceeds(lhs, rhs):
                raise ModulusViolation("forcing growth ||f(t,x)|| <= beta(t)(1+||x||)", t, x, lhs, rhs)
            lhs = float(np.linalg.norm(f.evaluate(t, x) - f.evaluate(t, y)))
            rhs = kappa * float(np.linalg.norm(x - y))
            if _exceeds(lhs, rhs):
                raise ModulusViolation("forcing Lipschitz with kappa_r(t)", t, x, lhs, rhs)

        mu = g.lipschitz(r_test, t)
        for s in np.linspace(spec.t0, t, 4):
            sigma = float(g.growth(t, s))
            for x, y in zip(xs[:8], ys[:8]):
                gx = g.evaluate(t, s, x)
                lhs = float(np.linalg.norm(gx))
                rhs = sigma * (1.0 + float(np.linalg.norm(x)))
                if _exceeds(lhs, rhs):
                    raise ModulusViolation(
                        "kernel growth ||g(t,s,x)|| <= sigma(t,s)(1+||x||)", t, x, lhs, rhs, s=s
                    )
                lhs = float(np.linalg.norm(gx - g.evaluate(t, s, y)))
                rhs = mu * float(np.linalg.norm(x - y))
                if _exceeds(lhs, rhs):
                    raise ModulusViolation("kernel Lipschitz with mu_r(t)", t, x, lhs, rhs, s=s)

        speed = spec.z.speed(t)
        declared = spec.rate_bound(t)
        if _exceeds(speed, declared):
            raise ModulusViolation("R(t) >= ||z'(t)||", t, spec.z.value(t), speed, declared)
    logger.debug(f"moduli validated on {time_nodes} times with r_test={r_test:.4g}")
