import math

import numpy as np
import pytest
from scipy.integrate import trapezoid

from volsweep.analysis import (
    check_envelopes,
    compare_variants,
    compute_envelopes,
    dependence_bound,
    forcing_gap,
    halton_ball,
    kernel_gap_integral,
    slow_residual,
)
from volsweep.dynamics import (
    AffineForcing,
    CallableForcing,
    CallableKernel,
    ProblemSpec,
    SeparableKernel,
    ZeroKernel,
)
from volsweep.exceptions import (
    GridMismatch,
    InvalidConfiguration,
    UnsupportedKind,
    VariantMismatch,
)
from volsweep.paths import LinearPath
from volsweep.scenario import build_problem, builtin_scenario, builtin_scenarios
from volsweep.sets import Ball, Box, HalfSpace
from volsweep.solver import SolverConfig, catching_up

ENVELOPE_SLACK = 1e-9
DEPENDENCE_SLACK = 1e-6


def random_affine_problem(seed):
    rng = np.random.default_rng(seed)
    return ProblemSpec(
        name=f"random-{seed}",
        t0=0.0,
        t_end=1.0,
        moving_set=Box([-2.0, -2.0], [2.0, 2.0]),
        forcing=AffineForcing(rng.uniform(-1.0, 1.0, (2, 2)), rng.uniform(-1.0, 1.0, 2)),
        kernel=SeparableKernel(0.5, rng.uniform(-0.5, 0.5, (2, 2)), rng.uniform(-0.5, 0.5, 2)),
        x0=rng.uniform(-0.5, 0.5, 2),
    )


def perturbed_pair(seed, shift_z):
    rng = np.random.default_rng(100 + seed)
    A = rng.uniform(-0.5, 0.5, (2, 2))
    B = rng.uniform(-0.3, 0.3, (2, 2))
    b, c = rng.uniform(-0.5, 0.5, 2), rng.uniform(-0.3, 0.3, 2)
    x0 = rng.uniform(-0.4, 0.4, 2)
    z2 = rng.uniform(-0.1, 0.1, 2) if shift_z else np.zeros(2)

    def problem(name, offset, memory, start, z):
        return ProblemSpec(
            name=name,
            t0=0.0,
            t_end=1.0,
            moving_set=Ball([0.0, 0.0], 1.0),
            forcing=AffineForcing(A, offset),
            kernel=SeparableKernel(0.5, B, memory),
            z=z,
            x0=start,
        )

    first = problem("first", b, c, x0, np.zeros(2))
    second = problem(
        "second",
        b + rng.uniform(-0.1, 0.1, 2),
        c + rng.uniform(-0.1, 0.1, 2),
        x0 + rng.uniform(-0.05, 0.05, 2),
        z2,
    )
    return first, second


def solve_pair(first, second, n=200):
    config = SolverConfig(n=n)
    return catching_up(first, config), catching_up(second, config)


@pytest.mark.parametrize("scenario", builtin_scenarios(), ids=lambda s: s.name)
def test_envelopes_dominate_builtins(scenario):
    spec, config = build_problem(scenario)
    traj = catching_up(spec, config)
    env = compute_envelopes(spec, traj.grid)
    report = check_envelopes(traj, env, tol=5.0 * traj.step + ENVELOPE_SLACK)
    assert report.passed, (report.r_margin, report.theta_margin)


@pytest.mark.parametrize("seed", range(20))
def test_envelopes_dominate_random_affine_problems(seed):
    spec = random_affine_problem(seed)
    traj = catching_up(spec, SolverConfig(n=200))
    env = compute_envelopes(spec, traj.grid)
    assert env.fixed_set
    report = check_envelopes(traj, env, tol=5.0 * traj.step + ENVELOPE_SLACK)
    assert report.r_margin >= -report.tol
    assert report.theta_margin >= -report.tol


def test_fixed_set_drops_motion_terms():
    spec, config = build_problem(builtin_scenario("ball-slide"))
    grid = config.make_grid(spec.t0, spec.t_end)
    fixed = compute_envelopes(spec, grid)
    general = compute_envelopes(spec, grid, fixed_set=False)
    assert fixed.fixed_set and not general.fixed_set
    assert np.all(fixed.r <= general.r + 1e-15)


def test_moving_set_envelope_uses_motion_rate():
    spec, config = build_problem(builtin_scenario("moving-half-line"))
    env = compute_envelopes(spec, config.make_grid(spec.t0, spec.t_end))
    assert not env.fixed_set
    assert np.allclose(env.motion_rate, 1.0)
    assert np.allclose(env.theta, 1.0)


def test_contraction_constant():
    spec, config = build_problem(builtin_scenario("sphere-rotation"))
    grid = config.make_grid(spec.t0, spec.t_end)
    env = compute_envelopes(spec, grid)
    expected = math.exp(trapezoid(env.eta(), grid) / 1.0 + 1.0)
    assert env.contraction_constant(1.0) == pytest.approx(expected)
    assert env.contraction_constant(math.inf) == pytest.approx(math.e)


def test_envelope_grid_must_match():
    spec, config = build_problem(builtin_scenario("linear-ode"))
    traj = catching_up(spec, config.with_n(10))
    env = compute_envelopes(spec, spec.grid(20))
    with pytest.raises(GridMismatch):
        check_envelopes(traj, env)


@pytest.mark.parametrize("seed", range(20))
def test_general_dependence_bound_holds(seed):
    first, second = perturbed_pair(seed, shift_z=True)
    x1, x2 = solve_pair(first, second)
    report = dependence_bound(first, second, x1, x2, "general-z")
    assert not report.estimated
    assert report.margin >= -(5.0 * report.step + DEPENDENCE_SLACK)
    assert np.all(report.bound >= 0.0)


@pytest.mark.parametrize("seed", range(20))
def test_shared_dependence_bound_holds(seed):
    first, second = perturbed_pair(seed, shift_z=False)
    x1, x2 = solve_pair(first, second)
    report = dependence_bound(first, second, x1, x2, "shared-z")
    assert report.margin >= -(5.0 * report.step + DEPENDENCE_SLACK)
    assert np.allclose(report.epsilon, 0.0)


def test_shared_bound_below_root_of_general_without_rate():
    rng = np.random.default_rng(11)
    for _ in range(5):
        b1, b2 = rng.uniform(-0.5, 0.5, 2), rng.uniform(-0.5, 0.5, 2)
        pair = []
        for offset, start in ((b1, [0.1, 0.0]), (b2, [0.0, 0.2])):
            pair.append(
                ProblemSpec(
                    t0=0.0,
                    t_end=1.0,
                    moving_set=Ball([0.0, 0.0], 1.0),
                    forcing=AffineForcing(np.zeros((2, 2)), offset),
                    kernel=SeparableKernel(0.3, np.zeros((2, 2)), offset),
                    x0=start,
                )
            )
        x1, x2 = solve_pair(*pair)
        comparison = compare_variants(pair[0], pair[1], x1, x2)
        assert np.allclose(comparison.general.delta, 0.0)
        assert comparison.max_gap <= 1e-9


def test_shared_variant_rejects_different_z():
    first, second = perturbed_pair(0, shift_z=True)
    x1, x2 = solve_pair(first, second)
    with pytest.raises(VariantMismatch):
        dependence_bound(first, second, x1, x2, "shared-z")


def test_dependence_needs_the_same_set_family():
    first, _ = perturbed_pair(1, shift_z=False)
    other = first.with_changes(moving_set=Box([-1.0, -1.0], [1.0, 1.0]))
    x1, x2 = solve_pair(first, other)
    with pytest.raises(InvalidConfiguration):
        dependence_bound(first, other, x1, x2)


def test_identical_problems_have_zero_gap():
    first, _ = perturbed_pair(2, shift_z=False)
    x1, x2 = solve_pair(first, first)
    report = dependence_bound(first, first, x1, x2, "shared-z")
    assert np.allclose(report.measured, 0.0)
    assert np.allclose(report.bound, 0.0)


def test_halton_ball_is_deterministic():
    points = halton_ball(3, 2.0)
    assert points.shape == (256, 3)
    assert np.allclose(points[0], 0.0)
    assert np.max(np.linalg.norm(points, axis=1)) <= 2.0 + 1e-12
    assert np.array_equal(points, halton_ball(3, 2.0))


def test_forcing_gap_closed_form_and_estimate():
    grid = np.linspace(0.0, 1.0, 5)
    A1, A2 = np.array([[1.0, 0.0], [0.0, 0.0]]), np.zeros((2, 2))
    f1 = AffineForcing(A1, [0.0, 1.0])
    f2 = AffineForcing(A2, [0.0, 0.0])
    values, estimated = forcing_gap(f1, f2, 2.0, grid)
    assert not estimated
    assert np.allclose(values, 3.0)

    sampled = CallableForcing(2, lambda t, x: A2 @ x, growth=0.0, lipschitz=0.0)
    estimate, estimated = forcing_gap(f1, sampled, 2.0, grid)
    assert estimated
    assert np.all(estimate <= values + 1e-12)
    assert np.all(estimate >= 0.5 * values)


def test_kernel_gap_integral_closed_form_and_estimate():
    grid = np.linspace(0.0, 1.0, 33)
    B = np.array([[0.0, 1.0], [0.0, 0.0]])
    g1 = SeparableKernel(1.0, B, [0.5, 0.0])
    g2 = ZeroKernel(2)
    values, estimated = kernel_gap_integral(g1, g2, 1.0, grid)
    assert not estimated
    assert np.allclose(values, 1.5 * grid)

    sampled = CallableKernel(2, lambda t, s, x: np.zeros(2), growth=0.0, lipschitz=0.0)
    estimate, estimated = kernel_gap_integral(g1, sampled, 1.0, grid)
    assert estimated
    assert np.all(estimate <= values + 1e-12)
    assert estimate[-1] >= 0.5 * values[-1]


def test_slow_residual_vanishes_on_exact_slow_case():
    spec, config = build_problem(builtin_scenario("exact-slow"))
    residual = slow_residual(catching_up(spec, config), spec)
    assert residual.max <= 1e-12


def test_slow_residual_decreases_under_refinement():
    spec, config = build_problem(builtin_scenario("ball-slide"))
    maxima, steps = [], []
    for n in (100, 200, 400, 800):
        residual = slow_residual(catching_up(spec, config.with_n(n)), spec)
        maxima.append(residual.max)
        steps.append(residual.step)
    assert all(b < a for a, b in zip(maxima, maxima[1:]))
    order = np.polyfit(np.log(steps), np.log(maxima), 1)[0]
    assert order >= 0.45


def test_slow_residual_needs_a_fixed_convex_set():
    spec, config = build_problem(builtin_scenario("sphere-rotation"))
    with pytest.raises(UnsupportedKind):
        slow_residual(catching_up(spec, config.with_n(20)), spec)

    moving = ProblemSpec(
        t0=0.0,
        t_end=1.0,
        moving_set=HalfSpace([1.0], LinearPath(0.0, 1.0)),
        forcing=AffineForcing([[0.0]]),
        kernel=ZeroKernel(1),
        x0=[0.0],
    )
    with pytest.raises(UnsupportedKind):
        slow_residual(catching_up(moving, SolverConfig(n=20)), moving)
