import math

import numpy as np
import pytest
from scipy.integrate import quad

from volsweep.dynamics import (
    AffineForcing,
    CallableForcing,
    CallableKernel,
    ExponentialWeight,
    ProblemSpec,
    SeparableKernel,
    Trajectory,
    ZeroKernel,
    accumulate_volterra,
    forward_differences,
    gamma_curve,
    operator_norm,
    phi_reparametrization,
    sigma_integral,
    validate_moduli,
    volterra_sum,
    zero_forcing,
)
from volsweep.exceptions import (
    GridMismatch,
    InfeasibleStart,
    InvalidConfiguration,
    ModulusViolation,
)
from volsweep.paths import LinearPath, SinusoidalPath
from volsweep.sets import Ball, HalfSpace, WholeSpace


def make_spec(**changes):
    fields = dict(
        name="unit",
        t0=0.0,
        t_end=1.0,
        moving_set=Ball([0.0, 0.0], 2.0),
        forcing=AffineForcing([[0.0, -1.0], [1.0, 0.0]], [0.1, 0.0]),
        kernel=SeparableKernel(ExponentialWeight(0.5, 1.0), np.eye(2), [0.0, 0.2]),
        x0=[0.5, 0.0],
    )
    fields.update(changes)
    return ProblemSpec(**fields)


def test_operator_norm_matches_svd():
    rng = np.random.default_rng(4)
    for _ in range(10):
        A = rng.standard_normal((3, 3))
        assert operator_norm(A) == pytest.approx(np.linalg.norm(A, 2), rel=1e-6)
    assert operator_norm(np.zeros((2, 2))) == 0.0
    assert operator_norm(np.eye(3)) == pytest.approx(1.0)


def test_affine_forcing_moduli():
    forcing = AffineForcing([[3.0, 0.0], [0.0, -1.0]], [0.0, 4.0])
    assert forcing.lipschitz(10.0, 0.0) == pytest.approx(3.0)
    assert forcing.growth(0.0) == pytest.approx(4.0)
    assert np.allclose(forcing(0.0, [1.0, 1.0]), [3.0, 3.0])


def test_affine_forcing_broadcasts_scalar_offset():
    forcing = AffineForcing(np.zeros((3, 3)), 2.0)
    assert np.allclose(forcing.evaluate(0.0, np.zeros(3)), [2.0, 2.0, 2.0])
    with pytest.raises(InvalidConfiguration):
        AffineForcing(np.zeros((2, 3)))
    with pytest.raises(InvalidConfiguration):
        AffineForcing(np.eye(2), [1.0, 2.0, 3.0])


def test_time_dependent_offset():
    forcing = AffineForcing([[0.0]], LinearPath([0.0], [2.0]))
    assert forcing.evaluate(0.5, [0.0])[0] == pytest.approx(1.0)
    A, b = forcing.affine_parts(0.5)
    assert b[0] == pytest.approx(1.0)


def test_separable_kernel_is_causal():
    kernel = SeparableKernel(1.0, [[2.0]], [1.0])
    assert kernel.evaluate(1.0, 0.5, [1.0])[0] == pytest.approx(3.0)
    with pytest.raises(ValueError):
        kernel.evaluate(0.5, 1.0, [1.0])


def test_kernel_moduli():
    kernel = SeparableKernel(ExponentialWeight(-0.5, 1.0), [[2.0, 0.0], [0.0, 1.0]], [0.0, 3.0])
    assert kernel.lipschitz(1.0, 1.0) == pytest.approx(1.0)
    assert kernel.growth(1.0, np.array([1.0]))[0] == pytest.approx(1.5)
    assert ZeroKernel(2).is_zero
    with pytest.raises(InvalidConfiguration):
        ExponentialWeight(1.0, -1.0)


def test_volterra_sum_against_quad():
    grid = np.linspace(0.0, 2.0, 2001)
    states = np.sin(grid)[:, None]
    kernel = SeparableKernel(ExponentialWeight(0.5, 1.0), [[1.0]], [0.0])
    k = grid.size - 1
    expected = quad(lambda s: 0.5 * math.exp(-(2.0 - s)) * math.sin(s), 0.0, 2.0)[0]
    assert volterra_sum(kernel, grid, states, k)[0] == pytest.approx(expected, rel=1e-5)
    assert np.all(volterra_sum(kernel, grid, states, 0) == 0.0)


def test_callable_kernel_agrees_with_separable():
    grid = np.linspace(0.0, 1.0, 41)
    states = np.column_stack([np.cos(grid), grid])
    B, c = np.array([[0.0, 1.0], [-1.0, 0.0]]), np.array([0.1, 0.0])
    separable = SeparableKernel(ExponentialWeight(1.0, 2.0), B, c)
    callable_kernel = CallableKernel(
        2, lambda t, s, x: math.exp(-2.0 * (t - s)) * (B @ x + c), growth=1.0, lipschitz=1.0
    )
    for k in (5, 40):
        assert np.allclose(
            volterra_sum(separable, grid, states, k),
            volterra_sum(callable_kernel, grid, states, k),
        )


def test_accumulate_volterra_requires_nodes():
    grid = np.linspace(0.0, 1.0, 11)
    traj = Trajectory.from_states(grid, np.ones(11), "catching-up")
    kernel = SeparableKernel(1.0, [[1.0]], [0.0])
    assert accumulate_volterra(kernel, traj, 0.5)[0] == pytest.approx(0.5)
    with pytest.raises(GridMismatch):
        accumulate_volterra(kernel, traj, 0.55)


def test_sigma_and_gamma_curves():
    spec = make_spec(kernel=SeparableKernel(1.0, np.eye(2), [0.0, 0.0]))
    grid = spec.grid(10)
    assert np.allclose(sigma_integral(spec.kernel, grid), grid)
    beta = spec.forcing.growth(0.0)
    assert np.allclose(gamma_curve(spec, grid), 2.0 * beta + 2.0 * grid)


def test_phi_reparametrization_is_at_least_one():
    spec = make_spec()
    reparam = phi_reparametrization(spec, 3.0, spec.grid(20))
    assert np.all(reparam.phi >= 1.0)
    assert reparam.s_grid[0] == 0.0
    assert reparam.s_end >= spec.t_end - spec.t0
    assert reparam.to_original(reparam.to_reparam(0.35)) == pytest.approx(0.35)
    with pytest.raises(InvalidConfiguration):
        phi_reparametrization(spec, 0.0, spec.grid(20))


def test_problem_spec_validation():
    with pytest.raises(InfeasibleStart):
        make_spec(x0=[3.0, 0.0])
    with pytest.raises(InvalidConfiguration):
        make_spec(x0=[0.0, 0.0, 0.0])
    with pytest.raises(InvalidConfiguration):
        make_spec(forcing=zero_forcing(3))
    with pytest.raises(ValueError):
        make_spec(t_end=0.0)


def test_problem_spec_shift_and_rate():
    spec = make_spec(z=LinearPath([1.0, 0.0], [0.0, 2.0]), x0=[1.5, 0.0])
    assert np.allclose(spec.shift(0.5), [1.0, 1.0])
    assert spec.rate_bound(0.3) == pytest.approx(2.0)
    assert spec.contains(0.0, [3.0, 0.0])
    assert not spec.is_fixed_convex
    assert make_spec().is_fixed_convex
    declared = spec.with_changes(rate_bound=5.0)
    assert declared.rate_bound(0.0) == 5.0


def test_validate_moduli_accepts_derived_moduli():
    validate_moduli(make_spec())


def test_validate_moduli_catches_understated_kappa():
    spec = make_spec(forcing=AffineForcing([[0.0, -1.0], [1.0, 0.0]], lipschitz=0.5))
    with pytest.raises(ModulusViolation) as excinfo:
        validate_moduli(spec)
    assert "Lipschitz" in excinfo.value.hypothesis
    assert excinfo.value.x.shape == (2,)


def test_validate_moduli_catches_understated_growth():
    forcing = CallableForcing(1, lambda t, x: np.sin(x) + 2.0, growth=1.0, lipschitz=1.0)
    spec = ProblemSpec(
        t0=0.0, t_end=1.0, moving_set=WholeSpace(1), forcing=forcing, kernel=ZeroKernel(1), x0=[0.0]
    )
    with pytest.raises(ModulusViolation, match="growth"):
        validate_moduli(spec)


def test_validate_moduli_checks_declared_rate():
    spec = ProblemSpec(
        t0=0.0,
        t_end=1.0,
        moving_set=HalfSpace([1.0], 0.0),
        forcing=zero_forcing(1),
        kernel=ZeroKernel(1),
        z=LinearPath([0.0], [1.0]),
        rate_bound=0.5,
        x0=[0.0],
    )
    with pytest.raises(ModulusViolation, match="R"):
        validate_moduli(spec)


def test_trajectory_differences():
    grid = np.array([0.0, 0.5, 2.0])
    states = np.array([[0.0], [1.0], [4.0]])
    d = forward_differences(grid, states)
    assert np.allclose(d[:, 0], [2.0, 2.0, 2.0])
    traj = Trajectory.from_states(grid, states, "catching-up")
    assert traj.at(1.25)[0] == pytest.approx(2.5)
    assert traj.step == pytest.approx(1.5)
    with pytest.raises(GridMismatch):
        Trajectory(grid=grid, states=states[:2], derivatives=d[:2], provenance="catching-up")


def test_restrict_keeps_every_stride_node():
    grid = np.linspace(0.0, 1.0, 9)
    traj = Trajectory.from_states(grid, grid**2, "catching-up")
    coarse = traj.restrict(4)
    assert coarse.provenance == "reference"
    assert np.allclose(coarse.grid, [0.0, 0.5, 1.0])
    assert coarse.interpolated_distance(traj) == 0.0
    with pytest.raises(GridMismatch):
        coarse.sup_distance(traj)


def test_path_shapes_must_agree():
    with pytest.raises(InvalidConfiguration):
        LinearPath(0.0, [1.0, 0.0])
    with pytest.raises(InvalidConfiguration):
        SinusoidalPath([0.0, 0.0], 1.0, 2.0)
