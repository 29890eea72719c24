"""Scenario runs, convergence studies and the built-in self-test."""
from pathlib import Path
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np
from pydantic import BaseModel, Field

from ..analysis import (
    check_envelopes,
    compute_envelopes,
    dependence_bound,
    slow_residual,
)
from ..dynamics import ProblemSpec, Trajectory
from ..exceptions import (
    InfeasibleStart,
    InvalidConfiguration,
    ModulusViolation,
    NoConvergence,
    ScenarioError,
    SweepError,
    VariantMismatch,
)
from ..gronwall import builtin_cases, gronwall_bound, verify_dominance
from ..solver import SolverConfig, catching_up, fixed_point_solve, reference_solve
from ..utils.logger import logger
from . import artifacts
from .builtins import builtin_scenarios
from .loader import build_problem, load_scenario
from .schema import Scenario

ENVELOPE_SLACK = 1e-9
DEPENDENCE_SLACK = 1e-6
DOMINANCE_TOL = 1e-6
STEP_FACTOR = 5.0
SLOW_DECAY = 0.75
EXACT_TOL = 1e-14

Source = Union[str, Path]


class Verification(BaseModel):
    name: str
    passed: bool
    margin: float = Field(description="Worst margin; negative values are violations")
    tol: float
    detail: str = ""

    def line(self) -> str:
        mark = "✓" if self.passed else "✗"
        return f"{mark} {self.name}: margin {self.margin:.3e} (tol {self.tol:.1e}){self.detail}"


class RunResult(BaseModel):
    name: str
    out_dir: str
    verifications: List[Verification] = Field(default_factory=list)
    artifacts: List[str] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(v.passed for v in self.verifications)

    @property
    def exit_code(self) -> int:
        return 0 if self.passed else 1


class StudyRow(BaseModel):
    n: int
    h: float
    error: float
    order: Optional[float] = Field(default=None, description="log(e_prev/e) / log(h_prev/h)")


class StudyTable(BaseModel):
    name: str
    rows: List[StudyRow]
    fitted_order: Optional[float] = Field(default=None, description="Slope of log e against log h")
    exact: bool = Field(default=False, description="All errors at roundoff level")


def exit_code_for(error: Exception) -> int:
    """2 for user and configuration errors, 1 for model failures."""
    if isinstance(error, (ScenarioError, ModulusViolation, InvalidConfiguration,
                          InfeasibleStart, VariantMismatch)):
        return 2
    if isinstance(error, NoConvergence):
        return 1
    return 2


def solve(spec: ProblemSpec, config: SolverConfig) -> Trajectory:
    if config.scheme == "fixed-point":
        trajectory, _ = fixed_point_solve(spec, config)
        return trajectory
    return catching_up(spec, config)


def _step_tol(grid: np.ndarray, slack: float) -> float:
    return STEP_FACTOR * float(np.max(np.diff(grid))) + slack


def _check_schemes(spec: ProblemSpec, config: SolverConfig, envelope) -> Verification:
    direct = catching_up(spec, config)
    fixed, report = fixed_point_solve(
        spec, config.model_copy(update={"scheme": "fixed-point"}), envelope=envelope
    )
    gap = direct.sup_distance(fixed)
    tol = _step_tol(direct.grid, config.tol_fp)
    return Verification(
        name="schemes",
        passed=gap <= tol,
        margin=tol - gap,
        tol=tol,
        detail=f", sup gap {gap:.3e}, {report.iterations} fixed-point iterations",
    )


def _check_slow(
    spec: ProblemSpec, config: SolverConfig, trajectory: Trajectory, out: Path
) -> Tuple[Verification, Path]:
    coarse = slow_residual(trajectory, spec)
    fine = slow_residual(catching_up(spec, config.with_n(2 * (trajectory.grid.size - 1))), spec)
    exact = coarse.max <= 1e-12
    passed = exact or fine.max <= SLOW_DECAY * coarse.max
    path = artifacts.write_slow(out / "slow.csv", coarse)
    detail = f", max {coarse.max:.3e} -> {fine.max:.3e} on the refined grid"
    return Verification(
        name="slow",
        passed=passed,
        margin=(SLOW_DECAY * coarse.max - fine.max) if not exact else 0.0,
        tol=0.0,
        detail=detail,
    ), path


def _check_dependence(
    scenario: Scenario,
    spec: ProblemSpec,
    config: SolverConfig,
    trajectory: Trajectory,
    base_dir: Path,
    out: Path,
) -> Tuple[List[Verification], List[Path]]:
    check = scenario.verify.dependence
    other_source = base_dir / check.scenario
    other, _ = load_scenario(other_source if other_source.is_file() else check.scenario)
    other_spec, _ = build_problem(other)
    other_traj = solve(other_spec, config)
    variants = ["general-z", "shared-z"] if check.variant == "both" else [check.variant]
    tol = _step_tol(trajectory.grid, DEPENDENCE_SLACK)
    results, paths = [], []
    for variant in variants:
        report = dependence_bound(spec, other_spec, trajectory, other_traj, variant)
        paths.append(artifacts.write_dependence(out / f"dependence_{variant}.csv", report))
        estimated = " (sampled sups)" if report.estimated else ""
        results.append(
            Verification(
                name=f"dependence {variant}",
                passed=report.passed(tol),
                margin=report.margin,
                tol=tol,
                detail=estimated,
            )
        )
    return results, paths


def _check_gronwall(out: Path) -> Tuple[Verification, List[Path]]:
    worst, worst_case, paths = np.inf, "", []
    for case in builtin_cases():
        curve = gronwall_bound(case.data, case.grid())
        report = verify_dominance(curve, case.data, case.grid())
        paths.append(artifacts.write_gronwall(out / f"gronwall_{case.name}.csv", curve))
        if report.margin < worst:
            worst, worst_case = report.margin, case.name
    return Verification(
        name="gronwall",
        passed=worst >= -DOMINANCE_TOL,
        margin=float(worst),
        tol=DOMINANCE_TOL,
        detail=f", worst case {worst_case}",
    ), paths


def run_scenario(source: Source, out_dir: Source) -> RunResult:
    """Solve one scenario, write its CSVs and run the requested verifications."""
    scenario, file_path = load_scenario(source)
    spec, config = build_problem(scenario)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    logger.stage(scenario.name, f"solving with {config.scheme} on {config.n} steps")

    grid = config.make_grid(spec.t0, spec.t_end)
    envelope = compute_envelopes(spec, grid)
    if config.scheme == "fixed-point":
        trajectory, _ = fixed_point_solve(spec, config, envelope=envelope)
    else:
        trajectory = catching_up(spec, config)
    result = RunResult(name=scenario.name, out_dir=str(out))
    result.artifacts.append(str(artifacts.write_trajectory(out / "trajectory.csv", trajectory)))

    env_tol = _step_tol(grid, ENVELOPE_SLACK)
    env_report = check_envelopes(trajectory, envelope, tol=env_tol)
    result.artifacts.append(
        str(artifacts.write_envelope(out / "envelope.csv", env_report, envelope.r, envelope.theta))
    )
    verify = scenario.verify
    if verify.envelopes:
        result.verifications.append(
            Verification(
                name="envelopes",
                passed=env_report.passed,
                margin=min(env_report.r_margin, env_report.theta_margin),
                tol=env_tol,
                detail=(
                    f", r-margin {env_report.r_margin:.3e}, "
                    f"θ-margin {env_report.theta_margin:.3e}"
                ),
            )
        )
    if verify.schemes:
        result.verifications.append(_check_schemes(spec, config, envelope))
    if verify.slow:
        check, path = _check_slow(spec, config, trajectory, out)
        result.verifications.append(check)
        result.artifacts.append(str(path))
    if verify.dependence is not None:
        base_dir = file_path.parent if file_path is not None else Path.cwd()
        checks, paths = _check_dependence(scenario, spec, config, trajectory, base_dir, out)
        result.verifications.extend(checks)
        result.artifacts.extend(str(p) for p in paths)
    if verify.gronwall:
        check, paths = _check_gronwall(out)
        result.verifications.append(check)
        result.artifacts.extend(str(p) for p in paths)

    for check in result.verifications:
        logger.verification(scenario.name, check.line(), check.passed)
    return result


def run_to_exit(source: Source, out_dir: Source) -> Tuple[str, int, List[str]]:
    """Process-pool entry point: (label, exit code, summary lines), never raises SweepError."""
    try:
        result = run_scenario(source, out_dir)
    except SweepError as e:
        return str(source), exit_code_for(e), [f"✗ {type(e).__name__}: {e}"]
    return result.name, result.exit_code, [check.line() for check in result.verifications]


def _fit_order(rows: List[StudyRow]) -> Optional[float]:
    errors = np.array([row.error for row in rows])
    if np.any(errors <= 0.0):
        return None
    steps = np.array([row.h for row in rows])
    slope, _ = np.polyfit(np.log(steps), np.log(errors), 1)
    return float(slope)


def convergence_study(
    source: Source, grid_sizes: Sequence[int], out_dir: Optional[Source] = None, fine_factor: int = 8
) -> StudyTable:
    """Sup-distance of catching-up runs to a reference on the largest grid refined ``fine_factor`` times."""
    sizes = list(grid_sizes)
    if len(sizes) < 3 or any(b <= a for a, b in zip(sizes, sizes[1:])):
        raise InvalidConfiguration(
            f"need at least 3 strictly increasing grid sizes, got {sizes}", "grids"
        )
    scenario, _ = load_scenario(source)
    spec, config = build_problem(scenario)
    reference = reference_solve(spec, config.with_n(sizes[-1]), fine_factor=fine_factor)

    rows: List[StudyRow] = []
    for n in sizes:
        trajectory = catching_up(spec, config.with_n(n))
        error = trajectory.interpolated_distance(reference)
        order = None
        if rows and rows[-1].error > EXACT_TOL and error > EXACT_TOL:
            order = float(np.log(rows[-1].error / error) / np.log(rows[-1].h / trajectory.step))
        rows.append(StudyRow(n=n, h=trajectory.step, error=error, order=order))
        logger.debug(f"{scenario.name}: n={n} error={error:.3e}")

    exact = all(row.error <= EXACT_TOL for row in rows)
    table = StudyTable(
        name=scenario.name,
        rows=rows,
        fitted_order=None if exact else _fit_order(rows),
        exact=exact,
    )
    if out_dir is not None:
        out = Path(out_dir)
        artifacts.write_csv(
            out / "study.csv",
            ["n", "h", "error", "order"],
            [
                [row.n for row in rows],
                [row.h for row in rows],
                [row.error for row in rows],
                [np.nan if row.order is None else row.order for row in rows],
            ],
        )
    return table


def selftest(n: int = 200) -> List[Verification]:
    """Gronwall dominance plus scheme agreement and envelope dominance on every built-in."""
    checks: List[Verification] = []
    for case in builtin_cases():
        curve = gronwall_bound(case.data, case.grid())
        report = verify_dominance(curve, case.data, case.grid())
        checks.append(
            Verification(
                name=f"gronwall {case.name}",
                passed=report.margin >= -DOMINANCE_TOL,
                margin=report.margin,
                tol=DOMINANCE_TOL,
            )
        )
    for scenario in builtin_scenarios():
        spec, config = build_problem(scenario)
        config = config.with_n(n)
        grid = config.make_grid(spec.t0, spec.t_end)
        envelope = compute_envelopes(spec, grid)
        schemes = _check_schemes(spec, config, envelope)
        schemes.name = f"schemes {scenario.name}"
        checks.append(schemes)
        env_tol = _step_tol(grid, ENVELOPE_SLACK)
        env_report = check_envelopes(catching_up(spec, config), envelope, tol=env_tol)
        checks.append(
            Verification(
                name=f"envelopes {scenario.name}",
                passed=env_report.passed,
                margin=min(env_report.r_margin, env_report.theta_margin),
                tol=env_tol,
            )
        )
    return checks
