import csv
from pathlib import Path

import numpy as np
import pytest

from volsweep.exceptions import (
    InfeasibleStart,
    InvalidConfiguration,
    ModulusViolation,
    NoConvergence,
    ScenarioError,
    SweepError,
    VariantMismatch,
)
from volsweep.scenario import (
    BUILTIN_SCENARIOS,
    Scenario,
    Verification,
    build_problem,
    builtin_names,
    builtin_scenario,
    convergence_study,
    exit_code_for,
    load_scenario,
    parse_scenario,
    run_scenario,
    run_to_exit,
    selftest,
)

SCENARIO_DIR = Path(__file__).resolve().parent.parent / "src" / "examples" / "scenarios"

HALF_LINE = """\
name: half-line
dimension: 1
interval: [0.0, 1.0]
set:
  kind: half-space
  normal: [1.0]
  offset: 0.0
forcing:
  kind: affine
  A: [[0.0]]
  b: [-1.0]
x0: [0.0]
solver:
  n: 50
"""


def read_header(path):
    with open(path, encoding="utf-8") as f:
        return next(csv.reader(f))


@pytest.mark.parametrize("name", sorted(BUILTIN_SCENARIOS))
def test_yaml_copies_match_builtins(name):
    scenario, path = load_scenario(SCENARIO_DIR / f"{name}.yaml")
    assert path is not None
    assert scenario.model_dump() == builtin_scenario(name).model_dump()


def test_library_has_enough_scenarios():
    assert len(builtin_names()) >= 10


def test_parse_minimal_scenario():
    scenario = parse_scenario(HALF_LINE, "half-line.yaml")
    assert scenario.kernel.kind == "zero"
    assert scenario.verify.envelopes
    spec, config = scenario.build()
    assert config.n == 50
    assert spec.is_fixed_convex


def test_unknown_field_reports_its_line():
    text = HALF_LINE.replace("  offset: 0.0", "  offest: 0.0")
    with pytest.raises(ScenarioError) as excinfo:
        parse_scenario(text, "bad.yaml")
    assert excinfo.value.line == 7
    assert excinfo.value.path == "bad.yaml"
    assert "bad.yaml:7" in str(excinfo.value)


def test_bad_value_reports_its_line():
    text = HALF_LINE.replace("  n: 50", "  n: 1")
    with pytest.raises(ScenarioError) as excinfo:
        parse_scenario(text)
    assert excinfo.value.line == 14


def test_yaml_syntax_error_reports_a_line():
    with pytest.raises(ScenarioError) as excinfo:
        parse_scenario("name: broken\ninterval: [0.0, 1.0\n")
    assert excinfo.value.line is not None


def test_dimension_mismatch_is_a_scenario_error():
    with pytest.raises(ScenarioError, match="x0"):
        parse_scenario(HALF_LINE.replace("x0: [0.0]", "x0: [0.0, 1.0]"))


def test_non_mapping_document():
    with pytest.raises(ScenarioError):
        parse_scenario("- just\n- a list\n")


def test_unknown_source():
    with pytest.raises(ScenarioError):
        load_scenario("no-such-scenario")


def test_load_builtin_by_name():
    scenario, path = load_scenario("linear-ode")
    assert path is None
    assert scenario.name == "linear-ode"


def test_undeclared_motion_is_a_modulus_violation():
    data = dict(BUILTIN_SCENARIOS["moving-ball-fading-memory"])
    data["set"] = dict(data["set"], motion={"kind": "constant", "value": 0.0})
    scenario = Scenario.model_validate(data)
    with pytest.raises(ModulusViolation) as excinfo:
        build_problem(scenario)
    assert "motion" in excinfo.value.hypothesis


def test_understated_beta_is_a_modulus_violation():
    text = HALF_LINE.replace("  b: [-1.0]", "  b: [-1.0]\n  beta: 0.5")
    with pytest.raises(ModulusViolation):
        build_problem(parse_scenario(text))


def test_infeasible_start():
    with pytest.raises(InfeasibleStart):
        build_problem(parse_scenario(HALF_LINE.replace("x0: [0.0]", "x0: [-1.0]")))


def test_translated_convex_scenario():
    text = HALF_LINE.replace(
        "set:\n  kind: half-space\n  normal: [1.0]\n  offset: 0.0\n",
        "set:\n  kind: translated-convex\n  base:\n    kind: box\n    lower: [0.0]\n    upper: [1.0]\n"
        "  translation:\n    kind: linear\n    start: [0.0]\n    velocity: [0.5]\n",
    )
    spec, config = build_problem(parse_scenario(text))
    assert spec.moving_set.kind == "translated-convex"
    assert spec.motion_rate(0.3) == pytest.approx(0.5)


def test_exit_codes():
    assert exit_code_for(ScenarioError("x")) == 2
    assert exit_code_for(ModulusViolation("h", 0.0, [0.0], 1.0, 0.0)) == 2
    assert exit_code_for(InvalidConfiguration("x")) == 2
    assert exit_code_for(InfeasibleStart(1.0, 1e-9)) == 2
    assert exit_code_for(VariantMismatch(0.0, 1.0)) == 2
    assert exit_code_for(SweepError("other")) == 2

    class Report:
        deltas = [1.0]
        iterations = 1

    assert exit_code_for(NoConvergence(Report())) == 1


def test_verification_line():
    check = Verification(name="envelopes", passed=False, margin=-0.5, tol=1e-3)
    assert check.line().startswith("✗ envelopes")


def test_run_scenario_writes_artifacts(tmp_path):
    result = run_scenario(SCENARIO_DIR / "half-plane-slide.yaml", tmp_path)
    assert result.passed
    assert result.exit_code == 0
    names = {v.name for v in result.verifications}
    assert {"envelopes", "schemes", "slow"} <= names
    assert read_header(tmp_path / "trajectory.csv") == ["t", "x1", "x2", "d1", "d2"]
    assert read_header(tmp_path / "envelope.csv") == ["t", "‖x‖", "r", "‖d‖", "θ"]
    assert read_header(tmp_path / "slow.csv") == ["t", "residual"]
    rows = np.loadtxt(tmp_path / "trajectory.csv", delimiter=",", skiprows=1)
    assert rows.shape == (401, 5)
    assert np.allclose(rows[:, 2], 0.0)


def test_run_scenario_with_dependence(tmp_path):
    result = run_scenario(SCENARIO_DIR / "memory-pair-base.yaml", tmp_path)
    names = [v.name for v in result.verifications]
    assert "dependence general-z" in names
    assert "dependence shared-z" in names
    assert result.passed
    header = read_header(tmp_path / "dependence_general-z.csv")
    assert header == ["t", "measured", "bound", "Δ", "δ", "ε", "ν"]
    assert (tmp_path / "dependence_shared-z.csv").is_file()


def test_run_scenario_with_gronwall(tmp_path):
    scenario_file = tmp_path / "gronwall.yaml"
    scenario_file.write_text(HALF_LINE + "verify:\n  gronwall: true\n", encoding="utf-8")
    result = run_scenario(scenario_file, tmp_path / "out")
    assert result.passed
    assert (tmp_path / "out" / "gronwall_I-constant-rate.csv").is_file()


def test_run_to_exit_maps_errors(tmp_path):
    bad = tmp_path / "bad.yaml"
    bad.write_text("name: bad\n", encoding="utf-8")
    label, code, lines = run_to_exit(bad, tmp_path / "out")
    assert code == 2
    assert "ScenarioError" in lines[0]

    stuck = tmp_path / "stuck.yaml"
    stuck.write_text(
        HALF_LINE.replace("  n: 50", "  n: 50\n  max_iterations: 1\n  tol_fp: 1.0e-14")
        .replace("  A: [[0.0]]", "  A: [[1.0]]")
        .replace("set:\n  kind: half-space\n  normal: [1.0]\n  offset: 0.0\n", "set:\n  kind: whole-space\n")
        + "verify:\n  schemes: true\n",
        encoding="utf-8",
    )
    label, code, lines = run_to_exit(stuck, tmp_path / "out2")
    assert code == 1
    assert "NoConvergence" in lines[0]


def test_convergence_study_linear_ode(tmp_path):
    table = convergence_study("linear-ode", [50, 100, 200, 400], tmp_path)
    assert not table.exact
    assert 0.9 <= table.fitted_order <= 1.1
    assert table.rows[0].order is None
    assert all(row.order is not None for row in table.rows[1:])
    assert read_header(tmp_path / "study.csv") == ["n", "h", "error", "order"]


def test_convergence_study_reports_exact():
    table = convergence_study("moving-half-line", [10, 20, 40])
    assert table.exact
    assert table.fitted_order is None


def test_convergence_study_needs_increasing_grids():
    with pytest.raises(InvalidConfiguration):
        convergence_study("linear-ode", [50, 100])
    with pytest.raises(InvalidConfiguration):
        convergence_study("linear-ode", [50, 100, 100])


def test_selftest_passes():
    checks = selftest(n=50)
    assert all(check.passed for check in checks), [c.line() for c in checks if not c.passed]
    names = [check.name for check in checks]
    assert sum(name.startswith("gronwall") for name in names) == 6
    assert sum(name.startswith("schemes") for name in names) == len(builtin_names())


def test_rerun_writes_identical_csv(tmp_path):
    for out in ("first", "second"):
        run_scenario(SCENARIO_DIR / "sphere-oscillating-center.yaml", tmp_path / out)
    for name in ("trajectory.csv", "envelope.csv"):
        first = (tmp_path / "first" / name).read_bytes()
        assert first == (tmp_path / "second" / name).read_bytes()
