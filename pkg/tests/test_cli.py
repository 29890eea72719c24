from pathlib import Path
from unittest.mock import patch

import pytest
from click.testing import CliRunner

from volsweep.utils.cli import cli
from volsweep.utils.logger import logger

SCENARIO_DIR = Path(__file__).resolve().parent.parent / "src" / "examples" / "scenarios"

STATIC = """\
name: {name}
dimension: 1
interval: [0.0, 1.0]
set:
  kind: box
  lower: [-1.0]
  upper: [1.0]
forcing:
  kind: affine
  A: [[-1.0]]
  b: [0.5]
x0: [0.0]
solver:
  n: 40
"""


@pytest.fixture
def runner():
    return CliRunner()


def write_scenario(directory: Path, name: str, text: str = STATIC) -> Path:
    path = directory / f"{name}.yaml"
    path.write_text(text.format(name=name), encoding="utf-8")
    return path


def test_run_builtin(runner, tmp_path):
    result = runner.invoke(cli, ["run", "linear-ode", "--out", str(tmp_path)])
    assert result.exit_code == 0, result.output
    assert "✓ linear-ode" in result.output
    assert (tmp_path / "trajectory.csv").is_file()


def test_run_scenario_file(runner, tmp_path):
    path = write_scenario(tmp_path, "static")
    result = runner.invoke(cli, ["run", str(path), "--out", str(tmp_path / "out")])
    assert result.exit_code == 0, result.output
    assert "envelopes" in result.output


def test_run_reports_line_of_bad_field(runner, tmp_path):
    path = write_scenario(tmp_path, "typo", STATIC.replace("  upper: [1.0]", "  uper: [1.0]"))
    result = runner.invoke(cli, ["run", str(path), "--out", str(tmp_path / "out")])
    assert result.exit_code == 2
    assert f"{path}:7" in result.output


def test_run_directory(runner, tmp_path):
    scenarios = tmp_path / "scenarios"
    scenarios.mkdir()
    write_scenario(scenarios, "first")
    write_scenario(scenarios, "second")
    out = tmp_path / "out"
    result = runner.invoke(cli, ["run", str(scenarios), "--out", str(out)])
    assert result.exit_code == 0, result.output
    assert (out / "first" / "trajectory.csv").is_file()
    assert (out / "second" / "envelope.csv").is_file()


def test_run_directory_takes_worst_exit_code(runner, tmp_path):
    scenarios = tmp_path / "scenarios"
    scenarios.mkdir()
    write_scenario(scenarios, "good")
    (scenarios / "broken.yaml").write_text("name: broken\n", encoding="utf-8")
    result = runner.invoke(cli, ["run", str(scenarios), "--out", str(tmp_path / "out")])
    assert result.exit_code == 2
    assert "✓ good" in result.output


def test_run_empty_directory(runner, tmp_path):
    result = runner.invoke(cli, ["run", str(tmp_path)])
    assert result.exit_code == 2


def test_out_dir_from_environment(runner, tmp_path):
    result = runner.invoke(cli, ["run", "exact-slow"], env={"VOLSWEEP_OUT_DIR": str(tmp_path)})
    assert result.exit_code == 0, result.output
    assert (tmp_path / "slow.csv").is_file()


def test_run_shipped_dependence_pair(runner, tmp_path):
    result = runner.invoke(
        cli, ["run", str(SCENARIO_DIR / "memory-pair-base.yaml"), "--out", str(tmp_path)]
    )
    assert result.exit_code == 0, result.output
    assert "dependence shared-z" in result.output


def test_study(runner, tmp_path):
    result = runner.invoke(cli, ["study", "linear-ode", "--grids", "50,100,200", "--out", str(tmp_path)])
    assert result.exit_code == 0, result.output
    assert "fitted order" in result.output
    assert (tmp_path / "study.csv").is_file()


def test_study_exact(runner, tmp_path):
    result = runner.invoke(cli, ["study", "moving-half-line", "--grids", "10,20,40", "--out", str(tmp_path)])
    assert result.exit_code == 0, result.output
    assert "fitted order: exact" in result.output


@pytest.mark.parametrize("grids", ["50,40,100", "abc", "50,100"])
def test_study_rejects_bad_grids(runner, tmp_path, grids):
    result = runner.invoke(cli, ["study", "linear-ode", "--grids", grids, "--out", str(tmp_path)])
    assert result.exit_code == 2


def test_selftest(runner):
    result = runner.invoke(cli, ["selftest", "--n", "50"])
    assert result.exit_code == 0, result.output
    assert "checks passed" in result.output


def test_verbose_flag(runner, tmp_path):
    with patch.object(logger, "set_verbose") as mock_verbose:
        result = runner.invoke(cli, ["--verbose", "run", "trivial-static", "--out", str(tmp_path)])
    assert result.exit_code == 0, result.output
    mock_verbose.assert_called_once_with(True)


def test_run_rejects_mismatched_path_shapes(runner, tmp_path):
    text = STATIC + "z:\n  path:\n    kind: linear\n    start: 0.0\n    velocity: [1.0, 0.0]\n"
    path = write_scenario(tmp_path, "shapes", text)
    result = runner.invoke(cli, ["run", str(path), "--out", str(tmp_path / "out")])
    assert result.exit_code == 2
    assert "ScenarioError" in result.output
    assert f"{path}:17" in result.output


def test_run_rejects_reparametrization_without_radius(runner, tmp_path):
    text = """\
name: {name}
dimension: 1
interval: [0.0, 1.0]
set:
  kind: whole-space
forcing:
  kind: affine
  A: [[0.0]]
  b: [0.0]
x0: [0.0]
solver:
  n: 20
  scheme: fixed-point
  reparametrize: true
"""
    path = write_scenario(tmp_path, "still", text)
    result = runner.invoke(cli, ["run", str(path), "--out", str(tmp_path / "out")])
    assert result.exit_code == 2
    assert "InvalidConfiguration" in result.output
