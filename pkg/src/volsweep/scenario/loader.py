"""YAML scenario loading with line-anchored error messages."""
from pathlib import Path as FilePath
from typing import Any, Optional, Sequence, Tuple, Union

import yaml
from pydantic import ValidationError

from ..dynamics import ProblemSpec, validate_moduli
from ..exceptions import InvalidConfiguration, ModulusViolation, ScenarioError
from ..sets import check_motion
from ..solver import SolverConfig
from ..utils.logger import logger
from .builtins import builtin_scenario, builtin_names
from .schema import Scenario

PathLike = Union[str, FilePath]


def _node_line(root: Optional[yaml.Node], loc: Sequence[Any]) -> Optional[int]:
    """1-based line of the YAML node addressed by a pydantic error location.

    Union tags in the location (``half-space``, ``linear``...) have no node and are skipped.
    """
    if root is None:
        return None
    node = root
    for key in loc:
        if isinstance(node, yaml.MappingNode):
            match = next((value for name, value in node.value if name.value == key), None)
            if match is not None:
                node = match
        elif isinstance(node, yaml.SequenceNode) and isinstance(key, int):
            if key < len(node.value):
                node = node.value[key]
    return node.start_mark.line + 1


# unknown keys and failed checks point at a real node; missing keys only at their parent
_ERROR_RANK = {"extra_forbidden": 0, "value_error": 1, "missing": 3}


def _first_error(error: ValidationError) -> dict:
    return min(error.errors(), key=lambda item: _ERROR_RANK.get(item["type"], 2))


def parse_scenario(text: str, path: Optional[str] = None) -> Scenario:
    try:
        data = yaml.safe_load(text)
        root = yaml.compose(text)
    except yaml.YAMLError as e:
        mark = getattr(e, "problem_mark", None)
        line = mark.line + 1 if mark is not None else None
        problem = getattr(e, "problem", None) or str(e)
        raise ScenarioError(f"YAML parse error: {problem}", path, line) from e
    if not isinstance(data, dict):
        raise ScenarioError("a scenario file must hold a mapping", path, 1)
    try:
        return Scenario.model_validate(data)
    except ValidationError as e:
        first = _first_error(e)
        where = ".".join(str(part) for part in first["loc"]) or "<root>"
        line = _node_line(root, first["loc"])
        raise ScenarioError(f"{where}: {first['msg']}", path, line) from e


def load_scenario(source: PathLike) -> Tuple[Scenario, Optional[FilePath]]:
    """Scenario from a YAML file, or from the built-in library by name."""
    file_path = FilePath(source)
    if file_path.is_file():
        return parse_scenario(file_path.read_text(encoding="utf-8"), str(file_path)), file_path
    if str(source) in builtin_names():
        return builtin_scenario(str(source)), None
    raise ScenarioError(f"no scenario file or built-in named '{source}'", str(source))


def build_problem(scenario: Scenario, validate: bool = True) -> Tuple[ProblemSpec, SolverConfig]:
    """ProblemSpec and SolverConfig with the declared moduli and motion sample-checked."""
    try:
        spec, config = scenario.build()
    except ValueError as e:
        raise InvalidConfiguration(f"{scenario.name}: {e}", "scenario") from e
    if validate:
        validate_moduli(spec)
        grid = config.make_grid(spec.t0, spec.t_end)
        motion = check_motion(spec.moving_set, grid)
        if not motion.passed:
            s, t = motion.worst_times
            raise ModulusViolation(
                "set motion: Hausdorff distance within |v(t) - v(s)|",
                t,
                [s, t],
                -motion.worst_margin,
                0.0,
                s=s,
            )
        logger.debug(f"{scenario.name}: moduli and motion validated")
    return spec, config
