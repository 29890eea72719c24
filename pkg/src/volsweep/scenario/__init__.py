from .schema import Scenario, SolverSpec, VerifySpec, DependenceCheck
from .builtins import BUILTIN_SCENARIOS, builtin_names, builtin_scenario, builtin_scenarios
from .loader import parse_scenario, load_scenario, build_problem
from .runner import (
    Verification,
    RunResult,
    StudyRow,
    StudyTable,
    run_scenario,
    run_to_exit,
    convergence_study,
    selftest,
    exit_code_for,
    solve,
)

__all__ = [
    'Scenario', 'SolverSpec', 'VerifySpec', 'DependenceCheck',
    'BUILTIN_SCENARIOS', 'builtin_names', 'builtin_scenario', 'builtin_scenarios',
    'parse_scenario', 'load_scenario', 'build_problem',
    'Verification', 'RunResult', 'StudyRow', 'StudyTable',
    'run_scenario', 'run_to_exit', 'convergence_study', 'selftest', 'exit_code_for', 'solve',
]
