from .config import SolverConfig, FixedPointReport, Scheme
from .catching_up import (
    InnerSweepResult,
    catching_up,
    solve_inner_sweeping,
    reference_solve,
)
from .fixed_point import fixed_point_solve, forcing_curve, truncate

__all__ = [
    'SolverConfig', 'FixedPointReport', 'Scheme',
    'InnerSweepResult', 'catching_up', 'solve_inner_sweeping', 'reference_solve',
    'fixed_point_solve', 'forcing_curve', 'truncate',
]
