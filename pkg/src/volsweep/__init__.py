from .exceptions import (
    SweepError,
    ProjectionAmbiguous,
    InfeasibleSet,
    NotOnSet,
    UnsupportedKind,
    NegativeCoefficient,
    NonmonotoneGrid,
    EpsilonNotZero,
    GridMismatch,
    InfeasibleStart,
    NoConvergence,
    VariantMismatch,
    ModulusViolation,
    InvalidConfiguration,
    ScenarioError,
)
from .paths import ConstantPath, LinearPath, SinusoidalPath, CallablePath, as_path
from .sets import WholeSpace, HalfSpace, Box, Ball, Sphere, TranslatedConvex
from .gronwall import GronwallData, gronwall_bound, verify_dominance
from .dynamics import AffineForcing, SeparableKernel, ZeroKernel, ProblemSpec, Trajectory
from .solver import SolverConfig, catching_up, fixed_point_solve
from .analysis import compute_envelopes, check_envelopes, dependence_bound, slow_residual
from .scenario import load_scenario, build_problem, run_scenario, convergence_study
from .utils.logger import logger as sweep_logger
from .__pack__ import __version__, __name__


__all__ = [
    "SweepError", "ProjectionAmbiguous", "InfeasibleSet", "NotOnSet", "UnsupportedKind",
    "NegativeCoefficient", "NonmonotoneGrid", "EpsilonNotZero", "GridMismatch",
    "InfeasibleStart", "NoConvergence", "VariantMismatch", "ModulusViolation",
    "InvalidConfiguration", "ScenarioError",

    "ConstantPath", "LinearPath", "SinusoidalPath", "CallablePath", "as_path",
    "WholeSpace", "HalfSpace", "Box", "Ball", "Sphere", "TranslatedConvex",
    "GronwallData", "gronwall_bound", "verify_dominance",
    "AffineForcing", "SeparableKernel", "ZeroKernel", "ProblemSpec", "Trajectory",
    "SolverConfig", "catching_up", "fixed_point_solve",
    "compute_envelopes", "check_envelopes", "dependence_bound", "slow_residual",
    "load_scenario", "build_problem", "run_scenario", "convergence_study",
    "sweep_logger",

    "__version__",
    "__name__"
]
