from .data import GronwallData, BoundCurve, from_samples
from .bounds import (
    classical_bound,
    kernel_integral,
    gronwall_I,
    gronwall_II,
    gronwall_II_sqrt,
    gronwall_bound,
)
from .dominance import DominanceReport, verify_dominance
from .cases import GronwallCase, builtin_cases

__all__ = [
    'GronwallData', 'BoundCurve', 'from_samples',
    'classical_bound', 'kernel_integral',
    'gronwall_I', 'gronwall_II', 'gronwall_II_sqrt', 'gronwall_bound',
    'DominanceReport', 'verify_dominance',
    'GronwallCase', 'builtin_cases',
]
