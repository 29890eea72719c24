from .moduli import operator_norm, validate_moduli
from .forcing import Forcing, AffineForcing, CallableForcing, zero_forcing
from .kernel import (
    KernelWeight,
    ConstantWeight,
    ExponentialWeight,
    CallableWeight,
    VolterraKernel,
    ZeroKernel,
    SeparableKernel,
    CallableKernel,
)
from .problem import ProblemSpec
from .trajectory import Trajectory, Provenance, forward_differences
from .quadrature import (
    Reparametrization,
    accumulate_volterra,
    volterra_sum,
    sigma_integral,
    gamma_curve,
    phi_reparametrization,
)

__all__ = [
    'operator_norm', 'validate_moduli',
    'Forcing', 'AffineForcing', 'CallableForcing', 'zero_forcing',
    'KernelWeight', 'ConstantWeight', 'ExponentialWeight', 'CallableWeight',
    'VolterraKernel', 'ZeroKernel', 'SeparableKernel', 'CallableKernel',
    'ProblemSpec', 'Trajectory', 'Provenance', 'forward_differences',
    'Reparametrization', 'accumulate_volterra', 'volterra_sum', 'sigma_integral',
    'gamma_curve', 'phi_reparametrization',
]
