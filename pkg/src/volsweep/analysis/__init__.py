from .envelopes import BoundEnvelope, EnvelopeReport, compute_envelopes, check_envelopes
from .sup_norms import halton_ball, forcing_gap, kernel_gap_integral
from .dependence import (
    DependenceReport,
    DependenceVariant,
    VariantComparison,
    dependence_bound,
    compare_variants,
)
from .slow import SlowResidual, slow_residual

__all__ = [
    'BoundEnvelope', 'EnvelopeReport', 'compute_envelopes', 'check_envelopes',
    'halton_ball', 'forcing_gap', 'kernel_gap_integral',
    'DependenceReport', 'DependenceVariant', 'VariantComparison',
    'dependence_bound', 'compare_variants',
    'SlowResidual', 'slow_residual',
]
