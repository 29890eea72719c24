from .moving_set import (
    MovingSet,
    WholeSpace,
    HalfSpace,
    Box,
    Ball,
    Sphere,
    TranslatedConvex,
)
from .cones import ConeVector, tangent_projection, moreau_decomposition
from .diagnostics import (
    HypomonotoneReport,
    MotionReport,
    check_hypomonotone,
    motion_excess,
    check_motion,
    proximal_normals,
)

__all__ = [
    'MovingSet', 'WholeSpace', 'HalfSpace', 'Box', 'Ball', 'Sphere', 'TranslatedConvex',
    'ConeVector', 'tangent_projection', 'moreau_decomposition',
    'HypomonotoneReport', 'MotionReport', 'check_hypomonotone', 'motion_excess',
    'check_motion', 'proximal_normals',
]
