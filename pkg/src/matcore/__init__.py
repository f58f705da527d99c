"""
src.matcore 包初始化
"""
from .errors import (
    PreserverError,
    ShapeMismatchError,
    FieldMismatchError,
    ParameterError,
    DisjointnessError,
    DegenerateDomainError,
    NumericalBreakdownError,
)

from .fields import (
    Mat,
    Field,
    field_of,
    as_mat,
    as_field,
    check_compatible,
    adjoint,
    transpose,
    max_norm,
    unit_matrix,
    zeros,
    is_unitary,
    embed,
)

from .tolerances import Tolerances, DEFAULT_TOLERANCES

from .predicates import (
    disjoint_residual,
    disjoint_scale,
    is_disjoint,
    tcp_residual,
    is_partial_isometry,
    jordan_triple,
    cube,
    triple_scale,
    polarization_residual,
    cube_polarization_residual,
)

from .spectral import (
    SvdResult,
    compact_svd,
    singular_values,
    schatten_norm,
    kyfan_norm,
    orthonormal_completion,
    orthonormality_defect,
)

__all__ = [
    # errors
    'PreserverError',
    'ShapeMismatchError',
    'FieldMismatchError',
    'ParameterError',
    'DisjointnessError',
    'DegenerateDomainError',
    'NumericalBreakdownError',
    # fields
    'Mat',
    'Field',
    'field_of',
    'as_mat',
    'as_field',
    'check_compatible',
    'adjoint',
    'transpose',
    'max_norm',
    'unit_matrix',
    'zeros',
    'is_unitary',
    'embed',
    # tolerances
    'Tolerances',
    'DEFAULT_TOLERANCES',
    # predicates
    'disjoint_residual',
    'disjoint_scale',
    'is_disjoint',
    'tcp_residual',
    'is_partial_isometry',
    'jordan_triple',
    'cube',
    'triple_scale',
    'polarization_residual',
    'cube_polarization_residual',
    # spectral
    'SvdResult',
    'compact_svd',
    'singular_values',
    'schatten_norm',
    'kyfan_norm',
    'orthonormal_completion',
    'orthonormality_defect',
]
