"""
src.classify 包初始化
"""
from .verdicts import (
    Verdict,
    ClassifierVerdict,
    CANONICAL_FORM_FOUND,
    NOT_PRESERVER,
    Q_NOT_IDENTITY,
    IMAGE_NOT_PARTIAL_ISOMETRY,
    SCHATTEN_NOT_ONE,
    P_EQUALS_TWO,
    K_TOO_SMALL,
    TRACE_NOT_ONE,
    REAL_FIELD_SUFFICIENT_ONLY,
)

from .preservers import (
    check_disjointness_preserver,
    check_zero_triple_preserver,
    check_triple_homomorphism,
    check_partial_isometry_preserver,
)

from .norms import (
    schatten_sum,
    check_schatten_isometry,
    check_kyfan_isometry,
    check_kyfan_full,
    kyfan_full_rank_counterexample,
)

__all__ = [
    # verdicts
    'Verdict',
    'ClassifierVerdict',
    'CANONICAL_FORM_FOUND',
    'NOT_PRESERVER',
    'Q_NOT_IDENTITY',
    'IMAGE_NOT_PARTIAL_ISOMETRY',
    'SCHATTEN_NOT_ONE',
    'P_EQUALS_TWO',
    'K_TOO_SMALL',
    'TRACE_NOT_ONE',
    'REAL_FIELD_SUFFICIENT_ONLY',
    # preservers
    'check_disjointness_preserver',
    'check_zero_triple_preserver',
    'check_triple_homomorphism',
    'check_partial_isometry_preserver',
    # norms
    'schatten_sum',
    'check_schatten_isometry',
    'check_kyfan_isometry',
    'check_kyfan_full',
    'kyfan_full_rank_counterexample',
]
