"""
src.canonical 包初始化
"""
from .form import (
    CanonicalForm,
    DecomposeFailure,
    FailureKind,
    make_form,
    zero_form,
    middle_block,
    build,
    feasible_multiplicities,
)

from .corner import (
    PairFrames,
    CornerNormalization,
    pair_block_svd,
    normalize_2x2,
    cluster_blocks,
    corner_test_pairs,
)

from .witness import (
    witness_holds,
    structured_pairs,
    find_witness,
    verify_preserver_sampled,
)

from .decompose import decompose

__all__ = [
    # form
    'CanonicalForm',
    'DecomposeFailure',
    'FailureKind',
    'make_form',
    'zero_form',
    'middle_block',
    'build',
    'feasible_multiplicities',
    # corner
    'PairFrames',
    'CornerNormalization',
    'pair_block_svd',
    'normalize_2x2',
    'cluster_blocks',
    'corner_test_pairs',
    # witness
    'witness_holds',
    'structured_pairs',
    'find_witness',
    'verify_preserver_sampled',
    # decompose
    'decompose',
]
