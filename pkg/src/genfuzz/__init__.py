"""
src.genfuzz 包初始化
"""
from .generators import (
    trial_rng,
    as_generator,
    log_uniform,
    random_unitary,
    random_matrix,
    random_canonical,
    disjoint_pair_from_frame,
    random_disjoint_pair,
    random_rank_one_pair,
    random_partial_isometry,
    random_rank_le2,
    random_zero_triple,
    perturb,
    random_dimensions,
    random_field,
)

from .pool import TrialWorkerPool

from .fuzz import (
    DEFAULT_CLASSIFIERS,
    FuzzConfig,
    FuzzReport,
    PropertyTally,
    fuzz_equivalences,
)

__all__ = [
    # generators
    'trial_rng',
    'as_generator',
    'log_uniform',
    'random_unitary',
    'random_matrix',
    'random_canonical',
    'disjoint_pair_from_frame',
    'random_disjoint_pair',
    'random_rank_one_pair',
    'random_partial_isometry',
    'random_rank_le2',
    'random_zero_triple',
    'perturb',
    'random_dimensions',
    'random_field',
    # pool
    'TrialWorkerPool',
    # fuzz
    'DEFAULT_CLASSIFIERS',
    'FuzzConfig',
    'FuzzReport',
    'PropertyTally',
    'fuzz_equivalences',
]
