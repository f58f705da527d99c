"""
src.utils 包初始化
"""
from .formatting import (
    format_residual,
    format_multiset,
    format_signature,
    format_duration,
    make_excerpt,
)

from .validators import (
    SEED_LIMIT,
    is_valid_dimension,
)

from .log_filters import ArrayAbbreviationFilter, abbreviate

__all__ = [
    # formatting
    'format_residual',
    'format_multiset',
    'format_signature',
    'format_duration',
    'make_excerpt',
    # validators
    'SEED_LIMIT',
    'is_valid_dimension',
    # log filters
    'ArrayAbbreviationFilter',
    'abbreviate',
]
