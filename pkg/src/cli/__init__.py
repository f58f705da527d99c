"""
src.cli 包初始化
"""
from .codec import (
    CodecError,
    encode_matrix,
    decode_matrix,
    map_to_dict,
    map_from_dict,
    form_to_dict,
    form_from_dict,
    failure_to_dict,
    verdict_to_dict,
    matrices_to_dict,
    matrices_from_dict,
    dumps,
    loads,
    read_map,
    read_form,
)

from .commands import (
    EXIT_OK,
    EXIT_ERROR,
    EXIT_NO,
    EXIT_BREAKDOWN,
    EXIT_INAPPLICABLE,
    PreserverGroup,
    cli,
)

__all__ = [
    # codec
    'CodecError',
    'encode_matrix',
    'decode_matrix',
    'map_to_dict',
    'map_from_dict',
    'form_to_dict',
    'form_from_dict',
    'failure_to_dict',
    'verdict_to_dict',
    'matrices_to_dict',
    'matrices_from_dict',
    'dumps',
    'loads',
    'read_map',
    'read_form',
    # commands
    'EXIT_OK',
    'EXIT_ERROR',
    'EXIT_NO',
    'EXIT_BREAKDOWN',
    'EXIT_INAPPLICABLE',
    'PreserverGroup',
    'cli',
]
