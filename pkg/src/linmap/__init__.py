"""
src.linmap 包初始化
"""
from .maps import (
    LinMap,
    from_images,
    apply,
    identity_map,
    transpose_map,
    zero_map,
    map_from_function,
    conjugate,
    map_difference,
    maps_equal,
)

__all__ = [
    'LinMap',
    'from_images',
    'apply',
    'identity_map',
    'transpose_map',
    'zero_map',
    'map_from_function',
    'conjugate',
    'map_difference',
    'maps_equal',
]
