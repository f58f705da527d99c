"""
稠密矩阵载体与数域标签

Mat 直接使用二维 numpy 数组：实数域为 float64，复数域为 complex128。
数域由 dtype 决定，同一次运算的所有操作数必须同域。
"""
from enum import Enum
from typing import Sequence

import numpy as np

from .errors import FieldMismatchError, ParameterError, ShapeMismatchError

Mat = np.ndarray


class Field(str, Enum):
    REAL = "real"
    COMPLEX = "complex"

    @property
    def dtype(self):
        return np.float64 if self is Field.REAL else np.complex128

    @classmethod
    def parse(cls, value) -> "Field":
        if isinstance(value, Field):
            return value
        try:
            return cls((value or "").strip().lower())
        except ValueError:
            raise ParameterError(f"Unsupported field: {value} (allowed: real, complex)")


def field_of(A: Mat) -> Field:
    return Field.COMPLEX if np.iscomplexobj(A) else Field.REAL


def as_mat(data, field=None) -> Mat:
    """
    把任意二维数据转成 Mat

    Args:
        data: 嵌套列表或数组
        field: 目标数域；None 表示按 dtype 推断

    Returns:
        float64 或 complex128 的二维数组

    Raises:
        ShapeMismatchError: 不是非空二维矩阵
        FieldMismatchError: 复数据要求放进实数域
    """
    arr = np.asarray(data)
    if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ShapeMismatchError(f"Expected a non-empty 2-D matrix, got shape {arr.shape}")
    if field is None:
        field = field_of(arr)
    field = Field.parse(field)
    if field is Field.REAL and np.iscomplexobj(arr):
        raise FieldMismatchError("Complex entries cannot live in a real matrix space")
    return np.array(arr, dtype=field.dtype)


def as_field(A: Mat, field: Field) -> Mat:
    """实矩阵可以提升到复数域，反之报错。"""
    field = Field.parse(field)
    if field is Field.REAL and np.iscomplexobj(A):
        raise FieldMismatchError("Complex matrix given where a real one is required")
    return np.asarray(A, dtype=field.dtype)


def check_compatible(*mats: Mat) -> None:
    """所有操作数同形状、同数域，否则抛出对应错误。"""
    first = mats[0]
    for other in mats[1:]:
        if other.shape != first.shape:
            raise ShapeMismatchError(f"Shape mismatch: {first.shape} vs {other.shape}")
        if field_of(other) is not field_of(first):
            raise FieldMismatchError("Operands live over different fields")


def adjoint(A: Mat) -> Mat:
    return A.conj().T


def transpose(A: Mat) -> Mat:
    return A.T.copy()


def max_norm(A: Mat) -> float:
    if A.size == 0:
        return 0.0
    return float(np.max(np.abs(A)))


def unit_matrix(m: int, n: int, i: int, j: int, field=Field.REAL) -> Mat:
    """标准基 E_ij（0 起始下标）。"""
    E = np.zeros((m, n), dtype=Field.parse(field).dtype)
    E[i, j] = 1
    return E


def zeros(m: int, n: int, field=Field.REAL) -> Mat:
    return np.zeros((m, n), dtype=Field.parse(field).dtype)


def is_unitary(U: Mat, tol: float) -> bool:
    if U.ndim != 2 or U.shape[0] != U.shape[1]:
        return False
    gram = adjoint(U) @ U
    return max_norm(gram - np.eye(U.shape[0])) <= tol


def embed(block: Mat, m: int, n: int, rows: Sequence[int], cols: Sequence[int]) -> Mat:
    """把小矩阵按行列下标嵌入 m×n 零矩阵。"""
    out = np.zeros((m, n), dtype=block.dtype)
    out[np.ix_(list(rows), list(cols))] = block
    return out
