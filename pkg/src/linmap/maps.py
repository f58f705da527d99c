"""
线性映射 Φ: M_{m,n} → M_{r,s}

以基像 Φ(E_ij) 为唯一真源保存，(i, j) 行优先、i 在外层；
apply 是基像的数域线性延拓。
"""
import logging
from typing import Iterable, List

import numpy as np

from src.matcore import (
    DEFAULT_TOLERANCES,
    Field,
    FieldMismatchError,
    Mat,
    ParameterError,
    ShapeMismatchError,
    Tolerances,
    as_field,
    as_mat,
    is_unitary,
    max_norm,
)

logger = logging.getLogger("preserver.linmap")


class LinMap:
    """不可变的线性映射值对象"""

    __slots__ = ("m", "n", "r", "s", "field", "_stack")

    def __init__(self, m: int, n: int, r: int, s: int, field: Field, stack: np.ndarray):
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "field", field)
        stack = np.array(stack, dtype=field.dtype)
        stack.setflags(write=False)
        object.__setattr__(self, "_stack", stack)

    def __setattr__(self, name, value):
        raise AttributeError("LinMap is immutable")

    @property
    def signature(self):
        return (self.m, self.n, self.r, self.s, self.field)

    @property
    def images(self) -> List[Mat]:
        return [self._stack[i, j] for i in range(self.m) for j in range(self.n)]

    def image(self, i: int, j: int) -> Mat:
        """Φ(E_ij)，0 起始下标。"""
        return self._stack[i, j]

    def coefficient_matrix(self) -> Mat:
        """(r·s)×(m·n) 向量化视图：第 (i·n + j) 列是 vec(Φ(E_ij))。"""
        return self._stack.reshape(self.m * self.n, self.r * self.s).T.copy()

    def is_zero(self, tol: Tolerances = DEFAULT_TOLERANCES) -> bool:
        return max_norm(self._stack) <= tol.residual

    def scale(self) -> float:
        return max_norm(self._stack)

    def apply(self, A: Mat) -> Mat:
        return apply(self, A)

    def __repr__(self):
        return f"LinMap(M_{self.m},{self.n} -> M_{self.r},{self.s}, {self.field.value})"


def from_images(m: int, n: int, r: int, s: int, field, images: Iterable[Mat]) -> LinMap:
    """
    由基像列表构造映射

    Args:
        m, n, r, s: 定义域与值域尺寸
        field: 数域
        images: m·n 个 r×s 矩阵，按 (i, j) 行优先排列

    Raises:
        ShapeMismatchError: 数量或形状不符
        FieldMismatchError: 实映射收到复基像
    """
    field = Field.parse(field)
    for value, name in ((m, "m"), (n, "n"), (r, "r"), (s, "s")):
        if int(value) != value or value < 1:
            raise ParameterError(f"{name} must be a positive integer: {value}")
    images = list(images)
    if len(images) != m * n:
        raise ShapeMismatchError(f"Expected {m * n} basis images, got {len(images)}")
    stack = np.zeros((m, n, r, s), dtype=field.dtype)
    for index, image in enumerate(images):
        image = as_mat(image, field)
        if image.shape != (r, s):
            raise ShapeMismatchError(
                f"Basis image {index} has shape {image.shape}, expected {(r, s)}"
            )
        stack[index // n, index % n] = image
    return LinMap(m, n, r, s, field, stack)


def apply(phi: LinMap, A: Mat) -> Mat:
    A = np.asarray(A)
    if A.shape != (phi.m, phi.n):
        raise ShapeMismatchError(f"Input shape {A.shape} does not match {(phi.m, phi.n)}")
    A = as_field(A, phi.field)
    return np.einsum("ij,ijrs->rs", A, phi._stack)


def identity_map(m: int, n: int, field=Field.REAL) -> LinMap:
    field = Field.parse(field)
    stack = np.zeros((m, n, m, n), dtype=field.dtype)
    for i in range(m):
        for j in range(n):
            stack[i, j, i, j] = 1
    return LinMap(m, n, m, n, field, stack)


def transpose_map(m: int, n: int, field=Field.REAL) -> LinMap:
    field = Field.parse(field)
    stack = np.zeros((m, n, n, m), dtype=field.dtype)
    for i in range(m):
        for j in range(n):
            stack[i, j, j, i] = 1
    return LinMap(m, n, n, m, field, stack)


def zero_map(m: int, n: int, r: int, s: int, field=Field.REAL) -> LinMap:
    field = Field.parse(field)
    return LinMap(m, n, r, s, field, np.zeros((m, n, r, s), dtype=field.dtype))


def map_from_function(m: int, n: int, r: int, s: int, field, func) -> LinMap:
    """对每个 E_ij 调用 func 得到基像；func 必须本身是线性的。"""
    field = Field.parse(field)
    images = []
    for i in range(m):
        for j in range(n):
            E = np.zeros((m, n), dtype=field.dtype)
            E[i, j] = 1
            images.append(func(E))
    return from_images(m, n, r, s, field, images)


def conjugate(
    phi: LinMap, Uleft: Mat, Vright: Mat, tol: Tolerances = DEFAULT_TOLERANCES
) -> LinMap:
    """X ↦ Uleft·Φ(X)·Vright，两侧因子必须是酉矩阵。"""
    Uleft = np.asarray(Uleft)
    Vright = np.asarray(Vright)
    if Uleft.shape != (phi.r, phi.r) or Vright.shape != (phi.s, phi.s):
        raise ShapeMismatchError(
            f"Conjugating factors must be {phi.r}x{phi.r} and {phi.s}x{phi.s}"
        )
    try:
        Uleft = as_field(Uleft, phi.field)
        Vright = as_field(Vright, phi.field)
    except FieldMismatchError:
        raise FieldMismatchError("Conjugating factors must live over the map's field")
    if not is_unitary(Uleft, tol.unitary) or not is_unitary(Vright, tol.unitary):
        raise ParameterError("Conjugating factors must be unitary")
    stack = np.einsum("ab,ijbc,cd->ijad", Uleft, phi._stack, Vright)
    return LinMap(phi.m, phi.n, phi.r, phi.s, phi.field, stack)


def map_difference(phi: LinMap, psi: LinMap) -> float:
    if phi.signature != psi.signature:
        raise ShapeMismatchError(f"Map signatures differ: {phi!r} vs {psi!r}")
    return max_norm(phi._stack - psi._stack)


def maps_equal(phi: LinMap, psi: LinMap, tol: Tolerances = DEFAULT_TOLERANCES) -> bool:
    difference = map_difference(phi, psi)
    threshold = tol.threshold(max(phi.scale(), psi.scale()))
    if difference > threshold:
        logger.debug(f"映射不相等: 差 {difference:.3e} > 阈值 {threshold:.3e}")
        return False
    return True
