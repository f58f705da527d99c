"""
标准形 Φ(A) = U·(A⊗Q1 ⊕ Aᵗ⊗Q2 ⊕ 0)·V

Kronecker 约定：X⊗Q 的 (i, j) 块为 x_ij·Q，因此 A⊗Q1 为 (m·q1)×(n·q1)，
Aᵗ⊗Q2 为 (n·q2)×(m·q2)，剩余部分用零块补齐到 r×s。
"""
from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Tuple

import numpy as np

from src.linmap import LinMap, from_images
from src.matcore import (
    DEFAULT_TOLERANCES,
    Field,
    Mat,
    ParameterError,
    ShapeMismatchError,
    Tolerances,
    as_field,
    is_unitary,
)


@dataclass(frozen=True, eq=False)
class CanonicalForm:
    U: Mat
    V: Mat
    Q1: Tuple[float, ...]
    Q2: Tuple[float, ...]
    m: int
    n: int
    r: int
    s: int
    field: Field

    @property
    def q1(self) -> int:
        return len(self.Q1)

    @property
    def q2(self) -> int:
        return len(self.Q2)

    @property
    def k(self) -> int:
        return self.q1 + self.q2

    @property
    def zero_block_shape(self) -> Tuple[int, int]:
        return (
            self.r - (self.q1 * self.m + self.q2 * self.n),
            self.s - (self.q1 * self.n + self.q2 * self.m),
        )

    def diagonal(self) -> np.ndarray:
        """Q1 ⊕ Q2 的对角元。"""
        return np.array(self.Q1 + self.Q2, dtype=np.float64)

    def validate(self, tol: Tolerances = DEFAULT_TOLERANCES) -> "CanonicalForm":
        """
        校验标准形不变量

        Raises:
            ParameterError: Q 非正或未降序、U/V 非酉、维数不足
            ShapeMismatchError: U/V 尺寸不符
        """
        for name, values in (("Q1", self.Q1), ("Q2", self.Q2)):
            if any(value <= 0 for value in values):
                raise ParameterError(f"{name} entries must be positive: {values}")
            if any(a < b for a, b in zip(values, values[1:])):
                raise ParameterError(f"{name} entries must be non-increasing: {values}")
        rows, cols = self.zero_block_shape
        if rows < 0 or cols < 0:
            raise ParameterError(
                f"Dimension constraint violated: r={self.r}, s={self.s} "
                f"cannot host q1={self.q1}, q2={self.q2} for M_{self.m},{self.n}"
            )
        if self.U.shape != (self.r, self.r) or self.V.shape != (self.s, self.s):
            raise ShapeMismatchError(
                f"U must be {self.r}x{self.r} and V must be {self.s}x{self.s}"
            )
        if not is_unitary(self.U, tol.unitary) or not is_unitary(self.V, tol.unitary):
            raise ParameterError("U and V must be unitary")
        return self


def make_form(U, V, Q1, Q2, m, n, field=None, tol: Tolerances = DEFAULT_TOLERANCES) -> CanonicalForm:
    """从原始数据构造并校验 CanonicalForm，r、s 取自 U、V。"""
    U = np.asarray(U)
    V = np.asarray(V)
    if field is None:
        field = Field.COMPLEX if np.iscomplexobj(U) or np.iscomplexobj(V) else Field.REAL
    field = Field.parse(field)
    form = CanonicalForm(
        U=as_field(U, field),
        V=as_field(V, field),
        Q1=tuple(float(q) for q in Q1),
        Q2=tuple(float(q) for q in Q2),
        m=int(m),
        n=int(n),
        r=int(U.shape[0]),
        s=int(V.shape[0]),
        field=field,
    )
    return form.validate(tol)


def zero_form(m, n, r, s, field=Field.REAL) -> CanonicalForm:
    """q1 = q2 = 0 的零映射标准形。"""
    field = Field.parse(field)
    return CanonicalForm(
        U=np.eye(r, dtype=field.dtype),
        V=np.eye(s, dtype=field.dtype),
        Q1=(),
        Q2=(),
        m=m,
        n=n,
        r=r,
        s=s,
        field=field,
    )


def middle_block(A: Mat, form: CanonicalForm) -> Mat:
    """A⊗Q1 ⊕ Aᵗ⊗Q2 ⊕ 0，尺寸 r×s。"""
    out = np.zeros((form.r, form.s), dtype=form.field.dtype)
    m, n, q1, q2 = form.m, form.n, form.q1, form.q2
    if q1:
        out[: m * q1, : n * q1] = np.kron(A, np.diag(form.Q1))
    if q2:
        out[m * q1 : m * q1 + n * q2, n * q1 : n * q1 + m * q2] = np.kron(A.T, np.diag(form.Q2))
    return out


def build(form: CanonicalForm) -> LinMap:
    form.validate()
    images = []
    for i in range(form.m):
        for j in range(form.n):
            E = np.zeros((form.m, form.n), dtype=form.field.dtype)
            E[i, j] = 1
            images.append(form.U @ middle_block(E, form) @ form.V)
    return from_images(form.m, form.n, form.r, form.s, form.field, images)


def feasible_multiplicities(m: int, n: int, r: int, s: int, max_total: Optional[int] = None) -> List[Tuple[int, int]]:
    """满足 r ≥ q1·m + q2·n 且 s ≥ q1·n + q2·m 的全部 (q1, q2)。"""
    pairs = []
    q1 = 0
    while q1 * m <= r and q1 * n <= s:
        q2 = 0
        while q1 * m + q2 * n <= r and q1 * n + q2 * m <= s:
            if max_total is None or q1 + q2 <= max_total:
                pairs.append((q1, q2))
            q2 += 1
        q1 += 1
    return pairs


class FailureKind(str, Enum):
    NOT_PRESERVER = "NotPreserver"
    DEGENERATE_DOMAIN = "DegenerateDomain"
    NUMERICAL_BREAKDOWN = "NumericalBreakdown"


@dataclass(frozen=True, eq=False)
class DecomposeFailure:
    kind: FailureKind
    witness: Optional[Tuple[Mat, Mat]] = None
    residual: float = 0.0
    stage: str = ""
    detail: str = ""
