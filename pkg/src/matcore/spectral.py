"""
奇异值相关：紧凑 SVD、Schatten / Ky Fan 范数、正交补全
"""
from dataclasses import dataclass

import numpy as np
from scipy.linalg import null_space, polar

from .errors import ParameterError
from .fields import Mat, adjoint, max_norm
from .tolerances import DEFAULT_TOLERANCES, Tolerances


@dataclass(frozen=True)
class SvdResult:
    """A ≈ left · diag(singulars) · right*，奇异值严格为正且降序。"""

    left: Mat
    singulars: np.ndarray
    right: Mat

    @property
    def rank(self) -> int:
        return int(self.singulars.shape[0])

    def reconstruct(self) -> Mat:
        return (self.left * self.singulars) @ adjoint(self.right)


def compact_svd(A: Mat, tol: Tolerances = DEFAULT_TOLERANCES) -> SvdResult:
    """
    紧凑奇异值分解

    Args:
        A: 任意 r×s 矩阵
        tol: 使用 rank_cut 做相对截断

    Returns:
        SvdResult，零矩阵得到 k = 0 的空因子
    """
    U, s, Vh = np.linalg.svd(A, full_matrices=False)
    if s.size == 0 or s[0] <= 0:
        k = 0
    else:
        k = int(np.count_nonzero(s > tol.rank_cut * s[0]))
    return SvdResult(
        left=U[:, :k],
        singulars=np.array(s[:k], dtype=np.float64),
        right=adjoint(Vh[:k, :]),
    )


def singular_values(A: Mat) -> np.ndarray:
    """全部奇异值（降序），低于 max(shape)·eps·σ_max 的舍去。"""
    s = np.linalg.svd(A, compute_uv=False)
    if s.size == 0 or s[0] <= 0:
        return np.zeros(0)
    cutoff = max(A.shape) * np.finfo(np.float64).eps * s[0]
    return s[s > cutoff]


def schatten_norm(A: Mat, p: float) -> float:
    if p <= 0:
        raise ParameterError(f"Schatten exponent must be positive: {p}")
    s = singular_values(A)
    if s.size == 0:
        return 0.0
    return float(np.sum(s ** p) ** (1.0 / p))


def kyfan_norm(A: Mat, k: int) -> float:
    if int(k) != k or not 1 <= k <= min(A.shape):
        raise ParameterError(f"Ky Fan index must lie in [1, {min(A.shape)}]: {k}")
    # 不足 k 个非零奇异值时其余按 0 计
    return float(np.sum(singular_values(A)[: int(k)]))


def orthonormal_completion(frame: Mat, dim: int, dtype=np.float64) -> Mat:
    """
    把列正交的 frame 补全成 dim×dim 酉矩阵（实情形为正交矩阵）

    frame 只需在容差内列正交；结果经极分解吸附到精确酉矩阵。
    """
    if frame.shape[1] == 0:
        return np.eye(dim, dtype=dtype)
    if frame.shape[1] >= dim:
        full = frame[:, :dim]
    else:
        complement = null_space(adjoint(frame))
        full = np.hstack([frame, complement[:, : dim - frame.shape[1]]])
    unitary, _ = polar(full)
    return np.asarray(unitary, dtype=dtype)


def orthonormality_defect(frame: Mat) -> float:
    if frame.shape[1] == 0:
        return 0.0
    return max_norm(adjoint(frame) @ frame - np.eye(frame.shape[1]))
