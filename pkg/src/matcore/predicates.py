"""
矩阵谓词与三元积

不交：A*B = 0 且 AB* = 0；部分等距：AA*A = A；
Jordan 三元积 {A,B,C} = (AB*C + CB*A) / 2。
"""
import numpy as np

from .fields import Mat, adjoint, check_compatible, max_norm
from .tolerances import DEFAULT_TOLERANCES, Tolerances


def disjoint_residual(A: Mat, B: Mat) -> float:
    """
    不交残差 max(‖A*B‖_max, ‖AB*‖_max)

    Args:
        A: m×n 矩阵
        B: 与 A 同形状同数域

    Returns:
        非负实数，精确不交时为 0
    """
    check_compatible(A, B)
    return max(max_norm(adjoint(A) @ B), max_norm(A @ adjoint(B)))


def disjoint_scale(A: Mat, B: Mat) -> float:
    return max_norm(A) * max_norm(B)


def is_disjoint(A: Mat, B: Mat, tol: Tolerances = DEFAULT_TOLERANCES) -> bool:
    return disjoint_residual(A, B) <= tol.threshold(disjoint_scale(A, B))


def tcp_residual(A: Mat, B: Mat) -> float:
    """‖AA*B + BA*A‖_max，与不交等价（零三元积判据）。"""
    check_compatible(A, B)
    return max_norm(A @ adjoint(A) @ B + B @ adjoint(A) @ A)


def is_partial_isometry(A: Mat, tol: Tolerances = DEFAULT_TOLERANCES) -> bool:
    """谱范数下 ‖AA*A - A‖ 即 max |σ³ - σ|，按 ‖A‖ 缩放。"""
    return float(np.linalg.norm(cube(A) - A, 2)) <= tol.threshold(float(np.linalg.norm(A, 2)))


def jordan_triple(A: Mat, B: Mat, C: Mat) -> Mat:
    check_compatible(A, B, C)
    Bs = adjoint(B)
    return (A @ Bs @ C + C @ Bs @ A) / 2


def cube(A: Mat) -> Mat:
    return A @ adjoint(A) @ A


def triple_scale(A: Mat, B: Mat, C: Mat) -> float:
    return max_norm(A) * max_norm(B) * max_norm(C)


def polarization_residual(A: Mat, B: Mat, C: Mat) -> float:
    """实三线性极化恒等式的残差：2{A,B,C} = {A+C,B,A+C} - {A,B,A} - {C,B,C}。"""
    lhs = 2 * jordan_triple(A, B, C)
    rhs = jordan_triple(A + C, B, A + C) - jordan_triple(A, B, A) - jordan_triple(C, B, C)
    return max_norm(lhs - rhs)


def cube_polarization_residual(A: Mat, B: Mat) -> float:
    """复情形：4{A,B,A} = (B+A)^(3) + (B-A)^(3) - (B+iA)^(3) - (B-iA)^(3)。"""
    A = np.asarray(A, dtype=np.complex128)
    B = np.asarray(B, dtype=np.complex128)
    lhs = 4 * jordan_triple(A, B, A)
    rhs = cube(B + A) + cube(B - A) - cube(B + 1j * A) - cube(B - 1j * A)
    return max_norm(lhs - rhs)
