"""
从不交保持映射恢复标准形

流程：
1. pair_block_svd 把 Φ(E11)、Φ(E22) 同时化成块对角形
2. normalize_2x2 在左上 2×2 角块上对齐奇异向量并拆出 Q1 / Q2
3. 用 Φ(E_i1)、Φ(E_1j) 把四组框架 L_i、M_j、R_j、N_i 延拓到全部下标
4. 补全成 r×r、s×s 酉矩阵，最后以 maps_equal(build(c), Φ) 复核

任何一步失败都转入见证搜索：找到可复核的见证才判 NotPreserver，
否则为 NumericalBreakdown。
"""
import logging
from typing import Iterable, Optional, Union

import numpy as np

from src.linmap import LinMap, map_difference
from src.matcore import (
    DEFAULT_TOLERANCES,
    DisjointnessError,
    Mat,
    PreserverError,
    Tolerances,
    adjoint,
    disjoint_residual,
    orthonormal_completion,
    orthonormality_defect,
    unit_matrix,
)

from .corner import normalize_2x2, pair_block_svd
from .form import CanonicalForm, DecomposeFailure, FailureKind, build, zero_form
from .witness import Witness, embed_corner_witness, find_witness, witness_holds

logger = logging.getLogger("preserver.canonical.decompose")

DecomposeResult = Union[CanonicalForm, DecomposeFailure]


def _refute(
    phi: LinMap,
    tol: Tolerances,
    seed: int,
    stage: str,
    residual: float = 0.0,
    preferred: Iterable[Witness] = (),
) -> DecomposeFailure:
    witness = None
    for A, B in preferred:
        if witness_holds(phi, A, B, tol):
            witness = (A, B)
            break
    if witness is None:
        witness = find_witness(phi, tol, seed=seed)
    if witness is None:
        logger.info(f"[{stage}] 分解失败且未找到见证: 残差 {residual:.3e}")
        return DecomposeFailure(
            FailureKind.NUMERICAL_BREAKDOWN,
            residual=residual,
            stage=stage,
            detail="no verified witness",
        )
    A, B = witness
    image_residual = disjoint_residual(phi.apply(A), phi.apply(B))
    logger.info(f"[{stage}] 不是不交保持映射: 像残差 {image_residual:.3e}")
    return DecomposeFailure(
        FailureKind.NOT_PRESERVER,
        witness=witness,
        residual=image_residual,
        stage=stage,
    )


def _extend_frames(phi: LinMap, left_first: Mat, right_first: Mat, Q1: np.ndarray, Q2: np.ndarray):
    """由第一行、第一列基像延拓出全部 L_i、M_j（左）与 R_j、N_i（右）。"""
    q1 = Q1.size
    L1, M1 = left_first[:, :q1], left_first[:, q1:]
    R1, N1 = right_first[:, :q1], right_first[:, q1:]
    L = [L1] + [phi.image(i, 0) @ R1 / Q1 for i in range(1, phi.m)]
    N = [N1] + [adjoint(phi.image(i, 0)) @ M1 / Q2 for i in range(1, phi.m)]
    R = [R1] + [adjoint(phi.image(0, j)) @ L1 / Q1 for j in range(1, phi.n)]
    M = [M1] + [phi.image(0, j) @ N1 / Q2 for j in range(1, phi.n)]
    return np.hstack(L + M), np.hstack(R + N)


def decompose(
    phi: LinMap,
    tol: Tolerances = DEFAULT_TOLERANCES,
    seed: Optional[int] = 0,
) -> DecomposeResult:
    """
    把映射分解为 Φ(A) = U·(A⊗Q1 ⊕ Aᵗ⊗Q2 ⊕ 0)·V

    Args:
        phi: 待分解映射，要求 m, n ≥ 2
        tol: 容差策略
        seed: 见证搜索的主种子

    Returns:
        成功时为 CanonicalForm，否则为 DecomposeFailure
    """
    m, n, r, s = phi.m, phi.n, phi.r, phi.s
    if m < 2 or n < 2:
        return DecomposeFailure(
            FailureKind.DEGENERATE_DOMAIN,
            stage="domain",
            detail=f"M_{m},{n} is a vector space; need m, n >= 2",
        )
    seed = 0 if seed is None else int(seed)
    if phi.is_zero(tol):
        logger.debug("零映射: q1 = q2 = 0")
        return zero_form(m, n, r, s, phi.field)

    field = phi.field
    basis_pair = [(unit_matrix(m, n, 0, 0, field), unit_matrix(m, n, 1, 1, field))]
    try:
        frames = pair_block_svd(phi.image(0, 0), phi.image(1, 1), tol)
    except DisjointnessError as exc:
        return _refute(phi, tol, seed, "pair_block_svd", exc.residual, basis_pair)
    k = frames.d1.size
    logger.debug(f"pair_block_svd: k1={k}, k2={frames.d2.size}")

    Uout, Vout = frames.left, frames.right
    images = [
        adjoint(Uout) @ phi.image(a, b) @ Vout for a, b in ((0, 0), (0, 1), (1, 0), (1, 1))
    ]
    normalized = normalize_2x2(images, tol, np.random.default_rng(seed))
    if isinstance(normalized, DecomposeFailure):
        preferred = []
        if normalized.witness is not None:
            preferred.append(embed_corner_witness(normalized.witness, m, n))
        return _refute(phi, tol, seed, normalized.stage, normalized.residual, preferred)

    Q1 = np.array(normalized.Q1)
    Q2 = np.array(normalized.Q2)
    q1, q2 = Q1.size, Q2.size
    if q1 * m + q2 * n > r or q1 * n + q2 * m > s:
        return _refute(phi, tol, seed, "dimension_guard", float(q1 + q2))

    left, right = _extend_frames(
        phi, Uout[:, :k] @ normalized.first, Vout[:, :k] @ normalized.first, Q1, Q2
    )
    defect = max(orthonormality_defect(left), orthonormality_defect(right))
    if defect > tol.unitary:
        return _refute(phi, tol, seed, "frame_extension", defect)

    U = orthonormal_completion(left, r, field.dtype)
    V = adjoint(orthonormal_completion(right, s, field.dtype))
    form = CanonicalForm(
        U=U, V=V, Q1=tuple(normalized.Q1), Q2=tuple(normalized.Q2),
        m=m, n=n, r=r, s=s, field=field,
    )
    try:
        form.validate(tol)
        difference = map_difference(build(form), phi)
    except PreserverError:
        return _refute(phi, tol, seed, "validate")
    threshold = tol.threshold(phi.scale())
    if difference > threshold:
        return _refute(phi, tol, seed, "post_verification", difference)
    logger.debug(f"分解完成: q1={q1}, q2={q2}, 复核差 {difference:.3e}")
    return form