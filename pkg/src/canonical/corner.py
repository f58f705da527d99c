"""
2×2 角块分析

pair_block_svd 把一对不交矩阵同时化为块对角形；normalize_2x2 在这个坐标系下
读出 Φ(E12 ± E21) 的块结构，对齐两组奇异向量并按符号 ±1 拆出 Q1 / Q2。
"""
import logging
from typing import List, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from src.matcore import (
    DEFAULT_TOLERANCES,
    DisjointnessError,
    Mat,
    Tolerances,
    adjoint,
    check_compatible,
    compact_svd,
    disjoint_residual,
    disjoint_scale,
    is_disjoint,
    max_norm,
    orthonormal_completion,
    orthonormality_defect,
)

from .form import DecomposeFailure, FailureKind

logger = logging.getLogger("preserver.canonical.corner")


class PairFrames(NamedTuple):
    left: Mat
    right: Mat
    d1: np.ndarray
    d2: np.ndarray


class CornerNormalization(NamedTuple):
    # 第一、二组奇异向量各自右乘的 k×k 酉矩阵
    first: Mat
    second: Mat
    Q1: Tuple[float, ...]
    Q2: Tuple[float, ...]


def pair_block_svd(X: Mat, Y: Mat, tol: Tolerances = DEFAULT_TOLERANCES) -> PairFrames:
    """
    不交矩阵对的联合奇异值分解

    Args:
        X, Y: 不交的 r×s 矩阵
        tol: 容差策略

    Returns:
        PairFrames(left, right, d1, d2)：left*·X·right 在前 k1 个对角位置为 d1，
        left*·Y·right 在随后 k2 个对角位置为 d2，其余为 0

    Raises:
        DisjointnessError: X、Y 不交残差超出容差或奇异向量组不正交
    """
    check_compatible(X, Y)
    residual = disjoint_residual(X, Y)
    if residual > tol.threshold(disjoint_scale(X, Y)):
        raise DisjointnessError("pair_block_svd requires a disjoint pair", residual)
    first = compact_svd(X, tol)
    second = compact_svd(Y, tol)
    r, s = X.shape
    left = np.hstack([first.left, second.left])
    right = np.hstack([first.right, second.right])
    if left.shape[1] > r or right.shape[1] > s:
        raise DisjointnessError("Singular frames exceed the ambient dimension", residual)
    defect = max(orthonormality_defect(left), orthonormality_defect(right))
    if defect > tol.unitary:
        raise DisjointnessError("Singular frames of a disjoint pair must be orthogonal", defect)
    return PairFrames(
        left=orthonormal_completion(left, r, X.dtype),
        right=orthonormal_completion(right, s, X.dtype),
        d1=first.singulars,
        d2=second.singulars,
    )


def cluster_blocks(values: np.ndarray, gap: float) -> List[range]:
    """降序数组中相对间隙不超过 gap 的相邻项归为同一重数块。"""
    blocks = []
    start = 0
    for index in range(1, len(values)):
        if values[index - 1] - values[index] > gap * values[index - 1]:
            blocks.append(range(start, index))
            start = index
    if len(values):
        blocks.append(range(start, len(values)))
    return blocks


def _leading_diagonal(X: Mat, offset: int, tol: Tolerances) -> np.ndarray:
    diagonal = np.abs(np.diagonal(X))[offset:]
    if diagonal.size == 0 or diagonal[0] <= 0:
        return np.zeros(0)
    count = 0
    while count < diagonal.size and diagonal[count] > tol.rank_cut * diagonal[0]:
        count += 1
    return diagonal[:count]


def _off_block_norm(G: Mat, blocks: Sequence[range]) -> float:
    mask = np.ones(G.shape, dtype=bool)
    for block in blocks:
        mask[block.start : block.stop, block.start : block.stop] = False
    if not mask.any():
        return 0.0
    return float(np.max(np.abs(G[mask])))


def corner_test_pairs(dtype) -> List[Tuple[Mat, Mat]]:
    """2×2 角块上的确定性不交测试对，顺序即搜索顺序。"""
    def mat(rows):
        return np.array(rows, dtype=dtype)

    pairs = [
        (mat([[1, 0], [0, 0]]), mat([[0, 0], [0, 1]])),
        (mat([[0, 1], [0, 0]]), mat([[0, 0], [1, 0]])),
        # γ = 2 的一对：Z1 = γE11 + E12 + E21 + γ⁻¹E22
        (mat([[2, 1], [1, 0.5]]), mat([[0.5, -1], [-1, 2]])),
        (mat([[1, 1], [1, 1]]), mat([[1, -1], [-1, 1]])),
        (mat([[1, 1], [0, 0]]), mat([[0, 0], [1, -1]])),
        (mat([[1, 0], [1, 0]]), mat([[0, 1], [0, -1]])),
    ]
    if np.issubdtype(dtype, np.complexfloating):
        # a c* 与 b d*，a=(1,1), b=(1,-1), c=(1,i), d=(1,-i)
        pairs.append((mat([[1, -1j], [1, -1j]]), mat([[1, 1j], [-1, -1j]])))
    return pairs


def _corner_image(images: Sequence[Mat], Z: Mat) -> Mat:
    X11, X12, X21, X22 = images
    return Z[0, 0] * X11 + Z[0, 1] * X12 + Z[1, 0] * X21 + Z[1, 1] * X22


def _corner_failure(
    images: Sequence[Mat],
    stage: str,
    residual: float,
    tol: Tolerances,
    rng: Optional[np.random.Generator],
) -> DecomposeFailure:
    candidates = corner_test_pairs(images[0].dtype)
    if rng is not None:
        # 延迟导入：genfuzz 依赖 canonical
        from src.genfuzz.generators import random_rank_one_pair
        from src.matcore import field_of

        field = field_of(images[0])
        candidates += [random_rank_one_pair(2, 2, field, rng) for _ in range(16)]
    for Z, W in candidates:
        if not is_disjoint(Z, W, tol):
            continue
        left, right = _corner_image(images, Z), _corner_image(images, W)
        image_residual = disjoint_residual(left, right)
        if image_residual > tol.threshold(disjoint_scale(left, right)):
            logger.debug(f"[{stage}] 角块见证: 像残差 {image_residual:.3e}")
            return DecomposeFailure(
                FailureKind.NOT_PRESERVER,
                witness=(Z, W),
                residual=image_residual,
                stage=stage,
            )
    return DecomposeFailure(FailureKind.NUMERICAL_BREAKDOWN, residual=residual, stage=stage)


def normalize_2x2(
    images: Sequence[Mat],
    tol: Tolerances = DEFAULT_TOLERANCES,
    rng: Optional[np.random.Generator] = None,
):
    """
    在 pair_block_svd 坐标下规范化 span{E11, E12, E21, E22} 上的限制映射

    Args:
        images: 共轭后的 Φ(E11), Φ(E12), Φ(E21), Φ(E22)
        tol: 容差策略
        rng: 见证搜索用的随机源，None 时只试确定性测试对

    Returns:
        CornerNormalization；任何一步结构检查失败时返回 DecomposeFailure，
        见证为 2×2 矩阵对
    """
    X11, X12, X21, X22 = images
    d1 = _leading_diagonal(X11, 0, tol)
    k = d1.size
    if k == 0:
        return _corner_failure(images, "empty_corner", 0.0, tol, rng)
    d2 = _leading_diagonal(X22, k, tol)
    if d2.size != k:
        return _corner_failure(images, "rank_mismatch", float(abs(d2.size - k)), tol, rng)
    spread = float(np.max(np.abs(d1 - d2)))
    if spread > tol.cluster_gap * d1[0]:
        return _corner_failure(images, "singular_values_differ", spread, tol, rng)

    alpha = (d1 + d2) / 2
    blocks = cluster_blocks(alpha, tol.cluster_gap)
    top, bottom = slice(0, k), slice(k, 2 * k)

    # Φ(E12 + E21) 的 (1,2) 块 = α·G，G 按重数块对角且为酉矩阵
    B12 = X12[top, bottom] + X21[top, bottom]
    B21 = X12[bottom, top] + X21[bottom, top]
    G = B12 / alpha[:, None]
    defect = max(_off_block_norm(G, blocks), orthonormality_defect(G))
    if defect > tol.unitary:
        return _corner_failure(images, "sum_block_not_unitary", defect, tol, rng)
    mismatch = max_norm(B21 - adjoint(B12))
    if mismatch > tol.unitary * max(1.0, alpha[0]):
        return _corner_failure(images, "sum_block_not_adjoint", mismatch, tol, rng)

    # Φ(E12 - E21) 经对齐后给出 H，H 必须是 Hermite 酉矩阵，特征值 ±1
    Gs = adjoint(G)
    D12 = X12[top, bottom] - X21[top, bottom]
    H = (D12 @ Gs) / alpha[:, None]
    defect = max(
        _off_block_norm(H, blocks),
        max_norm(H - adjoint(H)),
        orthonormality_defect(H),
    )
    if defect > tol.unitary:
        return _corner_failure(images, "difference_block_not_sign", defect, tol, rng)

    columns = {1.0: [], -1.0: []}
    for block in blocks:
        Hc = H[block.start : block.stop, block.start : block.stop]
        Hc = (Hc + adjoint(Hc)) / 2
        values, vectors = np.linalg.eigh(Hc)
        snapped = np.where(values > 0, 1.0, -1.0)
        deviation = float(np.max(np.abs(values - snapped)))
        if deviation > tol.sign:
            return _corner_failure(images, "sign_not_real_diagonal", deviation, tol, rng)
        weights = np.diag(alpha[block.start : block.stop])
        for sign in (1.0, -1.0):
            space = vectors[:, snapped == sign]
            if space.shape[1] == 0:
                continue
            # 同号特征子空间内再对角化 α，使列重新成为奇异向量
            compressed = adjoint(space) @ weights @ space
            scales, inner = np.linalg.eigh((compressed + adjoint(compressed)) / 2)
            refined = np.zeros((k, space.shape[1]), dtype=H.dtype)
            refined[block.start : block.stop] = space @ inner
            columns[sign] += [(float(scales[index]), refined[:, index]) for index in range(scales.size)]

    # 各组按 q 降序，并列值的先后不影响映射
    positive = sorted(columns[1.0], key=lambda item: -item[0])
    negative = sorted(columns[-1.0], key=lambda item: -item[0])
    q1 = len(positive)
    rotation = np.column_stack([vector for _, vector in positive + negative]).astype(H.dtype, copy=False)
    logger.debug(f"角块规范化: k={k}, q1={q1}, q2={k - q1}, 重数块 {len(blocks)}")
    return CornerNormalization(
        first=rotation,
        second=Gs @ rotation,
        Q1=tuple(value for value, _ in positive),
        Q2=tuple(value for value, _ in negative),
    )
