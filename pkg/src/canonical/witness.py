"""
见证搜索：寻找一对不交矩阵，其像不再不交

确定性的结构化测试对在前，随机秩一部分等距对在后；返回的见证都已复核。
"""
import logging
from itertools import combinations, permutations
from typing import Iterator, Optional, Tuple

import numpy as np

from src.linmap import LinMap
from src.matcore import (
    DEFAULT_TOLERANCES,
    Field,
    Mat,
    Tolerances,
    disjoint_residual,
    disjoint_scale,
    embed,
    is_disjoint,
    unit_matrix,
)

from .corner import corner_test_pairs

logger = logging.getLogger("preserver.canonical.witness")

Witness = Tuple[Mat, Mat]


def image_residual(phi: LinMap, A: Mat, B: Mat) -> float:
    return disjoint_residual(phi.apply(A), phi.apply(B))


def witness_holds(phi: LinMap, A: Mat, B: Mat, tol: Tolerances = DEFAULT_TOLERANCES) -> bool:
    """A ⊥ B 成立而 Φ(A) ⊥ Φ(B) 不成立。"""
    if not is_disjoint(A, B, tol):
        return False
    left, right = phi.apply(A), phi.apply(B)
    return disjoint_residual(left, right) > tol.threshold(disjoint_scale(left, right))


def structured_pairs(m: int, n: int, field) -> Iterator[Witness]:
    """
    按搜索顺序生成确定性不交测试对

    先是 (E_ij, E_kl)（i≠k, j≠l），再把每个 2×2 角块 {i,k}×{j,l} 上的测试对嵌入 m×n。
    """
    for i, k in combinations(range(m), 2):
        for j, l in permutations(range(n), 2):
            yield unit_matrix(m, n, i, j, field), unit_matrix(m, n, k, l, field)
    dtype = Field.parse(field).dtype
    for rows in combinations(range(m), 2):
        for cols in combinations(range(n), 2):
            for Z, W in corner_test_pairs(dtype):
                yield embed(Z, m, n, rows, cols), embed(W, m, n, rows, cols)


def random_pairs(phi: LinMap, trials: int, seed) -> Iterator[Witness]:
    # 延迟导入：genfuzz 依赖 canonical
    from src.genfuzz.generators import random_rank_one_pair, trial_rng

    for index in range(trials):
        yield random_rank_one_pair(phi.m, phi.n, phi.field, trial_rng(seed, index))


def find_witness(
    phi: LinMap,
    tol: Tolerances = DEFAULT_TOLERANCES,
    seed: int = 0,
    trials: Optional[int] = None,
) -> Optional[Witness]:
    """
    寻找破坏不交性的见证

    Args:
        phi: 待检映射，要求 m, n ≥ 2
        tol: 容差策略
        seed: 随机阶段的主种子
        trials: 随机阶段的试验次数，默认 tol.sample_trials

    Returns:
        (A, B) 或 None（只说明没找到，不构成证明）
    """
    if phi.m < 2 or phi.n < 2:
        return None
    trials = tol.sample_trials if trials is None else trials
    for A, B in structured_pairs(phi.m, phi.n, phi.field):
        if witness_holds(phi, A, B, tol):
            logger.debug(f"结构化见证: 像残差 {image_residual(phi, A, B):.3e}")
            return A, B
    for A, B in random_pairs(phi, trials, seed):
        if witness_holds(phi, A, B, tol):
            logger.debug(f"随机见证: 像残差 {image_residual(phi, A, B):.3e}")
            return A, B
    return None


def verify_preserver_sampled(
    phi: LinMap,
    trials: Optional[int] = None,
    seed: int = 0,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> Tuple[bool, Optional[Witness]]:
    """
    抽样检验不交保持性，只能否定、不能证明

    Returns:
        (True, None) 表示所有测试对都通过；否则 (False, 第一个见证)
    """
    witness = find_witness(phi, tol, seed=seed, trials=trials)
    if witness is None:
        return True, None
    return False, witness


def embed_corner_witness(witness: Witness, m: int, n: int) -> Witness:
    """把 2×2 角块见证放回 M_{m,n} 左上角。"""
    Z, W = witness
    return embed(np.asarray(Z), m, n, (0, 1), (0, 1)), embed(np.asarray(W), m, n, (0, 1), (0, 1))
