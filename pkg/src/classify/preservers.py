"""
保持类判定：不交保持、零三元积保持、JB*-三元同态、部分等距保持

每个判定先做 decompose，再用抽样的函数恒等式交叉校验；两者矛盾时抛出
NumericalBreakdownError，而不是偏向其中任何一方。
"""
import logging
from typing import Optional

import numpy as np

from src.canonical import CanonicalForm, DecomposeFailure, FailureKind, decompose, verify_preserver_sampled
from src.linmap import LinMap
from src.matcore import (
    DEFAULT_TOLERANCES,
    DegenerateDomainError,
    Field,
    NumericalBreakdownError,
    Tolerances,
    adjoint,
    is_partial_isometry,
    jordan_triple,
    max_norm,
    triple_scale,
    unit_matrix,
)

from .verdicts import (
    IMAGE_NOT_PARTIAL_ISOMETRY,
    NOT_PRESERVER,
    Q_NOT_IDENTITY,
    ClassifierVerdict,
    no,
    yes,
)

logger = logging.getLogger("preserver.classify")


def decompose_for_classifier(phi: LinMap, tol: Tolerances, seed: int):
    """
    分类器共用的分解入口

    Returns:
        CanonicalForm，或 kind 为 NotPreserver 的 DecomposeFailure

    Raises:
        DegenerateDomainError: m < 2 或 n < 2
        NumericalBreakdownError: 分解既未成功也没有见证
    """
    result = decompose(phi, tol, seed)
    if isinstance(result, DecomposeFailure):
        if result.kind is FailureKind.DEGENERATE_DOMAIN:
            raise DegenerateDomainError(result.detail)
        if result.kind is FailureKind.NUMERICAL_BREAKDOWN:
            raise NumericalBreakdownError(
                f"decompose broke down at stage {result.stage}", result.residual
            )
    return result


def relative_gap(value: float, target: float) -> float:
    return abs(value - target) / max(1.0, abs(target))


def q_entries(form: CanonicalForm) -> np.ndarray:
    return form.diagonal()


def _trials(tol: Tolerances, trials: Optional[int]) -> int:
    return tol.sample_trials if trials is None else int(trials)


def check_disjointness_preserver(
    phi: LinMap,
    tol: Tolerances = DEFAULT_TOLERANCES,
    seed: int = 0,
    trials: Optional[int] = None,
) -> ClassifierVerdict:
    """Yes 当且仅当 decompose 成功；抽样见证搜索作为独立复核。"""
    result = decompose_for_classifier(phi, tol, seed)
    if isinstance(result, DecomposeFailure):
        return no(NOT_PRESERVER, witness=result.witness)
    preserved, witness = verify_preserver_sampled(phi, _trials(tol, trials), seed, tol)
    if not preserved:
        raise NumericalBreakdownError("decompose succeeded but a sampled pair refutes it")
    return yes(result)


def check_zero_triple_preserver(
    phi: LinMap,
    tol: Tolerances = DEFAULT_TOLERANCES,
    seed: int = 0,
    trials: Optional[int] = None,
) -> ClassifierVerdict:
    """
    零三元积保持判定

    No 的见证为 (A, A, B)：A ⊥ B 时 {A, A, B} = 0，而像的三元积非零。
    """
    from src.genfuzz.generators import random_zero_triple, trial_rng

    result = decompose_for_classifier(phi, tol, seed)
    if isinstance(result, DecomposeFailure):
        A, B = result.witness
        return no(NOT_PRESERVER, witness=(A, A, B))
    for index in range(_trials(tol, trials)):
        A, B, C = random_zero_triple(phi.m, phi.n, phi.field, trial_rng(seed, index))
        images = phi.apply(A), phi.apply(B), phi.apply(C)
        residual = max_norm(jordan_triple(*images))
        if residual > tol.cross_check_rel * max(1.0, triple_scale(*images)):
            raise NumericalBreakdownError(
                f"sampled zero triple {index} maps to a nonzero triple product", residual
            )
    return yes(result)


def _spectral(X) -> float:
    return float(np.linalg.norm(X, 2))


def _cube_defect(phi: LinMap, A, B=None) -> float:
    """
    三元同态恒等式的相对残差

    B 为 None 时比较 Φ(AA*A) 与 Φ(A)Φ(A)*Φ(A)，否则比较 Φ(AB*A) 与 Φ(A)Φ(B)*Φ(A)。
    """
    B = A if B is None else B
    lhs = phi.apply(A @ adjoint(B) @ A)
    image = phi.apply(A)
    rhs = image @ adjoint(phi.apply(B)) @ image
    return _spectral(lhs - rhs) / max(1.0, _spectral(lhs), _spectral(rhs))


def _identity_multiplicities(phi: LinMap, E11, tol: Tolerances) -> bool:
    """
    Q1、Q2 全为 1 ⇔ Φ(E11) 是部分等距

    Φ(E11) 的奇异值恰为 Q1 ∪ Q2；与部分等距保持判定使用同一阈值。
    """
    return is_partial_isometry(phi.apply(E11), tol)


def check_triple_homomorphism(
    phi: LinMap,
    tol: Tolerances = DEFAULT_TOLERANCES,
    seed: int = 0,
    trials: Optional[int] = None,
) -> ClassifierVerdict:
    """
    JB*-三元同态判定：标准形存在且 Q1、Q2 全为 1

    复数域抽样校验 Φ(A^(3)) = Φ(A)^(3)；实数域没有立方极化，改为抽样校验
    二元恒等式 Φ(AB*A) = Φ(A)Φ(B)*Φ(A)。
    """
    from src.genfuzz.generators import random_matrix, trial_rng

    result = decompose_for_classifier(phi, tol, seed)
    if isinstance(result, DecomposeFailure):
        return no(NOT_PRESERVER, witness=result.witness)
    E11 = unit_matrix(phi.m, phi.n, 0, 0, phi.field)
    if not _identity_multiplicities(phi, E11, tol):
        return no(Q_NOT_IDENTITY, witness=(E11,), certificate=result)
    # 恒等判定放过的 |q³ - q| 加上取整余量
    limit = tol.cross_check_rel + tol.residual
    for index in range(_trials(tol, trials)):
        rng = trial_rng(seed, index)
        A = random_matrix(phi.m, phi.n, phi.field, rng)
        if phi.field is Field.COMPLEX:
            defect = _cube_defect(phi, A)
        else:
            defect = _cube_defect(phi, A, random_matrix(phi.m, phi.n, phi.field, rng))
        if defect > limit:
            raise NumericalBreakdownError(
                f"Q is the identity but sample {index} breaks the triple identity", defect
            )
    return yes(result)


def check_partial_isometry_preserver(
    phi: LinMap,
    tol: Tolerances = DEFAULT_TOLERANCES,
    seed: int = 0,
) -> ClassifierVerdict:
    """decompose 成功且 Φ(E11) 是部分等距。"""
    result = decompose_for_classifier(phi, tol, seed)
    if isinstance(result, DecomposeFailure):
        return no(NOT_PRESERVER, witness=result.witness)
    E11 = unit_matrix(phi.m, phi.n, 0, 0, phi.field)
    if not is_partial_isometry(phi.apply(E11), tol):
        logger.debug("Φ(E11) 不是部分等距")
        return no(IMAGE_NOT_PARTIAL_ISOMETRY, witness=(E11,), certificate=result)
    return yes(result)
