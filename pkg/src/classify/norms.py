"""
Schatten p-范数与 Ky Fan k-范数等距判定

两者都只需在秩 ≤ 2 的输入上比较范数；标准形存在时
S_p(Φ(A)) = S_p(Q1 ⊕ Q2)·S_p(A)，F_k(Φ(A)) = tr(Q1 ⊕ Q2)·F_k'(A)（k ≥ 2(q1+q2)）。
"""
import logging
from typing import Optional, Tuple

import numpy as np

from src.canonical import DecomposeFailure, make_form, build
from src.linmap import LinMap
from src.matcore import (
    DEFAULT_TOLERANCES,
    DegenerateDomainError,
    Field,
    Mat,
    NumericalBreakdownError,
    ParameterError,
    Tolerances,
    kyfan_norm,
    schatten_norm,
)

from .preservers import _trials, decompose_for_classifier, q_entries, relative_gap
from .verdicts import (
    K_TOO_SMALL,
    NOT_PRESERVER,
    P_EQUALS_TWO,
    REAL_FIELD_SUFFICIENT_ONLY,
    SCHATTEN_NOT_ONE,
    TRACE_NOT_ONE,
    ClassifierVerdict,
    inapplicable,
    no,
    yes,
)

logger = logging.getLogger("preserver.classify.norms")


def _first_mismatch(phi: LinMap, trials: int, seed: int, tol: Tolerances, norm_pair) -> Tuple[int, Optional[Mat]]:
    """
    在秩 ≤ 2 抽样上比较 norm_pair(A) 给出的 (像的范数, 原范数)

    Returns:
        (不相等的样本数, 第一个不相等的 A)
    """
    from src.genfuzz.generators import random_rank_le2, trial_rng

    failures, first = 0, None
    for index in range(trials):
        A = random_rank_le2(phi.m, phi.n, phi.field, trial_rng(seed, index))
        image_norm, norm = norm_pair(A)
        if abs(image_norm - norm) > tol.cross_check_rel * norm:
            failures += 1
            if first is None:
                first = A
    return failures, first


def schatten_sum(form, p: float) -> float:
    """S_p(Q1 ⊕ Q2)。"""
    q = q_entries(form)
    if q.size == 0:
        return 0.0
    return float(np.sum(q ** p) ** (1.0 / p))


def check_schatten_isometry(
    phi: LinMap,
    p: float,
    tol: Tolerances = DEFAULT_TOLERANCES,
    seed: int = 0,
    trials: Optional[int] = None,
) -> ClassifierVerdict:
    """
    Schatten p-范数等距判定，p ∈ (0, 2) ∪ (2, ∞)

    Raises:
        ParameterError: p ≤ 0
        NumericalBreakdownError: 结论与秩 ≤ 2 抽样比较不一致
    """
    if p <= 0:
        raise ParameterError(f"Schatten exponent must be positive: {p}")
    if p == 2:
        return inapplicable(P_EQUALS_TWO)
    result = decompose_for_classifier(phi, tol, seed)
    if isinstance(result, DecomposeFailure):
        return no(NOT_PRESERVER, witness=result.witness)
    value = schatten_sum(result, p)
    isometry = relative_gap(value, 1.0) <= tol.cross_check_rel
    failures, first = _first_mismatch(
        phi, _trials(tol, trials), seed, tol,
        lambda A: (schatten_norm(phi.apply(A), p), schatten_norm(A, p)),
    )
    logger.debug(f"S_{p}(Q1 ⊕ Q2) = {value:.12g}, 抽样不等 {failures} 个")
    if isometry and failures:
        raise NumericalBreakdownError(f"S_p(Q) = 1 but {failures} sampled norms differ")
    if not isometry and first is None and _trials(tol, trials):
        raise NumericalBreakdownError(f"S_p(Q) = {value} but every sampled norm agrees")
    if isometry:
        return yes(result)
    return no(SCHATTEN_NOT_ONE, witness=None if first is None else (first,), certificate=result)


def _check_kyfan_parameters(phi: LinMap, k: int, kprime: int) -> None:
    if phi.m < 2 or phi.n < 2:
        raise DegenerateDomainError(f"M_{phi.m},{phi.n} is a vector space; need m, n >= 2")
    if int(kprime) != kprime or not 2 <= kprime <= min(phi.m, phi.n):
        raise ParameterError(f"kprime must lie in [2, {min(phi.m, phi.n)}]: {kprime}")
    if int(k) != k or not 1 <= k <= min(phi.r, phi.s):
        raise ParameterError(f"k must lie in [1, {min(phi.r, phi.s)}]: {k}")


def check_kyfan_isometry(
    phi: LinMap,
    k: int,
    kprime: int,
    tol: Tolerances = DEFAULT_TOLERANCES,
    seed: int = 0,
    trials: Optional[int] = None,
) -> ClassifierVerdict:
    """
    Ky Fan 等距判定：F_k(Φ(A)) = F_k'(A) 对所有秩 ≤ 2 的 A 成立

    复数域：Yes 当且仅当标准形存在、k ≥ 2(q1+q2) 且 tr(Q1 ⊕ Q2) = 1。
    实数域只有充分性：条件成立时 Yes 并附带 REAL_FIELD_SUFFICIENT_ONLY，否则 Inapplicable。
    """
    _check_kyfan_parameters(phi, k, kprime)
    real = phi.field is Field.REAL
    result = decompose_for_classifier(phi, tol, seed)
    if isinstance(result, DecomposeFailure):
        if real:
            return inapplicable(REAL_FIELD_SUFFICIENT_ONLY)
        return no(NOT_PRESERVER, witness=result.witness)

    q = result.k
    trace = float(np.sum(q_entries(result)))
    if k < 2 * q:
        detail = K_TOO_SMALL
    elif relative_gap(trace, 1.0) > tol.cross_check_rel:
        detail = TRACE_NOT_ONE
    else:
        detail = ""
    failures, first = _first_mismatch(
        phi, _trials(tol, trials), seed, tol,
        lambda A: (kyfan_norm(phi.apply(A), k), kyfan_norm(A, kprime)),
    )
    logger.debug(f"Ky Fan: k={k}, k'={kprime}, q={q}, trace={trace:.12g}, 抽样不等 {failures} 个")
    if not detail and failures:
        raise NumericalBreakdownError(f"Ky Fan conditions hold but {failures} sampled norms differ")
    if not detail:
        return yes(result, REAL_FIELD_SUFFICIENT_ONLY) if real else yes(result)
    if real:
        return inapplicable(REAL_FIELD_SUFFICIENT_ONLY, certificate=result)
    if first is None and _trials(tol, trials):
        raise NumericalBreakdownError(f"{detail} but every sampled norm agrees")
    return no(detail, witness=None if first is None else (first,), certificate=result)


def check_kyfan_full(phi: LinMap, A: Mat, k: int, kprime: int) -> float:
    """|F_k(Φ(A)) - F_k'(A)|，用于检验满秩输入上的比较。"""
    return abs(kyfan_norm(phi.apply(A), k) - kyfan_norm(np.asarray(A), kprime))


def kyfan_full_rank_counterexample() -> Tuple[LinMap, Mat]:
    """
    A ↦ (A ⊕ 2A)/3，M_4 → M_8

    它满足秩 ≤ 2 的 Ky Fan 条件（4 ≤ k ≤ 8, 2 ≤ k' ≤ 4），
    但 A = diag(3, 2, 1, 0) 时 F_4(Φ(A)) = 5 ≠ 6 = F_3(A)。
    """
    # A⊗diag(2/3, 1/3) 经行列置换即为 (2A ⊕ A)/3
    order = [2 * i for i in range(4)] + [2 * i + 1 for i in range(4)]
    P = np.eye(8)[order]
    form = make_form(P, P.T, [2 / 3, 1 / 3], [], 4, 4, Field.COMPLEX)
    return build(form), np.diag([3.0, 2.0, 1.0, 0.0]).astype(np.complex128)
