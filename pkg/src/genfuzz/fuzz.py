"""
随机化不变量校验

每个试验由 (seed, 试验序号) 决定：抽取尺寸、数域和标准形，然后逐条检查
分解、见证和分类器之间应当成立的性质。报表按试验序号合并，与线程数和完成顺序无关。
"""
import logging
import math
import sys
from dataclasses import dataclass, field, replace
from typing import Callable, Dict, List, Mapping, Optional, Tuple

import numpy as np
from tqdm import tqdm

from config import FUZZ_WORKERS, PROGRESS_ENABLED
from src.canonical import (
    CanonicalForm,
    DecomposeFailure,
    FailureKind,
    build,
    decompose,
    verify_preserver_sampled,
    witness_holds,
)
from src.classify import (
    Verdict,
    check_kyfan_isometry,
    check_partial_isometry_preserver,
    check_schatten_isometry,
    check_triple_homomorphism,
    check_zero_triple_preserver,
    schatten_sum,
)
from src.linmap import maps_equal
from src.matcore import (
    Field,
    Tolerances,
    compact_svd,
    is_disjoint,
    max_norm,
    tcp_residual,
)

from .generators import (
    perturb,
    random_canonical,
    random_dimensions,
    random_disjoint_pair,
    random_field,
    trial_rng,
)
from .pool import TrialWorkerPool

logger = logging.getLogger("preserver.genfuzz")

# 分类器入口，FuzzConfig.classifiers 可以按名字替换（用于自检）
DEFAULT_CLASSIFIERS: Dict[str, Callable] = {
    "decompose": decompose,
    "zero_triple": check_zero_triple_preserver,
    "triple_hom": check_triple_homomorphism,
    "pisom": check_partial_isometry_preserver,
    "schatten": check_schatten_isometry,
    "kyfan": check_kyfan_isometry,
}

SCHATTEN_EXPONENTS = (1.0, 3.0, 4.0)
PERTURBATION = 0.1
MULTISET_TOL = 1e-9


@dataclass(frozen=True)
class FuzzConfig:
    trials: int = 100
    max_dim: int = 3
    seed: int = 0
    # 分类器内部抽样与见证搜索的试验数
    sample_trials: int = 50
    workers: int = FUZZ_WORKERS
    progress: bool = PROGRESS_ENABLED
    classifiers: Mapping[str, Callable] = field(default_factory=dict)

    def tolerances(self) -> Tolerances:
        return Tolerances.from_config().with_overrides(sample_trials=self.sample_trials)

    def resolved_classifiers(self) -> Dict[str, Callable]:
        unknown = set(self.classifiers) - set(DEFAULT_CLASSIFIERS)
        if unknown:
            raise ValueError(f"Unknown classifier overrides: {sorted(unknown)}")
        return {**DEFAULT_CLASSIFIERS, **self.classifiers}

    def to_dict(self) -> dict:
        # workers / progress 不影响结果，不写入报表
        return {
            "trials": self.trials,
            "max_dim": self.max_dim,
            "seed": self.seed,
            "sample_trials": self.sample_trials,
        }


@dataclass
class Outcome:
    name: str
    passed: bool
    detail: str = ""
    residual: Optional[float] = None


@dataclass
class PropertyTally:
    passed: int = 0
    failed: int = 0
    first_counterexample: Optional[dict] = None

    def record(self, trial: int, seed: int, outcome: Outcome) -> None:
        if outcome.passed:
            self.passed += 1
            return
        self.failed += 1
        if self.first_counterexample is None or trial < self.first_counterexample["trial"]:
            self.first_counterexample = {
                "trial": trial,
                "seed": seed,
                "detail": outcome.detail,
                "residual": _finite_or_none(outcome.residual),
            }

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "failed": self.failed,
            "first_counterexample": self.first_counterexample,
        }


@dataclass
class FuzzReport:
    config: dict
    properties: Dict[str, PropertyTally] = field(default_factory=dict)

    @property
    def total_failures(self) -> int:
        return sum(tally.failed for tally in self.properties.values())

    def merge(self, trial: int, seed: int, outcomes: List[Outcome]) -> None:
        for outcome in outcomes:
            self.properties.setdefault(outcome.name, PropertyTally()).record(trial, seed, outcome)

    def to_dict(self) -> dict:
        return {
            "config": self.config,
            "properties": {name: self.properties[name].to_dict() for name in sorted(self.properties)},
            "total_failures": self.total_failures,
        }


def _finite_or_none(value):
    if value is None:
        return None
    value = float(value)
    return value if math.isfinite(value) else None


def _check(outcomes: List[Outcome], name: str, func: Callable[[], Tuple[bool, str, Optional[float]]]) -> None:
    """运行一条性质检查；异常记为失败，原因写进 detail。"""
    try:
        passed, detail, residual = func()
    except Exception as exc:
        passed, detail, residual = False, f"{type(exc).__name__}: {exc}", None
    outcomes.append(Outcome(name, bool(passed), detail, residual))


def _multiset_gap(found, expected) -> float:
    if len(found) != len(expected):
        return math.inf
    gaps = [abs(a - b) / max(1.0, abs(b)) for a, b in zip(sorted(found), sorted(expected))]
    return max(gaps, default=0.0)


def _with_q(form: CanonicalForm, Q1, Q2) -> CanonicalForm:
    return replace(form, Q1=tuple(float(q) for q in Q1), Q2=tuple(float(q) for q in Q2))


def _scaled(form: CanonicalForm, factor: float) -> CanonicalForm:
    return _with_q(form, [q * factor for q in form.Q1], [q * factor for q in form.Q2])


class TrialRunner:
    """单个试验的性质检查集合。"""

    def __init__(self, config: FuzzConfig):
        self.config = config
        self.tol = config.tolerances()
        self.classifiers = config.resolved_classifiers()

    def __call__(self, index: int) -> List[Outcome]:
        config, tol = self.config, self.tol
        rng = trial_rng(config.seed, index)
        dims = random_dimensions(rng, config.max_dim)
        m, n, r, s = dims["m"], dims["n"], dims["r"], dims["s"]
        field = random_field(rng)
        form = random_canonical(m, n, r, s, field, dims["q1"], dims["q2"], rng)
        phi = build(form)
        sub_seed = int(rng.integers(2 ** 31))
        outcomes: List[Outcome] = []

        result = self.classifiers["decompose"](phi, tol, sub_seed)
        _check(outcomes, "canonical_round_trip", lambda: self._round_trip(form, phi, result))
        _check(outcomes, "q_multiset_matches_singulars", lambda: self._singulars(phi, result))
        _check(outcomes, "dimension_guard", lambda: self._dimension_guard(phi, result))
        _check(outcomes, "sampled_preservation", lambda: self._sampled(phi, sub_seed))
        perturbed = perturb(phi, PERTURBATION, rng)
        _check(outcomes, "refutation_sound", lambda: self._refutation(perturbed, sub_seed))
        pair = random_disjoint_pair(m, n, field, rng)
        _check(outcomes, "disjoint_pair_zero_triple", lambda: self._disjoint_triple(*pair))
        _check(outcomes, "zero_triple_consistency", lambda: self._zero_triple(phi, perturbed, sub_seed))
        _check(outcomes, "triple_hom_pisom_equivalence", lambda: self._equivalence(form, index, sub_seed))
        exponent = SCHATTEN_EXPONENTS[index % len(SCHATTEN_EXPONENTS)]
        factor = 1.0 if index % 2 == 0 else float(rng.uniform(1.05, 2.0))
        _check(outcomes, "schatten_consistency", lambda: self._schatten(form, exponent, factor, sub_seed))
        k = int(rng.integers(1, min(r, s) + 1))
        kprime = int(rng.integers(2, min(m, n) + 1))
        _check(outcomes, "kyfan_consistency", lambda: self._kyfan(form, k, kprime, sub_seed))
        return outcomes

    def _round_trip(self, form, phi, result):
        if isinstance(result, DecomposeFailure):
            return False, f"decompose failed: {result.kind.value} at {result.stage}", result.residual
        if not maps_equal(build(result), phi, self.tol):
            return False, "build(decompose(phi)) differs from phi", None
        gap = max(_multiset_gap(result.Q1, form.Q1), _multiset_gap(result.Q2, form.Q2))
        return gap <= MULTISET_TOL, "Q multisets differ", gap

    def _singulars(self, phi, result):
        if isinstance(result, DecomposeFailure):
            return False, "decompose failed", None
        singulars = compact_svd(phi.image(0, 0), self.tol).singulars
        gap = _multiset_gap(list(result.Q1 + result.Q2), singulars.tolist())
        return gap <= MULTISET_TOL, "Q1 ∪ Q2 differs from singular values of Φ(E11)", gap

    @staticmethod
    def _dimension_guard(phi, result):
        if isinstance(result, DecomposeFailure):
            return True, "", None
        ok = (result.q1 == 0 or (phi.r >= phi.m and phi.s >= phi.n)) and (
            result.q2 == 0 or (phi.r >= phi.n and phi.s >= phi.m)
        )
        return ok, "multiplicities exceed the codomain", None

    def _sampled(self, phi, seed):
        preserved, _ = verify_preserver_sampled(phi, self.config.sample_trials, seed, self.tol)
        return preserved, "sampled disjoint pair not preserved", None

    def _refutation(self, perturbed, seed):
        result = self.classifiers["decompose"](perturbed, self.tol, seed)
        if not isinstance(result, DecomposeFailure):
            return False, "perturbed map still decomposes", None
        if result.kind is FailureKind.NOT_PRESERVER:
            return witness_holds(perturbed, *result.witness, self.tol), "witness does not verify", result.residual
        return result.kind is FailureKind.NUMERICAL_BREAKDOWN, f"unexpected {result.kind.value}", result.residual

    @staticmethod
    def _disjoint_triple(A, B):
        scale = max(1.0, max_norm(A) ** 2 * max_norm(B), max_norm(B) ** 2 * max_norm(A))
        residual = max(tcp_residual(A, B), tcp_residual(B, A))
        return is_disjoint(A, B) and residual <= 1e-10 * scale, "disjoint pair has nonzero triple product", residual

    def _zero_triple(self, phi, perturbed, seed):
        check = self.classifiers["zero_triple"]
        trials = self.config.sample_trials
        ok = check(phi, self.tol, seed, trials).verdict is Verdict.YES
        refuted = check(perturbed, self.tol, seed, trials).verdict is Verdict.NO
        return ok and refuted, "zero-triple verdict disagrees with decompose", None

    def _equivalence(self, form, index, seed):
        ones = index % 2 == 0
        if ones:
            target = _with_q(form, [1.0] * form.q1, [1.0] * form.q2)
        elif all(abs(q - 1.0) < 0.1 for q in form.diagonal()):
            target = _scaled(form, 2.0)
        else:
            target = form
        phi = build(target)
        triple = self.classifiers["triple_hom"](phi, self.tol, seed, self.config.sample_trials)
        pisom = self.classifiers["pisom"](phi, self.tol, seed)
        agree = triple.verdict is pisom.verdict
        expected = Verdict.YES if ones else Verdict.NO
        return agree and triple.verdict is expected, (
            f"triple_hom={triple.verdict.value}, pisom={pisom.verdict.value}, expected {expected.value}"
        ), None

    def _schatten(self, form, exponent, factor, seed):
        target = _scaled(form, factor / schatten_sum(form, exponent))
        verdict = self.classifiers["schatten"](build(target), exponent, self.tol, seed, self.config.sample_trials)
        expected = Verdict.YES if factor == 1.0 else Verdict.NO
        return verdict.verdict is expected, f"p={exponent}: got {verdict.verdict.value}", factor

    def _kyfan(self, form, k, kprime, seed):
        target = _scaled(form, 1.0 / float(np.sum(form.diagonal())))
        verdict = self.classifiers["kyfan"](build(target), k, kprime, self.tol, seed, self.config.sample_trials)
        if k >= 2 * form.k:
            expected = Verdict.YES
        elif target.field is Field.REAL:
            expected = Verdict.INAPPLICABLE
        else:
            expected = Verdict.NO
        return verdict.verdict is expected, f"k={k}, k'={kprime}: got {verdict.verdict.value}", None


def fuzz_equivalences(config: Optional[FuzzConfig] = None) -> FuzzReport:
    """
    运行随机化不变量校验

    Args:
        config: 试验次数、最大尺寸、主种子等；None 表示默认配置

    Returns:
        FuzzReport；性质失败写进报表而不是抛出
    """
    config = config or FuzzConfig()
    runner = TrialRunner(config)
    report = FuzzReport(config=config.to_dict())
    with tqdm(
        total=config.trials,
        desc="fuzz",
        unit="trial",
        file=sys.stderr,
        disable=not config.progress,
    ) as bar:
        pool = TrialWorkerPool(config.workers, runner, on_done=lambda _: bar.update(1))
        for index, outcomes in pool.run(range(config.trials)):
            report.merge(index, config.seed, outcomes)
    logger.info(f"fuzz 完成: {config.trials} 次试验, 失败 {report.total_failures}")
    return report
