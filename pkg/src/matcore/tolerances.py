"""Numerical policy threaded through every decision."""

from dataclasses import dataclass, replace

from config import (
    CLUSTER_GAP,
    CROSS_CHECK_REL,
    RANK_CUT,
    RESIDUAL,
    SAMPLE_TRIALS,
    SIGN_TOL,
    UNITARY_TOL,
)

from .errors import ParameterError


@dataclass(frozen=True)
class Tolerances:
    rank_cut: float = RANK_CUT
    residual: float = RESIDUAL
    sample_trials: int = SAMPLE_TRIALS
    unitary: float = UNITARY_TOL
    cluster_gap: float = CLUSTER_GAP
    sign: float = SIGN_TOL
    cross_check_rel: float = CROSS_CHECK_REL

    def __post_init__(self):
        if not 0 < self.rank_cut < 1:
            raise ParameterError(f"rank_cut must lie in (0, 1): {self.rank_cut}")
        if self.residual <= 0:
            raise ParameterError(f"residual must be positive: {self.residual}")
        if int(self.sample_trials) != self.sample_trials or self.sample_trials < 1:
            raise ParameterError(f"sample_trials must be a positive integer: {self.sample_trials}")
        for name in ("unitary", "cluster_gap", "sign", "cross_check_rel"):
            if getattr(self, name) <= 0:
                raise ParameterError(f"{name} must be positive: {getattr(self, name)}")

    @classmethod
    def from_config(cls) -> "Tolerances":
        """按 config 中的环境变量构造默认策略（字段默认值已取自 config）。"""
        return cls()

    def threshold(self, scale: float) -> float:
        # 零判定：residual * max(1, scale)
        return self.residual * max(1.0, float(scale))

    def with_overrides(self, **changes) -> "Tolerances":
        changes = {key: value for key, value in changes.items() if value is not None}
        return replace(self, **changes)


DEFAULT_TOLERANCES = Tolerances()
