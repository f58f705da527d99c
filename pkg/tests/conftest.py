"""
测试配置和共享 fixtures
"""
import numpy as np
import pytest
from click.testing import CliRunner


@pytest.fixture
def tol():
    """默认容差策略"""
    from src.matcore import DEFAULT_TOLERANCES
    return DEFAULT_TOLERANCES


@pytest.fixture
def fast_tol():
    """抽样次数较少的容差策略，用于分类器测试"""
    from src.matcore import DEFAULT_TOLERANCES
    return DEFAULT_TOLERANCES.with_overrides(sample_trials=60)


@pytest.fixture
def trace_map():
    """A ↦ (a11 + a22)·E11，两个不交基像落在同一位置"""
    from src.linmap import map_from_function
    from src.matcore import Field

    def func(A):
        out = np.zeros((2, 2))
        out[0, 0] = A[0, 0] + A[1, 1]
        return out

    return map_from_function(2, 2, 2, 2, Field.REAL, func)


@pytest.fixture
def canonical_map():
    """按 (Q1, Q2) 构造 U = I、V = I 的标准形映射，r、s 默认取最小可行值"""
    from src.canonical import build, make_form

    def factory(Q1, Q2=(), m=2, n=2, r=None, s=None, field="complex"):
        r = len(Q1) * m + len(Q2) * n if r is None else r
        s = len(Q1) * n + len(Q2) * m if s is None else s
        form = make_form(np.eye(r), np.eye(s), Q1, Q2, m, n, field)
        return build(form)

    return factory


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def map_file(tmp_path):
    """把映射写成 MapFile，返回路径"""
    from src.cli.codec import dumps, map_to_dict

    def write(phi, name="map.json"):
        path = tmp_path / name
        path.write_text(dumps(map_to_dict(phi)), encoding="utf-8")
        return str(path)

    return write

