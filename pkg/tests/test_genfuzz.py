"""
测试随机生成器与 fuzz 校验（src/genfuzz）
"""
import threading
import time

import numpy as np
import pytest


# ==================== 生成器 ====================
class TestSeeds:
    def test_trial_rng_is_deterministic(self):
        from src.genfuzz import trial_rng
        assert trial_rng(7, 3).random() == trial_rng(7, 3).random()
        assert trial_rng(7, 3).random() != trial_rng(7, 4).random()

    def test_as_generator(self):
        from src.genfuzz import as_generator
        rng = np.random.default_rng(1)
        assert as_generator(rng) is rng
        assert as_generator(None).random() == as_generator(0).random()


class TestRandomUnitary:
    def test_one_dimensional_real(self):
        from src.genfuzz import random_unitary
        for seed in range(5):
            U = random_unitary(1, "real", seed)
            assert U.shape == (1, 1)
            assert abs(U[0, 0]) == pytest.approx(1.0)

    @pytest.mark.parametrize("field", ["real", "complex"])
    @pytest.mark.parametrize("d", [1, 2, 3, 6])
    def test_is_unitary(self, field, d):
        from src.genfuzz import random_unitary
        from src.matcore import adjoint, max_norm
        U = random_unitary(d, field, seed=d)
        assert max_norm(adjoint(U) @ U - np.eye(d)) <= 1e-10

    def test_haar_moments(self):
        from src.genfuzz import as_generator, random_unitary
        rng = as_generator(99)
        draws = 10000
        samples = np.array([abs(random_unitary(4, "complex", rng)[0, 0]) ** 2 for _ in range(draws)])
        # |U_11|² ~ Beta(1, 3)：均值 1/4，方差 3/80
        standard_error = np.sqrt(3 / 80 / draws)
        assert abs(samples.mean() - 0.25) <= 3 * standard_error

    def test_rejects_bad_dimension(self):
        from src.genfuzz import random_unitary
        from src.matcore import ParameterError
        with pytest.raises(ParameterError):
            random_unitary(0)


class TestRandomCanonical:
    def test_small_case_is_unitarily_identity(self):
        from src.canonical import build
        from src.genfuzz import random_canonical
        from src.matcore import singular_values
        form = random_canonical(2, 2, 2, 2, "real", 1, 0, seed=3)
        phi = build(form)
        # 单位映射的酉等价保持奇异值比例
        np.testing.assert_allclose(singular_values(phi.apply(np.diag([3.0, 1.0]))), form.Q1[0] * np.array([3.0, 1.0]))

    def test_zero_multiplicities(self):
        from src.canonical import build
        from src.genfuzz import random_canonical
        assert build(random_canonical(2, 3, 2, 2, "complex", 0, 0, seed=1)).is_zero()

    def test_q_range_and_order(self):
        from src.genfuzz import random_canonical
        form = random_canonical(2, 2, 12, 12, "complex", 3, 3, seed=5)
        for values in (form.Q1, form.Q2):
            assert list(values) == sorted(values, reverse=True)
            assert all(0.1 <= q <= 10 for q in values)

    def test_infeasible(self):
        from src.genfuzz import random_canonical
        from src.matcore import ParameterError
        with pytest.raises(ParameterError):
            random_canonical(2, 3, 4, 4, "real", 1, 1, seed=0)

    def test_deterministic(self):
        from src.genfuzz import random_canonical
        first = random_canonical(2, 2, 5, 5, "complex", 1, 1, seed=42)
        second = random_canonical(2, 2, 5, 5, "complex", 1, 1, seed=42)
        np.testing.assert_array_equal(first.U, second.U)
        assert first.Q1 == second.Q1


class TestDisjointPairs:
    @pytest.mark.parametrize("field", ["real", "complex"])
    def test_outputs_are_disjoint(self, tol, field):
        from src.genfuzz import random_disjoint_pair
        from src.matcore import is_disjoint, max_norm, tcp_residual
        for seed in range(50):
            A, B = random_disjoint_pair(3, 4, field, seed)
            assert is_disjoint(A, B, tol)
            scale = max(1.0, max_norm(A) ** 2 * max_norm(B))
            assert tcp_residual(A, B) <= 1e-11 * scale

    def test_from_frame(self):
        from src.genfuzz import disjoint_pair_from_frame
        A, B = disjoint_pair_from_frame(np.eye(2), np.eye(3), [0], [1], [2.0], [5.0])
        np.testing.assert_array_equal(A, [[2, 0, 0], [0, 0, 0]])
        np.testing.assert_array_equal(B, [[0, 0, 0], [0, 5, 0]])

    def test_overlapping_supports(self):
        from src.genfuzz import disjoint_pair_from_frame
        from src.matcore import ParameterError
        with pytest.raises(ParameterError):
            disjoint_pair_from_frame(np.eye(2), np.eye(2), [0], [0], [1.0], [1.0])

    def test_needs_two_by_two(self):
        from src.genfuzz import random_disjoint_pair
        from src.matcore import ParameterError
        with pytest.raises(ParameterError):
            random_disjoint_pair(1, 3)

    def test_rank_one_pair(self, tol):
        from src.genfuzz import random_rank_one_pair
        from src.matcore import is_disjoint, is_partial_isometry
        A, B = random_rank_one_pair(3, 3, "complex", 8)
        assert is_disjoint(A, B, tol)
        assert is_partial_isometry(A, tol) and is_partial_isometry(B, tol)
        assert np.linalg.matrix_rank(A) == 1


class TestOtherGenerators:
    def test_partial_isometry(self, tol):
        from src.genfuzz import random_partial_isometry
        from src.matcore import cube, is_unitary, max_norm
        assert max_norm(random_partial_isometry(3, 4, 0, seed=1)) == 0
        assert is_unitary(random_partial_isometry(3, 3, 3, "complex", seed=2), 1e-10)
        W = random_partial_isometry(4, 5, 2, "complex", seed=3)
        assert max_norm(cube(W) - W) <= 1e-11

    def test_partial_isometry_rank_range(self):
        from src.genfuzz import random_partial_isometry
        from src.matcore import ParameterError
        with pytest.raises(ParameterError):
            random_partial_isometry(2, 3, 3)

    def test_rank_le2(self):
        from src.genfuzz import random_rank_le2
        from src.matcore import singular_values
        ranks = set()
        for seed in range(40):
            values = singular_values(random_rank_le2(4, 3, "complex", seed))
            ranks.add(values.size)
            assert all(0.1 - 1e-12 <= v <= 10 + 1e-12 for v in values)
        assert ranks == {1, 2}

    def test_zero_triple(self):
        from src.genfuzz import random_zero_triple
        from src.matcore import jordan_triple, max_norm, triple_scale
        for seed in range(20):
            A, B, C = random_zero_triple(3, 3, "complex", seed)
            assert max_norm(jordan_triple(A, B, C)) <= 1e-11 * max(1.0, triple_scale(A, B, C))

    def test_perturb(self, tol):
        from src.genfuzz import perturb
        from src.linmap import identity_map, map_difference, maps_equal
        from src.matcore import ParameterError
        phi = identity_map(2, 2)
        assert maps_equal(perturb(phi, 0.0, 1), phi, tol)
        assert map_difference(perturb(phi, 0.1, 1), phi) == pytest.approx(0.1)
        with pytest.raises(ParameterError):
            perturb(phi, -1e-3)

    def test_random_dimensions(self):
        from src.canonical import feasible_multiplicities
        from src.genfuzz import random_dimensions, trial_rng
        for index in range(30):
            dims = random_dimensions(trial_rng(0, index), 4)
            assert 2 <= dims["m"] <= 4 and 2 <= dims["n"] <= 4
            assert 1 <= dims["q1"] + dims["q2"] <= 3
            assert (dims["q1"], dims["q2"]) in feasible_multiplicities(
                dims["m"], dims["n"], dims["r"], dims["s"]
            )


# ==================== worker 池 ====================
class TestTrialWorkerPool:
    def test_results_sorted(self):
        from src.genfuzz import TrialWorkerPool

        def worker(index):
            time.sleep(0.001 * (5 - index % 5))
            return index * index

        pool = TrialWorkerPool(4, worker)
        assert pool.run(range(10)) == [(i, i * i) for i in range(10)]

    def test_on_done_called(self):
        from src.genfuzz import TrialWorkerPool
        seen = []
        lock = threading.Lock()

        def on_done(index):
            with lock:
                seen.append(index)

        TrialWorkerPool(3, lambda i: i, on_done=on_done).run(range(7))
        assert sorted(seen) == list(range(7))

    def test_lowest_error_raised(self):
        from src.genfuzz import TrialWorkerPool

        def worker(index):
            if index in (3, 5):
                raise RuntimeError(f"trial {index}")
            return index

        pool = TrialWorkerPool(2, worker)
        with pytest.raises(RuntimeError, match="trial 3"):
            pool.run(range(8))

    def test_empty_run(self):
        from src.genfuzz import TrialWorkerPool
        assert TrialWorkerPool(2, lambda i: i).run([]) == []


# ==================== fuzz ====================
class TestFuzz:
    def test_small_run_has_no_failures(self):
        from src.genfuzz import FuzzConfig, fuzz_equivalences
        report = fuzz_equivalences(FuzzConfig(trials=6, max_dim=3, seed=1, sample_trials=20, progress=False))
        data = report.to_dict()
        assert data["total_failures"] == 0, data
        assert "canonical_round_trip" in data["properties"]
        assert data["properties"]["canonical_round_trip"]["passed"] == 6

    def test_deterministic_across_workers(self):
        from src.genfuzz import FuzzConfig, fuzz_equivalences
        config = FuzzConfig(trials=4, max_dim=3, seed=5, sample_trials=10, workers=1, progress=False)
        single = fuzz_equivalences(config).to_dict()
        again = fuzz_equivalences(config).to_dict()
        threaded = fuzz_equivalences(FuzzConfig(
            trials=4, max_dim=3, seed=5, sample_trials=10, workers=3, progress=False
        )).to_dict()
        assert single == again == threaded

    def test_zero_trials(self):
        from src.genfuzz import FuzzConfig, fuzz_equivalences
        report = fuzz_equivalences(FuzzConfig(trials=0, progress=False))
        assert report.to_dict()["properties"] == {}
        assert report.total_failures == 0

    def test_broken_classifier_is_caught(self):
        from src.classify import ClassifierVerdict, Verdict
        from src.genfuzz import FuzzConfig, fuzz_equivalences

        def always_no(phi, tol, seed, trials=None):
            return ClassifierVerdict(Verdict.NO, detail="BROKEN")

        config = FuzzConfig(
            trials=2, max_dim=2, seed=0, sample_trials=10, progress=False,
            classifiers={"triple_hom": always_no},
        )
        tally = fuzz_equivalences(config).properties["triple_hom_pisom_equivalence"]
        # 偶数试验 Q 全为 1，应当判 Yes
        assert tally.failed >= 1
        assert tally.first_counterexample["trial"] == 0
        assert tally.first_counterexample["seed"] == 0

    def test_unknown_classifier_override(self):
        from src.genfuzz import FuzzConfig
        with pytest.raises(ValueError):
            FuzzConfig(classifiers={"nope": print}).resolved_classifiers()

    def test_config_dict_omits_runtime_options(self):
        from src.genfuzz import FuzzConfig
        assert FuzzConfig(trials=3, workers=4).to_dict() == {
            "trials": 3, "max_dim": 3, "seed": 0, "sample_trials": 50,
        }
