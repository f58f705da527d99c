"""
测试命令行与 JSON 文件格式（src/cli）
"""
import json

import numpy as np
import pytest


def run(runner, *args, **kwargs):
    from src.cli import cli
    return runner.invoke(cli, [str(arg) for arg in args], **kwargs)


def stdout_json(result):
    return json.loads(result.stdout)


# ==================== 文件格式 ====================
class TestCodec:
    def test_real_matrix(self):
        from src.cli.codec import decode_matrix, encode_matrix
        from src.matcore import Field
        A = np.array([[1.5, -2.0], [0.0, 3.25]])
        assert encode_matrix(A, Field.REAL) == [[1.5, -2.0], [0.0, 3.25]]
        np.testing.assert_array_equal(decode_matrix([[1.5, -2.0], [0, 3.25]], Field.REAL), A)

    def test_complex_matrix(self):
        from src.cli.codec import decode_matrix, encode_matrix
        from src.matcore import Field
        A = np.array([[1 + 2j, -0.5j]])
        assert encode_matrix(A, Field.COMPLEX) == [[[1.0, 2.0], [0.0, -0.5]]]
        np.testing.assert_array_equal(decode_matrix([[[1, 2], [0, -0.5]]], Field.COMPLEX), A)

    @pytest.mark.parametrize("rows", [[], [[]], [[1, 2], [3]], [["x"]], [[True]], "nope"])
    def test_rejects_malformed_real(self, rows):
        from src.cli.codec import CodecError, decode_matrix
        from src.matcore import Field
        with pytest.raises(CodecError):
            decode_matrix(rows, Field.REAL)

    def test_rejects_bare_complex_entry(self):
        from src.cli.codec import CodecError, decode_matrix
        from src.matcore import Field
        with pytest.raises(CodecError):
            decode_matrix([[1.0]], Field.COMPLEX)

    def test_rejects_wrong_shape(self):
        from src.cli.codec import CodecError, decode_matrix
        from src.matcore import Field
        with pytest.raises(CodecError):
            decode_matrix([[1.0, 2.0]], Field.REAL, (2, 1))

    def test_map_file_is_stable(self):
        from src.canonical import build
        from src.cli.codec import dumps, map_from_dict, map_to_dict
        from src.genfuzz import random_canonical
        phi = build(random_canonical(2, 2, 3, 3, "complex", 0, 1, seed=4))
        text = dumps(map_to_dict(phi))
        assert dumps(map_to_dict(map_from_dict(json.loads(text)))) == text

    def test_map_file_missing_key(self):
        from src.cli.codec import CodecError, map_from_dict
        with pytest.raises(CodecError, match="images"):
            map_from_dict({"m": 2, "n": 2, "r": 2, "s": 2, "field": "real"})

    def test_map_file_image_count(self):
        from src.cli.codec import CodecError, map_from_dict
        with pytest.raises(CodecError):
            map_from_dict({"m": 2, "n": 2, "r": 1, "s": 1, "field": "real", "images": [[[1]]]})

    def test_map_file_bad_field(self):
        from src.cli.codec import CodecError, map_from_dict
        with pytest.raises(CodecError):
            map_from_dict({"m": 1, "n": 1, "r": 1, "s": 1, "field": "octonion", "images": [[[1]]]})

    def test_canonical_file(self):
        from src.canonical import make_form
        from src.cli.codec import CodecError, form_from_dict, form_to_dict
        data = form_to_dict(make_form(np.eye(2), np.eye(2), [1.0], [], 2, 2))
        assert form_from_dict(data).Q1 == (1.0,)
        data["Q1"] = [-1.0]
        with pytest.raises(CodecError):
            form_from_dict(data)

    def test_invalid_json(self):
        from src.cli.codec import CodecError, loads
        with pytest.raises(CodecError):
            loads("{not json")

    def test_matrix_file(self):
        from src.cli.codec import matrices_from_dict, matrices_to_dict
        from src.matcore import Field
        data = matrices_to_dict([np.eye(2), np.zeros((2, 3))], Field.REAL)
        A, B = matrices_from_dict(data)
        np.testing.assert_array_equal(A, np.eye(2))
        assert B.shape == (2, 3)


# ==================== decompose ====================
class TestDecomposeCommand:
    def test_identity(self, runner, map_file):
        from src.linmap import identity_map
        result = run(runner, "decompose", map_file(identity_map(2, 3)), "--trials", 50)
        assert result.exit_code == 0, result.output
        data = stdout_json(result)
        assert data["Q1"] == pytest.approx([1.0])
        assert data["Q2"] == []
        assert (data["r"], data["s"]) == (2, 3)

    def test_not_preserver(self, runner, map_file, trace_map):
        result = run(runner, "decompose", map_file(trace_map), "--trials", 50)
        assert result.exit_code == 2
        data = stdout_json(result)
        assert data["kind"] == "NotPreserver"
        assert data["witness"] == [[[1.0, 0.0], [0.0, 0.0]], [[0.0, 0.0], [0.0, 1.0]]]
        assert data["residual"] == pytest.approx(1.0)

    def test_breakdown(self, runner, map_file, mocker):
        from src.canonical import DecomposeFailure, FailureKind
        from src.linmap import identity_map
        mocker.patch(
            "src.cli.commands.decompose",
            return_value=DecomposeFailure(FailureKind.NUMERICAL_BREAKDOWN, stage="validate"),
        )
        result = run(runner, "decompose", map_file(identity_map(2, 2)))
        assert result.exit_code == 3
        assert stdout_json(result)["kind"] == "NumericalBreakdown"

    def test_degenerate_domain(self, runner, map_file):
        from src.linmap import identity_map
        result = run(runner, "decompose", map_file(identity_map(1, 2)))
        assert result.exit_code == 1
        assert stdout_json(result)["kind"] == "DegenerateDomain"

    def test_missing_file(self, runner, tmp_path):
        result = run(runner, "decompose", tmp_path / "missing.json")
        assert result.exit_code == 1
        assert result.stdout == ""

    def test_malformed_file(self, runner, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text('{"m": 2}', encoding="utf-8")
        result = run(runner, "decompose", path)
        assert result.exit_code == 1
        assert "missing key" in result.stderr

    def test_stdin(self, runner):
        from src.cli.codec import dumps, map_to_dict
        from src.linmap import transpose_map
        result = run(runner, "decompose", "-", "--trials", 20, input=dumps(map_to_dict(transpose_map(2, 2))))
        assert result.exit_code == 0, result.output
        assert stdout_json(result)["Q2"] == pytest.approx([1.0])


# ==================== check ====================
class TestCheckCommand:
    def test_disjoint_yes(self, runner, map_file):
        from src.linmap import identity_map
        result = run(runner, "check", map_file(identity_map(2, 2)), "--class", "disjoint", "--trials", 30)
        assert result.exit_code == 0
        data = stdout_json(result)
        assert data["verdict"] == "Yes"
        assert data["certificate"]["Q1"] == pytest.approx([1.0])

    def test_zero_triple_no(self, runner, map_file, trace_map):
        result = run(runner, "check", map_file(trace_map), "--class", "zero-triple", "--trials", 30)
        assert result.exit_code == 2
        data = stdout_json(result)
        assert data["verdict"] == "No"
        assert len(data["witness"]) == 3

    def test_schatten_requires_p(self, runner, map_file):
        from src.linmap import identity_map
        result = run(runner, "check", map_file(identity_map(2, 2)), "--class", "schatten")
        assert result.exit_code == 1
        assert "--p" in result.stderr

    def test_schatten_p_two(self, runner, map_file):
        from src.linmap import identity_map
        result = run(runner, "check", map_file(identity_map(2, 2)), "--class", "schatten", "--p", 2)
        assert result.exit_code == 4
        assert stdout_json(result) == {"verdict": "Inapplicable", "detail": "P_EQUALS_TWO"}

    def test_schatten_invalid_p(self, runner, map_file):
        from src.linmap import identity_map
        result = run(runner, "check", map_file(identity_map(2, 2)), "--class", "schatten", "--p", -1)
        assert result.exit_code == 1

    def test_kyfan_requires_both_indices(self, runner, map_file):
        from src.linmap import identity_map
        result = run(runner, "check", map_file(identity_map(2, 2)), "--class", "kyfan", "--k", 2)
        assert result.exit_code == 1

    def test_kyfan_k_too_small(self, runner, map_file, canonical_map):
        phi = canonical_map([0.5], [0.5])
        result = run(runner, "check", map_file(phi), "--class", "kyfan", "--k", 3, "--kprime", 2, "--trials", 40)
        assert result.exit_code == 2
        assert stdout_json(result)["detail"] == "K_TOO_SMALL"

    def test_triple_hom(self, runner, map_file, canonical_map):
        result = run(runner, "check", map_file(canonical_map([0.5])), "--class", "triple-hom")
        assert result.exit_code == 2
        assert stdout_json(result)["detail"] == "Q_NOT_IDENTITY"

    def test_pisom(self, runner, map_file):
        from src.linmap import transpose_map
        result = run(runner, "check", map_file(transpose_map(2, 2)), "--class", "pisom")
        assert result.exit_code == 0

    def test_breakdown(self, runner, map_file, mocker):
        from src.linmap import identity_map
        from src.matcore import NumericalBreakdownError
        mocker.patch(
            "src.cli.commands.check_disjointness_preserver",
            side_effect=NumericalBreakdownError("disagreement"),
        )
        result = run(runner, "check", map_file(identity_map(2, 2)), "--class", "disjoint")
        assert result.exit_code == 3
        assert result.stdout == ""

    def test_unknown_class(self, runner, map_file):
        from src.linmap import identity_map
        result = run(runner, "check", map_file(identity_map(2, 2)), "--class", "unitary")
        assert result.exit_code == 1


# ==================== gen ====================
class TestGenCommand:
    def test_gen_then_decompose(self, runner, tmp_path):
        result = run(runner, "gen", "--m", 2, "--n", 3, "--q1", 1, "--q2", 1, "--field", "complex", "--seed", 9)
        assert result.exit_code == 0
        data = stdout_json(result)
        assert (data["r"], data["s"]) == (5, 5)
        path = tmp_path / "gen.json"
        path.write_text(result.stdout, encoding="utf-8")
        decomposed = run(runner, "decompose", path, "--trials", 30)
        assert decomposed.exit_code == 0, decomposed.output
        form = stdout_json(decomposed)
        assert len(form["Q1"]) == 1 and len(form["Q2"]) == 1

    def test_canonical_format(self, runner):
        result = run(runner, "gen", "--format", "canonical", "--q1", 2, "--seed", 3)
        assert result.exit_code == 0
        data = stdout_json(result)
        assert len(data["Q1"]) == 2
        assert len(data["U"]) == 4

    def test_deterministic(self, runner):
        first = run(runner, "gen", "--seed", 11)
        second = run(runner, "gen", "--seed", 11)
        assert first.stdout == second.stdout

    def test_perturbed_map_is_refuted(self, runner, tmp_path):
        result = run(runner, "gen", "--perturb", 0.1, "--seed", 2)
        path = tmp_path / "perturbed.json"
        path.write_text(result.stdout, encoding="utf-8")
        decomposed = run(runner, "decompose", path, "--trials", 30)
        assert decomposed.exit_code in (2, 3)

    def test_infeasible(self, runner):
        result = run(runner, "gen", "--m", 2, "--n", 3, "--r", 2, "--s", 2, "--q1", 1, "--q2", 1)
        assert result.exit_code == 1
        assert result.stdout == ""

    def test_disjoint_pair(self, runner, tol):
        from src.cli.codec import matrices_from_dict
        from src.matcore import is_disjoint
        result = run(runner, "gen", "--kind", "disjoint-pair", "--m", 3, "--n", 3, "--seed", 6)
        A, B = matrices_from_dict(stdout_json(result))
        assert is_disjoint(A, B, tol)

    def test_zero_map(self, runner):
        result = run(runner, "gen", "--kind", "zero", "--r", 3, "--s", 4)
        data = stdout_json(result)
        assert (data["r"], data["s"]) == (3, 4)
        assert all(value == 0 for image in data["images"] for row in image for value in row)

    def test_canonical_format_rejects_other_kinds(self, runner):
        result = run(runner, "gen", "--kind", "pisom", "--format", "canonical")
        assert result.exit_code == 1


# ==================== fuzz ====================
class TestFuzzCommand:
    def test_clean_run(self, runner):
        args = ("fuzz", "--trials", 3, "--sample-trials", 10, "--seed", 4, "--no-progress")
        first = run(runner, *args)
        assert first.exit_code == 0, first.output
        data = stdout_json(first)
        assert data["total_failures"] == 0
        assert data["config"] == {"trials": 3, "max_dim": 3, "seed": 4, "sample_trials": 10}
        assert run(runner, *args).stdout == first.stdout

    def test_hundred_trials_seed_42(self, runner):
        result = run(runner, "fuzz", "--trials", 100, "--max-dim", 3, "--seed", 42, "--workers", 2, "--no-progress")
        assert result.exit_code == 0, result.stdout
        assert stdout_json(result)["total_failures"] == 0

    def test_zero_trials(self, runner):
        result = run(runner, "fuzz", "--trials", 0, "--no-progress")
        assert result.exit_code == 0
        assert stdout_json(result)["properties"] == {}

    def test_failures_exit_two(self, runner, mocker):
        from src.genfuzz import FuzzReport, PropertyTally
        report = FuzzReport(config={}, properties={"canonical_round_trip": PropertyTally(failed=1)})
        mocker.patch("src.cli.commands.fuzz_equivalences", return_value=report)
        result = run(runner, "fuzz", "--trials", 1, "--no-progress")
        assert result.exit_code == 2
