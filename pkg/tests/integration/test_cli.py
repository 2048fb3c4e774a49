"""
End-to-end tests of the command-line entry point
"""
import json

import pytest

from app.config import settings
from main import EXIT_COMPUTATION, EXIT_OK, EXIT_USAGE, EXIT_VERIFICATION, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_structured(capsys, *argv):
    code, out = run(capsys, *argv, "--format", "structured")
    return code, json.loads(out)


class TestTwist:
    def test_text_output(self, capsys):
        code, out = run(capsys, "twist", "--type", "A", "--rank", "1", "--weight", "1")
        assert code == EXIT_OK
        assert "3/2" in out
        assert "q^(3/2)" in out

    def test_structured_output(self, capsys):
        code, report = run_structured(capsys, "twist", "--type", "A", "--rank", "2", "--weight", "1,0")
        assert code == EXIT_OK
        assert report["casimir"] == "8/3"
        assert report["twist"] == "q^(8/3)"
        assert report["instance"]["root_order"] == 6

    def test_b2_spin_weight(self, capsys):
        code, report = run_structured(capsys, "twist", "--type", "B", "--rank", "2", "--weight", "0,1")
        assert code == EXIT_OK
        assert report["instance"]["weight"] == [0, 1]


class TestFuse:
    def test_a1(self, capsys):
        code, report = run_structured(capsys, "fuse", "--weight", "2")
        assert code == EXIT_OK
        assert report["method"] == "clebsch_gordan"
        assert [s["dimension"] for s in report["summands"]] == [5, 3, 1]

    def test_a2(self, capsys):
        code, report = run_structured(capsys, "fuse", "--type", "A", "--rank", "2", "--weight", "1,0")
        assert code == EXIT_OK
        assert [s["weight"] for s in report["summands"]] == [[2, 0], [0, 1]]
        assert report["multiplicity_free"] is True


class TestRMatrix:
    def test_v1_spectrum(self, capsys):
        code, report = run_structured(capsys, "rmatrix", "--weight", "1")
        assert code == EXIT_OK
        assert [row["eigenvalue"] for row in report["spectrum"]] == ["q^(1/2)", "-q^(-3/2)"]
        assert report["matrix"][0][0] == "q^(1/2)"
        assert all(c["status"] != "fail" for c in report["checks"])

    def test_deterministic(self, capsys):
        first = run(capsys, "rmatrix", "--weight", "2")
        second = run(capsys, "rmatrix", "--weight", "2")
        assert first == second

    def test_a2_module_file(self, capsys, a2_vector_file):
        code, report = run_structured(capsys, "rmatrix", "--module-file", str(a2_vector_file))
        assert code == EXIT_OK
        assert [row["sign"] for row in report["spectrum"]] == [1, -1]

    def test_higher_rank_needs_module_file(self, capsys):
        code, _ = run(capsys, "rmatrix", "--type", "A", "--rank", "2", "--weight", "1,0")
        assert code == EXIT_COMPUTATION

    def test_dimension_cap(self, capsys):
        code, _ = run(capsys, "rmatrix", "--weight", "40", "--cap", "100")
        assert code == EXIT_COMPUTATION


class TestBraid:
    def test_braid_relation_gives_identical_output(self, capsys):
        _, left = run(capsys, "braid", "--weight", "1", "--strands", "3", "--word", "1 2 1")
        _, right = run(capsys, "braid", "--weight", "1", "--strands", "3", "--word", "2 1 2")
        assert left == right

    def test_inverse_cancels(self, capsys):
        _, cancelled = run(capsys, "braid", "--weight", "1", "--strands", "3", "--word", "1 -1")
        _, empty = run(capsys, "braid", "--weight", "1", "--strands", "3", "--word", "")
        assert cancelled == empty

    def test_bad_letter(self, capsys):
        code, _ = run(capsys, "braid", "--weight", "1", "--strands", "3", "--word", "3")
        assert code == EXIT_COMPUTATION


class TestVerify:
    @pytest.mark.parametrize("weight", ["0", "1"])
    def test_sl2_passes(self, capsys, weight):
        code, report = run_structured(capsys, "verify", "--weight", weight)
        assert code == EXIT_OK
        assert report["passed"] is True
        scopes = {c["scope"] for c in report["checks"]}
        assert {"module", "braiding", "braid", "hexagon", "classical"} <= scopes

    def test_text_summary(self, capsys):
        code, out = run(capsys, "verify", "--weight", "1")
        assert code == EXIT_OK
        assert out.rstrip().endswith("all identities pass")

    def test_perturbed_module_file(self, capsys, a2_vector_file, tmp_path):
        data = json.loads(a2_vector_file.read_text(encoding="utf-8"))
        data["generators"]["E1"] = [[0, 1, "2"]]
        broken = tmp_path / "broken.json"
        broken.write_text(json.dumps(data), encoding="utf-8")

        code, report = run_structured(capsys, "verify", "--module-file", str(broken))
        assert code == EXIT_VERIFICATION
        assert report["passed"] is False
        failing = [c["name"] for c in report["checks"] if c["status"] == "fail"]
        assert "ef_commutator" in failing


class TestUsage:
    def test_unsupported_type(self, capsys):
        code, _ = run(capsys, "twist", "--type", "C", "--rank", "2")
        assert code == EXIT_USAGE

    def test_unknown_command(self, capsys):
        code, _ = run(capsys, "transmute")
        assert code == EXIT_USAGE

    def test_non_dominant_weight(self, capsys):
        code, _ = run(capsys, "twist", "--weight", "-1")
        assert code == EXIT_USAGE

    def test_too_few_strands(self, capsys):
        code, _ = run(capsys, "braid", "--strands", "1")
        assert code == EXIT_USAGE

    def test_log_file_written(self, capsys, tmp_path):
        run(capsys, "twist", "--weight", "1")
        assert (tmp_path / "app.log").exists()
        assert settings.log_file == str(tmp_path / "app.log")
