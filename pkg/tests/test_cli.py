"""Command-line surface: exit codes, JSON envelopes, CSV side effects."""

import json
import subprocess
import sys

import pytest

from eigensphere.cli import main
from eigensphere.geometry import read_cloud


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--json")
    return code, json.loads(out), err


class TestEigenCheck:
    def test_positive(self, capsys):
        code, report, _ = run_json(
            capsys, "eigen-check", "--vars", "4", "--sphere-dim", "3",
            "--poly", "z1^2+z2^2",
        )
        assert code == 0
        assert report["verdict"] == {
            "is_eigen": True, "k": 2, "n": 3, "lambda": -8, "mu": -4, "failure": None,
        }
        assert report["command"] == "eigen-check"
        assert report["inputs"]["poly"] == "z1^2+z2^2"

    def test_negative(self, capsys):
        code, report, _ = run_json(
            capsys, "eigen-check", "--vars", "4", "--sphere-dim", "3",
            "--poly", "x1^2",
        )
        assert code == 1
        assert report["verdict"]["failure"]["condition"] == "laplacian_P"

    def test_dimension_mismatch(self, capsys):
        code, _out, err = run(
            capsys, "eigen-check", "--vars", "4", "--sphere-dim", "2",
            "--poly", "z1",
        )
        assert code == 3
        assert "sphere-dim" in err

    def test_parse_error(self, capsys):
        code, _out, err = run(
            capsys, "eigen-check", "--vars", "4", "--sphere-dim", "3",
            "--poly", "z1 +",
        )
        assert code == 3
        assert "error" in err

    def test_human_output(self, capsys):
        code, out, _ = run(
            capsys, "eigen-check", "--vars", "4", "--sphere-dim", "3",
            "--poly", "z1^2+z2^2",
        )
        assert code == 0
        assert "eigenfunction: yes" in out
        assert "lambda = -8" in out

    def test_single_json_document(self, capsys):
        _code, out, _ = run(
            capsys, "eigen-check", "--vars", "4", "--sphere-dim", "3",
            "--poly", "z1^2+z2^2", "--json",
        )
        json.loads(out)  # whole stdout is one document


class TestMinimalLine:
    def test_clifford_exact(self, capsys):
        code, report, _ = run_json(
            capsys, "minimal-line", "--vars", "4", "--sphere-dim", "3",
            "--poly", "z1^2+z2^2", "--line", "1,0",
        )
        assert code == 0
        assert report["verdict"]["status"] == "ExactMinimal"
        assert report["verdict"]["certificate"] == "8"

    def test_lawson_line(self, capsys):
        code, report, _ = run_json(
            capsys, "minimal-line", "--vars", "4", "--sphere-dim", "3",
            "--poly", "z1^2*z2", "--line", "0,1",
        )
        assert code == 0
        assert report["verdict"]["status"] in ("ExactMinimal", "NumericMinimal")

    def test_cross_check_records_samples(self, capsys):
        code, report, _ = run_json(
            capsys, "minimal-line", "--vars", "4", "--sphere-dim", "3",
            "--poly", "z1^2+z2^2", "--line", "0,1",
            "--samples", "50", "--cross-check",
        )
        assert code == 0
        assert report["verdict"]["samples"] == 50
        assert report["verdict"]["max_residual"] < 1e-8

    def test_not_eigen(self, capsys):
        code, _out, err = run(
            capsys, "minimal-line", "--vars", "4", "--sphere-dim", "3",
            "--poly", "x1+x2", "--line", "1,0",
        )
        assert code == 3
        assert "condition" in err

    def test_bad_line_format(self, capsys):
        code, _out, err = run(
            capsys, "minimal-line", "--vars", "4", "--sphere-dim", "3",
            "--poly", "z1^2+z2^2", "--line", "1;0",
        )
        assert code == 3


class TestMinimalZero:
    def test_quadric(self, capsys):
        code, report, _ = run_json(
            capsys, "minimal-zero", "--vars", "4", "--sphere-dim", "3",
            "--poly", "z1^2+z2^2", "--samples", "40",
        )
        assert code == 0
        assert report["verdict"]["status"] == "NumericMinimal"

    def test_flat_sections_reported(self, capsys):
        code, report, _ = run_json(
            capsys, "minimal-zero", "--vars", "5", "--sphere-dim", "4",
            "--poly", "z1^3+z2^3", "--samples", "40",
        )
        assert code == 0
        assert report["verdict"]["diagnostics"]["flat_section_max_residual"] < 1e-8

    def test_singular_fiber(self, capsys):
        code, _out, err = run(
            capsys, "minimal-zero", "--vars", "4", "--sphere-dim", "3",
            "--poly", "x1", "--samples", "20",
        )
        assert code == 3
        assert "regularity" in err


class TestSample:
    def test_clifford_with_stereo(self, capsys, tmp_path):
        out_file = tmp_path / "torus.csv"
        code, report, _ = run_json(
            capsys, "sample", "--vars", "4",
            "--constraint", "x1^2-x2^2+x3^2-x4^2",
            "--count", "50", "--seed", "3", "--out", str(out_file), "--stereo", "4",
        )
        assert code == 0
        assert report["verdict"]["points_written"] == 50
        cloud = read_cloud(str(out_file))
        assert len(cloud) == 50
        assert cloud.stereo.shape == (50, 3)
        torus = cloud.points[:, 0] ** 2 + cloud.points[:, 2] ** 2
        assert max(abs(torus - 0.5)) < 1e-10

    def test_lawson_constraint(self, capsys, tmp_path):
        out_file = tmp_path / "lawson.csv"
        # Im(z1^2 * conj(z2)) expanded over real coordinates
        expr = "2*x1*x2*x3 - x1^2*x4 + x2^2*x4"
        code, report, _ = run_json(
            capsys, "sample", "--vars", "4", "--constraint", expr,
            "--count", "30", "--out", str(out_file),
        )
        assert code == 0
        assert len(read_cloud(str(out_file))) == 30

    def test_count_zero(self, capsys, tmp_path):
        code, _out, err = run(
            capsys, "sample", "--vars", "4", "--constraint", "x4",
            "--count", "0", "--out", str(tmp_path / "x.csv"),
        )
        assert code == 3

    def test_partial_yield_exit_2(self, capsys, tmp_path):
        out_file = tmp_path / "partial.csv"
        code, _out, err = run(
            capsys, "sample", "--vars", "4",
            "--constraint", "x1", "--constraint", "x1 - 1",
            "--count", "10", "--out", str(out_file),
        )
        assert code == 2
        assert "warning" in err
        assert out_file.exists()
        assert len(read_cloud(str(out_file))) == 0

    def test_complex_constraint_rejected(self, capsys, tmp_path):
        code, _out, err = run(
            capsys, "sample", "--vars", "4", "--constraint", "z1",
            "--count", "5", "--out", str(tmp_path / "x.csv"),
        )
        assert code == 3
        assert "real" in err


class TestLawson:
    def test_torus(self, capsys):
        code, out, _ = run(capsys, "lawson", "--n", "1", "--m", "3")
        assert code == 0
        assert out.strip() == "Torus"

    def test_json(self, capsys):
        code, report, _ = run_json(capsys, "lawson", "--n", "2", "--m", "1")
        assert code == 0
        assert report["verdict"]["type"] == "KleinBottle"

    def test_both_zero(self, capsys):
        code, _out, err = run(capsys, "lawson", "--n", "0", "--m", "0")
        assert code == 3


class TestSearch:
    def test_linear_search(self, capsys):
        code, report, _ = run_json(
            capsys, "search", "--vars", "4", "--degree", "1",
            "--attempts", "8", "--seed", "7",
        )
        assert code == 0
        results = report["verdict"]["results"]
        assert results[0]["residual"] < 1e-10
        assert any(r["exact"] for r in results)


class TestSelftest:
    def test_passes(self, capsys):
        code, report, _ = run_json(capsys, "selftest")
        assert code == 0
        assert report["verdict"]["passed"] is True
        assert all(s["passed"] for s in report["verdict"]["suites"])


class TestUsage:
    def test_no_command(self, capsys):
        assert main([]) == 3

    def test_unknown_command(self, capsys):
        assert main(["frobnicate"]) == 3

    def test_missing_required_flag(self, capsys):
        assert main(["eigen-check", "--vars", "4"]) == 3


class TestInstalledScript:
    def test_console_script(self, tmp_path):
        proc = subprocess.run(
            [
                "eigensphere", "eigen-check", "--vars", "4", "--sphere-dim", "3",
                "--poly", "z1^2+z2^2", "--json",
            ],
            capture_output=True, text=True,
        )
        assert proc.returncode == 0
        report = json.loads(proc.stdout)
        assert report["verdict"]["lambda"] == -8

    def test_module_invocation(self):
        proc = subprocess.run(
            [sys.executable, "-m", "eigensphere", "lawson", "--n", "0", "--m", "5"],
            capture_output=True, text=True,
        )
        assert proc.returncode == 0
        assert proc.stdout.strip() == "Sphere"
