import json

import numpy as np
import pytest

from teleportsim import protocol_to_json, standard_protocol
from teleportsim.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, err = run_cli(capsys, *argv)
    assert err == ""
    return code, json.loads(out)


class TestBound:
    def test_maximally_entangled_theta(self, capsys):
        code, report = run_json(capsys, "bound", "--d", "2", "--theta", "0.7853981634")
        assert code == 0
        res = report["results"]
        assert res["fidelity_bound"] == pytest.approx(1.0, abs=1e-9)
        assert res["estimation_bound"] == pytest.approx(0.5, abs=1e-9)
        assert res["max_singlet_fraction"] == pytest.approx(1.0, abs=1e-9)

    def test_product_state_d3(self, capsys):
        code, report = run_json(capsys, "bound", "--d", "3", "--lambdas", "1,0,0")
        assert code == 0
        res = report["results"]
        assert res["fidelity_bound"] == pytest.approx(0.5)
        assert res["estimation_bound"] == pytest.approx(0.5)
        assert res["max_singlet_fraction"] == pytest.approx(1 / 3)

    def test_point_eight_point_six(self, capsys):
        code, report = run_json(capsys, "bound", "--d", "2", "--lambdas", "0.8,0.6")
        assert code == 0
        res = report["results"]
        assert res["fidelity_bound"] == pytest.approx(2.96 / 3, abs=1e-12)
        assert res["estimation_bound"] == pytest.approx(1.64 / 3, abs=1e-12)
        assert res["max_singlet_fraction"] == pytest.approx(0.98, abs=1e-12)

    def test_auto_normalization_flagged(self, capsys):
        code, report = run_json(capsys, "bound", "--d", "2", "--lambdas", "8,6")
        assert code == 0
        assert report["config"]["renormalized"] is True
        assert report["results"]["max_singlet_fraction"] == pytest.approx(0.98, abs=1e-12)

    def test_auto_sorting_flagged(self, capsys):
        code, report = run_json(capsys, "bound", "--d", "2", "--lambdas", "0.6,0.8")
        assert code == 0
        assert report["config"]["reordered"] is True
        assert report["config"]["lambdas"][0] == pytest.approx(0.8)

    def test_schema_and_config_echo(self, capsys):
        code, report = run_json(capsys, "bound", "--d", "2")
        assert report["schema"] == 1
        assert report["command"] == "bound"
        assert report["config"]["d"] == 2


class TestBoundErrors:
    def test_negative_lambda(self, capsys):
        code, out, err = run_cli(capsys, "bound", "--d", "2", "--lambdas", "0.8,-0.6")
        assert code == 2
        assert "nonnegative" in err

    def test_wrong_count(self, capsys):
        code, out, err = run_cli(capsys, "bound", "--d", "3", "--lambdas", "1,0")
        assert code == 2
        assert "expected 3" in err

    def test_unparseable(self, capsys):
        code, out, err = run_cli(capsys, "bound", "--d", "2", "--lambdas", "a,b")
        assert code == 2
        assert "comma-separated" in err

    def test_theta_outside_range(self, capsys):
        code, out, err = run_cli(capsys, "bound", "--d", "2", "--theta", "2.0")
        assert code == 2
        assert "pi/2" in err

    def test_theta_wrong_dimension(self, capsys):
        code, out, err = run_cli(capsys, "bound", "--d", "3", "--theta", "0.5")
        assert code == 2
        assert "d=2" in err


class TestSimulate:
    def test_matches_closed_form(self, capsys):
        code, report = run_json(
            capsys, "simulate", "--d", "2", "--theta", "0.3", "--n", "100000", "--seed", "7"
        )
        assert code == 0
        res = report["results"]
        assert res["exact"] == pytest.approx((2 + np.sin(0.6)) / 3, abs=1e-12)
        assert abs(res["mc_estimate"] - res["exact"]) <= 4 * res["mc_std_error"]

    def test_uniform_d4(self, capsys):
        code, report = run_json(
            capsys, "simulate", "--d", "4", "--lambdas", "0.5,0.5,0.5,0.5", "--n", "1000"
        )
        assert code == 0
        res = report["results"]
        assert res["exact"] == pytest.approx(1.0, abs=1e-12)
        assert res["mc_estimate"] == pytest.approx(1.0, abs=1e-12)
        assert res["mc_std_error"] < 1e-10

    def test_byte_identical_reruns(self, capsys):
        argv = ["simulate", "--d", "2", "--theta", "0.4", "--n", "2000", "--seed", "11"]
        code1, out1, _ = run_cli(capsys, *argv)
        code2, out2, _ = run_cli(capsys, *argv)
        assert code1 == code2 == 0
        assert out1 == out2

    def test_threads_split_is_reproducible(self, capsys):
        argv = [
            "simulate", "--d", "2", "--theta", "0.4", "--n", "4000",
            "--seed", "11", "--threads", "2",
        ]
        code1, out1, _ = run_cli(capsys, *argv)
        code2, out2, _ = run_cli(capsys, *argv)
        assert code1 == code2 == 0
        assert out1 == out2
        assert json.loads(out1)["config"]["threads"] == 2


class TestEstimate:
    def test_report_fields(self, capsys):
        code, report = run_json(
            capsys, "estimate", "--d", "2", "--lambdas", "0.8,0.6", "--n", "20000"
        )
        assert code == 0
        res = report["results"]
        assert res["estimation_bound"] == pytest.approx(1.64 / 3, abs=1e-12)
        assert res["exact"] == pytest.approx(1.64 / 3, abs=1e-12)
        assert abs(res["mc_estimate"] - res["exact"]) <= 4 * res["mc_std_error"]


class TestSweep:
    def test_golden_header_and_shape(self, capsys):
        code, out, err = run_cli(capsys, "sweep", "--steps", "50")
        assert code == 0
        lines = out.strip().split("\n")
        assert lines[0].startswith("# schema=1 command=sweep")
        assert lines[1] == "theta,bound,exact,estimation_bound"
        rows = [line.split(",") for line in lines[2:]]
        assert len(rows) == 51
        assert all(len(row) == 4 for row in rows)

    def test_shape_of_bound_curve(self, capsys):
        code, out, _ = run_cli(capsys, "sweep", "--steps", "50")
        lines = out.strip().split("\n")[2:]
        thetas = np.array([float(line.split(",")[0]) for line in lines])
        bounds = np.array([float(line.split(",")[1]) for line in lines])
        mid = len(bounds) // 2
        assert np.all(np.diff(bounds[: mid + 1]) >= -1e-12)  # rises to pi/4
        assert np.all(np.diff(bounds[mid:]) <= 1e-12)  # falls after pi/4
        assert bounds[mid] == pytest.approx(1.0, abs=1e-12)
        assert thetas[mid] == pytest.approx(np.pi / 4)
        assert bounds[0] == pytest.approx(2 / 3, abs=1e-12)
        assert bounds[-1] == pytest.approx(2 / 3, abs=1e-12)

    def test_rejects_other_dimensions(self, capsys):
        code, out, err = run_cli(capsys, "sweep", "--d", "3")
        assert code == 2


class TestVerifyMkl:
    def test_passes_at_default_band(self, capsys):
        code, report = run_json(
            capsys, "verify-mkl", "--d", "2", "--n", "100000", "--seed", "1"
        )
        assert code == 0
        assert report["results"]["pass"] is True
        assert len(report["results"]["pairs"]) == 4

    def test_fails_with_absurd_band(self, capsys):
        code, out, err = run_cli(
            capsys, "verify-mkl", "--d", "2", "--n", "20000", "--seed", "1",
            "--sigmas", "0.0001",
        )
        assert code == 1


class TestCheckProtocol:
    def test_standard_passes(self, capsys):
        code, report = run_json(capsys, "check-protocol", "standard", "--d", "3")
        assert code == 0
        res = report["results"]
        assert res["completeness"]["pass"] is True
        assert res["optimality"]["pass"] is True
        assert res["corrections"]["pass"] is True
        assert res["estimation_bound_tight"] is True

    def test_protocol_file_round_trip(self, capsys, tmp_path):
        path = tmp_path / "proto.json"
        path.write_text(protocol_to_json(standard_protocol([0.8, 0.6])))
        code, report = run_json(capsys, "check-protocol", str(path), "--d", "2")
        assert code == 0
        assert report["results"]["completeness"]["pass"] is True

    def test_broken_completeness_exits_one(self, capsys, tmp_path):
        proto = standard_protocol([0.8, 0.6])
        data = json.loads(protocol_to_json(proto))
        data["phi"][0][0][0][0] *= 1.5  # scale one real component
        path = tmp_path / "broken.json"
        path.write_text(json.dumps(data))
        code, out, err = run_cli(capsys, "check-protocol", str(path))
        assert code == 1
        report = json.loads(out)
        assert report["results"]["completeness"]["pass"] is False

    def test_missing_file_exits_two(self, capsys):
        code, out, err = run_cli(capsys, "check-protocol", "/nonexistent/proto.json")
        assert code == 2

    def test_malformed_json_exits_two(self, capsys, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{not json")
        code, out, err = run_cli(capsys, "check-protocol", str(path))
        assert code == 2


class TestSearch:
    def test_gap_nonnegative(self, capsys):
        code, report = run_json(
            capsys, "search", "--d", "2", "--lambdas", "0.9,0.43588989",
            "--iters", "50", "--seed", "3",
        )
        assert code == 0
        assert report["results"]["gap"] >= -1e-12
        assert report["results"]["pass"] is True

    def test_outcomes_recorded(self, capsys):
        code, report = run_json(
            capsys, "search", "--d", "2", "--iters", "5", "--seed", "1", "--outcomes", "8"
        )
        assert code == 0
        assert report["config"]["outcomes"] == 8


class TestOutputOptions:
    def test_write_to_file(self, capsys, tmp_path):
        path = tmp_path / "report.json"
        code, out, err = run_cli(
            capsys, "bound", "--d", "2", "--lambdas", "0.8,0.6", "--output", str(path)
        )
        assert code == 0
        assert out == ""
        assert json.loads(path.read_text())["results"]["max_singlet_fraction"] == pytest.approx(
            0.98
        )

    def test_csv_format_single_report(self, capsys):
        code, out, err = run_cli(
            capsys, "bound", "--d", "2", "--lambdas", "0.8,0.6", "--format", "csv"
        )
        assert code == 0
        header, row = out.strip().split("\n")
        assert "results.fidelity_bound" in header
        assert len(header.split(",")) == len(row.split(","))
