"""Exit codes, formats, and determinism of the command line interface."""

import json
import subprocess
import sys

import numpy as np
import pytest

from heisenlab.cli import run

SQUARE = {"closed": True,
          "points": [[0, 0], [1, 0], [1, 1], [0, 1], [0, 0]]}


def invoke(capsys, argv):
    code = run(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestLift:
    def test_square_drops_four(self, capsys, tmp_path):
        path = tmp_path / "square.json"
        path.write_text(json.dumps(SQUARE))
        code, out, _ = invoke(capsys, ["lift", "--curve", str(path),
                                       "--t0", "0"])
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "x1,y1,t"
        assert lines[-1] == "0.0,0.0,-4.0"

    def test_inline_json_and_t0(self, capsys):
        code, out, _ = invoke(capsys, ["lift", "--curve",
                                       json.dumps(SQUARE), "--t0", "1.5"])
        assert code == 0
        assert out.splitlines()[-1].endswith("-2.5")

    def test_odd_width_rejected(self, capsys):
        bad = {"closed": False, "points": [[0, 0, 1], [1, 0, 1]]}
        code, _, err = invoke(capsys, ["lift", "--curve", json.dumps(bad)])
        assert code == 1 and "error" in err


class TestGeodesic:
    def test_endpoints_in_output(self, capsys):
        code, out, _ = invoke(capsys, [
            "geodesic", "--from", '{"n":1,"z":[0,0],"t":0}',
            "--to", '{"n":1,"z":[1,1],"t":0.5}'])
        assert code == 0
        rows = np.array([[float(v) for v in r.split(",")]
                         for r in out.splitlines()[1:]])
        assert np.allclose(rows[0], [0, 0, 0], atol=1e-9)
        assert np.allclose(rows[-1], [1, 1, 0.5], atol=1e-5)

    def test_missing_point_is_usage_error(self, capsys):
        code, _, err = invoke(capsys, ["geodesic", "--from",
                                       '{"n":1,"z":[0,0],"t":0}'])
        assert code == 1


class TestExtend:
    def test_interval_data(self, capsys):
        data = {"domain": {"kind": "interval", "a": 0.0, "b": 1.0},
                "params": [0.2, 0.8],
                "points": [{"n": 1, "z": [0.0, 0.0], "t": 0.0},
                           {"n": 1, "z": [0.5, 0.0], "t": 0.0}],
                "L": 1.0}
        code, out, _ = invoke(capsys, ["extend", "--data",
                                       json.dumps(data)])
        assert code == 0
        assert out.splitlines()[0] == "x1,y1,t"
        assert len(out.splitlines()) > 10


class TestIsometry:
    def test_random_pair_round_trips(self, capsys):
        code, out, _ = invoke(capsys, ["isometry", "--n", "2", "--j", "1",
                                       "--seed", "3"])
        assert code == 0
        obj = json.loads(out)
        assert set(obj) == {"n", "phi", "source", "target"}
        phi = np.array(obj["phi"])
        assert phi.shape == (4, 4)
        # orthogonal linear part: gauge isometries fixing 0 act by
        # symplectic rotations
        assert np.allclose(phi.T @ phi, np.eye(4), atol=1e-10)

    def test_same_seed_same_bytes(self, capsys):
        a = invoke(capsys, ["isometry", "--n", "3", "--j", "2",
                            "--seed", "9"])
        b = invoke(capsys, ["isometry", "--n", "3", "--j", "2",
                            "--seed", "9"])
        assert a == b

    def test_missing_dimensions(self, capsys):
        code, _, err = invoke(capsys, ["isometry"])
        assert code == 1 and "need" in err


class TestContactReport:
    def test_generated_map_table(self, capsys):
        code, out, err = invoke(capsys, [
            "contact-report", "--generate", "normal", "--k", "2",
            "--n", "1", "--grid", "9"])
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "idx,residual,rank,isotropy_defect"
        assert len(lines) == 1 + 49
        summary = json.loads(err)
        assert summary["flags"] == 0
        assert summary["max_residual"] <= 1e-12

    def test_residual_only_leaves_cells_empty(self, capsys):
        code, out, _ = invoke(capsys, [
            "contact-report", "--generate", "normal", "--k", "2",
            "--n", "1", "--grid", "9", "--residual-only"])
        assert code == 0
        assert out.splitlines()[1].split(",")[2] == ""

    def test_needs_a_source(self, capsys):
        code, _, err = invoke(capsys, ["contact-report"])
        assert code == 1 and "--map" in err


class TestLoopResidual:
    def test_contact_map_circulates_nothing(self, capsys):
        code, out, _ = invoke(capsys, [
            "loop-residual", "--generate", "normal", "--k", "2",
            "--n", "1", "--grid", "33", "--index", "16,16",
            "--radius", "0.2"])
        assert code == 0
        obj = json.loads(out)
        assert abs(obj["value"]) < 1e-10
        assert obj["disc_area"] == pytest.approx(np.pi * 0.04)

    def test_bad_radius(self, capsys):
        code, _, _ = invoke(capsys, [
            "loop-residual", "--generate", "normal", "--k", "2",
            "--n", "1", "--grid", "33", "--index", "16,16",
            "--radius", "0"])
        assert code == 1


class TestContent:
    def test_segment_content_half(self, capsys, tmp_path):
        code, csv_text, _ = invoke(capsys, [
            "geodesic", "--from", '{"n":1,"z":[0,0],"t":0}',
            "--to", '{"n":1,"z":[1,0],"t":0}', "--samples", "201"])
        assert code == 0
        path = tmp_path / "segment.csv"
        path.write_text(csv_text)
        code, out, err = invoke(capsys, ["content", "--points", str(path),
                                         "--s", "1", "--r-max", "0.25"])
        assert code == 0
        assert json.loads(err)["content"] == pytest.approx(0.5, abs=0.02)
        assert out.splitlines()[0] == "x1,y1,t,radius"


class TestDecay:
    def test_slope_near_minus_one(self, capsys):
        code, out, err = invoke(capsys, ["decay", "--k", "2", "--n", "1",
                                         "--j", "1", "--mdiv", "2,4,8,16"])
        assert code == 0
        assert out.splitlines()[0] == "mdiv,balls,max_radius,content"
        assert len(out.splitlines()) == 5
        assert json.loads(err)["slope"] == pytest.approx(-1.0, abs=0.3)

    def test_hypothesis_guard_exit_one(self, capsys):
        code, _, err = invoke(capsys, ["decay", "--k", "2", "--n", "2",
                                       "--j", "2"])
        assert code == 1
        assert "k > n" in err

    def test_out_file_with_sidecar(self, capsys, tmp_path):
        out_path = tmp_path / "table.csv"
        code, out, _ = invoke(capsys, ["decay", "--k", "2", "--n", "1",
                                       "--j", "1", "--mdiv", "2,4,8",
                                       "--out", str(out_path)])
        assert code == 0
        sidecar = json.loads(out)["sidecar"]
        assert sidecar == str(tmp_path / "table.json")
        table = out_path.read_text()
        assert table.splitlines()[0] == "mdiv,balls,max_radius,content"
        side = json.loads(open(sidecar).read())
        assert side["config"]["k"] == 2
        assert side["slope"] == pytest.approx(-1.0, abs=0.3)


class TestHolderAndCollide:
    def test_pure_t_alpha_half(self, capsys):
        code, out, err = invoke(capsys, ["holder", "--generate", "pure-t",
                                         "--k", "2", "--n", "1",
                                         "--grid", "17"])
        assert code == 0
        assert json.loads(err)["alpha_hat"] == pytest.approx(0.5, abs=0.02)
        assert out.splitlines()[0] == "separation,max_dist,beta"

    def test_constant_map_is_numeric_failure(self, capsys):
        code, _, err = invoke(capsys, ["holder", "--generate", "frame",
                                       "--k", "2", "--n", "1", "--j", "0",
                                       "--grid", "9"])
        assert code == 2
        assert "numeric failure" in err

    def test_collide_finds_pairs(self, capsys):
        code, out, err = invoke(capsys, [
            "collide", "--generate", "pure-t", "--k", "2", "--n", "1",
            "--grid", "17", "--eps", "0.01", "--delta", "0.3",
            "--max-pairs", "5"])
        assert code == 0
        assert json.loads(err)["pairs"] == 5
        assert out.splitlines()[0] == "idx_a,idx_b"


class TestTrace:
    def test_every_anchor_passes(self, capsys):
        code, out, err = invoke(capsys, ["trace"])
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "anchor,claim,test,status"
        assert len(lines) == 1 + json.loads(err)["anchors"]
        assert json.loads(err)["failed"] == 0
        assert all(line.endswith(",pass") for line in lines[1:])


class TestConfigAndErrors:
    def test_config_supplies_defaults_flags_override(self, capsys,
                                                     tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"k": 2, "n": 1, "j": 1,
                                   "mdiv": [2, 4, 8]}))
        code, out, _ = invoke(capsys, ["decay", "--config", str(cfg)])
        assert code == 0 and len(out.splitlines()) == 4
        code, out, _ = invoke(capsys, ["decay", "--config", str(cfg),
                                       "--mdiv", "2,4,8,16"])
        assert code == 0 and len(out.splitlines()) == 5

    def test_unknown_config_key(self, capsys, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"bogus": 1}))
        code, _, err = invoke(capsys, ["decay", "--config", str(cfg)])
        assert code == 1 and "bogus" in err

    def test_unknown_flag(self, capsys):
        code, _, err = invoke(capsys, ["lift", "--bogus"])
        assert code == 1

    def test_unknown_command(self, capsys):
        code, _, _ = invoke(capsys, ["nonsense"])
        assert code == 1

    def test_no_command(self, capsys):
        code, _, _ = invoke(capsys, [])
        assert code == 1

    def test_help_exits_zero(self, capsys):
        assert run(["--help"]) == 0
        capsys.readouterr()

    def test_missing_file(self, capsys):
        code, _, err = invoke(capsys, ["lift", "--curve", "missing.json"])
        assert code == 1


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "heisenlab.cli", "lift", "--curve",
         json.dumps(SQUARE), "--t0", "0"],
        capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[-1] == "0.0,0.0,-4.0"


def test_determinism_across_processes():
    argv = [sys.executable, "-m", "heisenlab.cli", "contact-report",
            "--generate", "corner", "--k", "2", "--n", "1",
            "--grid", "17", "--seed", "5"]
    a = subprocess.run(argv, capture_output=True)
    b = subprocess.run(argv, capture_output=True)
    assert a.stdout == b.stdout and a.stdout