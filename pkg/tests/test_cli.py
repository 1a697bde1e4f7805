"""Command-line interface: exact stdout, JSON discipline, exit codes, reproducibility."""

import json
import subprocess
import sys

import pytest

from pseudomagic.cli import main


def run_cli(args, capsys):
    rc = main(args)
    captured = capsys.readouterr()
    return rc, captured.out, captured.err


class TestExactStdout:
    def test_count_magic(self, capsys):
        rc, out, _ = run_cli(["count", "magic", "--k", "3", "--j", "1"], capsys)
        assert rc == 0 and out == "6\n"

    def test_volume(self, capsys):
        rc, out, _ = run_cli(["ehrhart", "volume", "--family", "pseudomagic", "--k", "2"], capsys)
        assert rc == 0 and out == "1/6\n"

    def test_mv(self, capsys):
        rc, out, _ = run_cli(["zeta", "mv", "--k", "2", "--x", "2"], capsys)
        assert rc == 0 and out == "13/4\n"

    def test_subprocess_byte_level(self):
        out = subprocess.run(
            [sys.executable, "-m", "pseudomagic", "count", "magic", "--k", "3", "--j", "1"],
            capture_output=True, check=True,
        ).stdout
        assert out == b"6\n"


class TestBroadCoverage:
    @pytest.mark.parametrize(
        "args,expected",
        [
            (["count", "contingency", "--rows", "2,1,1", "--cols", "3,1"], "3\n"),
            (["count", "pseudomagic", "--k", "2", "--l", "2"], "26\n"),
            (["count", "pseudomagic-multi", "--bounds", "3,1"], "17\n"),
            (["count", "sym-even", "--k", "2", "--j", "4"], "3\n"),
            (["count", "sym-even-bounded", "--k", "2", "--l", "4"], "19\n"),
            (["count", "brute", "--family", "magic", "--k", "2", "--j", "3"], "4\n"),
            (["count", "brute", "--family", "contingency", "--rows", "2,1", "--cols", "2,1"], "2\n"),
            (["oracle", "contour", "--k", "2", "--l", "2"], "26\n"),
            (["oracle", "expansion", "--alpha", "2,1,1", "--beta", "3,1"], "3\n"),
            (["zeta", "pairs", "--k", "2", "--x", "2"], "13/4\n"),
            (["rmt", "exact", "--n", "2", "--k", "1"], "3\n"),
            (["rmt", "gfactor", "--k", "2"], "1/12\n"),
            (["ehrhart", "hvector", "--k", "3"], "1 1 1\n"),
            (["ehrhart", "zeros", "--k", "3"], "true\n"),
            (["ehrhart", "reciprocity", "--k", "3"], "true\n"),
            (["ehrhart", "volume", "--family", "magic", "--k", "3"], "9/8\n"),
        ],
    )
    def test_plain_scalars(self, capsys, args, expected):
        rc, out, _ = run_cli(args, capsys)
        assert rc == 0 and out == expected

    def test_poly_plain(self, capsys):
        rc, out, _ = run_cli(["ehrhart", "poly", "--family", "magic", "--k", "3"], capsys)
        assert rc == 0 and out == "1 9/4 15/8 3/4 1/8\n"

    def test_poly_parity_plain(self, capsys):
        rc, out, _ = run_cli(["ehrhart", "poly", "--family", "sym-even-bounded", "--k", "1"], capsys)
        assert rc == 0
        assert out == "even 1 1/2\nodd 1/2 1/2\nleading_agree true\n"

    def test_profile(self, capsys):
        rc, out, _ = run_cli(["zeta", "profile", "--k", "2", "--x", "2"], capsys)
        assert rc == 0 and out == "1 1\n2 2\n4 1\n"

    def test_profile_bounds(self, capsys):
        rc, out, _ = run_cli(["--json", "zeta", "mv", "--k", "2", "--bounds", "2,3"], capsys)
        assert rc == 0
        doc = json.loads(out)
        assert doc["metadata"]["bounds"] == [2, 3]

    def test_integrate_trivial(self, capsys):
        rc, out, _ = run_cli(
            ["--json", "zeta", "integrate", "--k", "2", "--x", "1", "--t-max", "10", "--steps", "10"],
            capsys,
        )
        assert rc == 0
        assert json.loads(out)["value"] == {"error": 0.0, "value": 1.0}

    def test_predict(self, capsys):
        rc, out, _ = run_cli(
            ["--json", "zeta", "predict", "--k", "1", "--x", "100", "--prime-limit", "100"],
            capsys,
        )
        assert rc == 0
        doc = json.loads(out)
        assert doc["value"]["full"] == pytest.approx(5.60517, rel=1e-4)

    def test_euler_json_fields(self, capsys):
        rc, out, _ = run_cli(["--json", "euler", "a", "--k", "1", "--prime-limit", "500"], capsys)
        assert rc == 0
        doc = json.loads(out)
        assert doc["value"] == 1.0
        assert set(doc["metadata"]) == {"k", "prime_limit", "j_terms", "tail_estimate"}

    def test_euler_b(self, capsys):
        rc, out, _ = run_cli(["euler", "b", "--k", "1", "--prime-limit", "2"], capsys)
        assert rc == 0
        assert float(out) == pytest.approx(5 / 6, abs=1e-12)

    def test_rmt_sample_json_shape(self, capsys):
        rc, out, _ = run_cli(["--json", "rmt", "sample", "--n", "3", "--seed", "4"], capsys)
        assert rc == 0
        value = json.loads(out)["value"]
        assert len(value) == 3 and len(value[0]) == 3 and len(value[0][0]) == 2

    def test_rmt_secular(self, capsys):
        rc, out, _ = run_cli(["--json", "rmt", "secular", "--n", "4", "--seed", "4"], capsys)
        assert rc == 0
        value = json.loads(out)["value"]
        assert value[0] == [1.0, 0.0]
        assert len(value) == 5

    def test_rmt_moment_json(self, capsys):
        rc, out, _ = run_cli(
            ["--json", "rmt", "moment", "--j", "1", "--k", "1", "--n", "3",
             "--samples", "500", "--seed", "2"],
            capsys,
        )
        assert rc == 0
        v = json.loads(out)["value"]
        assert set(v) == {"mean", "stderr", "samples", "target", "z"}
        assert v["target"] == 1 and v["samples"] == 500

    def test_rmt_mixed_complex_mean(self, capsys):
        rc, out, _ = run_cli(
            ["--json", "rmt", "mixed", "--a", "1", "--b", "0", "--n", "3",
             "--samples", "500", "--seed", "2"],
            capsys,
        )
        assert rc == 0
        v = json.loads(out)["value"]
        assert isinstance(v["mean"], list) and len(v["mean"]) == 2

    def test_rmt_truncated(self, capsys):
        rc, out, _ = run_cli(
            ["--json", "rmt", "truncated", "--l", "0", "--k", "2", "--n", "3",
             "--samples", "100", "--seed", "2"],
            capsys,
        )
        assert rc == 0
        v = json.loads(out)["value"]
        assert v["mean"] == 1.0 and v["target"] == 1

    def test_ladder(self, capsys):
        rc, out, _ = run_cli(
            ["--json", "zeta", "ladder", "--k", "1", "--x-list", "10,100",
             "--prime-limit", "1000"],
            capsys,
        )
        assert rc == 0
        rows = json.loads(out)["value"]
        assert rows[0]["exact"] == "7381/2520"
        assert rows[0]["ratio_full"] < rows[1]["ratio_full"]


class TestJsonDiscipline:
    @pytest.mark.parametrize(
        "args",
        [
            ["count", "magic", "--k", "3", "--j", "2"],
            ["ehrhart", "poly", "--family", "magic", "--k", "3"],
            ["zeta", "mv", "--k", "2", "--x", "3"],
            ["euler", "b", "--k", "1", "--prime-limit", "100"],
            ["rmt", "moment", "--j", "1", "--k", "1", "--n", "3", "--samples", "200", "--seed", "3"],
        ],
    )
    def test_round_trip_idempotent(self, capsys, args):
        rc, out, _ = run_cli(["--json"] + args, capsys)
        assert rc == 0
        assert json.dumps(json.loads(out), sort_keys=True) + "\n" == out

    def test_flag_position_irrelevant(self, capsys):
        _, before, _ = run_cli(["--json", "count", "magic", "--k", "3", "--j", "1"], capsys)
        _, after, _ = run_cli(["count", "magic", "--k", "3", "--j", "1", "--json"], capsys)
        assert json.loads(before)["value"] == json.loads(after)["value"]

    def test_out_writes_json_document(self, capsys, tmp_path):
        path = tmp_path / "result.json"
        rc, out, _ = run_cli(
            ["count", "magic", "--k", "3", "--j", "1", "--out", str(path)], capsys
        )
        assert rc == 0 and out == "6\n"  # stdout stays plain
        doc = json.loads(path.read_text())
        assert doc["value"] == 6

    def test_exact_values_lossless(self, capsys):
        rc, out, _ = run_cli(["--json", "rmt", "exact", "--n", "20", "--k", "2"], capsys)
        assert rc == 0
        from fractions import Fraction
        from pseudomagic.rmt import full_poly_moment_exact
        assert Fraction(json.loads(out)["value"]) == full_poly_moment_exact(20, 2)


class TestExitCodes:
    def test_usage_error_is_2(self):
        with pytest.raises(SystemExit) as exc:
            main(["count", "magic", "--k", "3"])  # missing --j
        assert exc.value.code == 2

    def test_unknown_command_is_2(self):
        with pytest.raises(SystemExit) as exc:
            main(["nonsense"])
        assert exc.value.code == 2

    def test_domain_error_is_2(self, capsys):
        rc, _, err = run_cli(["count", "magic", "--k", "0", "--j", "1"], capsys)
        assert rc == 2 and "error" in err

    def test_budget_error_is_3(self, capsys):
        rc, _, err = run_cli(["zeta", "profile", "--k", "3", "--x", "1000", "--budget", "100"], capsys)
        assert rc == 3 and "budget" in err

    def test_brute_missing_family_params_is_2(self, capsys):
        rc, _, err = run_cli(["count", "brute", "--family", "magic", "--k", "2"], capsys)
        assert rc == 2 and "--j" in err


class TestReproducibility:
    def test_mc_byte_identical(self, capsys):
        args = ["--json", "rmt", "moment", "--j", "2", "--k", "1", "--n", "5",
                "--samples", "2000", "--seed", "9", "--threads", "2"]
        _, first, _ = run_cli(args, capsys)
        _, second, _ = run_cli(args, capsys)
        assert first == second

    def test_integrate_byte_identical(self, capsys):
        args = ["--json", "zeta", "integrate", "--k", "1", "--x", "5",
                "--t-max", "100", "--steps", "2000", "--threads", "2"]
        _, first, _ = run_cli(args, capsys)
        _, second, _ = run_cli(args, capsys)
        assert first == second

    def test_subprocess_byte_identical(self):
        cmd = [sys.executable, "-m", "pseudomagic", "--json", "rmt", "mixed",
               "--a", "2,0", "--b", "0,1", "--n", "4", "--samples", "3000",
               "--seed", "13", "--threads", "2"]
        a = subprocess.run(cmd, capture_output=True, check=True).stdout
        b = subprocess.run(cmd, capture_output=True, check=True).stdout
        assert a == b
