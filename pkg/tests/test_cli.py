import json

import numpy as np
import pytest

from purimap import serialize
from purimap.cli import main
from purimap.states import DensityMatrix, figure_example, random_commuting_pair


def write_state(path, rho):
    path.write_text(json.dumps(serialize.state_to_json(rho)))
    return str(path)


class TestSweep:
    def test_writes_csv_with_header(self, tmp_path):
        out = tmp_path / "sweep.csv"
        rc = main(
            ["sweep", "--theta-min", "0", "--theta-max", "1.5707963", "--steps", "5",
             "--out", str(out)]
        )
        assert rc == 0
        lines = out.read_text().strip().split("\n")
        assert lines[0] == "theta,trace_distance,wcd,fidelity,lower,upper_const,upper_uhlmann"
        assert len(lines) == 6

    def test_byte_identical_across_runs(self, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        args = ["sweep", "--theta-min", "0.1", "--theta-max", "1.2", "--steps", "17"]
        assert main(args + ["--out", str(a)]) == 0
        assert main(args + ["--out", str(b)]) == 0
        assert a.read_bytes() == b.read_bytes()

    def test_invalid_range_is_usage_error(self, tmp_path, capsys):
        rc = main(["sweep", "--theta-min", "1.0", "--theta-max", "0.5", "--steps", "5",
                   "--out", str(tmp_path / "x.csv")])
        assert rc == 2
        assert "rejected" in capsys.readouterr().err

    def test_unwritable_path(self, tmp_path, capsys):
        rc = main(["sweep", "--steps", "2", "--out", str(tmp_path / "missing" / "x.csv")])
        assert rc == 1
        assert "cannot write" in capsys.readouterr().err


class TestCheck:
    def test_yes_exit_zero(self, tmp_path, capsys):
        rho = figure_example(0.3).states[0]
        a = write_state(tmp_path / "a.json", rho)
        b = write_state(tmp_path / "b.json", rho)
        rc = main(["check", a, b])
        assert rc == 0
        body = json.loads(capsys.readouterr().out)
        assert body["verdict"] == "YES"
        assert "bounds" in body

    def test_no_exit_one(self, tmp_path, capsys):
        x, y = random_commuting_pair(3, seed=1)
        a = write_state(tmp_path / "a.json", x)
        b = write_state(tmp_path / "b.json", y)
        rc = main(["check", a, b, "--eta", "0.4", "--tol", "1e-7"])
        assert rc == 1
        body = json.loads(capsys.readouterr().out)
        assert body["verdict"] == "NO"
        assert body["bounds"]["eta_used"] == 0.4

    def test_parse_failure_exit_64(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text("{broken")
        ok = write_state(tmp_path / "ok.json", figure_example(0.2).states[0])
        assert main(["check", str(bad), ok]) == 64
        assert "cannot parse" in capsys.readouterr().err

    def test_invalid_state_exit_64(self, tmp_path, capsys):
        not_a_state = tmp_path / "not_a_state.json"
        not_a_state.write_text(json.dumps({"dim": 2, "entries": [[[1, 0], [0, 0]], [[0, 0], [0.5, 0]]]}))
        ok = write_state(tmp_path / "ok.json", DensityMatrix(np.eye(2) / 2))
        rc = main(["check", str(not_a_state), ok])
        assert rc == 64

    def test_dimension_mismatch_exit_65(self, tmp_path):
        a = write_state(tmp_path / "a.json", DensityMatrix(np.eye(2) / 2))
        b = write_state(tmp_path / "b.json", DensityMatrix(np.eye(3) / 3))
        assert main(["check", a, b]) == 65

    def test_missing_file_exit_64(self, tmp_path):
        ok = write_state(tmp_path / "ok.json", DensityMatrix(np.eye(2) / 2))
        assert main(["check", str(tmp_path / "absent.json"), ok]) == 64

    def test_bad_eta_is_usage_error(self, tmp_path):
        a = write_state(tmp_path / "a.json", DensityMatrix(np.eye(2) / 2))
        with pytest.raises(SystemExit) as exc:
            main(["check", a, a, "--eta", "1.5"])
        assert exc.value.code == 2


class TestProptest:
    def test_passing_suite_exit_zero(self, capsys):
        rc = main(["proptest", "purify-faithful", "--trials", "8", "--seed", "3"])
        assert rc == 0
        report = json.loads(capsys.readouterr().out)
        assert report["passed"] is True
        assert report["suite"] == "purify-faithful"

    def test_deterministic_per_seed(self, capsys):
        args = ["proptest", "commuting-no", "--trials", "6", "--seed", "11"]
        assert main(args) == 0
        first = capsys.readouterr().out
        assert main(args) == 0
        second = capsys.readouterr().out
        assert first == second

    def test_unknown_suite_exit_two(self, capsys):
        rc = main(["proptest", "no-such-suite", "--trials", "5", "--seed", "0"])
        assert rc == 2
        assert "rejected" in capsys.readouterr().err

    def test_unreachable_server(self, capsys):
        rc = main(["proptest", "dim-nogo", "--trials", "2", "--seed", "0",
                   "--server", "http://127.0.0.1:1"])
        assert rc == 69
        assert "cannot reach service" in capsys.readouterr().err

    def test_named_suites_exist(self, capsys):
        for suite, trials in (("data-processing", 25), ("dim-nogo", 10)):
            rc = main(["proptest", suite, "--trials", str(trials), "--seed", "42"])
            assert rc == 0
            report = json.loads(capsys.readouterr().out)
            assert report["passed"] is True
