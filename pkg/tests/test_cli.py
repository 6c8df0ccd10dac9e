import json
import subprocess
import sys

import pytest

from pvi_moduli.cli import main

STATE = {"t": "2/1", "kappa": ["1/4", "1/8", "1/8", "1/8", "1/8"], "q": "3/1", "p": "5/1"}


@pytest.fixture
def state_file(tmp_path):
    path = tmp_path / "state.json"
    path.write_text(json.dumps(STATE))
    return str(path)


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else None)


class TestConnectionCommands:
    def test_build_reports_pass(self, capsys, state_file):
        code, out = run_cli(capsys, "connection", "build", "--state", state_file)
        assert code == 0
        assert out["passed"] is True
        assert out["invariants"]["apparent_singularity"] == "3/1"
        assert out["invariants"]["p_recovered"] == "5/1"
        assert out["connection"]["A1"][0][1] == "-3/2"

    def test_build_rejects_pole(self, capsys, tmp_path):
        bad = dict(STATE, q="2/1")
        path = tmp_path / "bad.json"
        path.write_text(json.dumps(bad))
        code, _ = run_cli(capsys, "connection", "build", "--state", str(path))
        assert code == 2

    def test_malformed_rational(self, capsys, tmp_path):
        bad = dict(STATE, p="1/0")
        path = tmp_path / "bad.json"
        path.write_text(json.dumps(bad))
        code, _ = run_cli(capsys, "connection", "build", "--state", str(path))
        assert code == 2

    def test_eigen(self, capsys, state_file):
        code, out = run_cli(capsys, "connection", "eigen", "--state", state_file)
        assert code == 0
        assert out["eigen"][0]["r_minus"] == "1/16"
        assert out["eigen"][3]["v_minus"] == ["1/1", "1/4"]


class TestParabolicCommands:
    def test_from_connection(self, capsys, state_file):
        code, out = run_cli(capsys, "parabolic", "from-connection", "--state", state_file)
        assert code == 0
        assert out == {"t": ["0/1", "1/1", "2/1", "inf"],
                       "u": ["-10/1", "-15/1", "-30/1", "1/4"]}

    def test_phi(self, capsys, tmp_path):
        path = tmp_path / "qp.json"
        path.write_text(json.dumps({"t": ["0/1", "1/1", "2/1", "inf"],
                                    "u": ["-10/1", "-15/1", "-30/1", "1/4"]}))
        code, out = run_cli(capsys, "parabolic", "phi", "--parabolic", str(path))
        assert code == 0
        assert out == {"base": "61/20", "sheet": "generic"}


class TestZoneCommands:
    def test_classify(self, capsys):
        code, out = run_cli(capsys, "zone", "classify", "--eps", "1/10,1/10,1/10,1/10")
        assert code == 0 and out == {"zone": "A"}

    def test_etpair(self, capsys):
        code, out = run_cli(capsys, "zone", "etpair", "--eps", "1/10,1/10,1/10,1/10",
                            "--i", "1", "--j", "2")
        assert code == 0
        assert out["zone"] == "C12"
        assert out["weights"]["eps"] == ["2/5", "2/5", "1/10", "1/10"]

    def test_branch(self, capsys):
        code, out = run_cli(capsys, "zone", "branch", "--eps", "2/5,1/5,1/5,1/5", "--i", "1")
        assert code == 0 and out == {"pole": 1, "branch": "origin_unstable"}

    def test_special_weights_error(self, capsys):
        code, _ = run_cli(capsys, "zone", "classify", "--eps", "1/8,1/8,1/8,1/8")
        assert code == 2


class TestHiggsCommand:
    def test_zone_a_limit(self, capsys, state_file):
        code, out = run_cli(capsys, "higgs", "limit", "--state", state_file,
                            "--eps", "1/10,1/12,1/14,1/16")
        assert code == 0
        assert out == {"kind": "graded", "degL": 1, "contact": [], "divisor": ["3/1"]}


class TestSymmetryCommands:
    def test_apply_word(self, capsys, state_file):
        code, out = run_cli(capsys, "symmetry", "apply", "--word", "s0",
                            "--state", state_file)
        assert code == 0
        assert out["q"] == "61/20" and out["p"] == "5/1"
        assert out["kappa"] == ["-1/4", "3/8", "3/8", "3/8", "3/8"]

    def test_relations(self, capsys, state_file):
        code, out = run_cli(capsys, "symmetry", "relations", "--state", state_file)
        assert code == 0 and out["passed"] is True


class TestLatticeCommands:
    def test_enumerate(self, capsys):
        code, out = run_cli(capsys, "lattice", "enumerate", "--nmax", "5")
        assert code == 0
        assert out["count"] == 16
        assert sorted(c["sigma"] for c in out["classes"])[0] == "++++"

    def test_check(self, capsys):
        code, out = run_cli(capsys, "lattice", "check", "--seed", "1", "--samples", "5")
        assert code == 0 and out["passed"] is True


class TestMcCommands:
    def test_transform(self, capsys):
        code, out = run_cli(capsys, "mc", "transform", "--eps", "1/10,1/10,1/10,1/10",
                            "--sigma", "++++")
        assert code == 0
        assert out["eps"] == ["3/20", "3/20", "3/20", "3/20"]
        assert out["zone"] == "Stable"

    def test_interchange(self, capsys):
        code, out = run_cli(capsys, "mc", "interchange", "--eps", "1/10,1/10,1/10,1/10")
        assert code == 0
        assert out["found_stable"] is True


class TestFibrationCommands:
    def test_q(self, capsys, state_file):
        code, out = run_cli(capsys, "fibration", "q", "--state", state_file)
        assert code == 0 and out == {"q": "3/1"}

    def test_big_q(self, capsys, state_file):
        code, out = run_cli(capsys, "fibration", "Q", "--state", state_file)
        assert code == 0 and out == {"Q": "61/20"}

    def test_solve(self, capsys):
        code, out = run_cli(capsys, "fibration", "solve", "--lambda1", "3/1",
                            "--lambda2", "61/20", "--kappa0", "1/4")
        assert code == 0 and out == {"q": "3/1", "p": "5/1"}

    def test_solve_no_intersection(self, capsys):
        code, _ = run_cli(capsys, "fibration", "solve", "--lambda1", "3/1",
                          "--lambda2", "3/1", "--kappa0", "1/4")
        assert code == 2


class TestVerifyCommand:
    def test_single_suite_passes(self, capsys):
        code, out = run_cli(capsys, "verify", "--suite", "lattice")
        assert code == 0 and out["passed"] is True

    def test_deterministic_reports(self, capsys):
        for suite in ("connection", "backlund"):
            code1, out1 = run_cli(capsys, "verify", "--suite", suite,
                                  "--seed", "7", "--samples", "5", "--bound", "12")
            code2, out2 = run_cli(capsys, "verify", "--suite", suite,
                                  "--seed", "7", "--samples", "5", "--bound", "12")
            assert code1 == code2 == 0
            assert out1 == out2

    def test_entry_point_runs(self):
        proc = subprocess.run([sys.executable, "-m", "pvi_moduli.cli",
                               "zone", "classify", "--eps", "2/5,2/5,2/5,2/5"],
                              capture_output=True, text=True)
        assert proc.returncode == 0
        assert json.loads(proc.stdout) == {"zone": "B"}
