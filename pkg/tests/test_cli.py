import json
from pathlib import Path

import pytest

from gardnersym.cli import run

SCEN = Path(__file__).resolve().parents[1] / "demos" / "scenarios"


def _run(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_verify_symmetry_21(capsys):
    code, out, _ = _run(capsys, "verify-symmetry", "--case", "2.1",
                        "--params", "k=1,k1=1,k2=0,k3=1,k4=0,a0=1,b0=1,c0=1,beta0=0")
    assert code == 0 and "overall: PASS" in out


def test_double_reduce(capsys):
    code, out, _ = _run(capsys, "double-reduce", "--c", "1")
    assert code == 0


def test_multiplier_failure_shows_residual(capsys):
    code, out, _ = _run(capsys, "multiplier", "--scenario", str(SCEN / "constQ.json"),
                        "--lambda", "1", "--json")
    assert code == 1
    data = json.loads(out[out.index("{"):])
    assert data["status"] == "FAIL"
    assert data["entries"][0]["residual"] == "Q"


def test_adjoint_and_density(capsys):
    assert _run(capsys, "adjoint", "--scenario", str(SCEN / "family.json"))[0] == 0
    code, out, _ = _run(capsys, "density", "--lambda", "u_xx")
    assert code == 0 and "u*u_xx" in out


def test_flux_and_selfadjoint(capsys):
    assert _run(capsys, "flux", "--density", "u", "--scenario", str(SCEN / "gardner.json"))[0] == 0
    assert _run(capsys, "selfadjoint", "--scenario", str(SCEN / "gardner.json"), "--phi", "u")[0] == 0


@pytest.mark.parametrize("argv", [
    ["density", "--lambda", "u_y"],
    ["density", "--lambda", "u +* 2"],
    ["verify-symmetry", "--case", "9.9"],
    ["adjoint", "--scenario", "/nonexistent/scenario.json"],
    ["simulate", "--scenario", str(SCEN / "gardner.json"), "--N", "15", "--tmax", "0.1"],
])
def test_input_errors_exit_2(capsys, argv):
    code, out, err = _run(capsys, *argv)
    assert code == 2 and err.strip()


def test_simulate_writes_files(capsys, tmp_path):
    traj, drift = tmp_path / "traj.txt", tmp_path / "drift.txt"
    code, out, _ = _run(capsys, "simulate", "--scenario", str(SCEN / "gardner.json"),
                        "--N", "32", "--tmax", "0.05", "--monitor", "u;u^2/2", "--store", "3",
                        "--trajectory", str(traj), "--drift", str(drift))
    assert code == 0
    assert traj.read_text().startswith("# t x u\n")
    assert drift.read_text().startswith("# label t integral rel_drift\n")


def test_out_writes_both_files(capsys, tmp_path):
    base = tmp_path / "rep"
    assert _run(capsys, "density", "--lambda", "u", "--out", str(base))[0] == 0
    assert json.loads(base.with_suffix(".json").read_text())["status"] == "PASS"
    assert base.with_suffix(".txt").read_text().endswith("overall: PASS\n")


def test_paper_suite_is_deterministic(capsys, tmp_path):
    outs = []
    for i in range(2):
        base = tmp_path / f"run{i}"
        code, _, _ = _run(capsys, "paper-suite", "--criteria", "1,2,5,8", "--seed", "3",
                          "--out", str(base))
        assert code == 1  # displayed Subcase 1.1 multipliers fail
        outs.append((base.with_suffix(".json").read_bytes(), base.with_suffix(".txt").read_bytes()))
    assert outs[0] == outs[1]
    data = json.loads(outs[0][0])
    assert all(e["seconds"] is None for e in data["entries"])
    assert {e["status"] for e in data["entries"]} <= {"PASS", "NUMERIC-PASS", "FAIL"}
