import json
import subprocess
import sys

import numpy as np
import pytest

from zerocurve.cli import DEFAULT_TOLERANCES, RunConfig, InputError, load_config, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out), out


@pytest.fixture
def files(tmp_path, capsys):
    paths = {}
    for kind, extra in [("zero", ["--x0", "-10", "--x1", "10", "--dx", "0.01"]), ("soliton", []), ("hamiltonian", ["--x0", "-3", "--x1", "3", "--dx", "0.001"])]:
        p = tmp_path / f"{kind}.csv"
        assert main(["sample", kind, "--out", str(p), *extra]) == 0
        paths[kind] = str(p)
    capsys.readouterr()
    return paths


def test_hierarchy_gen_degree_one(capsys):
    code, rep, _ = run(capsys, "hierarchy", "gen", "--n", "1", "--const", "C1=1", "--const", "Cstar=0")
    assert code == 0 and rep["pass"] and rep["schema"] == 1
    assert rep["results"]["flow_rhs"] == "-1/4*V_xxx + 3/2*V*V_x"
    assert rep["config"]["constants"] == {"C1": "1", "Cstar": "0"}


def test_hierarchy_gen_degree_zero_and_verify(capsys):
    assert run(capsys, "hierarchy", "gen", "--n", "0", "--const", "C0=1")[1]["results"]["flow_rhs"] == "V_x"
    code, rep, _ = run(capsys, "hierarchy", "verify", "--n", "2")
    assert code == 0 and rep["results"]["residual_status"]["zero_curvature"]


def test_symbolic_constant_flag(capsys):
    code, rep, _ = run(capsys, "hierarchy", "gen", "--n", "1", "--const", "C1=sym")
    assert code == 0 and "C1" in rep["results"]["flow_rhs"]


def test_bad_input_exit_one(capsys):
    assert run(capsys, "hierarchy", "gen", "--n", "7")[0] == 1
    assert run(capsys, "hierarchy", "gen", "--n", "1", "--const", "C1")[0] == 1
    assert run(capsys, "hierarchy", "gen", "--n", "1", "--const", "Q=1")[0] == 1
    assert run(capsys, "sim", "kdv", "--potential", "/nonexistent.csv", "--t", "1")[0] == 1
    assert run(capsys, "hierarchy", "gen", "--n", "7", "--max-degree", "7")[0] == 0


def test_reports_are_byte_identical(capsys, files):
    outs = [run(capsys, "cs", "convert", "--potential", files["zero"])[2] for _ in range(2)]
    assert outs[0] == outs[1]


def test_cs_convert_zero(capsys, files, tmp_path):
    out = tmp_path / "H.csv"
    code, rep, _ = run(capsys, "cs", "convert", "--potential", files["zero"], "--out-grid", str(out))
    assert code == 0 and rep["residuals"]["det_identity"] == 0.0
    assert out.read_text().splitlines()[0] == "x,f,g,h"


def test_cs_obstruct(capsys, files):
    code, rep, _ = run(capsys, "cs", "obstruct", "--grid", files["hamiltonian"], "--n", "2")
    assert code == 0
    r = rep["results"]
    assert r["verdict"].startswith("consistent") and r["max_residual"] < 1e-4 and len(r["K_profile"]) == 6001


def test_cs_obstruct_degenerate_exit_two(capsys, tmp_path):
    p = tmp_path / "bad.csv"
    xs = np.linspace(-1, 1, 21)
    p.write_text("x,f,g,h\n" + "".join(f"{float(x)!r},1.0,{float(2 * x)!r},1.0\n" for x in xs))
    code, rep, _ = run(capsys, "cs", "obstruct", "--grid", str(p))
    assert code == 2 and rep["results"]["degenerate_points"] == [0, 1, 2, 3, 4, 5, 15, 16, 17, 18, 19, 20]  # Delta = 1 - 4x^2 <= 0


def test_cs_obstruct_low_degree(capsys, files):
    assert run(capsys, "cs", "obstruct", "--grid", files["hamiltonian"], "--n", "1")[0] == 1


def test_cs_check(capsys, tmp_path):
    b = tmp_path / "B.json"
    b.write_text(json.dumps({"A": {}, "C": {}, "D": {}}))
    code, rep, _ = run(capsys, "cs", "check", "--b", str(b), "--flow", "zero")
    assert code == 0 and set(rep["results"]["three_residuals_text"].values()) == {"0"}
    b.write_text(json.dumps({"A": {"1": "g"}, "C": {"1": "h"}, "D": {"1": "f"}}))
    flow = tmp_path / "flow.json"
    flow.write_text(json.dumps({"f": "f_x", "g": "g_x", "h": "h_x"}))
    assert run(capsys, "cs", "check", "--b", str(b), "--flow", str(flow))[0] == 0
    code, rep, _ = run(capsys, "cs", "check", "--b", str(b), "--flow", "zero")
    assert code == 2 and rep["results"]["three_residuals_text"]["upper_right"] != "0"


def test_sim_kdv_zero_identity(capsys, files, tmp_path):
    out, snaps = tmp_path / "out.csv", tmp_path / "snaps.csv"
    code, rep, _ = run(capsys, "sim", "kdv", "--potential", files["zero"], "--t", "1", "--out", str(out), "--snapshots", str(snaps))
    assert code == 0 and rep["results"]["max_change"] == 0.0
    assert out.read_text() == open(files["zero"]).read()
    assert snaps.read_text().splitlines()[0].startswith("x,t=0.0")


def test_sim_isospec(capsys, files):
    code, rep, _ = run(capsys, "sim", "isospec", "--potential", files["soliton"], "--t", "0.5")
    assert code == 0 and rep["residuals"]["isospectral_drift"] < 0.01


def test_sim_cocycle_constant(capsys):
    code, rep, _ = run(capsys, "sim", "cocycle", "--t1", "0.1", "--t2", "0.2", "--member", "1")
    assert code == 0 and rep["residuals"]["cocycle"] < 1e-6


def test_sim_mfun(capsys, files):
    code, rep, _ = run(capsys, "sim", "mfun", "--potential", files["soliton"], "--z", "0.5+1j", "--shift", "0.5")
    assert code == 0 and rep["residuals"]["m_shift"] < 1e-5


def test_numeric_refusal_exit_three(capsys, files):
    code, rep, _ = run(capsys, "sim", "kdv", "--potential", files["soliton"], "--t", "1", "--steps", "2")
    assert code == 3 and rep["error"] == "CFLViolation"


def test_tolerance_override_env(capsys, files, monkeypatch):
    monkeypatch.setenv("ZEROCURVE_TOL_OVERRIDE", "1e-20")
    code, rep, _ = run(capsys, "sim", "isospec", "--potential", files["soliton"], "--t", "0.1")
    assert code == 2 and rep["tolerances"]["isospectral_drift"] == pytest.approx(1e-22)
    monkeypatch.setenv("ZEROCURVE_TOL_OVERRIDE", "-1")
    assert run(capsys, "hierarchy", "gen", "--n", "1")[0] == 1


def test_config_file(capsys, tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"tolerances": {"cocycle": 1e-30}, "max_degree": 2}))
    assert run(capsys, "--config", str(cfg), "hierarchy", "gen", "--n", "3")[0] == 1
    code, rep, _ = run(capsys, "--config", str(cfg), "sim", "cocycle", "--t1", "0.3", "--t2", "0.4", "--member", "1", "--z", "2+1j", "--v0", "0.5")
    assert rep["tolerances"]["cocycle"] == 1e-30 and code == 2
    cfg.write_text(json.dumps({"tolerances": {"bogus": 1}}))
    assert run(capsys, "--config", str(cfg), "hierarchy", "gen", "--n", "1")[0] == 1


def test_run_config_invariants():
    RunConfig("x").validate()
    with pytest.raises(InputError):
        RunConfig("x", tolerances={**DEFAULT_TOLERANCES, "det": 0}).validate()
    with pytest.raises(InputError):
        RunConfig("x", grid={"n": 8}).validate()
    with pytest.raises(InputError):
        RunConfig("x", degree=-1).validate()
    assert load_config(None)["tolerances"] == DEFAULT_TOLERANCES


def test_report_file_and_module_entry(tmp_path):
    rep = tmp_path / "r.json"
    res = subprocess.run([sys.executable, "-m", "zerocurve", "--report", str(rep), "hierarchy", "gen", "--n", "0"], capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout == ""
    assert json.loads(rep.read_text())["results"]["flow_rhs"] == "V_x"
