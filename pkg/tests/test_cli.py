import json
import subprocess
import sys

import numpy as np
import pytest

from mcde.cli import main


def run_cli(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_sample_then_fit_round_trip(tmp_path, capsys):
    path = tmp_path / "draws.csv"
    code, _, _ = run_cli(["sample", "--family", "clayton", "--theta", "2", "--d", "2",
                          "--n", "10000", "--seed", "5", "--out", str(path)], capsys)
    assert code == 0
    header = path.read_text().splitlines()[0]
    assert header == "x1,x2"
    code, out, _ = run_cli(["fit", "--data", str(path), "--family", "clayton",
                            "--method", "beta", "--exponent", "0.1"], capsys)
    assert code == 0
    res = json.loads(out)
    assert res["converged"]
    assert res["theta_hat"][0] == pytest.approx(2.0, abs=0.25)


def test_fit_mle_on_gumbel_independence(tmp_path, capsys):
    path = tmp_path / "indep.csv"
    run_cli(["sample", "--family", "independence", "--n", "5000", "--seed", "3",
             "--out", str(path)], capsys)
    code, out, _ = run_cli(["fit", "--data", str(path), "--family", "gumbel",
                            "--method", "beta", "--exponent", "0.1"], capsys)
    assert code == 0
    assert json.loads(out)["theta_hat"][0] == pytest.approx(1.0, abs=0.05)


def test_determinism(tmp_path, capsys):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    run_cli(["sample", "--family", "frank", "--theta", "3", "--n", "50",
             "--out", str(a)], capsys)
    run_cli(["sample", "--family", "frank", "--theta", "3", "--n", "50",
             "--out", str(b)], capsys)
    assert a.read_text() == b.read_text()


def test_cov_subcommand(capsys):
    code, out, _ = run_cli(["cov", "--family", "clayton", "--theta", "0.5",
                            "--x", "0", "--mc", "2000", "--seed", "1"], capsys)
    assert code == 0
    rep = json.loads(out)
    assert rep["Sigma"][0][0] > 0
    assert rep["mc_samples"] == 2000


def test_bounds_subcommand(tmp_path, capsys):
    surf = tmp_path / "surface.csv"
    code, out, _ = run_cli(["bounds", "--family", "frank", "--theta", "2",
                            "--alpha", "0", "--grid", "120", "--out", str(surf)],
                           capsys)
    assert code == 0
    rep = json.loads(out)
    # diagonal trace tail approaches 1/theta - 1/(e^theta - 1) = 0.343482
    tail = rep["diagonal_trace"][-1][1]
    assert tail == pytest.approx(0.5 - 1.0 / np.expm1(2.0), abs=5e-3)
    lines = surf.read_text().splitlines()
    assert lines[0] == "u,v,value"
    assert len(lines) == 120 * 120 + 1


def test_cv_subcommand(tmp_path, capsys):
    path = tmp_path / "cv.csv"
    run_cli(["sample", "--family", "clayton", "--theta", "0.5", "--n", "150",
             "--seed", "2", "--out", str(path)], capsys)
    code, out, err = run_cli(["cv", "--data", str(path), "--family", "clayton",
                              "--grid", "0.1,1", "--k", "5", "--anchor", "0.1",
                              "--seed", "11"], capsys)
    assert code == 0
    res = json.loads(out)
    assert res["beta_opt"] in (0.1, 1.0)
    assert "cv_score" in err  # human-readable score table on stderr


def test_experiment_subcommand(tmp_path, capsys):
    out_path = tmp_path / "table.csv"
    code, _, _ = run_cli(["experiment", "--scenario", "table2", "--reps", "5",
                          "--seed", "3", "--out", str(out_path)], capsys)
    assert code == 0
    lines = out_path.read_text().strip().splitlines()
    assert lines[0] == "estimator,mean,stddev,bias,rmse,reps,failures"
    names = [ln.split(",")[0] for ln in lines[1:]]
    assert names == ["mle", "alpha-mcde(0.1)", "beta-mcde(0.1)", "gamma-mcde(0.1)"]


def test_experiment_table5_stacks_scenarios(capsys):
    code, out, _ = run_cli(["experiment", "--scenario", "table5", "--reps", "2",
                            "--seed", "3"], capsys)
    assert code == 0
    lines = out.strip().splitlines()
    assert sum(1 for ln in lines if ln.startswith("estimator")) == 1
    assert any("@correct" in ln for ln in lines)
    assert any("@misspecified" in ln for ln in lines)


def test_usage_error_exit_code_and_json(capsys):
    code, _, err = run_cli(["sample", "--family", "clayton", "--n", "5",
                            "--out", "/tmp/x.csv"], capsys)
    assert code == 2
    payload = json.loads(err)
    assert payload["type"] == "usage"


def test_unknown_subcommand(capsys):
    code, _, err = run_cli(["frobnicate"], capsys)
    assert code == 2
    assert json.loads(err)["type"] == "usage"


def test_runtime_error_exit_code(capsys):
    code, _, err = run_cli(["fit", "--data", "/no/such/file.csv", "--family",
                            "clayton", "--method", "mle"], capsys)
    assert code == 1
    assert json.loads(err)["type"] == "InputError"


def test_invalid_parameter_is_runtime_error(capsys):
    code, _, err = run_cli(["sample", "--family", "clayton", "--theta", "-1",
                            "--n", "5", "--out", "/tmp/x.csv"], capsys)
    assert code == 1
    assert json.loads(err)["type"] == "ParameterError"


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "mcde.cli", "--help"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert "sample" in proc.stdout and "experiment" in proc.stdout
