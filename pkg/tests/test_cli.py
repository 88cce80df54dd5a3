import json
import os
import subprocess
import sys

import numpy as np
import pytest

from retint.cli import main
from retint.fileio import read_json, read_table


def run(*argv):
    return main([str(a) for a in argv])


def test_generate_and_determinism(tmp_cwd):
    assert run("generate", "--n", 2**14, "--gamma", 0.5, "--seed", 42, "--out", "a.bin") == 0
    assert run("generate", "--n", 2**14, "--gamma", 0.5, "--seed", 42, "--out", "b.bin") == 0
    assert (tmp_cwd / "a.bin").read_bytes() == (tmp_cwd / "b.bin").read_bytes()
    meta = read_json(tmp_cwd / "a.bin.json")
    assert meta["gamma"] == 0.5 and meta["n"] == 2**14


def test_generate_bad_gamma_exit_2(tmp_cwd, capsys):
    assert run("generate", "--n", 2**12, "--gamma", 1.5) == 2
    assert "gamma" in capsys.readouterr().err


def test_generate_multiple_seeds(tmp_cwd):
    assert run("generate", "--n", 2**12, "--seeds", "1,2", "--jobs", 2, "--out", "s.bin") == 0
    assert (tmp_cwd / "s_seed1.bin").exists() and (tmp_cwd / "s_seed2.bin").exists()


def test_intervals_iid_q0(tmp_cwd, capsys):
    run("generate", "--n", 2**18, "--kind", "iid_gaussian", "--seed", 1, "--out", "w.bin")
    capsys.readouterr()
    assert run("intervals", "--series", "w.bin", "--q", 0.0, "--out", "iv.csv") == 0
    summary = json.loads(capsys.readouterr().out)
    assert abs(summary["mean_r"] - 2.0) < 0.05
    tab = read_table(tmp_cwd / "iv.csv")
    assert abs(tab["R"].mean() - 1.0) < 1e-9


def test_intervals_above_max_exit_3(tmp_cwd):
    run("generate", "--n", 2**12, "--out", "s.bin")
    assert run("intervals", "--series", "s.bin", "--q", 99) == 3


def test_missing_file_exit_2(tmp_cwd):
    assert run("intervals", "--series", "missing.bin", "--q", 1) == 2


def test_theory(tmp_cwd, capsys):
    assert run("theory", "--gamma", 0.5, "--mean-r", 743) == 0
    out = json.loads(capsys.readouterr().out)
    assert {"gamma", "mean_r", "s0", "p0", "A", "B"} <= set(out)
    assert out["residual"] < 1e-12
    curves = read_table(tmp_cwd / "theory_curves.csv")
    assert list(curves) == ["R", "pdf_normalized", "pdf_cutoff"]


def test_theory_bad_mean_exit_2(tmp_cwd):
    assert run("theory", "--gamma", 0.5, "--mean-r", 0.5) == 2


def test_fit_from_series(tmp_cwd):
    run("generate", "--n", 2**20, "--gamma", 0.5, "--seed", 3, "--out", "s.bin")
    assert run("fit", "--series", "s.bin", "--q", 2.0, "--fit-range", "0.01:0.3") == 0
    res = read_json(tmp_cwd / "fit_slope.json")
    assert res["fit_range"] == [0.01, 0.3] and res["gamma"] == 0.5
    assert res["theta"] == pytest.approx(res["s_m"] / (0.5 - 1))
    t = read_table(tmp_cwd / "fit_density.csv")
    assert list(t) == ["R", "density_empirical", "density_theory_eq22", "density_theory_eq18"]


def test_fit_too_few_exit_3(tmp_cwd):
    run("generate", "--n", 2**12, "--out", "s.bin")
    assert run("fit", "--series", "s.bin", "--q", 2.5) == 3


def test_procsim_then_fit(tmp_cwd, capsys):
    assert run("procsim", "--gamma", 0.5, "--n-events", 20000, "--out", "p.csv") == 0
    summary = read_json(tmp_cwd / "p.csv.json")
    assert summary["ks_distance"] < 0.03
    assert summary["kind"] == "process_sim" and summary["config"]["gamma"] == 0.5
    assert run("fit", "--intervals", "p.csv") == 0


def test_sweep(tmp_cwd):
    assert run("sweep", "--gamma", 0.3, "--n", 2**18, "--q", "1.0:2.0:0.5", "--jobs", 2) == 0
    t = read_table(tmp_cwd / "sweep.csv")
    assert list(t) == ["q", "s_m", "stderr", "theta", "gamma"]
    assert t["q"].tolist() == [1.0, 1.5, 2.0]
    assert not [p for p in tmp_cwd.iterdir() if p.name.startswith(".")]


def test_sweep_bad_grid_exit_2(tmp_cwd):
    assert run("sweep", "--gamma", 0.3, "--n", 2**12, "--q", "2,1") == 2


def test_config_file_and_override(tmp_cwd):
    (tmp_cwd / "cfg.json").write_text(json.dumps({"gamma": 0.3, "mean_r": 50}))
    assert run("theory", "--config", "cfg.json") == 0
    assert read_json(tmp_cwd / "theory_params.json")["gamma"] == 0.3
    assert run("theory", "--config", "cfg.json", "--gamma", 0.7) == 0
    p = read_json(tmp_cwd / "theory_params.json")
    assert p["gamma"] == 0.7 and p["mean_r"] == pytest.approx(50)


def test_env_output_directory(tmp_cwd, monkeypatch):
    monkeypatch.setenv("RETINT_OUTDIR", str(tmp_cwd / "envout"))
    assert run("theory", "--gamma", 0.5, "--mean-r", 100) == 0
    assert (tmp_cwd / "envout" / "theory_params.json").exists()
    assert run("theory", "--gamma", 0.5, "--mean-r", 100, "--out-dir", "flag") == 0
    assert (tmp_cwd / "flag" / "theory_params.json").exists()


def test_outputs_reproducible(tmp_cwd):
    run("procsim", "--gamma", 0.4, "--n-events", 5000, "--out-dir", "a")
    run("procsim", "--gamma", 0.4, "--n-events", 5000, "--out-dir", "b")
    for name in ("procsim_intervals.csv", "procsim_intervals.csv.json"):
        assert (tmp_cwd / "a" / name).read_bytes() == (tmp_cwd / "b" / name).read_bytes()


def test_validate_in_subprocess(tmp_path):
    env = {**os.environ, "RETINT_OUTDIR": str(tmp_path)}
    proc = subprocess.run([sys.executable, "-m", "retint.cli", "validate"], env=env,
                          capture_output=True, text=True, timeout=300)
    assert proc.returncode == 0, proc.stderr
    report = read_json(tmp_path / "validate.json")
    assert report["passed"] and report["n_failed"] == 0
