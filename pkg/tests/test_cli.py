import json
import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest

from quatdyn.cli import main

SCENARIOS = Path(__file__).resolve().parent.parent / "scenarios"

TOP = """inertia = 1, 1, 2, 0, 0, 0
q0 = 1, 0, 0, 0
omega0 = 0, 0, 5
torque = zero
dt = 0.001
duration = 1
"""


@pytest.fixture
def top_config(tmp_path):
    path = tmp_path / "top.cfg"
    path.write_text(TOP)
    return path


def read_csv(path):
    return np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)


def test_simulate_writes_csv_and_summary(tmp_path, top_config):
    out, summary = tmp_path / "out.csv", tmp_path / "summary.json"
    code = main(["simulate", "--config", str(top_config), "--output", str(out), "--summary", str(summary)])
    assert code == 0
    rows = read_csv(out)
    assert rows.shape == (1001, 12)
    assert np.max(np.abs(rows[:, 5:8] - [0, 0, 5])) <= 1e-12
    info = json.loads(summary.read_text())
    assert info["steps"] == 1000
    assert info["rows"] == 1001
    assert info["max_norm_drift"] <= 1e-12
    assert {"energy_drift_rel", "momentum_drift_max", "euler_convention"} <= info.keys()


def test_summary_defaults_to_stdout(tmp_path, top_config, capsys):
    assert main(["simulate", "--config", str(top_config), "--output", str(tmp_path / "o.csv")]) == 0
    assert json.loads(capsys.readouterr().out)["steps"] == 1000


def test_overrides(tmp_path, top_config, capsys):
    out = tmp_path / "o.csv"
    assert main(["simulate", "--config", str(top_config), "--output", str(out), "--dt", "0.01", "--duration", "0.5"]) == 0
    assert read_csv(out).shape[0] == 51


def test_byte_identical_reruns(tmp_path):
    outs = []
    for i in range(2):
        out = tmp_path / f"run{i}.csv"
        assert main(["simulate", "--config", str(SCENARIOS / "tumble.cfg"), "--output", str(out),
                     "--summary", str(tmp_path / f"s{i}.json"), "--duration", "2"]) == 0
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]


def test_invalid_dt_exits_2(tmp_path, top_config, capsys):
    top_config.write_text(TOP.replace("dt = 0.001", "dt = 0"))
    assert main(["simulate", "--config", str(top_config), "--output", str(tmp_path / "o.csv")]) == 2
    assert "dt" in capsys.readouterr().err
    assert not (tmp_path / "o.csv").exists()


def test_dt_override_validated(tmp_path, top_config, capsys):
    assert main(["simulate", "--config", str(top_config), "--output", str(tmp_path / "o.csv"), "--dt", "-1"]) == 2
    assert "dt" in capsys.readouterr().err


def test_parse_error_exits_2(tmp_path, top_config, capsys):
    top_config.write_text(TOP.replace("inertia = 1, 1, 2, 0, 0, 0", "inertia = 1, 1, two, 0, 0, 0"))
    assert main(["simulate", "--config", str(top_config), "--output", str(tmp_path / "o.csv")]) == 2
    assert "inertia" in capsys.readouterr().err


def test_missing_config_exits_2(tmp_path, capsys):
    assert main(["simulate", "--config", str(tmp_path / "nope.cfg"), "--output", str(tmp_path / "o.csv")]) == 2
    assert "config" in capsys.readouterr().err


def test_non_finite_state_exits_3(tmp_path, top_config, capsys):
    top_config.write_text(TOP.replace("inertia = 1, 1, 2", "inertia = 1, 2, 3").replace("omega0 = 0, 0, 5", "omega0 = 1e150, 1e150, 0"))
    assert main(["simulate", "--config", str(top_config), "--output", str(tmp_path / "o.csv")]) == 3
    err = capsys.readouterr().err
    assert "t = 0.001" in err


def test_module_entry_point(tmp_path, top_config):
    proc = subprocess.run(
        [sys.executable, "-m", "quatdyn", "simulate", "--config", str(top_config), "--output", str(tmp_path / "o.csv")],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["rows"] == 1001


@pytest.mark.parametrize("name", ["symmetric_top.cfg", "dzhanibekov.cfg", "orbital_slew.cfg"])
def test_bundled_scenarios_run(tmp_path, name):
    out = tmp_path / "o.csv"
    assert main(["simulate", "--config", str(SCENARIOS / name), "--output", str(out), "--summary", str(tmp_path / "s.json")]) == 0
    rows = read_csv(out)
    assert np.max(np.abs(np.linalg.norm(rows[:, 1:5], axis=1) - 1.0)) <= 1e-9
