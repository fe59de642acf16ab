import json
import math
import os
import subprocess
import sys
from pathlib import Path

import pytest

from zzbound.analysis import ScanResult
from zzbound.cli import main

ROOT = Path(__file__).resolve().parents[1]


def test_constants_prints_lpi_constants_and_max_gain(capsys):
    assert main(["constants"]) == 0

    out = capsys.readouterr().out
    assert "A_computed=0.039" in out
    assert "A_published=0.042" in out
    assert "A_prime=0.09471" in out
    assert "max_gain=1.7" in out
    assert "t0_star=0.4" in out


def test_bound_uniform_main(capsys):
    code = main(["bound", "--prior", "uniform", "--prior-params", "W=0.5", "--kind", "main", "--scale", "H=1.5707963"])
    assert code == 0

    result = json.loads(capsys.readouterr().out)
    assert result["kind"] == "main"
    assert result["value"] == pytest.approx(0.0818, abs=1e-3)
    assert result["x0_or_delta0"] == pytest.approx(1.0, rel=1e-7)


def test_bound_direct_with_coherent_fidelity(capsys):
    code = main(
        ["bound", "--prior", "gaussian", "--prior-params", "W=0.3", "--kind", "direct", "--scale", "4", "--fidelity", "coherent"]
    )
    assert code == 0
    result = json.loads(capsys.readouterr().out)
    assert 0.0 < result["value"] < 0.3
    assert result["t0"] is None


@pytest.mark.parametrize(
    "argv",
    [
        ["bound", "--prior", "uniform", "--prior-params", "W=-1", "--kind", "main", "--scale", "1"],
        ["bound", "--prior", "uniform", "--prior-params", "W=1", "--kind", "main", "--scale", "H=0"],
        ["bound", "--prior", "uniform", "--prior-params", "W", "--kind", "main", "--scale", "1"],
        ["bound", "--prior", "bimodal", "--kind", "hpi"],
        ["scan", "--prior", "uniform", "--t0-min", "2", "--t0-max", "1"],
        ["scan", "--prior", "uniform", "--t0-min", "0", "--t0-max", "1", "--points", "3"],
        ["scan", "--prior", "uniform", "--t0-min", "0.1", "--t0-max", "1", "--points", "0"],
        ["--threads", "0", "constants"],
    ],
    ids=["negative-width", "zero-scale", "malformed-params", "multi-modal-hpi", "empty-range", "zero-t0-min", "zero-points", "zero-threads"],
)
def test_invalid_parameters_exit_with_usage(argv, capsys):
    assert main(argv) == 2
    err = capsys.readouterr().err
    assert err.startswith("usage: zzbound")


def test_unknown_flag_is_rejected(capsys):
    with pytest.raises(SystemExit) as info:
        main(["constants", "--bogus"])
    assert info.value.code == 2


def test_config_file_keys_are_validated(tmp_path: Path, capsys):
    path = tmp_path / "config.json"
    path.write_text(json.dumps({"quad": {"abs_tol": 1e-9}, "unexpected": 1}), encoding="utf-8")

    assert main(["--config", str(path), "constants"]) == 2
    assert "unexpected" in capsys.readouterr().err


def test_quadrature_failure_exits_with_report(tmp_path: Path, capsys):
    path = tmp_path / "config.json"
    path.write_text(
        json.dumps({"quad": {"abs_tol": 1e-13, "rel_tol": 1e-13, "max_subdivisions": 1}}), encoding="utf-8"
    )

    code = main(
        ["--config", str(path), "bound", "--prior", "gaussian", "--prior-params", "W=1", "--kind", "main", "--scale", "1"]
    )
    assert code == 1
    err = capsys.readouterr().err
    assert "numerical failure" in err
    assert "requested tolerance" in err


def test_scan_output_is_finite_and_reproducible(tmp_path: Path):
    argv = ["scan", "--prior", "gaussian", "--kind", "main", "--t0-min", "0.1", "--t0-max", "10", "--points", "6"]
    first, second = tmp_path / "first.csv", tmp_path / "second.csv"

    assert main([*argv, "--out", str(first)]) == 0
    assert main([*argv, "--out", str(second)]) == 0
    assert first.read_bytes() == second.read_bytes()

    rows = ScanResult.from_csv(first).rows
    assert len(rows) == 6
    assert all(math.isfinite(row.value) and math.isfinite(row.gain) for row in rows)
    assert all(a.t0 < b.t0 and a.value < b.value for a, b in zip(rows, rows[1:]))


def test_scan_json_from_config(tmp_path: Path):
    config = tmp_path / "config.json"
    config.write_text(json.dumps({"scan": {"t0_min": 0.5, "t0_max": 2, "points": 3}, "output_format": "json"}), encoding="utf-8")
    out = tmp_path / "scan.json"

    assert main(["--config", str(config), "scan", "--prior", "bimodal", "--fix", "W=1", "--out", str(out)]) == 0
    payload = json.loads(out.read_text(encoding="utf-8"))
    assert [row["t0"] for row in payload["rows"]] == pytest.approx([0.5, 1.0, 2.0])
    assert payload["metadata"]["fixed"] == "W"


def test_rmse_baseline(capsys):
    code = main(["rmse", "--prior", "uniform", "--prior-params", "W=1", "--samples", "20000", "--seed", "5"])
    assert code == 0
    fields = dict(item.split("=") for item in capsys.readouterr().out.split())
    assert float(fields["rmse"]) == pytest.approx(1 / math.sqrt(12), abs=1e-2)
    assert float(fields["prior_stddev"]) == pytest.approx(1 / math.sqrt(12))


def test_figure_command_end_to_end(tmp_path: Path):
    out = tmp_path / "fig1.csv"
    env = os.environ.copy()
    env["ZZBOUND_THREADS"] = "2"
    env["ZZBOUND_SCAN_POINTS"] = "12"

    proc = subprocess.run(
        [sys.executable, "main.py", "figure", "fig1", "--out", str(out)],
        cwd=ROOT,
        capture_output=True,
        text=True,
        env=env,
        check=False,
    )
    assert proc.returncode == 0, proc.stderr

    lines = out.read_text(encoding="utf-8").splitlines()
    assert lines[0] == "t0,bound,prior_stddev,lpi_benchmark,marker"
    assert len(lines) == 1 + 12 + 1
    marker = lines[-1].split(",")
    assert marker[-1] == "max_gain"
    assert float(marker[0]) == pytest.approx(0.5, abs=0.1)


def test_invalid_environment_exits_with_usage():
    env = os.environ.copy()
    env["ZZBOUND_THREADS"] = "0"

    proc = subprocess.run(
        [sys.executable, "main.py", "constants"],
        cwd=ROOT,
        capture_output=True,
        text=True,
        env=env,
        check=False,
    )
    assert proc.returncode == 2
    assert proc.stderr.startswith("usage: zzbound")
    assert "Traceback" not in proc.stderr
