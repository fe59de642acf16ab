"""Smoke test of every zzbound subcommand and its exit code.

Run:
  python scripts/smoke_cli.py
"""

from __future__ import annotations

import contextlib
import io
import json
import sys
import tempfile
from pathlib import Path
from typing import Callable

ROOT = Path(__file__).resolve().parents[1]
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

from zzbound.cli import main as cli_main


def run_cli(*argv: str) -> int:
    with contextlib.redirect_stdout(io.StringIO()), contextlib.redirect_stderr(io.StringIO()):
        try:
            return cli_main(list(argv))
        except SystemExit as exc:
            return int(exc.code or 0)


def assert_status(label: str, actual: int, expected: int | tuple[int, ...]) -> None:
    if isinstance(expected, tuple):
        ok = actual in expected
        exp_txt = "/".join(str(v) for v in expected)
    else:
        ok = actual == expected
        exp_txt = str(expected)

    if not ok:
        raise AssertionError(f"{label}: expected exit {exp_txt}, got {actual}")
    print(f"[PASS] {label}: {actual}")


def run_check(label: str, fn: Callable[[], None]) -> None:
    try:
        fn()
    except Exception as exc:
        print(f"[FAIL] {label}: {exc}")
        raise


def main() -> None:
    work = Path(tempfile.mkdtemp(prefix="zzbound-smoke-"))
    bad_config = work / "bad.json"
    bad_config.write_text(json.dumps({"quad": {"abs_tol": -1}}), encoding="utf-8")

    checks: list[tuple[str, tuple[str, ...], int]] = [
        ("constants", ("constants",), 0),
        ("bound main", ("bound", "--prior", "uniform", "--prior-params", "W=0.5", "--kind", "main", "--scale", "H=1.5707963"), 0),
        ("bound appendix", ("bound", "--prior", "gaussian", "--prior-params", "W=1", "--kind", "appendix", "--scale", "1"), 0),
        ("bound variance", ("bound", "--prior", "gaussian", "--prior-params", "W=1", "--kind", "variance", "--scale", "dH=1"), 0),
        ("bound lpi", ("bound", "--kind", "lpi", "--scale", "1"), 0),
        ("bound hpi", ("bound", "--prior", "gaussian", "--prior-params", "W=2", "--kind", "hpi"), 0),
        ("bound bad width", ("bound", "--prior", "uniform", "--prior-params", "W=0", "--kind", "main", "--scale", "1"), 2),
        ("bound bad scale", ("bound", "--prior", "uniform", "--kind", "main", "--scale", "H=-1"), 2),
        ("bound missing kind", ("bound", "--prior", "uniform"), 2),
        ("scan csv", ("scan", "--prior", "bimodal", "--points", "5", "--out", str(work / "scan.csv")), 0),
        ("scan json", ("scan", "--prior", "gaussian", "--points", "5", "--format", "json", "--out", str(work / "scan.json")), 0),
        ("scan bad fix", ("scan", "--prior", "uniform", "--fix", "H=1"), 2),
        ("figure fig2b", ("figure", "fig2b", "--out", str(work / "fig2b.csv")), 0),
        ("rmse", ("rmse", "--prior", "gaussian", "--samples", "20000", "--seed", "1"), 0),
        ("rmse too few samples", ("rmse", "--prior", "gaussian", "--samples", "10"), 2),
        ("invalid config", ("--config", str(bad_config), "constants"), 2),
    ]
    for label, argv, expected in checks:
        run_check(label, lambda argv=argv, label=label, expected=expected: assert_status(label, run_cli(*argv), expected))

    print(f"\nAll CLI checks passed (outputs in {work}).")


if __name__ == "__main__":
    main()
