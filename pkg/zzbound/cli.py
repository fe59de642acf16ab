"""
Command-line front end.

Examples:
  zzbound constants
  zzbound bound --prior uniform --prior-params W=0.5 --kind main --scale H=1.5707963
  zzbound scan --prior gaussian --kind main --t0-min 0.01 --t0-max 100 --points 50 --out scan.csv
  zzbound figure fig1 --out fig1.csv
  zzbound rmse --prior uniform --prior-params W=1 --estimator mean --samples 100000 --seed 7
"""

import argparse
import json
import logging
import math
import sys
from pathlib import Path
from typing import Sequence

import numpy as np
from pydantic import ValidationError

from zzbound import __version__
from zzbound.analysis import EstimatorSpec, FigureId, figure_data, max_gain, scan_t0, weighted_rmse
from zzbound.bounds import (
    A_PUBLISHED,
    BoundKind,
    BoundRequest,
    constant_A,
    constant_A_prime,
    evaluate_bound,
)
from zzbound.core.config import QuadratureConfig, get_settings
from zzbound.core.errors import DomainError, NumericalError, UnsupportedOperationError
from zzbound.core.logging import configure_logging
from zzbound.priors import PriorDistribution, PriorFamily, load_tabulated_prior, make_prior
from zzbound.schemas.config_file import ConfigFile
from zzbound.speedlimit import FidelityModel

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_NUMERICAL = 1
EXIT_USAGE = 2

BOUND_KINDS = [kind.value for kind in BoundKind]
SCAN_KINDS = ["direct", "main", "appendix", "variance", "closed-form"]
PRIOR_FAMILIES = [family.value for family in PriorFamily]


class UsageError(Exception):
    """Invalid flag values that argparse cannot catch on its own."""


def _parse_pairs(tokens: Sequence[str]) -> dict[str, float]:
    params: dict[str, float] = {}
    for token in tokens:
        for item in token.split(","):
            if not item:
                continue
            key, sep, raw = item.partition("=")
            if not sep:
                raise UsageError(f"expected KEY=VALUE, got {item!r}")
            try:
                params[key.strip()] = float(raw)
            except ValueError:
                raise UsageError(f"{key}: not a number: {raw!r}") from None
    return params


def _parse_scale(text: str) -> float:
    """Accept ``1.57``, ``H=1.57`` or ``dH=1.57``."""
    _, _, raw = text.rpartition("=")
    try:
        return float(raw)
    except ValueError:
        raise UsageError(f"--scale: not a number: {text!r}") from None


def _build_prior(args: argparse.Namespace) -> PriorDistribution:
    if args.prior == PriorFamily.TABULATED.value:
        if not args.prior_file:
            raise UsageError("--prior tabulated needs --prior-file")
        return load_tabulated_prior(args.prior_file)
    params = _parse_pairs(args.prior_params)
    width = params.pop("W", params.pop("width", 1.0))
    return make_prior(args.prior, width, **params)


def _build_fidelity(name: str | None, scale: float) -> FidelityModel:
    if name in (None, "qsl"):
        return FidelityModel.qsl(scale)
    if name == "bhatta":
        return FidelityModel.bhattacharyya(scale)
    if name == "coherent":
        return FidelityModel.coherent(scale)
    if Path(name).is_file():
        return FidelityModel.from_csv(name)
    raise UsageError(f"--fidelity must be qsl, bhatta, coherent or a CSV file, got {name!r}")


def _first_given(*values):
    """First value that is not None; an explicit 0 counts as given."""
    return next(v for v in values if v is not None)


def _fixed_length(text: str) -> tuple[str, float]:
    key, sep, raw = text.partition("=")
    if not sep or key not in ("x0", "W"):
        raise UsageError(f"--fix expects x0=VALUE or W=VALUE, got {text!r}")
    try:
        return key, float(raw)
    except ValueError:
        raise UsageError(f"--fix: not a number: {raw!r}") from None


def cmd_constants(args: argparse.Namespace, config: ConfigFile, quad: QuadratureConfig) -> int:
    a = constant_A(quad)
    a_prime = constant_A_prime()
    best = max_gain(PriorFamily.UNIFORM, BoundKind.MAIN_QSL, quad=quad)
    print(f"A_computed={a:.10g}")
    print(f"A_published={A_PUBLISHED}")
    print(f"A_prime={a_prime:.10g}")
    print(f"lpi_coefficient=sqrt(A/2)={math.sqrt(a / 2):.10g}")
    print(f"variance_lpi_coefficient=sqrt(A_prime/2)={math.sqrt(a_prime / 2):.10g}")
    print(f"max_gain={best.gain:.6g} t0_star={best.t0_star:.6g}")
    return EXIT_OK


def cmd_bound(args: argparse.Namespace, config: ConfigFile, quad: QuadratureConfig) -> int:
    kind = BoundKind(args.kind)
    scale = _parse_scale(args.scale) if args.scale is not None else None
    prior = None if kind is BoundKind.LPI_BENCHMARK else _build_prior(args)
    fidelity = None
    if kind is BoundKind.DIRECT_ZZ:
        if scale is None:
            raise UsageError("--kind direct needs --scale")
        fidelity = _build_fidelity(args.fidelity, scale)
    result = evaluate_bound(BoundRequest(kind, prior, scale, fidelity, quad))
    print(json.dumps(result.to_dict()))
    return EXIT_OK


def cmd_scan(args: argparse.Namespace, config: ConfigFile, quad: QuadratureConfig) -> int:
    settings = get_settings()
    t0_min = _first_given(args.t0_min, config.scan.t0_min, settings.scan_t0_min)
    t0_max = _first_given(args.t0_max, config.scan.t0_max, settings.scan_t0_max)
    points = _first_given(args.points, config.scan.points, settings.scan_points)
    log_spaced = config.scan.log if args.log is None else args.log
    if not (0 < t0_min < t0_max and math.isfinite(t0_max)):
        raise UsageError(f"need 0 < t0-min < t0-max, got {t0_min} and {t0_max}")
    if points < 1:
        raise UsageError(f"--points must be at least 1, got {points}")
    if log_spaced:
        grid = np.logspace(math.log10(t0_min), math.log10(t0_max), points)
    else:
        grid = np.linspace(t0_min, t0_max, points)

    key, length = _fixed_length(args.fix)
    fixed = {"x0": length} if key == "x0" else {"width": length}
    params = _parse_pairs(args.prior_params)
    result = scan_t0(
        args.prior,
        args.kind,
        [float(t) for t in grid],
        quad=quad,
        threads=args.threads or config.threads,
        prior_params=params,
        **fixed,
    )
    output_format = args.format or config.output_format
    if args.out is None:
        if output_format == "json":
            print(json.dumps(result.to_dict(), indent=2))
        else:
            result.write_csv(sys.stdout)
    elif output_format == "json":
        result.to_json(args.out)
    else:
        result.to_csv(args.out)
    return EXIT_OK


def cmd_figure(args: argparse.Namespace, config: ConfigFile, quad: QuadratureConfig) -> int:
    bundle = figure_data(args.figure_id, quad, threads=args.threads or config.threads)
    path = bundle.to_csv(args.out)
    logger.info("wrote %s", path)
    return EXIT_OK


def cmd_rmse(args: argparse.Namespace, config: ConfigFile, quad: QuadratureConfig) -> int:
    prior = _build_prior(args)
    estimator = EstimatorSpec.constant_mean() if args.estimator == "mean" else EstimatorSpec.random_guess()
    rmse, stderr = weighted_rmse(prior, estimator, args.samples, args.seed, threads=args.threads or config.threads)
    print(f"rmse={rmse:.10g} stderr={stderr:.3g} prior_stddev={prior.stddev:.10g}")
    return EXIT_OK


def _add_prior_flags(parser: argparse.ArgumentParser, required: bool = True) -> None:
    parser.add_argument("--prior", choices=PRIOR_FAMILIES, required=required, help="prior family")
    parser.add_argument(
        "--prior-params",
        nargs="*",
        default=[],
        metavar="KEY=VALUE",
        help="W=<width> plus family parameters, e.g. center=0 or a=0,b=1,m=0.8",
    )
    parser.add_argument("--prior-file", help="CSV of x,density pairs for --prior tabulated")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="zzbound",
        description="Quantum Ziv-Zakai bounds, regime scans and figure data",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=__doc__,
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="log at DEBUG level")
    parser.add_argument("--config", help="JSON config file (see docs/config_schema.md)")
    parser.add_argument("--threads", type=int, help="worker threads (default: ZZBOUND_THREADS)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("constants", help="print the LPI constants and the uniform max gain")
    p.set_defaults(handler=cmd_constants)

    p = sub.add_parser("bound", help="evaluate a single bound")
    _add_prior_flags(p, required=False)
    p.add_argument("--kind", choices=BOUND_KINDS, required=True)
    p.add_argument("--scale", help="H (mean) or dH (spread) of the generator, e.g. H=1.5707963")
    p.add_argument("--fidelity", help="qsl, bhatta, coherent or a CSV file of z,F pairs (direct only)")
    p.set_defaults(handler=cmd_bound)

    p = sub.add_parser("scan", help="scan a bound over t0")
    _add_prior_flags(p)
    p.add_argument("--kind", choices=SCAN_KINDS, default="main")
    p.add_argument("--t0-min", type=float)
    p.add_argument("--t0-max", type=float)
    p.add_argument("--points", type=int)
    spacing = p.add_mutually_exclusive_group()
    spacing.add_argument("--log", dest="log", action="store_true", default=None, help="log-spaced grid")
    spacing.add_argument("--linear", dest="log", action="store_false", help="linearly spaced grid")
    p.add_argument("--fix", default="x0=1", help="x0=VALUE or W=VALUE (default: x0=1)")
    p.add_argument("--out", help="output file (default: stdout)")
    p.add_argument("--format", choices=["csv", "json"])
    p.set_defaults(handler=cmd_scan)

    p = sub.add_parser("figure", help="write the curves of a figure as CSV")
    p.add_argument("figure_id", choices=[f.value for f in FigureId])
    p.add_argument("--out", required=True)
    p.set_defaults(handler=cmd_figure)

    p = sub.add_parser("rmse", help="Monte-Carlo RMSE of a no-measurement estimator")
    _add_prior_flags(p)
    p.add_argument("--estimator", choices=["mean", "randomguess"], default="mean")
    p.add_argument("--samples", type=int, default=1_000_000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(handler=cmd_rmse)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    try:
        settings = get_settings()
        configure_logging("DEBUG" if args.verbose else settings.log_level)
        if args.threads is not None and args.threads < 1:
            raise UsageError("--threads must be at least 1")
        config = ConfigFile.load(args.config) if args.config else ConfigFile()
        quad = config.quad or QuadratureConfig.from_settings(settings)
        return args.handler(args, config, quad)
    except NumericalError as exc:
        print(f"{parser.prog}: numerical failure: {exc.report()}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (UsageError, DomainError, UnsupportedOperationError, ValidationError, OSError, ValueError) as exc:
        parser.print_usage(sys.stderr)
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
