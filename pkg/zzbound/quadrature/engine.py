"""Adaptive integration, bracketing root finding and golden-section search."""

import logging
import math
from typing import Callable, Iterable, NamedTuple

import numpy as np
from scipy import integrate as sp_integrate
from scipy import optimize as sp_optimize

from zzbound.core.config import QuadratureConfig
from zzbound.core.errors import BracketError, DomainError, QuadratureError

logger = logging.getLogger(__name__)

INV_PHI = (math.sqrt(5) - 1) / 2  # 1 / phi
INV_PHI_SQUARE = (3 - math.sqrt(5)) / 2  # 1 / phi^2

# QUADPACK ier codes
_IER_LIMIT = 1


class Integral(NamedTuple):
    value: float
    error: float


def _interior_points(points: Iterable[float], a: float, b: float) -> list[float]:
    # dqagpe rejects points on or outside the interval
    span = b - a
    eps = 1e-12 * span
    return sorted({float(p) for p in points if a + eps < p < b - eps})


def integrate(
    f: Callable[[float], float],
    a: float,
    b: float,
    cfg: QuadratureConfig | None = None,
    breakpoints: Iterable[float] = (),
) -> Integral:
    """
    Integrate ``f`` over ``[a, b]`` with adaptive Gauss-Kronrod subdivision.

    The interval is split at ``cfg.breakpoints`` and at the extra
    ``breakpoints`` before refinement starts.

    Args:
        f: Scalar integrand, finite on [a, b] except possibly at breakpoints.
        a: Lower limit.
        b: Upper limit, ``a <= b``.
        cfg: Tolerances and subdivision budget.
        breakpoints: Additional split points for this call.

    Returns:
        Integral(value, error) with ``error <= max(abs_tol, rel_tol * |value|)``.

    Raises:
        DomainError: If the limits are not finite or ``a > b``.
        QuadratureError: If the subdivision budget is exhausted.
    """
    cfg = cfg or QuadratureConfig()
    if not (math.isfinite(a) and math.isfinite(b)):
        raise DomainError(f"integration limits must be finite, got [{a}, {b}]")
    if a > b:
        raise DomainError(f"lower limit {a} exceeds upper limit {b}")
    if a == b:
        return Integral(0.0, 0.0)

    points = _interior_points([*cfg.breakpoints, *breakpoints], a, b)
    limit = max(cfg.max_subdivisions, len(points) + 2)
    value, error, info, *rest = sp_integrate.quad(
        f,
        a,
        b,
        epsabs=cfg.abs_tol,
        epsrel=cfg.rel_tol,
        limit=limit,
        points=points or None,
        full_output=1,
    )
    ier = 0
    message = ""
    if rest:
        message = rest[0]
        ier = _IER_LIMIT if "maximum number of subdivisions" in message else -1
    tolerance = max(cfg.abs_tol, cfg.rel_tol * abs(value))
    if ier == _IER_LIMIT and error > tolerance:
        raise QuadratureError(
            f"subdivision budget of {limit} exhausted on [{a:.6g}, {b:.6g}]",
            value=value,
            achieved_error=error,
            requested_tolerance=tolerance,
        )
    if message and error > tolerance:
        logger.warning(
            "quad on [%.6g, %.6g] missed tolerance %.3g: %s (error %.3g)", a, b, tolerance, message.strip(), error
        )
    elif message:
        logger.debug("quad on [%.6g, %.6g]: %s (error %.3g)", a, b, message.strip(), error)
    return Integral(float(value), float(abs(error)))


def find_root_bisect(
    g: Callable[[float], float], lo: float, hi: float, tol: float = 1e-12
) -> float:
    """
    Locate a sign change of ``g`` inside ``[lo, hi]`` by bisection.

    Raises:
        BracketError: If ``g(lo)`` and ``g(hi)`` have the same strict sign.
    """
    if tol <= 0:
        raise DomainError("bisection tolerance must be positive")
    g_lo, g_hi = g(lo), g(hi)
    if g_lo == 0.0:
        return lo
    if g_hi == 0.0:
        return hi
    if g_lo * g_hi > 0:
        raise BracketError(
            f"no sign change on [{lo:.6g}, {hi:.6g}]: g(lo)={g_lo:.3g}, g(hi)={g_hi:.3g}"
        )
    return float(sp_optimize.bisect(g, lo, hi, xtol=tol, rtol=4 * np.finfo(float).eps, maxiter=500))


def golden_section_max(
    f: Callable[[float], float], a: float, b: float, tol: float = 1e-5
) -> tuple[float, float]:
    """
    Golden-section search for the maximum of a unimodal ``f`` on ``[a, b]``.

    Returns:
        Tuple of (argmax, max) at the midpoint of the final bracket.
    """
    a, b = min(a, b), max(a, b)
    h = b - a
    if h <= tol:
        x = 0.5 * (a + b)
        return x, f(x)

    n = int(math.ceil(math.log(tol / h) / math.log(INV_PHI)))
    c = a + INV_PHI_SQUARE * h
    d = a + INV_PHI * h
    yc = f(c)
    yd = f(d)

    for _ in range(n - 1):
        if yc > yd:
            b = d
            d = c
            yd = yc
            h = INV_PHI * h
            c = a + INV_PHI_SQUARE * h
            yc = f(c)
        else:
            a = c
            c = d
            yc = yd
            h = INV_PHI * h
            d = a + INV_PHI * h
            yd = f(d)

    lo, hi = (a, d) if yc > yd else (c, b)
    x = 0.5 * (lo + hi)
    return x, f(x)
