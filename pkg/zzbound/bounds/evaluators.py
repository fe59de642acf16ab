"""
Ziv-Zakai lower bounds on the weighted RMSE.

Every z-integral is written in the scaled variable t = z / x0 and then
restricted to the part of [0, 1] where E(x0 t) can be nonzero. That piece
is mapped onto the unit interval before integrating, so the absolute
tolerance keeps its meaning when the prior is much narrower than x0.
"""

import logging
import math
from typing import Callable

from zzbound.bounds.types import BoundKind, BoundResult
from zzbound.bounds.constants import constant_A_integral, qsl_bracket, variance_bracket
from zzbound.core.config import QuadratureConfig
from zzbound.core.errors import DomainError, UnsupportedOperationError
from zzbound.priors.distribution import PriorDistribution
from zzbound.priors.overlap import overlap_E, support_diameter
from zzbound.quadrature.engine import Integral, integrate
from zzbound.speedlimit.fidelity import FidelityModel, alpha_inverse, zz_bracket

logger = logging.getLogger(__name__)

# tables with more breakpoints than this get no kink hints
_MAX_KINK_SOURCES = 16


def heisenberg_length(generator_scale: float) -> float:
    """x0 = pi / (2 H), or delta0 = pi / (2 dH) when given the spread."""
    if not (math.isfinite(generator_scale) and generator_scale > 0):
        raise DomainError(f"generator scale must be positive and finite, got {generator_scale}")
    return math.pi / (2.0 * generator_scale)


def _root_with_error(scale: float, integral: Integral) -> tuple[float, float]:
    """sqrt(scale * I) and its first-order error."""
    squared = max(scale * integral.value, 0.0)
    value = math.sqrt(squared)
    abs_err = scale * integral.error
    if value > 0:
        return value, abs_err / (2.0 * value)
    return value, math.sqrt(abs_err)


def _kink_shifts(prior: PriorDistribution) -> list[float]:
    """Shifts z at which E(z) may have a kink: differences of density breakpoints."""
    points = prior.breakpoints
    if len(points) > _MAX_KINK_SOURCES:
        return []
    return sorted({abs(b - a) for a in points for b in points if b != a})


def _t_range(prior: PriorDistribution, length: float, quad: QuadratureConfig) -> float:
    return min(1.0, support_diameter(prior, quad) / length)


def _weighted_overlap_integral(
    prior: PriorDistribution,
    length: float,
    bracket: Callable[[float], float],
    quad: QuadratureConfig,
) -> tuple[Integral, float]:
    """
    I = integral_0^1 t E(length t) bracket(t) dt.

    Returns:
        Tuple of (I with error, upper end of the effective t-range).
    """
    t_hi = _t_range(prior, length, quad)
    kinks = [z / (length * t_hi) for z in _kink_shifts(prior)]

    def integrand(s: float) -> float:
        t = t_hi * s
        return s * overlap_E(prior, length * t, quad) * bracket(t)

    scaled = integrate(integrand, 0.0, 1.0, quad, breakpoints=kinks)
    return Integral(t_hi**2 * scaled.value, t_hi**2 * scaled.error), t_hi


def zz_bound_direct(
    prior: PriorDistribution, fidelity: FidelityModel, quad: QuadratureConfig | None = None
) -> BoundResult:
    """
    Quantum Ziv-Zakai bound with an arbitrary fidelity model:
    sqrt{ 1/2 integral_0^inf z E(z) [1 - sqrt(1 - F(z))] dz }.
    """
    quad = quad or QuadratureConfig()
    z_hi = support_diameter(prior, quad)
    if fidelity.cutoff is not None:
        z_hi = min(z_hi, fidelity.cutoff)
    kinks = [z / z_hi for z in (*_kink_shifts(prior), *fidelity.breakpoints) if 0 < z < z_hi]

    def integrand(s: float) -> float:
        z = z_hi * s
        return s * overlap_E(prior, z, quad) * zz_bracket(fidelity(z))

    scaled = integrate(integrand, 0.0, 1.0, quad, breakpoints=kinks)
    value, err = _root_with_error(0.5 * z_hi**2, scaled)
    length = fidelity.cutoff if fidelity.cutoff is not None else math.nan
    logger.debug("direct ZZ bound %s / %s: %.12g", prior.family.value, fidelity.kind.value, value)
    return BoundResult(BoundKind.DIRECT_ZZ, value, err, prior.width_W / length, length)


def main_lower_bound(
    prior: PriorDistribution, H_mean: float, quad: QuadratureConfig | None = None
) -> BoundResult:
    """
    Speed-limit bound Delta Y_LB =
    sqrt{ x0^2/2 integral_0^1 t E(x0 t) [1 - sqrt(1 - alpha^-1(t))] dt }, x0 = pi/(2H).
    """
    quad = quad or QuadratureConfig()
    x0 = heisenberg_length(H_mean)
    integral, _ = _weighted_overlap_integral(prior, x0, qsl_bracket, quad)
    value, err = _root_with_error(0.5 * x0**2, integral)
    logger.debug("main bound %s t0=%.6g: %.12g", prior.family.value, prior.width_W / x0, value)
    return BoundResult(BoundKind.MAIN_QSL, value, err, prior.width_W / x0, x0)


def variance_bound(
    prior: PriorDistribution, H_std: float, quad: QuadratureConfig | None = None
) -> BoundResult:
    """Bound with delta0 = pi/(2 dH) and the bracket 1 - sin(pi t / 2)."""
    quad = quad or QuadratureConfig()
    delta0 = heisenberg_length(H_std)
    integral, _ = _weighted_overlap_integral(prior, delta0, variance_bracket, quad)
    value, err = _root_with_error(0.5 * delta0**2, integral)
    return BoundResult(BoundKind.VARIANCE_BHATTA, value, err, prior.width_W / delta0, delta0)


def uniform_closed_form(
    t0: float, H_mean: float, quad: QuadratureConfig | None = None
) -> BoundResult:
    """
    Uniform-prior bound x0 sqrt{ [A(t0) - B(t0)/t0] / 2 } where A and B are the
    first and second t-moments of the bracket up to min(t0, 1).
    """
    quad = quad or QuadratureConfig()
    if not (math.isfinite(t0) and t0 > 0):
        raise DomainError(f"t0 must be positive and finite, got {t0}")
    x0 = heisenberg_length(H_mean)
    tau = min(t0, 1.0)
    # t = tau s keeps both moments of order one
    a_scaled = integrate(lambda s: s * qsl_bracket(tau * s), 0.0, 1.0, quad)
    b_scaled = integrate(lambda s: s * s * qsl_bracket(tau * s), 0.0, 1.0, quad)
    ratio = tau / t0
    combined = Integral(
        tau**2 * (a_scaled.value - ratio * b_scaled.value),
        tau**2 * (a_scaled.error + ratio * b_scaled.error),
    )
    value, err = _root_with_error(0.5 * x0**2, combined)
    return BoundResult(BoundKind.UNIFORM_CLOSED_FORM, value, err, t0, x0)


def lpi_benchmark(H_mean: float, quad: QuadratureConfig | None = None) -> BoundResult:
    """Prior-independent Heisenberg benchmark x0 sqrt(A/2)."""
    x0 = heisenberg_length(H_mean)
    value, err = _root_with_error(0.5 * x0**2, constant_A_integral(quad))
    return BoundResult(BoundKind.LPI_BENCHMARK, value, err, math.inf, x0)


def appendix_bound(
    prior: PriorDistribution, H_mean: float, quad: QuadratureConfig | None = None
) -> BoundResult:
    """
    Stronger bound from the two-hypothesis error probability:
    sqrt{ x0^2/4 integral_0^1 dt t integral dx [p(x) + p(x+x0 t)]
          [1 - sqrt(1 - 4 p(x) p(x+x0 t) / (p(x) + p(x+x0 t))^2 alpha^-1(t))] }.

    The inner x-integral is recomputed at every outer node with tolerances
    ten times tighter. Where p(x) + p(x + x0 t) = 0 the integrand is 0.
    """
    quad = quad or QuadratureConfig()
    inner_quad = quad.tightened(10.0)
    x0 = heisenberg_length(H_mean)
    t_hi = _t_range(prior, x0, quad)
    lo, hi = prior.support(quad.improper_cutoff_sigmas)
    kinks = [z / (x0 * t_hi) for z in _kink_shifts(prior)]
    worst_inner = 0.0

    def inner(t: float) -> float:
        nonlocal worst_inner
        z = x0 * t
        if z >= hi - lo:
            return 0.0
        a = alpha_inverse(t)

        def slice_integrand(x: float) -> float:
            p, q = prior.pdf(x), prior.pdf(x + z)
            total = p + q
            if total <= 0.0:
                return 0.0
            return total * (1.0 - math.sqrt(max(0.0, 1.0 - 4.0 * p * q / (total * total) * a)))

        # the product p(x) p(x+z) vanishes outside [lo, hi - z]
        points = [*prior.breakpoints, *(b - z for b in prior.breakpoints)]
        result = integrate(slice_integrand, lo, hi - z, inner_quad, breakpoints=points)
        worst_inner = max(worst_inner, result.error)
        return result.value

    outer = integrate(lambda s: s * inner(t_hi * s), 0.0, 1.0, quad, breakpoints=kinks)
    integral = Integral(t_hi**2 * outer.value, t_hi**2 * (outer.error + 0.5 * worst_inner))
    value, err = _root_with_error(0.25 * x0**2, integral)
    logger.debug("appendix bound %s t0=%.6g: %.12g", prior.family.value, prior.width_W / x0, value)
    return BoundResult(BoundKind.APPENDIX_QSL, value, err, prior.width_W / x0, x0)


def hpi_limit_single_mode(prior: PriorDistribution, quad: QuadratureConfig | None = None) -> float:
    """
    sqrt(Delta^2 X + (y_m - mu)^2), with y_m the mode of a single-mode prior.

    Matches the t0 -> 0 limit of the main bound only for symmetric priors;
    skewed priors need hpi_limit_exact.

    Raises:
        UnsupportedOperationError: If the prior is not single-mode.
    """
    if not prior.single_mode_flag:
        raise UnsupportedOperationError(
            f"high-prior-information limit needs a single-mode prior, not {prior.family.value}"
        )
    y_m = prior.mode()
    return math.sqrt(prior.variance + (y_m - prior.mean_mu) ** 2)


def hpi_limit_exact(prior: PriorDistribution, quad: QuadratureConfig | None = None) -> float:
    """t0 -> 0 limit of the main bound, sqrt{ 1/2 integral_0^inf z E(z) dz }, for any prior."""
    quad = quad or QuadratureConfig()
    diameter = support_diameter(prior, quad)
    kinks = [z / diameter for z in _kink_shifts(prior)]
    scaled = integrate(lambda s: s * overlap_E(prior, diameter * s, quad), 0.0, 1.0, quad, breakpoints=kinks)
    return math.sqrt(0.5 * diameter**2 * scaled.value)


def hpi_slope(prior: PriorDistribution, quad: QuadratureConfig | None = None) -> float:
    """High-prior-information asymptote per unit width W."""
    return hpi_limit_exact(prior, quad) / prior.width_W
