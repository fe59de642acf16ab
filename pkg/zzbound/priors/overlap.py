"""Operations on priors: evaluation, moments, sampling and the overlap function E(z)."""

import logging
import math
from typing import NamedTuple

import numpy as np

from zzbound.core.config import QuadratureConfig
from zzbound.core.errors import DomainError, UnsupportedOperationError
from zzbound.priors.distribution import PriorDistribution
from zzbound.quadrature.engine import find_root_bisect, integrate

logger = logging.getLogger(__name__)


class Moments(NamedTuple):
    mean: float
    variance: float
    stddev: float


def _check_shift(z: float) -> float:
    z = float(z)
    if not math.isfinite(z):
        raise DomainError(f"shift z must be finite, got {z}")
    if z < 0:
        raise DomainError(f"shift z must be nonnegative, got {z}")
    return z


def evaluate_prior(prior: PriorDistribution, x: float) -> tuple[float, float]:
    """Return ``(pdf(x), cdf(x))``."""
    if not math.isfinite(x):
        raise DomainError(f"x must be finite, got {x}")
    return float(prior.pdf(x)), float(prior.cdf(x))


def support_diameter(prior: PriorDistribution, quad: QuadratureConfig | None = None) -> float:
    """Largest shift z at which E(z) can be nonzero."""
    quad = quad or QuadratureConfig()
    lo, hi = prior.support(quad.improper_cutoff_sigmas)
    return hi - lo


def overlap_E_quadrature(prior: PriorDistribution, z: float, quad: QuadratureConfig | None = None) -> float:
    """E(z) by direct quadrature of min[p(x), p(x+z)], ignoring closed forms."""
    quad = quad or QuadratureConfig()
    z = _check_shift(z)
    if z == 0:
        return 1.0
    lo, hi = prior.support(quad.improper_cutoff_sigmas)
    if z >= hi - lo:
        return 0.0

    # both densities are nonzero only on [lo, hi - z]
    points = [*prior.breakpoints, *(b - z for b in prior.breakpoints)]
    if prior.single_mode_flag:
        points.append(crossing_point_y0(prior, z))
    result = integrate(
        lambda x: min(prior.pdf(x), prior.pdf(x + z)), lo, hi - z, quad, breakpoints=points
    )
    return min(1.0, max(0.0, result.value))


def overlap_E(prior: PriorDistribution, z: float, quad: QuadratureConfig | None = None) -> float:
    """
    Overlap function E(z) = integral of min[p(x), p(x+z)] dx.

    Analytic forms are used for the uniform, Gaussian and two-block
    families; everything else goes through breakpoint-split quadrature.

    Raises:
        DomainError: If ``z`` is negative or not finite.
        QuadratureError: If the generic path does not converge.
    """
    z = _check_shift(z)
    if z == 0:
        return 1.0
    closed = prior.overlap_closed_form(z)
    if closed is not None:
        return closed
    return overlap_E_quadrature(prior, z, quad)


def crossing_point_y0(prior: PriorDistribution, z: float) -> float:
    """
    Point y0 where p(y0) = p(y0 + z) for a single-mode prior.

    For symmetric priors this is mu - z/2; otherwise the sign change of
    p(y) - p(y + z) is bracketed by [mode - z, mode] and bisected.

    Raises:
        UnsupportedOperationError: If the prior is not single-mode.
        BracketError: If no sign change is found.
    """
    if not prior.single_mode_flag:
        raise UnsupportedOperationError(
            f"crossing point is only defined for single-mode priors, not {prior.family.value}"
        )
    z = _check_shift(z)
    if z == 0:
        raise DomainError("crossing point needs a positive shift z")
    if prior.symmetric:
        return prior.mean_mu - z / 2

    mode = prior.mode()
    mu, w = prior.mean_mu, prior.width_W
    lo = max(mode - z, mu - 10 * w - z)
    hi = min(mode, mu + 10 * w)
    tol = 1e-13 * max(w, z)
    return find_root_bisect(lambda y: prior.pdf(y) - prior.pdf(y + z), lo, hi, tol)


def overlap_E_single_mode(prior: PriorDistribution, z: float) -> float:
    """E(z) = 1 - [cdf(y_m + z/2) - cdf(y_m - z/2)] with y_m = y0 + z/2."""
    z = _check_shift(z)
    if z == 0:
        if not prior.single_mode_flag:
            raise UnsupportedOperationError("single-mode overlap needs a single-mode prior")
        return 1.0
    y_m = crossing_point_y0(prior, z) + z / 2
    window = prior.cdf(y_m + z / 2) - prior.cdf(y_m - z / 2)
    return min(1.0, max(0.0, 1.0 - window))


def moments(prior: PriorDistribution) -> Moments:
    variance = prior.variance
    if not (math.isfinite(variance) and variance >= 0):
        raise DomainError(f"prior variance is not finite: {variance}")
    return Moments(prior.mean_mu, variance, math.sqrt(variance))


def sample_many(prior: PriorDistribution, rng: np.random.Generator, size: int) -> np.ndarray:
    """Draw ``size`` variates by inverse-cdf sampling."""
    if not isinstance(rng, np.random.Generator):
        raise DomainError("rng must be a numpy.random.Generator owned by the caller")
    return np.asarray(prior.ppf(rng.random(size)), dtype=float)


def sample(prior: PriorDistribution, rng: np.random.Generator) -> float:
    return float(sample_many(prior, rng, 1)[0])
