"""Prior-independent constants of the low-prior-information limit."""

import math

from zzbound.core.config import QuadratureConfig
from zzbound.quadrature.engine import Integral, integrate
from zzbound.speedlimit.fidelity import alpha_inverse, zz_bracket

# Published value of A; the cos^2 approximation of
# alpha^-1 used by constant_A() gives ~0.03936 instead.
A_PUBLISHED = 0.042


def qsl_bracket(t: float) -> float:
    """1 - sqrt(1 - alpha^-1(t)) on [0, 1]."""
    return zz_bracket(alpha_inverse(min(max(t, 0.0), 1.0)))


def variance_bracket(t: float) -> float:
    """1 - sin(pi t / 2), the bracket of the variance-based bound."""
    return 1.0 - math.sin(math.pi * t / 2)


def constant_A_integral(quad: QuadratureConfig | None = None) -> Integral:
    return integrate(lambda t: t * qsl_bracket(t), 0.0, 1.0, quad)


def constant_A(quad: QuadratureConfig | None = None) -> float:
    """A = integral_0^1 t [1 - sqrt(1 - alpha^-1(t))] dt with the implemented alpha^-1."""
    return constant_A_integral(quad).value


def constant_A_closed_form() -> float:
    """A via u = sqrt(t): 1/2 - 2 (3/a^2 - 6/a^4) with a = pi/2."""
    a = math.pi / 2
    return 0.5 - 2.0 * (3.0 / a**2 - 6.0 / a**4)


def constant_A_prime() -> float:
    return 0.5 - 4.0 / math.pi**2


def constant_A_prime_quadrature(quad: QuadratureConfig | None = None) -> float:
    return integrate(lambda t: t * variance_bracket(t), 0.0, 1.0, quad).value
