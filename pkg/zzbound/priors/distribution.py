"""Prior distribution families on the real line."""

import math
from abc import ABC, abstractmethod
from dataclasses import dataclass, replace
from enum import Enum
from functools import cached_property
from typing import Any, ClassVar

import numpy as np
from numpy.typing import ArrayLike
from scipy import special

from zzbound.core.errors import DomainError, UnsupportedOperationError
from zzbound.quadrature.engine import golden_section_max, integrate

SQRT_2PI = math.sqrt(2.0 * math.pi)


class PriorFamily(str, Enum):
    UNIFORM = "uniform"
    GAUSSIAN = "gaussian"
    BIMODAL_TWO_BLOCK = "bimodal"
    TRIANGULAR_ASYMMETRIC = "triangular"
    TABULATED = "tabulated"


def _as_output(x: ArrayLike, values: np.ndarray) -> Any:
    """Return a Python float for scalar input, the array otherwise."""
    if np.ndim(x) == 0:
        return float(values)
    return values


def _require_positive(name: str, value: float) -> None:
    if not (math.isfinite(value) and value > 0):
        raise DomainError(f"{name} must be positive and finite, got {value}")


def _require_finite(name: str, value: float) -> None:
    if not math.isfinite(value):
        raise DomainError(f"{name} must be finite, got {value}")


class PriorDistribution(ABC):
    """
    A normalized probability density p(x) on the real line.

    Subclasses are frozen dataclasses, so instances are immutable and can be
    shared between workers. ``width_W`` is the uncertainty scale W used to
    form t0 = W / x0.
    """

    family: ClassVar[PriorFamily]

    @abstractmethod
    def pdf(self, x: ArrayLike) -> Any: ...

    @abstractmethod
    def cdf(self, x: ArrayLike) -> Any: ...

    @abstractmethod
    def ppf(self, u: ArrayLike) -> Any:
        """Inverse cdf on [0, 1]."""

    @property
    @abstractmethod
    def width_W(self) -> float: ...

    @property
    @abstractmethod
    def mean_mu(self) -> float: ...

    @property
    @abstractmethod
    def variance(self) -> float: ...

    @property
    @abstractmethod
    def single_mode_flag(self) -> bool: ...

    @property
    def symmetric(self) -> bool:
        return False

    @property
    def breakpoints(self) -> tuple[float, ...]:
        return ()

    @abstractmethod
    def support(self, cutoff_sigmas: float = 12.0) -> tuple[float, float]:
        """Interval outside which the density is zero (or truncated)."""

    @abstractmethod
    def rescaled(self, width: float) -> "PriorDistribution":
        """Same shape and mean, with uncertainty scale ``width``."""

    def overlap_closed_form(self, z: float) -> float | None:
        """Analytic E(z) when the family has one, else None."""
        return None

    def mode(self) -> float:
        if not self.single_mode_flag:
            raise UnsupportedOperationError(f"{self.family.value} prior has no unique mode")
        lo, hi = self.support()
        x, _ = golden_section_max(lambda v: float(self.pdf(v)), lo, hi, tol=1e-12 * (hi - lo))
        return x

    @property
    def stddev(self) -> float:
        return math.sqrt(self.variance)


@dataclass(frozen=True)
class UniformPrior(PriorDistribution):
    """Flat density 1/W on [c - W/2, c + W/2]."""

    width: float = 1.0
    center: float = 0.0

    family: ClassVar[PriorFamily] = PriorFamily.UNIFORM

    def __post_init__(self) -> None:
        _require_positive("width W", self.width)
        _require_finite("center c", self.center)

    @property
    def lo(self) -> float:
        return self.center - self.width / 2

    @property
    def hi(self) -> float:
        return self.center + self.width / 2

    def pdf(self, x: ArrayLike) -> Any:
        x_arr = np.asarray(x, dtype=float)
        inside = (x_arr >= self.lo) & (x_arr <= self.hi)
        return _as_output(x, np.where(inside, 1.0 / self.width, 0.0))

    def cdf(self, x: ArrayLike) -> Any:
        x_arr = np.asarray(x, dtype=float)
        return _as_output(x, np.clip((x_arr - self.lo) / self.width, 0.0, 1.0))

    def ppf(self, u: ArrayLike) -> Any:
        u_arr = np.asarray(u, dtype=float)
        return _as_output(u, self.lo + u_arr * self.width)

    @property
    def width_W(self) -> float:
        return self.width

    @property
    def mean_mu(self) -> float:
        return self.center

    @property
    def variance(self) -> float:
        return self.width**2 / 12.0

    @property
    def single_mode_flag(self) -> bool:
        # plateau: every interior point is a local maximum
        return False

    @property
    def symmetric(self) -> bool:
        return True

    @property
    def breakpoints(self) -> tuple[float, ...]:
        return (self.lo, self.hi)

    def support(self, cutoff_sigmas: float = 12.0) -> tuple[float, float]:
        return self.lo, self.hi

    def rescaled(self, width: float) -> "UniformPrior":
        return replace(self, width=width)

    def overlap_closed_form(self, z: float) -> float:
        return max(0.0, 1.0 - z / self.width)


@dataclass(frozen=True)
class GaussianPrior(PriorDistribution):
    """Normal density; its width W is the standard deviation."""

    mean: float = 0.0
    std: float = 1.0

    family: ClassVar[PriorFamily] = PriorFamily.GAUSSIAN

    def __post_init__(self) -> None:
        _require_finite("mean", self.mean)
        _require_positive("standard deviation", self.std)

    def pdf(self, x: ArrayLike) -> Any:
        u = (np.asarray(x, dtype=float) - self.mean) / self.std
        return _as_output(x, np.exp(-0.5 * u * u) / (SQRT_2PI * self.std))

    def cdf(self, x: ArrayLike) -> Any:
        u = (np.asarray(x, dtype=float) - self.mean) / self.std
        return _as_output(x, special.ndtr(u))

    def ppf(self, u: ArrayLike) -> Any:
        return _as_output(u, self.mean + self.std * special.ndtri(np.asarray(u, dtype=float)))

    @property
    def width_W(self) -> float:
        return self.std

    @property
    def mean_mu(self) -> float:
        return self.mean

    @property
    def variance(self) -> float:
        return self.std**2

    @property
    def single_mode_flag(self) -> bool:
        return True

    @property
    def symmetric(self) -> bool:
        return True

    def mode(self) -> float:
        return self.mean

    def support(self, cutoff_sigmas: float = 12.0) -> tuple[float, float]:
        return self.mean - cutoff_sigmas * self.std, self.mean + cutoff_sigmas * self.std

    def rescaled(self, width: float) -> "GaussianPrior":
        return replace(self, std=width)

    def overlap_closed_form(self, z: float) -> float:
        return float(special.erfc(z / (2.0 * math.sqrt(2.0) * self.std)))


@dataclass(frozen=True)
class BimodalTwoBlockPrior(PriorDistribution):
    """
    Two flat blocks of width W/2 and height 1/W centred at c -/+ W/2.

    Support is [c - 3W/4, c - W/4] U [c + W/4, c + 3W/4], so that
    Delta X = W * sqrt(13/48).
    """

    width: float = 1.0
    center: float = 0.0

    family: ClassVar[PriorFamily] = PriorFamily.BIMODAL_TWO_BLOCK

    def __post_init__(self) -> None:
        _require_positive("width W", self.width)
        _require_finite("center c", self.center)

    @property
    def edges(self) -> tuple[float, float, float, float]:
        c, w = self.center, self.width
        return (c - 0.75 * w, c - 0.25 * w, c + 0.25 * w, c + 0.75 * w)

    def pdf(self, x: ArrayLike) -> Any:
        x_arr = np.asarray(x, dtype=float)
        a0, a1, b0, b1 = self.edges
        inside = ((x_arr >= a0) & (x_arr <= a1)) | ((x_arr >= b0) & (x_arr <= b1))
        return _as_output(x, np.where(inside, 1.0 / self.width, 0.0))

    def cdf(self, x: ArrayLike) -> Any:
        x_arr = np.asarray(x, dtype=float)
        a0, a1, b0, b1 = self.edges
        left = np.clip(x_arr, a0, a1) - a0
        right = np.clip(x_arr, b0, b1) - b0
        return _as_output(x, (left + right) / self.width)

    def ppf(self, u: ArrayLike) -> Any:
        u_arr = np.asarray(u, dtype=float)
        a0, _, b0, _ = self.edges
        values = np.where(u_arr < 0.5, a0 + u_arr * self.width, b0 + (u_arr - 0.5) * self.width)
        return _as_output(u, values)

    @property
    def width_W(self) -> float:
        return self.width

    @property
    def mean_mu(self) -> float:
        return self.center

    @property
    def variance(self) -> float:
        return 13.0 * self.width**2 / 48.0

    @property
    def single_mode_flag(self) -> bool:
        return False

    @property
    def symmetric(self) -> bool:
        return True

    @property
    def breakpoints(self) -> tuple[float, ...]:
        return self.edges

    def support(self, cutoff_sigmas: float = 12.0) -> tuple[float, float]:
        a0, _, _, b1 = self.edges
        return a0, b1

    def rescaled(self, width: float) -> "BimodalTwoBlockPrior":
        return replace(self, width=width)

    def overlap_closed_form(self, z: float) -> float:
        half = self.width / 2
        same_block = 2.0 * max(0.0, half - z)
        cross_block = max(0.0, half - abs(self.width - z))
        return (same_block + cross_block) / self.width


@dataclass(frozen=True)
class TriangularPrior(PriorDistribution):
    """Triangular density on [a, b] with mode m; W is the support length."""

    a: float = 0.0
    b: float = 1.0
    m: float = 0.5

    family: ClassVar[PriorFamily] = PriorFamily.TRIANGULAR_ASYMMETRIC

    def __post_init__(self) -> None:
        for name in ("a", "b", "m"):
            _require_finite(name, getattr(self, name))
        if not self.a < self.m < self.b:
            raise DomainError(f"triangular prior needs a < m < b, got ({self.a}, {self.m}, {self.b})")

    @property
    def span(self) -> float:
        return self.b - self.a

    def pdf(self, x: ArrayLike) -> Any:
        x_arr = np.asarray(x, dtype=float)
        a, b, m, span = self.a, self.b, self.m, self.span
        rising = 2.0 * (x_arr - a) / (span * (m - a))
        falling = 2.0 * (b - x_arr) / (span * (b - m))
        values = np.where(x_arr <= m, rising, falling)
        return _as_output(x, np.where((x_arr >= a) & (x_arr <= b), values, 0.0))

    def cdf(self, x: ArrayLike) -> Any:
        x_arr = np.clip(np.asarray(x, dtype=float), self.a, self.b)
        a, b, m, span = self.a, self.b, self.m, self.span
        left = (x_arr - a) ** 2 / (span * (m - a))
        right = 1.0 - (b - x_arr) ** 2 / (span * (b - m))
        return _as_output(x, np.where(x_arr <= m, left, right))

    def ppf(self, u: ArrayLike) -> Any:
        u_arr = np.asarray(u, dtype=float)
        a, b, m, span = self.a, self.b, self.m, self.span
        u_mode = (m - a) / span
        left = a + np.sqrt(np.clip(u_arr, 0.0, None) * span * (m - a))
        right = b - np.sqrt(np.clip(1.0 - u_arr, 0.0, None) * span * (b - m))
        return _as_output(u, np.where(u_arr < u_mode, left, right))

    @property
    def width_W(self) -> float:
        return self.span

    @property
    def mean_mu(self) -> float:
        return (self.a + self.b + self.m) / 3.0

    @property
    def variance(self) -> float:
        a, b, m = self.a, self.b, self.m
        return (a * a + b * b + m * m - a * b - a * m - b * m) / 18.0

    @property
    def single_mode_flag(self) -> bool:
        return True

    @property
    def symmetric(self) -> bool:
        return math.isclose(self.m - self.a, self.b - self.m, rel_tol=1e-12)

    @property
    def breakpoints(self) -> tuple[float, ...]:
        return (self.a, self.m, self.b)

    def mode(self) -> float:
        return self.m

    def support(self, cutoff_sigmas: float = 12.0) -> tuple[float, float]:
        return self.a, self.b

    def rescaled(self, width: float) -> "TriangularPrior":
        _require_positive("width W", width)
        mu, s = self.mean_mu, width / self.span
        return TriangularPrior(a=mu + (self.a - mu) * s, b=mu + (self.b - mu) * s, m=mu + (self.m - mu) * s)


@dataclass(frozen=True)
class TabulatedPrior(PriorDistribution):
    """
    Piecewise-linear density through the points (xs[i], ps[i]).

    The density is zero outside [xs[0], xs[-1]] and is renormalized to unit
    mass on construction. W is the standard deviation.
    """

    xs: tuple[float, ...]
    ps: tuple[float, ...]

    family: ClassVar[PriorFamily] = PriorFamily.TABULATED

    def __post_init__(self) -> None:
        xs = np.asarray(self.xs, dtype=float)
        ps = np.asarray(self.ps, dtype=float)
        if xs.ndim != 1 or xs.shape != ps.shape or xs.size < 2:
            raise DomainError("tabulated prior needs at least two (x, density) pairs of equal length")
        if not (np.all(np.isfinite(xs)) and np.all(np.isfinite(ps))):
            raise DomainError("tabulated prior contains non-finite values")
        if np.any(np.diff(xs) <= 0):
            raise DomainError("tabulated x values must be strictly increasing")
        if np.any(ps < 0):
            raise DomainError("tabulated density values must be nonnegative")
        mass = float(np.sum(0.5 * (ps[1:] + ps[:-1]) * np.diff(xs)))
        if not mass > 0:
            raise DomainError("tabulated density is not normalizable (zero mass)")
        object.__setattr__(self, "xs", tuple(float(v) for v in xs))
        object.__setattr__(self, "ps", tuple(float(v) for v in ps / mass))

    @cached_property
    def _x(self) -> np.ndarray:
        return np.asarray(self.xs)

    @cached_property
    def _p(self) -> np.ndarray:
        return np.asarray(self.ps)

    @cached_property
    def _cum(self) -> np.ndarray:
        segments = 0.5 * (self._p[1:] + self._p[:-1]) * np.diff(self._x)
        return np.concatenate(([0.0], np.cumsum(segments)))

    def pdf(self, x: ArrayLike) -> Any:
        return _as_output(x, np.interp(np.asarray(x, dtype=float), self._x, self._p, left=0.0, right=0.0))

    def cdf(self, x: ArrayLike) -> Any:
        x_arr = np.clip(np.asarray(x, dtype=float), self._x[0], self._x[-1])
        i = np.clip(np.searchsorted(self._x, x_arr, side="right") - 1, 0, len(self._x) - 2)
        h = self._x[i + 1] - self._x[i]
        d = x_arr - self._x[i]
        slope = (self._p[i + 1] - self._p[i]) / h
        values = self._cum[i] + self._p[i] * d + 0.5 * slope * d * d
        return _as_output(x, np.clip(values, 0.0, 1.0))

    def ppf(self, u: ArrayLike) -> Any:
        u_arr = np.clip(np.asarray(u, dtype=float), 0.0, 1.0) * self._cum[-1]
        i = np.clip(np.searchsorted(self._cum, u_arr, side="right") - 1, 0, len(self._x) - 2)
        h = self._x[i + 1] - self._x[i]
        p0 = self._p[i]
        slope = (self._p[i + 1] - p0) / h
        r = u_arr - self._cum[i]
        # solve 0.5*slope*d^2 + p0*d = r on each segment
        denom = p0 + np.sqrt(np.clip(p0 * p0 + 2.0 * slope * r, 0.0, None))
        d = 2.0 * r / np.where(denom > 0, denom, 1.0)
        return _as_output(u, self._x[i] + np.clip(d, 0.0, h))

    @cached_property
    def _moments(self) -> tuple[float, float]:
        lo, hi = self._x[0], self._x[-1]
        points = self.xs[1:-1]
        mu = integrate(lambda v: v * self.pdf(v), lo, hi, breakpoints=points).value
        var = integrate(lambda v: (v - mu) ** 2 * self.pdf(v), lo, hi, breakpoints=points).value
        return mu, var

    @property
    def width_W(self) -> float:
        return self.stddev

    @property
    def mean_mu(self) -> float:
        return self._moments[0]

    @property
    def variance(self) -> float:
        return self._moments[1]

    @cached_property
    def single_mode_flag(self) -> bool:  # type: ignore[override]
        positive = np.nonzero(self._p > 0)[0]
        core = np.diff(self._p[positive[0] : positive[-1] + 1])
        if np.any(core == 0):
            return False
        # strictly up, then strictly down
        falling = np.nonzero(core < 0)[0]
        return falling.size == 0 or not np.any(core[falling[0] :] > 0)

    @property
    def breakpoints(self) -> tuple[float, ...]:
        return self.xs

    def mode(self) -> float:
        if not self.single_mode_flag:
            raise UnsupportedOperationError("tabulated prior is not single-mode")
        return float(self._x[int(np.argmax(self._p))])

    def support(self, cutoff_sigmas: float = 12.0) -> tuple[float, float]:
        return self.xs[0], self.xs[-1]

    def rescaled(self, width: float) -> "TabulatedPrior":
        _require_positive("width W", width)
        mu, s = self.mean_mu, width / self.width_W
        xs = tuple(mu + (x - mu) * s for x in self.xs)
        return TabulatedPrior(xs=xs, ps=tuple(p / s for p in self.ps))


def make_prior(family: PriorFamily | str, width: float, **params: float) -> PriorDistribution:
    """
    Build a prior of ``family`` whose uncertainty scale is ``width``.

    Extra keyword parameters: ``center`` (uniform, bimodal), ``mean``
    (gaussian), ``a``/``b``/``m`` giving the triangular shape before
    rescaling.
    """
    family = PriorFamily(family)
    _require_positive("width W", width)
    if family is PriorFamily.UNIFORM:
        return UniformPrior(width=width, center=params.get("center", 0.0))
    if family is PriorFamily.GAUSSIAN:
        return GaussianPrior(mean=params.get("mean", 0.0), std=width)
    if family is PriorFamily.BIMODAL_TWO_BLOCK:
        return BimodalTwoBlockPrior(width=width, center=params.get("center", 0.0))
    if family is PriorFamily.TRIANGULAR_ASYMMETRIC:
        shape = TriangularPrior(a=params.get("a", 0.0), b=params.get("b", 1.0), m=params.get("m", 0.8))
        return shape.rescaled(width)
    raise UnsupportedOperationError("tabulated priors are built from data, use load_tabulated_prior")
