"""Monte-Carlo weighted RMSE of no-measurement baseline estimators."""

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, NamedTuple

import numpy as np

from zzbound.core.config import get_settings
from zzbound.core.errors import DomainError
from zzbound.priors.distribution import PriorDistribution
from zzbound.priors.overlap import sample_many

MIN_SAMPLES = 1000


class EstimatorKind(str, Enum):
    CONSTANT_MEAN = "mean"
    RANDOM_GUESS_FROM_PRIOR = "randomguess"
    CUSTOM = "custom"


@dataclass(frozen=True)
class EstimatorSpec:
    """
    An estimator X(y) evaluated without a measurement: the outcome y is
    the true value x itself.

    ``CONSTANT_MEAN`` always answers the prior mean (RMSE = ΔX).
    ``RANDOM_GUESS_FROM_PRIOR`` draws an independent guess from the prior
    (RMSE = sqrt(2) ΔX). ``CUSTOM`` calls ``func`` on an array of outcomes.
    """

    kind: EstimatorKind
    func: Callable[[np.ndarray], np.ndarray] | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if self.kind is EstimatorKind.CUSTOM and self.func is None:
            raise DomainError("custom estimator needs a callable")

    @classmethod
    def constant_mean(cls) -> "EstimatorSpec":
        return cls(EstimatorKind.CONSTANT_MEAN)

    @classmethod
    def random_guess(cls) -> "EstimatorSpec":
        return cls(EstimatorKind.RANDOM_GUESS_FROM_PRIOR)

    @classmethod
    def custom(cls, func: Callable[[np.ndarray], np.ndarray]) -> "EstimatorSpec":
        return cls(EstimatorKind.CUSTOM, func)

    def estimate(self, y: np.ndarray, prior: PriorDistribution, rng: np.random.Generator) -> np.ndarray:
        if self.kind is EstimatorKind.CONSTANT_MEAN:
            return np.full_like(y, prior.mean_mu)
        if self.kind is EstimatorKind.RANDOM_GUESS_FROM_PRIOR:
            return sample_many(prior, rng, y.size)
        return np.broadcast_to(np.asarray(self.func(y), dtype=float), y.shape)


class _Tally(NamedTuple):
    count: int
    mean: float
    m2: float


def _merge(a: _Tally, b: _Tally) -> _Tally:
    # pairwise update of mean and sum of squared deviations
    n = a.count + b.count
    delta = b.mean - a.mean
    mean = a.mean + delta * b.count / n
    m2 = a.m2 + b.m2 + delta * delta * a.count * b.count / n
    return _Tally(n, mean, m2)


def _streams(rng_state: int | np.random.SeedSequence | np.random.Generator, n: int) -> list[np.random.Generator]:
    if isinstance(rng_state, np.random.Generator):
        return rng_state.spawn(n)
    seq = rng_state if isinstance(rng_state, np.random.SeedSequence) else np.random.SeedSequence(rng_state)
    return [np.random.default_rng(child) for child in seq.spawn(n)]


def weighted_rmse(
    prior: PriorDistribution,
    estimator: EstimatorSpec,
    n_samples: int,
    rng_state: int | np.random.SeedSequence | np.random.Generator,
    chunk_size: int | None = None,
    threads: int | None = None,
) -> tuple[float, float]:
    """
    Monte-Carlo estimate of sqrt(E[(X - x)^2]) with x drawn from the prior.

    Samples are drawn in chunks of ``chunk_size``; chunk k always uses the
    k-th child stream of ``rng_state``, so the result depends only on the
    seed and the chunk size, not on ``threads``.

    Returns:
        Tuple of (rmse, standard error of rmse).

    Raises:
        DomainError: If ``n_samples`` is below 1000.
    """
    if n_samples < MIN_SAMPLES:
        raise DomainError(f"need at least {MIN_SAMPLES} samples, got {n_samples}")
    settings = get_settings()
    chunk_size = chunk_size or settings.mc_chunk_size
    threads = threads or settings.threads

    sizes = [chunk_size] * (n_samples // chunk_size)
    if n_samples % chunk_size:
        sizes.append(n_samples % chunk_size)
    streams = _streams(rng_state, len(sizes))

    def run_chunk(size: int, rng: np.random.Generator) -> _Tally:
        x = sample_many(prior, rng, size)
        sq = (estimator.estimate(x, prior, rng) - x) ** 2
        mean = float(np.mean(sq))
        return _Tally(size, mean, float(np.sum((sq - mean) ** 2)))

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            tallies = list(pool.map(run_chunk, sizes, streams))
    else:
        tallies = [run_chunk(size, rng) for size, rng in zip(sizes, streams)]

    total = tallies[0]
    for tally in tallies[1:]:
        total = _merge(total, tally)

    mse = total.mean
    rmse = math.sqrt(mse)
    mse_stderr = math.sqrt(total.m2 / (total.count - 1) / total.count)
    # delta method
    stderr = mse_stderr / (2.0 * rmse) if rmse > 0 else 0.0
    return rmse, stderr
