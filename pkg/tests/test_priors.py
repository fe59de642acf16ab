import math
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zzbound.core.errors import DomainError, UnsupportedOperationError
from zzbound.priors import (
    BimodalTwoBlockPrior,
    GaussianPrior,
    PriorFamily,
    TabulatedPrior,
    TriangularPrior,
    UniformPrior,
    crossing_point_y0,
    evaluate_prior,
    load_tabulated_prior,
    make_prior,
    moments,
    overlap_E,
    overlap_E_quadrature,
    overlap_E_single_mode,
    sample,
    sample_many,
    support_diameter,
)


def test_uniform_density_and_moments():
    prior = UniformPrior(width=2.0, center=1.0)

    assert evaluate_prior(prior, 1.5) == pytest.approx((0.5, 0.75))
    assert evaluate_prior(prior, 3.5) == (0.0, 1.0)
    m = moments(prior)
    assert m.mean == 1.0
    assert m.stddev == pytest.approx(2.0 / math.sqrt(12.0), rel=1e-15)
    assert support_diameter(prior) == 2.0


def test_evaluate_prior_rejects_non_finite_x():
    with pytest.raises(DomainError):
        evaluate_prior(GaussianPrior(), math.inf)


def test_families_reject_bad_widths():
    with pytest.raises(DomainError):
        UniformPrior(width=0.0)
    with pytest.raises(DomainError):
        GaussianPrior(std=-1.0)
    with pytest.raises(DomainError):
        make_prior("bimodal", math.nan)
    with pytest.raises(DomainError):
        TriangularPrior(a=0.0, b=1.0, m=1.0)


def test_bimodal_spread_matches_block_geometry():
    for width in (0.1, 1.0, 37.0):
        prior = BimodalTwoBlockPrior(width=width)
        assert moments(prior).stddev / width == pytest.approx(math.sqrt(13 / 48), abs=1e-12)
        assert prior.cdf(prior.ppf(0.3)) == pytest.approx(0.3)


@pytest.mark.parametrize(
    "prior",
    [UniformPrior(width=1.3), GaussianPrior(mean=0.4, std=0.7), BimodalTwoBlockPrior(width=2.0)],
    ids=["uniform", "gaussian", "bimodal"],
)
def test_closed_form_overlap_matches_quadrature(prior):
    for z in np.linspace(0.0, 2.5 * prior.width_W, 23):
        assert overlap_E(prior, z) == pytest.approx(overlap_E_quadrature(prior, z), abs=1e-8)


def test_overlap_known_values():
    assert overlap_E(UniformPrior(width=2.0), 0.5) == pytest.approx(0.75)
    assert overlap_E(UniformPrior(width=2.0), 3.0) == 0.0
    assert overlap_E(GaussianPrior(std=1.0), 0.0) == 1.0
    # blocks at distance W overlap completely
    assert overlap_E(BimodalTwoBlockPrior(width=1.0), 1.0) == pytest.approx(0.5)
    assert overlap_E(BimodalTwoBlockPrior(width=1.0), 0.5) == pytest.approx(0.0)


def test_overlap_rejects_negative_shift():
    with pytest.raises(DomainError):
        overlap_E(GaussianPrior(), -0.1)
    with pytest.raises(DomainError):
        overlap_E(GaussianPrior(), math.nan)


@pytest.mark.parametrize(
    "prior",
    [
        GaussianPrior(mean=-0.3, std=0.5),
        TriangularPrior(a=0.0, b=1.0, m=0.8),
        TriangularPrior(a=-2.0, b=1.0, m=-1.5),
        TabulatedPrior(xs=(0.0, 0.2, 1.0), ps=(0.0, 3.0, 0.0)),
    ],
    ids=["gaussian", "triangular-right", "triangular-left", "tabulated"],
)
def test_single_mode_overlap_matches_generic_overlap(prior):
    for z in np.linspace(0.01, 1.2 * prior.width_W, 15):
        assert overlap_E_single_mode(prior, z) == pytest.approx(overlap_E_quadrature(prior, z), abs=1e-6)


def test_crossing_point_of_symmetric_prior_is_centred():
    prior = GaussianPrior(mean=2.0, std=0.5)
    assert crossing_point_y0(prior, 0.4) == pytest.approx(1.8)


def test_crossing_point_of_asymmetric_prior_equalizes_densities():
    prior = TriangularPrior(a=0.0, b=1.0, m=0.8)
    z = 0.3
    y0 = crossing_point_y0(prior, z)
    assert prior.pdf(y0) == pytest.approx(prior.pdf(y0 + z), abs=1e-10)
    assert prior.m - z <= y0 <= prior.m


def test_crossing_point_needs_single_mode_prior():
    with pytest.raises(UnsupportedOperationError):
        crossing_point_y0(UniformPrior(width=1.0), 0.2)
    with pytest.raises(UnsupportedOperationError):
        overlap_E_single_mode(BimodalTwoBlockPrior(width=1.0), 0.2)


def test_triangular_moments_and_rescaling():
    prior = TriangularPrior(a=0.0, b=1.0, m=0.8)
    assert prior.mean_mu == pytest.approx(0.6)
    assert prior.variance == pytest.approx((1.0 + 0.64 - 0.8) / 18.0)
    assert not prior.symmetric

    wider = prior.rescaled(3.0)
    assert wider.width_W == pytest.approx(3.0)
    assert wider.mean_mu == pytest.approx(prior.mean_mu)
    assert wider.stddev == pytest.approx(3.0 * prior.stddev)


def test_make_prior_families():
    assert make_prior(PriorFamily.UNIFORM, 2.0).width_W == 2.0
    assert make_prior("gaussian", 0.5, mean=1.0).mean_mu == 1.0
    assert make_prior("triangular", 4.0).width_W == pytest.approx(4.0)
    with pytest.raises(UnsupportedOperationError):
        make_prior("tabulated", 1.0)


def test_tabulated_prior_is_normalized():
    prior = TabulatedPrior(xs=(0.0, 0.5, 1.0), ps=(0.0, 5.0, 0.0))

    assert prior.cdf(1.0) == pytest.approx(1.0)
    assert prior.pdf(0.5) == pytest.approx(2.0)
    assert prior.single_mode_flag
    assert prior.mode() == 0.5
    reference = TriangularPrior(a=0.0, b=1.0, m=0.5)
    assert prior.mean_mu == pytest.approx(reference.mean_mu, abs=1e-10)
    assert prior.variance == pytest.approx(reference.variance, rel=1e-8)
    assert prior.ppf(prior.cdf(0.3)) == pytest.approx(0.3)


def test_tabulated_plateau_is_not_single_mode():
    prior = TabulatedPrior(xs=(0.0, 1.0, 2.0, 3.0), ps=(0.0, 1.0, 1.0, 0.0))
    assert not prior.single_mode_flag


def test_tabulated_prior_rejects_bad_tables():
    with pytest.raises(DomainError):
        TabulatedPrior(xs=(0.0, 0.0), ps=(1.0, 1.0))
    with pytest.raises(DomainError):
        TabulatedPrior(xs=(0.0, 1.0), ps=(1.0, -1.0))
    with pytest.raises(DomainError):
        TabulatedPrior(xs=(0.0, 1.0), ps=(0.0, 0.0))


def test_load_tabulated_prior_from_csv(tmp_path: Path):
    path = tmp_path / "prior.csv"
    path.write_text("x,density\n-1,0\n0,1\n1,0\n", encoding="utf-8")

    prior = load_tabulated_prior(path)
    assert prior.xs == (-1.0, 0.0, 1.0)
    assert prior.mean_mu == pytest.approx(0.0, abs=1e-12)
    assert prior.variance == pytest.approx(1.0 / 6.0, rel=1e-8)


def test_load_tabulated_prior_reports_bad_rows(tmp_path: Path):
    path = tmp_path / "broken.csv"
    path.write_text("x,density\n0,1\noops,2\n", encoding="utf-8")

    with pytest.raises(DomainError, match="broken.csv:3"):
        load_tabulated_prior(path)


@pytest.mark.parametrize(
    "prior",
    [UniformPrior(width=1.0), GaussianPrior(std=2.0), BimodalTwoBlockPrior(width=1.0), TriangularPrior()],
    ids=["uniform", "gaussian", "bimodal", "triangular"],
)
def test_sampling_reproduces_mean_and_variance(prior):
    rng = np.random.default_rng(12345)
    n = 200_000
    draws = sample_many(prior, rng, n)

    m = moments(prior)
    assert draws.mean() == pytest.approx(m.mean, abs=4 * m.stddev / math.sqrt(n))
    assert draws.var() == pytest.approx(m.variance, rel=0.02)


def test_sampling_requires_caller_generator():
    with pytest.raises(DomainError):
        sample_many(GaussianPrior(), 42, 10)  # type: ignore[arg-type]


def test_single_draw_is_deterministic_and_inside_support():
    prior = UniformPrior(width=1.0, center=0.0)
    first = sample(prior, np.random.default_rng(2024))
    again = sample(prior, np.random.default_rng(2024))

    assert first == again
    assert -0.5 <= first <= 0.5


def test_two_block_draws_avoid_the_gap():
    draws = sample_many(BimodalTwoBlockPrior(width=1.0), np.random.default_rng(3), 100_000)

    assert not np.any((draws > -0.25) & (draws < 0.25))
    assert np.all(np.abs(draws) <= 0.75)
    assert np.any(draws < 0) and np.any(draws > 0)


@settings(max_examples=40, deadline=None)
@given(
    width=st.floats(min_value=1e-3, max_value=1e3),
    fraction=st.floats(min_value=0.0, max_value=3.0),
)
def test_overlap_is_bounded_and_monotone(width, fraction):
    for prior in (UniformPrior(width=width), GaussianPrior(std=width)):
        z = fraction * width
        e = overlap_E(prior, z)
        assert 0.0 <= e <= 1.0
        assert overlap_E(prior, 1.1 * z) <= e + 1e-12
