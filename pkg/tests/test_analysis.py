import json
import math
from pathlib import Path

import numpy as np
import pytest

from zzbound.analysis import (
    CSV_COLUMNS,
    EstimatorKind,
    EstimatorSpec,
    FigureId,
    ScanResult,
    figure_data,
    gain_over_reference,
    lpi_coefficient,
    max_gain,
    scan_t0,
    weighted_rmse,
)
from zzbound.bounds import BoundKind, constant_A, main_lower_bound
from zzbound.core.errors import DomainError
from zzbound.priors import BimodalTwoBlockPrior, GaussianPrior, UniformPrior


def test_uniform_scan_rows_and_asymptotes():
    result = scan_t0("uniform", BoundKind.MAIN_QSL, [1e3, 0.5, 1e-3], x0=1.0)

    assert [row.t0 for row in result.rows] == [1e-3, 0.5, 1e3]
    low, mid, high = result.rows
    assert mid.dx == pytest.approx(0.5 / math.sqrt(12), rel=1e-12)
    assert mid.value == pytest.approx(main_lower_bound(UniformPrior(width=0.5), math.pi / 2).value)
    assert mid.gain == pytest.approx(mid.dx / mid.value)
    assert low.gain == pytest.approx(1.0, abs=2e-2)
    assert high.value == pytest.approx(0.1403, rel=5e-3)

    assert result.lpi_value(1e3) == pytest.approx(math.sqrt(constant_A() / 2))
    assert result.hpi_value(0.5) == pytest.approx(0.5 / math.sqrt(12), rel=1e-6)
    assert result.metadata.bound_kind == "main"
    assert result.metadata.fixed == "x0"


def test_uniform_gain_grows_linearly_in_lpi_regime():
    result = scan_t0("uniform", "main", [1e2, 1e3], x0=1.0)
    ratio = result.rows[1].gain / result.rows[0].gain
    assert ratio == pytest.approx(10.0, rel=1e-2)


def test_scan_with_fixed_width():
    result = scan_t0("gaussian", "main", [0.1, 1.0, 10.0], width=2.0)

    assert all(row.dx == pytest.approx(2.0) for row in result.rows)
    # x0 = W / t0 and H = pi / (2 x0)
    expected = main_lower_bound(GaussianPrior(std=2.0), math.pi / (2 * 2.0)).value
    assert result.rows[1].value == pytest.approx(expected, rel=1e-9)
    assert result.length_at(10.0) == pytest.approx(0.2)


def test_scan_is_independent_of_thread_count():
    grid = list(np.logspace(-1.5, 1.5, 9))
    serial = scan_t0("bimodal", "main", grid, x0=1.0, threads=1)
    pooled = scan_t0("bimodal", "main", grid, x0=1.0, threads=4)
    assert serial.rows == pooled.rows


def test_scan_validation():
    with pytest.raises(DomainError):
        scan_t0("uniform", "main", [], x0=1.0)
    with pytest.raises(DomainError):
        scan_t0("uniform", "main", [0.5, -1.0], x0=1.0)
    with pytest.raises(DomainError):
        scan_t0("uniform", "main", [0.5], x0=1.0, width=1.0)
    with pytest.raises(DomainError):
        scan_t0("uniform", "main", [0.5])
    with pytest.raises(DomainError):
        scan_t0("uniform", "lpi", [0.5], x0=1.0)


def test_scan_csv_and_json_output(tmp_path: Path):
    result = scan_t0("uniform", "main", [0.2, 0.5, 2.0], x0=1.0)

    csv_path = result.to_csv(tmp_path / "scan.csv")
    lines = csv_path.read_text(encoding="utf-8").splitlines()
    assert lines[0] == ",".join(CSV_COLUMNS)
    assert len(lines) == 4
    assert lines[2].split(",")[0] == "0.5"
    assert len(lines[2].split(",")[1].replace("0.", "", 1)) >= 15

    reread = ScanResult.from_csv(csv_path)
    assert reread.rows == result.rows

    payload = json.loads(result.to_json(tmp_path / "scan.json").read_text(encoding="utf-8"))
    assert payload["metadata"]["prior_family"] == "uniform"
    assert len(payload["metadata"]["config_hash"]) == 16
    assert payload["rows"][1]["t0"] == 0.5
    assert payload["asymptotes"]["lpi_coefficient"] == pytest.approx(lpi_coefficient("main"))


def test_from_csv_rejects_foreign_columns(tmp_path: Path):
    path = tmp_path / "other.csv"
    path.write_text("a,b\n1,2\n", encoding="utf-8")
    with pytest.raises(DomainError):
        ScanResult.from_csv(path)


def test_uniform_max_gain():
    best = max_gain("uniform", BoundKind.MAIN_QSL, (1e-2, 10.0))

    assert best.gain == pytest.approx(1.73, abs=5e-2)
    assert best.t0_star == pytest.approx(0.5, abs=0.1)
    assert not best.flat
    # the certified gain peaks where the prior spread meets the Heisenberg benchmark
    assert best.t0_star == pytest.approx(math.sqrt(6 * constant_A()), abs=1e-3)


def test_uniform_max_gain_agrees_with_dense_grid():
    best = max_gain("uniform", "main")
    grid = np.arange(0.45, 0.52, 2e-4)
    dense = max(gain_over_reference("uniform", "main", float(t0)) for t0 in grid)
    assert best.gain == pytest.approx(dense, abs=1e-3)


@pytest.mark.parametrize(
    "family,gain,t0_star,spread_per_width",
    [("gaussian", 1.85403, 0.14031, 1.0), ("bimodal", 2.42519, 0.26954, math.sqrt(13 / 48))],
)
def test_other_prior_max_gains(family, gain, t0_star, spread_per_width):
    best = max_gain(family, "main")

    assert best.gain == pytest.approx(gain, abs=1e-3)
    assert best.t0_star == pytest.approx(t0_star, abs=2e-3)
    # peak where the prior spread meets the Heisenberg benchmark
    assert best.t0_star == pytest.approx(lpi_coefficient("main") / spread_per_width, abs=1e-3)

    grid = np.arange(t0_star - 0.01, t0_star + 0.01, 1e-4)
    dense = max(gain_over_reference(family, "main", float(t0)) for t0 in grid)
    assert best.gain == pytest.approx(dense, abs=1e-3)


def test_max_gain_interval_validation():
    with pytest.raises(DomainError):
        max_gain("uniform", "main", (0.0, 1.0))
    with pytest.raises(DomainError):
        max_gain("uniform", "main", (1.0, 20.0))


def test_certified_gain_is_at_least_one():
    for t0 in (1e-2, 0.3, 3.0, 10.0):
        assert gain_over_reference("gaussian", "main", t0) >= 1.0 - 1e-9


def test_constant_mean_rmse_is_prior_spread():
    rmse, stderr = weighted_rmse(UniformPrior(width=1.0), EstimatorSpec.constant_mean(), 1_000_000, 2024)
    assert stderr > 0
    assert abs(rmse - 1 / math.sqrt(12)) < 4 * stderr


def test_constant_mean_rmse_converges_at_small_sample_size():
    rmse, stderr = weighted_rmse(BimodalTwoBlockPrior(width=2.0), EstimatorSpec.constant_mean(), 10_000, 7)
    assert abs(rmse - 2.0 * math.sqrt(13 / 48)) < 4 * stderr


def test_random_guess_rmse_is_sqrt_two_sigma():
    rmse, stderr = weighted_rmse(GaussianPrior(std=1.0), EstimatorSpec.random_guess(), 1_000_000, 99)
    assert abs(rmse - math.sqrt(2.0)) < 4 * stderr


def test_perfect_estimator_has_zero_error():
    assert weighted_rmse(GaussianPrior(), EstimatorSpec.custom(lambda y: y), 5_000, 1) == (0.0, 0.0)


def test_rmse_is_reproducible_and_thread_independent():
    prior = GaussianPrior(std=0.5)
    first = weighted_rmse(prior, EstimatorSpec.random_guess(), 50_000, 3, chunk_size=4096, threads=1)
    second = weighted_rmse(prior, EstimatorSpec.random_guess(), 50_000, 3, chunk_size=4096, threads=3)
    assert first == second


def test_rmse_needs_enough_samples():
    with pytest.raises(DomainError):
        weighted_rmse(GaussianPrior(), EstimatorSpec.constant_mean(), 999, 0)
    with pytest.raises(DomainError):
        EstimatorSpec(EstimatorKind.CUSTOM)


def test_fig1_bundle(tmp_path: Path):
    bundle = figure_data(FigureId.FIG1, t0_grid=[0.01, 0.5, 100.0])

    assert bundle.header == ["t0", "bound", "prior_stddev", "lpi_benchmark", "marker"]
    assert bundle.columns["prior_stddev"][1] == pytest.approx(0.5 / math.sqrt(12))
    marker = bundle.annotations["max_gain"]
    assert marker["t0"] == pytest.approx(0.5, abs=0.1)

    first = bundle.to_csv(tmp_path / "a.csv").read_bytes()
    again = figure_data("fig1", t0_grid=[0.01, 0.5, 100.0]).to_csv(tmp_path / "b.csv").read_bytes()
    assert first == again
    assert first.decode().splitlines()[-1].endswith(",max_gain")


def test_fig2b_has_hpi_asymptote():
    bundle = figure_data("fig2b", t0_grid=[1e-2, 1.0])
    hpi = bundle.columns["hpi_asymptote"]
    assert hpi[0] == pytest.approx(1e-2 * math.sqrt(7 / 48), rel=1e-6)
    assert bundle.columns["prior_stddev"][1] == pytest.approx(math.sqrt(13 / 48))
    assert bundle.columns["bound"][0] / 1e-2 == pytest.approx(math.sqrt(7 / 48), rel=0.1)


def test_fig2a_has_appendix_curve():
    bundle = figure_data("fig2a", t0_grid=[0.1, 1.0])
    for main, stronger in zip(bundle.columns["bound"], bundle.columns["appendix_bound"]):
        assert stronger >= main * (1 - 1e-7)
