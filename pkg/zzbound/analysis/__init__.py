"""Regime scans, gain search, Monte-Carlo baselines and figure data."""

from zzbound.analysis.figures import FigureBundle, FigureId, default_t0_grid, figure_data
from zzbound.analysis.rmse import EstimatorKind, EstimatorSpec, weighted_rmse
from zzbound.analysis.scan import (
    CSV_COLUMNS,
    GainMaximum,
    ScanMetadata,
    ScanResult,
    ScanRow,
    gain_over_reference,
    lpi_coefficient,
    max_gain,
    scan_t0,
)

__all__ = [
    "CSV_COLUMNS",
    "EstimatorKind",
    "EstimatorSpec",
    "FigureBundle",
    "FigureId",
    "GainMaximum",
    "ScanMetadata",
    "ScanResult",
    "ScanRow",
    "default_t0_grid",
    "figure_data",
    "gain_over_reference",
    "lpi_coefficient",
    "max_gain",
    "scan_t0",
    "weighted_rmse",
]
