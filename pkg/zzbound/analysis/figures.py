"""Data behind the regime-comparison figures, one CSV column per curve."""

import csv
import logging
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Iterable

import numpy as np

from zzbound.analysis.scan import format_number, max_gain, scan_t0
from zzbound.bounds import BoundKind
from zzbound.core.config import QuadratureConfig, get_settings
from zzbound.priors.distribution import PriorFamily

logger = logging.getLogger(__name__)

MARKER_COLUMN = "marker"


class FigureId(str, Enum):
    FIG1 = "fig1"
    FIG2A = "fig2a"
    FIG2B = "fig2b"


_FIGURE_PRIORS = {
    FigureId.FIG1: PriorFamily.UNIFORM,
    FigureId.FIG2A: PriorFamily.GAUSSIAN,
    FigureId.FIG2B: PriorFamily.BIMODAL_TWO_BLOCK,
}


@dataclass
class FigureBundle:
    """
    Curves of one figure at x0 = 1.

    ``annotations`` holds extra rows (the max-gain marker) keyed by label,
    each with a value for every column.
    """

    figure_id: FigureId
    columns: dict[str, list[float]]
    annotations: dict[str, dict[str, float]] = field(default_factory=dict)

    @property
    def header(self) -> list[str]:
        return [*self.columns, MARKER_COLUMN]

    def to_csv(self, path: str | Path) -> Path:
        path = Path(path)
        names = list(self.columns)
        with open(path, "w", newline="", encoding="utf-8") as f:
            writer = csv.writer(f, lineterminator="\n")
            writer.writerow(self.header)
            for values in zip(*self.columns.values()):
                writer.writerow([*(format_number(v) for v in values), ""])
            for label, row in self.annotations.items():
                writer.writerow([*(format_number(row[name]) for name in names), label])
        return path


def default_t0_grid() -> list[float]:
    settings = get_settings()
    grid = np.logspace(np.log10(settings.scan_t0_min), np.log10(settings.scan_t0_max), settings.scan_points)
    return [float(t) for t in grid]


def figure_data(
    figure_id: FigureId | str,
    quad: QuadratureConfig | None = None,
    t0_grid: Iterable[float] | None = None,
    threads: int | None = None,
) -> FigureBundle:
    """
    Compute the curves of a figure at x0 = 1.

    fig1: uniform prior, main bound, ΔX and the LPI benchmark.
    fig2a: Gaussian prior, adds the appendix bound.
    fig2b: two-block prior, adds the HPI asymptote x0 t0 sqrt(7/48).
    Every figure carries a ``max_gain`` annotation row at the t0 of the
    largest certified gain.
    """
    figure_id = FigureId(figure_id)
    family = _FIGURE_PRIORS[figure_id]
    quad = quad or QuadratureConfig.from_settings()
    grid = sorted(t0_grid) if t0_grid is not None else default_t0_grid()

    main = scan_t0(family, BoundKind.MAIN_QSL, grid, x0=1.0, quad=quad, threads=threads)
    columns: dict[str, list[float]] = {
        "t0": main.t0,
        "bound": main.values,
        "prior_stddev": [row.dx for row in main.rows],
        "lpi_benchmark": [main.lpi_value(t0) for t0 in main.t0],
    }
    if figure_id is FigureId.FIG2A:
        appendix = scan_t0(family, BoundKind.APPENDIX_QSL, grid, x0=1.0, quad=quad, threads=threads)
        columns["appendix_bound"] = appendix.values
    if figure_id is FigureId.FIG2B:
        columns["hpi_asymptote"] = [main.hpi_value(t0) for t0 in main.t0]

    best = max_gain(family, BoundKind.MAIN_QSL, quad=quad)
    at_best = scan_t0(family, BoundKind.MAIN_QSL, [best.t0_star], x0=1.0, quad=quad, threads=1)
    row = at_best.rows[0]
    marker = {
        "t0": row.t0,
        "bound": row.value,
        "prior_stddev": row.dx,
        "lpi_benchmark": at_best.lpi_value(row.t0),
    }
    if "appendix_bound" in columns:
        marker["appendix_bound"] = scan_t0(
            family, BoundKind.APPENDIX_QSL, [best.t0_star], x0=1.0, quad=quad, threads=1
        ).values[0]
    if "hpi_asymptote" in columns:
        marker["hpi_asymptote"] = at_best.hpi_value(row.t0)
    logger.info("%s: max gain %.6g at t0=%.6g", figure_id.value, best.gain, best.t0_star)
    return FigureBundle(figure_id, columns, {"max_gain": marker})
