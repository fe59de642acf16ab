"""CSV loading for tabulated priors."""

import csv
from pathlib import Path

from zzbound.core.errors import DomainError
from zzbound.priors.distribution import TabulatedPrior


def read_two_column_csv(path: str | Path) -> tuple[list[float], list[float]]:
    """
    Read a two-column numeric CSV, skipping an optional header row.

    Raises:
        DomainError: On malformed rows or fewer than two data rows.
    """
    xs: list[float] = []
    ys: list[float] = []
    with open(path, newline="", encoding="utf-8") as f:
        for line_no, row in enumerate(csv.reader(f), start=1):
            if not row or all(not cell.strip() for cell in row):
                continue
            if len(row) < 2:
                raise DomainError(f"{path}:{line_no}: expected two columns, got {len(row)}")
            try:
                x, y = float(row[0]), float(row[1])
            except ValueError:
                if line_no == 1 and not xs:
                    continue  # header
                raise DomainError(f"{path}:{line_no}: non-numeric value in {row!r}") from None
            xs.append(x)
            ys.append(y)
    if len(xs) < 2:
        raise DomainError(f"{path}: need at least two data rows")
    return xs, ys


def load_tabulated_prior(path: str | Path) -> TabulatedPrior:
    """Load ``x, density`` pairs; the density is renormalized to unit mass."""
    xs, ps = read_two_column_csv(path)
    return TabulatedPrior(xs=tuple(xs), ps=tuple(ps))
