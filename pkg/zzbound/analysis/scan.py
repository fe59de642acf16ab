"""
Regime scans over t0 = W / x0 and the maximum certified gain.

A scan holds either x0 or W fixed and moves the other one so that every
grid point has the requested t0. Bounds at different grid points are
independent, so they are evaluated on a thread pool and collected back in
grid order.
"""

import csv
import hashlib
import json
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Iterable, Literal, NamedTuple, TextIO

from pydantic import BaseModel, ConfigDict

from zzbound.bounds import (
    BoundKind,
    BoundRequest,
    BoundResult,
    constant_A,
    constant_A_prime,
    evaluate_bound,
    hpi_slope,
)
from zzbound.core.config import QuadratureConfig, get_settings
from zzbound.core.errors import DomainError
from zzbound.priors.distribution import PriorFamily, make_prior
from zzbound.quadrature.engine import golden_section_max
from zzbound.speedlimit.fidelity import FidelityModel

logger = logging.getLogger(__name__)

CSV_COLUMNS = ("t0", "value", "err", "dx", "gain")

SCANNABLE_KINDS = (
    BoundKind.DIRECT_ZZ,
    BoundKind.MAIN_QSL,
    BoundKind.APPENDIX_QSL,
    BoundKind.VARIANCE_BHATTA,
    BoundKind.UNIFORM_CLOSED_FORM,
)

# golden-section tolerance on t0
GAIN_SEARCH_TOL = 1e-4


def format_number(value: float) -> str:
    """17 significant digits, enough to round-trip a double."""
    return format(float(value), ".17g")


def quad_hash(quad: QuadratureConfig) -> str:
    return hashlib.sha256(quad.model_dump_json().encode("utf-8")).hexdigest()[:16]


@dataclass(frozen=True)
class ScanRow:
    t0: float
    value: float
    err: float
    dx: float
    gain: float


class ScanMetadata(BaseModel):
    model_config = ConfigDict(frozen=True)

    prior_family: str
    bound_kind: str
    fixed: Literal["x0", "W"]
    fixed_value: float
    prior_params: dict[str, float] = {}
    config_hash: str = ""
    created_at: str = ""


@dataclass
class ScanResult:
    """
    Bound, prior spread and gain ΔX/ΔY_LB along a t0 grid.

    ``lpi_coefficient`` is the low-prior-information limit per unit x0
    and ``hpi_slope`` the high-prior-information limit per unit W.
    """

    rows: list[ScanRow]
    metadata: ScanMetadata
    lpi_coefficient: float = math.nan
    hpi_slope: float = math.nan
    quad: QuadratureConfig = field(default_factory=QuadratureConfig)

    def length_at(self, t0: float) -> float:
        """x0 at grid point ``t0``."""
        if self.metadata.fixed == "x0":
            return self.metadata.fixed_value
        return self.metadata.fixed_value / t0

    def lpi_value(self, t0: float) -> float:
        return self.lpi_coefficient * self.length_at(t0)

    def hpi_value(self, t0: float) -> float:
        return self.hpi_slope * self.length_at(t0) * t0

    @property
    def t0(self) -> list[float]:
        return [row.t0 for row in self.rows]

    @property
    def values(self) -> list[float]:
        return [row.value for row in self.rows]

    def write_csv(self, stream: TextIO) -> None:
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for row in self.rows:
            writer.writerow([format_number(getattr(row, name)) for name in CSV_COLUMNS])

    def to_csv(self, path: str | Path) -> Path:
        path = Path(path)
        with open(path, "w", newline="", encoding="utf-8") as f:
            self.write_csv(f)
        return path

    def to_dict(self) -> dict[str, Any]:
        def clean(v: float) -> float | None:
            return v if math.isfinite(v) else None

        return {
            "metadata": self.metadata.model_dump(),
            "asymptotes": {
                "lpi_coefficient": clean(self.lpi_coefficient),
                "hpi_slope": clean(self.hpi_slope),
            },
            "rows": [{k: clean(v) for k, v in asdict(row).items()} for row in self.rows],
        }

    def to_json(self, path: str | Path) -> Path:
        path = Path(path)
        path.write_text(json.dumps(self.to_dict(), indent=2) + "\n", encoding="utf-8")
        return path

    @classmethod
    def from_csv(cls, path: str | Path, metadata: ScanMetadata | None = None) -> "ScanResult":
        """Read rows written by ``to_csv``; asymptotes are not stored in CSV."""
        with open(path, newline="", encoding="utf-8") as f:
            reader = csv.DictReader(f)
            if tuple(reader.fieldnames or ()) != CSV_COLUMNS:
                raise DomainError(f"{path}: expected columns {','.join(CSV_COLUMNS)}")
            rows = [ScanRow(**{k: float(v) for k, v in record.items()}) for record in reader]
        metadata = metadata or ScanMetadata(
            prior_family="unknown", bound_kind="unknown", fixed="x0", fixed_value=math.nan
        )
        return cls(rows=rows, metadata=metadata)


class GainMaximum(NamedTuple):
    gain: float
    t0_star: float
    flat: bool = False


def _check_kind(bound_kind: BoundKind | str) -> BoundKind:
    kind = BoundKind(bound_kind)
    if kind not in SCANNABLE_KINDS:
        raise DomainError(f"{kind.value} is a limit, not a t0-dependent bound")
    return kind


def _evaluate_at(
    family: PriorFamily,
    kind: BoundKind,
    t0: float,
    x0: float,
    quad: QuadratureConfig,
    prior_params: dict[str, float],
) -> tuple[BoundResult, float]:
    """Bound and ΔX at ``t0`` for a prior of width x0 * t0."""
    prior = make_prior(family, x0 * t0, **prior_params)
    scale = math.pi / (2.0 * x0)
    fidelity = FidelityModel.qsl(scale) if kind is BoundKind.DIRECT_ZZ else None
    result = evaluate_bound(BoundRequest(kind, prior, scale, fidelity, quad))
    return result, prior.stddev


def lpi_coefficient(bound_kind: BoundKind | str, quad: QuadratureConfig | None = None) -> float:
    """t0 -> inf limit of the bound per unit x0 (or delta0)."""
    kind = BoundKind(bound_kind)
    if kind is BoundKind.VARIANCE_BHATTA:
        return math.sqrt(constant_A_prime() / 2.0)
    return math.sqrt(constant_A(quad) / 2.0)


def scan_t0(
    prior_family: PriorFamily | str,
    bound_kind: BoundKind | str,
    t0_grid: Iterable[float],
    *,
    x0: float | None = None,
    width: float | None = None,
    quad: QuadratureConfig | None = None,
    threads: int | None = None,
    prior_params: dict[str, float] | None = None,
) -> ScanResult:
    """
    Evaluate a bound, ΔX and the gain ΔX/ΔY_LB at each t0 of the grid.

    Exactly one of ``x0`` and ``width`` is held fixed. Rows come back
    sorted by t0 regardless of the worker count.

    Raises:
        DomainError: On an empty or non-positive grid, or when both or
            neither of ``x0`` and ``width`` are given.
    """
    family = PriorFamily(prior_family)
    kind = _check_kind(bound_kind)
    quad = quad or QuadratureConfig.from_settings()
    threads = threads or get_settings().threads
    prior_params = dict(prior_params or {})

    grid = sorted(float(t) for t in t0_grid)
    if not grid:
        raise DomainError("t0 grid is empty")
    if not all(math.isfinite(t) and t > 0 for t in grid):
        raise DomainError("t0 grid must contain positive finite values")
    if (x0 is None) == (width is None):
        raise DomainError("fix exactly one of x0 and W")
    fixed_value = float(x0 if x0 is not None else width)
    if not (math.isfinite(fixed_value) and fixed_value > 0):
        raise DomainError(f"fixed length must be positive and finite, got {fixed_value}")

    def point(t0: float) -> ScanRow:
        length = fixed_value if x0 is not None else fixed_value / t0
        result, dx = _evaluate_at(family, kind, t0, length, quad, prior_params)
        gain = dx / result.value if result.value > 0 else math.inf
        return ScanRow(t0, result.value, result.err_estimate, dx, gain)

    logger.info("scan %s/%s: %d points on %d threads", family.value, kind.value, len(grid), threads)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(point, grid))
    else:
        rows = [point(t0) for t0 in grid]

    metadata = ScanMetadata(
        prior_family=family.value,
        bound_kind=kind.value,
        fixed="x0" if x0 is not None else "W",
        fixed_value=fixed_value,
        prior_params=prior_params,
        config_hash=quad_hash(quad),
        created_at=datetime.now(timezone.utc).isoformat(),
    )
    return ScanResult(
        rows=rows,
        metadata=metadata,
        lpi_coefficient=lpi_coefficient(kind, quad),
        hpi_slope=hpi_slope(make_prior(family, 1.0, **prior_params), quad),
        quad=quad,
    )


def gain_over_reference(
    prior_family: PriorFamily | str,
    bound_kind: BoundKind | str,
    t0: float,
    quad: QuadratureConfig | None = None,
    prior_params: dict[str, float] | None = None,
) -> float:
    """
    Certified gain min(ΔX, ΔY_LPI) / ΔY_LB at ``t0``.

    The reference is the better of guessing from the prior and the
    Heisenberg benchmark. The ratio does not depend on x0.
    """
    kind = _check_kind(bound_kind)
    quad = quad or QuadratureConfig.from_settings()
    if not (math.isfinite(t0) and t0 > 0):
        raise DomainError(f"t0 must be positive and finite, got {t0}")
    result, dx = _evaluate_at(PriorFamily(prior_family), kind, t0, 1.0, quad, dict(prior_params or {}))
    reference = min(dx, lpi_coefficient(kind, quad))
    if result.value <= 0:
        return math.inf
    return reference / result.value


def max_gain(
    prior_family: PriorFamily | str,
    bound_kind: BoundKind | str = BoundKind.MAIN_QSL,
    search_interval: tuple[float, float] = (1e-2, 10.0),
    quad: QuadratureConfig | None = None,
    prior_params: dict[str, float] | None = None,
) -> GainMaximum:
    """
    Golden-section maximum of the certified gain over ``search_interval``.

    A flat objective returns the interval midpoint with ``flat=True``.

    Raises:
        DomainError: If the interval is not inside (0, 10].
    """
    lo, hi = search_interval
    if not (0 < lo < hi <= 10):
        raise DomainError(f"search interval must lie in (0, 10], got {search_interval}")
    quad = quad or QuadratureConfig.from_settings()

    def objective(t0: float) -> float:
        return gain_over_reference(prior_family, bound_kind, t0, quad, prior_params)

    t0_star, gain = golden_section_max(objective, lo, hi, tol=GAIN_SEARCH_TOL)
    seen = (gain, objective(lo), objective(hi))
    if max(seen) - min(seen) <= 1e-12 * abs(gain):
        mid = 0.5 * (lo + hi)
        logger.warning("gain is flat on [%g, %g], returning the midpoint", lo, hi)
        return GainMaximum(objective(mid), mid, flat=True)
    return GainMaximum(gain, t0_star)
