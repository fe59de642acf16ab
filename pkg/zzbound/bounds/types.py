import math
from dataclasses import asdict, dataclass
from enum import Enum
from typing import Any

from zzbound.core.errors import DomainError


class BoundKind(str, Enum):
    DIRECT_ZZ = "direct"
    MAIN_QSL = "main"
    APPENDIX_QSL = "appendix"
    VARIANCE_BHATTA = "variance"
    UNIFORM_CLOSED_FORM = "closed-form"
    LPI_BENCHMARK = "lpi"
    HPI_LIMIT = "hpi"


@dataclass(frozen=True)
class BoundResult:
    """A lower bound on Delta Y with its propagated quadrature error."""

    kind: BoundKind
    value: float
    err_estimate: float
    t0: float
    x0_or_delta0: float

    def __post_init__(self) -> None:
        if not (self.value >= 0 and self.err_estimate >= 0):
            raise DomainError(f"bound value and error must be nonnegative, got {self}")

    def to_dict(self) -> dict[str, Any]:
        data = asdict(self)
        data["kind"] = self.kind.value
        return {k: (None if isinstance(v, float) and not math.isfinite(v) else v) for k, v in data.items()}
