import math
from dataclasses import dataclass, field

from zzbound.bounds.evaluators import (
    appendix_bound,
    heisenberg_length,
    hpi_limit_single_mode,
    lpi_benchmark,
    main_lower_bound,
    uniform_closed_form,
    variance_bound,
    zz_bound_direct,
)
from zzbound.bounds.types import BoundKind, BoundResult
from zzbound.core.config import QuadratureConfig
from zzbound.core.errors import DomainError
from zzbound.priors.distribution import PriorDistribution, UniformPrior
from zzbound.speedlimit.fidelity import FidelityModel

_NEEDS_SCALE = {
    BoundKind.MAIN_QSL,
    BoundKind.APPENDIX_QSL,
    BoundKind.VARIANCE_BHATTA,
    BoundKind.UNIFORM_CLOSED_FORM,
    BoundKind.LPI_BENCHMARK,
}


@dataclass(frozen=True)
class BoundRequest:
    """
    Which bound to evaluate and with what inputs.

    ``generator_scale`` is H for the speed-limit kinds and dH for the
    variance kind; x0 (or delta0) and t0 are always derived from it.
    """

    kind: BoundKind
    prior: PriorDistribution | None = None
    generator_scale: float | None = None
    fidelity: FidelityModel | None = None
    quad: QuadratureConfig = field(default_factory=QuadratureConfig)

    def __post_init__(self) -> None:
        if self.kind in _NEEDS_SCALE and self.generator_scale is None:
            raise DomainError(f"{self.kind.value} bound needs a generator scale")
        if self.kind is BoundKind.DIRECT_ZZ and self.fidelity is None:
            raise DomainError("direct bound needs a fidelity model")
        if self.kind is not BoundKind.LPI_BENCHMARK and self.prior is None:
            raise DomainError(f"{self.kind.value} bound needs a prior")
        if self.kind is BoundKind.UNIFORM_CLOSED_FORM and not isinstance(self.prior, UniformPrior):
            raise DomainError("closed-form bound is only valid for uniform priors")
        if self.generator_scale is not None:
            heisenberg_length(self.generator_scale)

    @property
    def length_scale(self) -> float:
        """x0 = pi/(2H) or delta0 = pi/(2 dH)."""
        if self.generator_scale is None:
            return math.nan
        return heisenberg_length(self.generator_scale)

    @property
    def t0(self) -> float:
        if self.prior is None:
            return math.inf
        return self.prior.width_W / self.length_scale


def evaluate_bound(request: BoundRequest) -> BoundResult:
    """Dispatch a BoundRequest to its evaluator."""
    kind, prior, quad = request.kind, request.prior, request.quad
    if kind is BoundKind.DIRECT_ZZ:
        return zz_bound_direct(prior, request.fidelity, quad)
    if kind is BoundKind.MAIN_QSL:
        return main_lower_bound(prior, request.generator_scale, quad)
    if kind is BoundKind.APPENDIX_QSL:
        return appendix_bound(prior, request.generator_scale, quad)
    if kind is BoundKind.VARIANCE_BHATTA:
        return variance_bound(prior, request.generator_scale, quad)
    if kind is BoundKind.UNIFORM_CLOSED_FORM:
        return uniform_closed_form(request.t0, request.generator_scale, quad)
    if kind is BoundKind.LPI_BENCHMARK:
        return lpi_benchmark(request.generator_scale, quad)
    value = hpi_limit_single_mode(prior, quad)
    return BoundResult(BoundKind.HPI_LIMIT, value, 0.0, 0.0, math.nan)
