"""Ziv-Zakai lower bounds and their limiting constants."""

from zzbound.bounds.constants import (
    A_PUBLISHED,
    constant_A,
    constant_A_closed_form,
    constant_A_prime,
    constant_A_prime_quadrature,
    qsl_bracket,
    variance_bracket,
)
from zzbound.bounds.evaluators import (
    appendix_bound,
    heisenberg_length,
    hpi_limit_exact,
    hpi_limit_single_mode,
    hpi_slope,
    lpi_benchmark,
    main_lower_bound,
    uniform_closed_form,
    variance_bound,
    zz_bound_direct,
)
from zzbound.bounds.request import BoundRequest, evaluate_bound
from zzbound.bounds.types import BoundKind, BoundResult

__all__ = [
    # Types
    "BoundKind",
    "BoundRequest",
    "BoundResult",
    "evaluate_bound",
    # Bounds
    "zz_bound_direct",
    "main_lower_bound",
    "appendix_bound",
    "variance_bound",
    "uniform_closed_form",
    "lpi_benchmark",
    "hpi_limit_single_mode",
    "hpi_limit_exact",
    "hpi_slope",
    "heisenberg_length",
    # Constants
    "A_PUBLISHED",
    "constant_A",
    "constant_A_closed_form",
    "constant_A_prime",
    "constant_A_prime_quadrature",
    "qsl_bracket",
    "variance_bracket",
]
