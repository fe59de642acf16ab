"""Deterministic integration and root-finding engine."""

from zzbound.core.config import QuadratureConfig
from zzbound.quadrature.engine import (
    Integral,
    find_root_bisect,
    golden_section_max,
    integrate,
)

__all__ = [
    "QuadratureConfig",
    "Integral",
    "integrate",
    "find_root_bisect",
    "golden_section_max",
]
