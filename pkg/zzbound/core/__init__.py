"""Cross-cutting configuration, errors and logging."""

from zzbound.core.config import QuadratureConfig, Settings, get_settings
from zzbound.core.errors import (
    BracketError,
    DomainError,
    NumericalError,
    QuadratureError,
    UnsupportedOperationError,
    ZZBoundError,
)
from zzbound.core.logging import configure_logging

__all__ = [
    "QuadratureConfig",
    "Settings",
    "get_settings",
    "ZZBoundError",
    "DomainError",
    "UnsupportedOperationError",
    "NumericalError",
    "QuadratureError",
    "BracketError",
    "configure_logging",
]
