from functools import lru_cache
from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, model_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    model_config = SettingsConfigDict(
        env_prefix="ZZBOUND_", env_file=".env", env_file_encoding="utf-8", extra="ignore"
    )

    log_level: Literal["DEBUG", "INFO", "WARNING", "ERROR"] = "WARNING"
    threads: int = Field(default=1, ge=1)

    abs_tol: float = Field(default=1e-10, gt=0)
    rel_tol: float = Field(default=1e-8, gt=0)
    max_subdivisions: int = Field(default=2000, ge=1)
    improper_cutoff_sigmas: float = Field(default=12.0, ge=6)

    scan_points: int = Field(default=200, ge=1)
    scan_t0_min: float = Field(default=1e-2, gt=0)
    scan_t0_max: float = Field(default=1e2, gt=0)
    mc_chunk_size: int = Field(default=65536, ge=1)

    @model_validator(mode="after")
    def validate_scan_range(self) -> "Settings":
        if self.scan_t0_min >= self.scan_t0_max:
            raise ValueError("ZZBOUND_SCAN_T0_MIN must be smaller than ZZBOUND_SCAN_T0_MAX.")
        return self


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    return Settings()


class QuadratureConfig(BaseModel):
    """Tolerances and splitting hints for the adaptive integrator."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    abs_tol: float = Field(default=1e-10, gt=0)
    rel_tol: float = Field(default=1e-8, gt=0)
    max_subdivisions: int = Field(default=2000, ge=1)
    breakpoints: tuple[float, ...] = ()
    improper_cutoff_sigmas: float = Field(default=12.0, ge=6)

    @classmethod
    def from_settings(cls, settings: Settings | None = None) -> "QuadratureConfig":
        settings = settings or get_settings()
        return cls(
            abs_tol=settings.abs_tol,
            rel_tol=settings.rel_tol,
            max_subdivisions=settings.max_subdivisions,
            improper_cutoff_sigmas=settings.improper_cutoff_sigmas,
        )

    def tightened(self, factor: float = 10.0) -> "QuadratureConfig":
        """Copy with both tolerances divided by ``factor`` (inner integrals)."""
        return self.model_copy(
            update={"abs_tol": self.abs_tol / factor, "rel_tol": self.rel_tol / factor}
        )

    def with_breakpoints(self, *points: float) -> "QuadratureConfig":
        return self.model_copy(update={"breakpoints": tuple(sorted(set(points)))})
