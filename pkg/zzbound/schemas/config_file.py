import json
from pathlib import Path
from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, model_validator

from zzbound.core.config import QuadratureConfig


class ScanOptions(BaseModel):
    model_config = ConfigDict(extra="forbid")

    t0_min: float | None = Field(default=None, gt=0)
    t0_max: float | None = Field(default=None, gt=0)
    points: int | None = Field(default=None, ge=1)
    log: bool = True

    @model_validator(mode="after")
    def validate_range(self) -> "ScanOptions":
        if self.t0_min is not None and self.t0_max is not None and self.t0_min >= self.t0_max:
            raise ValueError("scan.t0_min must be smaller than scan.t0_max")
        return self


class ConfigFile(BaseModel):
    """JSON file passed with ``--config``; unknown keys are rejected."""

    model_config = ConfigDict(extra="forbid")

    quad: QuadratureConfig | None = None
    threads: int | None = Field(default=None, ge=1)
    scan: ScanOptions = Field(default_factory=ScanOptions)
    output_format: Literal["csv", "json"] = "csv"

    @classmethod
    def load(cls, path: str | Path) -> "ConfigFile":
        with open(path, encoding="utf-8") as f:
            return cls.model_validate(json.load(f))
