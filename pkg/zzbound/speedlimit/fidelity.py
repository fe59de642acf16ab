"""Quantum-speed-limit function and fidelity lower-bound models."""

import math
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Any, Callable

import numpy as np
from numpy.typing import ArrayLike

from zzbound.core.errors import DomainError
from zzbound.priors.loader import read_two_column_csv

HALF_PI = math.pi / 2


class FidelityKind(str, Enum):
    QSL_NUMBER_OPERATOR = "qsl"
    BHATTACHARYYA_VARIANCE = "bhatta"
    COHERENT_STATE_EXACT = "coherent"
    CUSTOM = "custom"


def _as_output(x: ArrayLike, values: np.ndarray) -> Any:
    if np.ndim(x) == 0:
        return float(values)
    return values


def _shift_array(z: ArrayLike) -> np.ndarray:
    z_arr = np.asarray(z, dtype=float)
    if np.any(~np.isfinite(z_arr)) or np.any(z_arr < 0):
        raise DomainError(f"separation z must be finite and nonnegative, got {z}")
    return z_arr


def _require_scale(name: str, value: float) -> None:
    if not (math.isfinite(value) and value > 0):
        raise DomainError(f"{name} must be positive and finite, got {value}")


def alpha_inverse(t: ArrayLike) -> Any:
    """
    Inverse of the speed-limit function, alpha^-1(t) = cos^2(pi sqrt(t) / 2).

    Monotone decreasing from 1 at t=0 to 0 at t=1.

    Raises:
        DomainError: If ``t`` lies outside [0, 1].
    """
    t_arr = np.asarray(t, dtype=float)
    if np.any(~np.isfinite(t_arr)) or np.any(t_arr < 0) or np.any(t_arr > 1):
        raise DomainError(f"alpha^-1 is defined on [0, 1], got {t}")
    return _as_output(t, np.cos(HALF_PI * np.sqrt(t_arr)) ** 2)


def fidelity_qsl(z: ArrayLike, H_mean: float) -> Any:
    """Speed-limit fidelity bound alpha^-1(2 H z / pi), zero once the argument passes 1."""
    _require_scale("generator mean H", H_mean)
    t = 2.0 * H_mean * _shift_array(z) / math.pi
    values = np.where(t < 1.0, np.cos(HALF_PI * np.sqrt(np.minimum(t, 1.0))) ** 2, 0.0)
    return _as_output(z, values)


def fidelity_bhatta(z: ArrayLike, H_std: float) -> Any:
    """Bhattacharyya-type bound cos^2(dH z) for dH z <= pi/2, else 0."""
    _require_scale("generator spread dH", H_std)
    phase = H_std * _shift_array(z)
    return _as_output(z, np.where(phase <= HALF_PI, np.cos(phase) ** 2, 0.0))


def fidelity_coherent(z: ArrayLike, N: float) -> Any:
    """Overlap exp(-2N(1 - cos z)) of a coherent state with its phase-rotated copy."""
    _require_scale("mean photon number N", N)
    return _as_output(z, np.exp(-2.0 * N * (1.0 - np.cos(_shift_array(z)))))


def zz_bracket(fidelity: ArrayLike) -> Any:
    """The factor 1 - sqrt(1 - F) of the Ziv-Zakai integrand."""
    f = np.clip(np.asarray(fidelity, dtype=float), 0.0, 1.0)
    return _as_output(fidelity, 1.0 - np.sqrt(1.0 - f))


@dataclass(frozen=True)
class FidelityModel:
    """
    A scalar lower bound z -> F(z) in [0, 1] on the fidelity of states
    separated by z.

    Use the constructors ``qsl``, ``bhattacharyya``, ``coherent``,
    ``custom`` and ``from_csv`` rather than building instances directly.

    Example:
        >>> model = FidelityModel.qsl(H_mean=1.0)
        >>> round(model(math.pi / 8), 12)
        0.5
    """

    kind: FidelityKind
    scale: float | None = None
    func: Callable[[float], float] | None = field(default=None, compare=False)
    table: tuple[tuple[float, ...], tuple[float, ...]] | None = None

    def __post_init__(self) -> None:
        if self.kind is FidelityKind.CUSTOM:
            if self.func is None and self.table is None:
                raise DomainError("custom fidelity needs a callable or a table")
            if not math.isclose(self(0.0), 1.0, abs_tol=1e-12):
                raise DomainError(f"custom fidelity must satisfy F(0) = 1, got {self(0.0)}")
        else:
            _require_scale(f"{self.kind.value} scale", self.scale if self.scale is not None else float("nan"))

    @classmethod
    def qsl(cls, H_mean: float) -> "FidelityModel":
        return cls(FidelityKind.QSL_NUMBER_OPERATOR, scale=H_mean)

    @classmethod
    def bhattacharyya(cls, H_std: float) -> "FidelityModel":
        return cls(FidelityKind.BHATTACHARYYA_VARIANCE, scale=H_std)

    @classmethod
    def coherent(cls, N: float) -> "FidelityModel":
        return cls(FidelityKind.COHERENT_STATE_EXACT, scale=N)

    @classmethod
    def custom(cls, func: Callable[[float], float]) -> "FidelityModel":
        return cls(FidelityKind.CUSTOM, func=func)

    @classmethod
    def from_csv(cls, path: str | Path) -> "FidelityModel":
        """Tabulated (z, F) pairs, linearly interpolated and clamped to [0, 1]."""
        zs, fs = read_two_column_csv(path)
        if any(b <= a for a, b in zip(zs, zs[1:])):
            raise DomainError(f"{path}: z values must be strictly increasing")
        return cls(FidelityKind.CUSTOM, table=(tuple(zs), tuple(fs)))

    def __call__(self, z: ArrayLike) -> Any:
        if self.kind is FidelityKind.QSL_NUMBER_OPERATOR:
            return fidelity_qsl(z, self.scale)
        if self.kind is FidelityKind.BHATTACHARYYA_VARIANCE:
            return fidelity_bhatta(z, self.scale)
        if self.kind is FidelityKind.COHERENT_STATE_EXACT:
            return fidelity_coherent(z, self.scale)

        z_arr = _shift_array(z)
        if self.table is not None:
            values = np.interp(z_arr, self.table[0], self.table[1])
        else:
            values = np.vectorize(self.func, otypes=[float])(z_arr)
        return _as_output(z, np.clip(values, 0.0, 1.0))

    @property
    def cutoff(self) -> float | None:
        """Separation beyond which F vanishes identically, if any."""
        if self.kind is FidelityKind.QSL_NUMBER_OPERATOR:
            return math.pi / (2.0 * self.scale)
        if self.kind is FidelityKind.BHATTACHARYYA_VARIANCE:
            return math.pi / (2.0 * self.scale)
        return None

    @property
    def breakpoints(self) -> tuple[float, ...]:
        if self.table is not None:
            return self.table[0]
        return ()


def load_tabulated_fidelity(path: str | Path) -> FidelityModel:
    """CSV of ``z, F`` pairs as a custom fidelity model."""
    return FidelityModel.from_csv(path)
