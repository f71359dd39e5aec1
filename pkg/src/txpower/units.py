"""Power and frequency value types with explicit unit conversions.

dB-domain and linear-domain powers are separate types on purpose: a gain in
dB cannot be substituted into linear-power arithmetic, so every crossing
goes through :func:`dbm_to_mw` / :func:`mw_to_dbm`. The dB reference is
fixed at 1 mW.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = [
    "PowerDbm",
    "PowerMw",
    "FrequencyGhz",
    "dbm_to_mw",
    "mw_to_dbm",
    "gain_db",
]


@dataclass(frozen=True, order=True)
class PowerDbm:
    """Power in decibel-milliwatts."""

    value: float

    def __post_init__(self) -> None:
        if not isinstance(self.value, (int, float)) or not math.isfinite(self.value):
            raise ValueError(f"dBm power must be a finite number, got {self.value!r}")


@dataclass(frozen=True, order=True)
class PowerMw:
    """Power in milliwatts. Zero is allowed only as the component-absent sentinel."""

    value: float

    def __post_init__(self) -> None:
        if not isinstance(self.value, (int, float)) or not math.isfinite(self.value):
            raise ValueError(f"mW power must be a finite number, got {self.value!r}")
        if self.value < 0.0:
            raise ValueError(f"mW power cannot be negative, got {self.value!r}")


@dataclass(frozen=True, order=True)
class FrequencyGhz:
    """Frequency in gigahertz, strictly positive."""

    value: float

    def __post_init__(self) -> None:
        if not isinstance(self.value, (int, float)) or not math.isfinite(self.value):
            raise ValueError(f"frequency must be a finite number, got {self.value!r}")
        if self.value <= 0.0:
            raise ValueError(f"frequency must be > 0 GHz, got {self.value!r}")

    @property
    def hz(self) -> float:
        return self.value * 1e9


def dbm_to_mw(p: PowerDbm) -> PowerMw:
    """Convert dBm to linear milliwatts: 10^(dBm/10)."""
    return PowerMw(10.0 ** (p.value / 10.0))


def mw_to_dbm(p: PowerMw) -> PowerDbm:
    """Convert milliwatts to dBm. Zero power has no dB representation."""
    if p.value <= 0.0:
        raise ValueError("cannot express non-positive power in dBm")
    return PowerDbm(10.0 * math.log10(p.value))


def gain_db(p_out: PowerDbm, p_in: PowerDbm) -> float:
    """Gain in dB between two dBm levels."""
    return p_out.value - p_in.value
