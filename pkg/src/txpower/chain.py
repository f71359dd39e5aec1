"""Transmitter-chain composition: per-component DC power and shares.

The mixer feeds the PA, so each breakdown cell queries the PA with
p_in = mixer output level and p_out = the chain's PA target; when the two
levels coincide the PA is bypassed and contributes nothing. The oscillator
runs at a fixed RF output independent of the mixer level. A cell that hits
a model error is reported as a failure and does not abort its neighbours.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, replace
from typing import Sequence

import numpy as np

from .components import MixerPowerModel, OscPowerModel, PaPowerModel, \
    mixer_pdc, osc_pdc, pa_pdc
from .errors import QueryError, ToolkitError
from .units import FrequencyGhz, PowerDbm, PowerMw

__all__ = [
    "ChainConfig",
    "ChainBreakdown",
    "CellFailure",
    "ComposeResult",
    "compose",
    "sweep",
    "BREAKDOWN_CSV_HEADER",
    "breakdowns_to_csv",
    "breakdowns_to_json",
    "breakdown_rows_from_csv",
]

DEFAULT_FREQUENCIES = (FrequencyGhz(28.0), FrequencyGhz(60.0),
                       FrequencyGhz(140.0), FrequencyGhz(243.0))
DEFAULT_MIXER_POUT_LEVELS = (PowerDbm(-20.0), PowerDbm(-10.0),
                             PowerDbm(-5.0), PowerDbm(0.0))


@dataclass(frozen=True)
class ChainConfig:
    """Scenario under evaluation: frequencies, targets, mixer levels."""

    frequencies: tuple[FrequencyGhz, ...] = DEFAULT_FREQUENCIES
    pa_pout: PowerDbm = PowerDbm(0.0)
    osc_prf: PowerDbm = PowerDbm(-10.0)
    mixer_pout_levels: tuple[PowerDbm, ...] = DEFAULT_MIXER_POUT_LEVELS
    mixer_pif_in: PowerDbm = PowerDbm(-20.0)

    def __post_init__(self) -> None:
        if not self.frequencies:
            raise ValueError("chain config needs at least one frequency")
        if not self.mixer_pout_levels:
            raise ValueError("chain config needs at least one mixer output level")
        ordered = tuple(sorted(set(self.frequencies)))
        object.__setattr__(self, "frequencies", ordered)
        for level in self.mixer_pout_levels:
            if level > self.pa_pout:
                raise ValueError(
                    f"mixer output {level.value:g} dBm exceeds the PA output "
                    f"target {self.pa_pout.value:g} dBm"
                )
            if self.mixer_pif_in > level:
                raise ValueError(
                    f"mixer IF input {self.mixer_pif_in.value:g} dBm exceeds "
                    f"the mixer output {level.value:g} dBm"
                )


@dataclass(frozen=True)
class ChainBreakdown:
    """DC power split of one (frequency, mixer output) cell."""

    f: FrequencyGhz
    mixer_pout: PowerDbm
    pa_pdc: PowerMw
    mixer_pdc: PowerMw
    osc_pdc: PowerMw
    total_pdc: PowerMw
    pa_share: float
    mixer_share: float
    osc_share: float
    pa_extrapolated: bool
    mixer_extrapolated: bool
    osc_extrapolated: bool

    def extrapolated_components(self) -> tuple[str, ...]:
        out = []
        if self.pa_extrapolated:
            out.append("pa")
        if self.mixer_extrapolated:
            out.append("mixer")
        if self.osc_extrapolated:
            out.append("osc")
        return tuple(out)


@dataclass(frozen=True)
class CellFailure:
    f: FrequencyGhz
    mixer_pout: PowerDbm
    message: str


@dataclass(frozen=True)
class ComposeResult:
    breakdowns: tuple[ChainBreakdown, ...]
    failures: tuple[CellFailure, ...]


def compose(config: ChainConfig, pa: PaPowerModel, mixer: MixerPowerModel,
            osc: OscPowerModel) -> ComposeResult:
    """Evaluate every (frequency, mixer level) cell of the scenario.

    Output is frequency-major, then mixer level in config order. Total DC
    power is accumulated as pa + mixer + osc in that fixed order so reruns
    are bit-identical.
    """
    if config.mixer_pif_in != mixer.pif_in:
        mixer = replace(mixer, pif_in=config.mixer_pif_in)
    rows: list[ChainBreakdown] = []
    failures: list[CellFailure] = []
    for f in config.frequencies:
        for level in config.mixer_pout_levels:
            try:
                pa_mw, pa_x = pa_pdc(pa, f, config.pa_pout, level)
                mix_mw, mix_x = mixer_pdc(mixer, f, level)
                osc_mw, osc_x = osc_pdc(osc, f, config.osc_prf)
            except (QueryError, ValueError) as exc:
                failures.append(CellFailure(f, level, str(exc)))
                continue
            total = PowerMw(pa_mw.value + mix_mw.value + osc_mw.value)
            if total.value > 0.0:
                shares = (pa_mw.value / total.value,
                          mix_mw.value / total.value,
                          osc_mw.value / total.value)
            else:
                shares = (0.0, 0.0, 0.0)
            rows.append(ChainBreakdown(
                f=f, mixer_pout=level,
                pa_pdc=pa_mw, mixer_pdc=mix_mw, osc_pdc=osc_mw,
                total_pdc=total,
                pa_share=shares[0], mixer_share=shares[1], osc_share=shares[2],
                pa_extrapolated=pa_x, mixer_extrapolated=mix_x,
                osc_extrapolated=osc_x,
            ))
    return ComposeResult(tuple(rows), tuple(failures))


def sweep(pa: PaPowerModel, mixer: MixerPowerModel, osc: OscPowerModel, *,
          f_start: float, f_stop: float, n_points: int,
          mixer_pout_levels: Sequence[PowerDbm] = DEFAULT_MIXER_POUT_LEVELS,
          pa_pout: PowerDbm = PowerDbm(0.0),
          osc_prf: PowerDbm = PowerDbm(-10.0),
          mixer_pif_in: PowerDbm | None = None,
          allow_extrapolation: bool = False) -> ComposeResult:
    """Dense frequency sweep of the chain; a 1-point grid equals compose."""
    if n_points < 1:
        raise ToolkitError("sweep grid is empty (n_points < 1)")
    if not 0.0 < f_start <= f_stop:
        raise ToolkitError("sweep needs 0 < f_start <= f_stop")
    lo = min(pa.pae_curve.f_min, mixer.eff_curve.f_min, osc.eff_curve.f_min)
    hi = max(pa.pae_curve.f_max, mixer.eff_curve.f_max, osc.eff_curve.f_max)
    if not allow_extrapolation and (f_start < lo or f_stop > hi):
        raise ToolkitError(
            f"sweep grid [{f_start:g}, {f_stop:g}] GHz leaves the fitted span "
            f"[{lo:g}, {hi:g}] GHz; pass allow_extrapolation to force it"
        )
    grid = np.linspace(f_start, f_stop, n_points)
    config = ChainConfig(
        frequencies=tuple(FrequencyGhz(float(v)) for v in grid),
        pa_pout=pa_pout,
        osc_prf=osc_prf,
        mixer_pout_levels=tuple(mixer_pout_levels),
        mixer_pif_in=mixer.pif_in if mixer_pif_in is None else mixer_pif_in,
    )
    return compose(config, pa, mixer, osc)


# --- serialization ----------------------------------------------------------

BREAKDOWN_CSV_HEADER = (
    "freq_ghz", "mixer_pout_dbm", "pa_pdc_mw", "mixer_pdc_mw", "osc_pdc_mw",
    "total_pdc_mw", "pa_share", "mixer_share", "osc_share",
    "extrapolated_components",
)


def breakdowns_to_csv(result: ComposeResult) -> str:
    """CSV table of the breakdown; failed cells keep their coordinates and
    carry the error in the last column."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(BREAKDOWN_CSV_HEADER)
    for row in result.breakdowns:
        writer.writerow([
            repr(row.f.value), repr(row.mixer_pout.value),
            repr(row.pa_pdc.value), repr(row.mixer_pdc.value),
            repr(row.osc_pdc.value), repr(row.total_pdc.value),
            repr(row.pa_share), repr(row.mixer_share), repr(row.osc_share),
            "+".join(row.extrapolated_components()),
        ])
    for failure in result.failures:
        writer.writerow([
            repr(failure.f.value), repr(failure.mixer_pout.value),
            "", "", "", "", "", "", "",
            "error: " + failure.message.replace("\n", " "),
        ])
    return buf.getvalue()


def breakdowns_to_json(result: ComposeResult) -> str:
    doc = {
        "rows": [
            {
                "freq_ghz": row.f.value,
                "mixer_pout_dbm": row.mixer_pout.value,
                "pa_pdc_mw": row.pa_pdc.value,
                "mixer_pdc_mw": row.mixer_pdc.value,
                "osc_pdc_mw": row.osc_pdc.value,
                "total_pdc_mw": row.total_pdc.value,
                "pa_share": row.pa_share,
                "mixer_share": row.mixer_share,
                "osc_share": row.osc_share,
                "extrapolated_components": list(row.extrapolated_components()),
            }
            for row in result.breakdowns
        ],
        "failures": [
            {
                "freq_ghz": failure.f.value,
                "mixer_pout_dbm": failure.mixer_pout.value,
                "message": failure.message,
            }
            for failure in result.failures
        ],
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def breakdown_rows_from_csv(text: str) -> list[ChainBreakdown]:
    """Parse a breakdown CSV back into rows, skipping failure rows."""
    reader = csv.reader(io.StringIO(text))
    try:
        header = tuple(next(reader))
    except StopIteration:
        raise ToolkitError("breakdown CSV is empty") from None
    if header != BREAKDOWN_CSV_HEADER:
        raise ToolkitError(
            "breakdown CSV header does not match "
            f"{','.join(BREAKDOWN_CSV_HEADER)!r}"
        )
    rows: list[ChainBreakdown] = []
    for line_no, cells in enumerate(reader, start=2):
        if not cells or all(c.strip() == "" for c in cells):
            continue
        if len(cells) != len(BREAKDOWN_CSV_HEADER):
            raise ToolkitError(f"breakdown CSV row {line_no}: wrong cell count")
        if cells[2].strip() == "":
            continue  # failure row: coordinates only
        try:
            flags = tuple(p for p in cells[9].split("+") if p)
            rows.append(ChainBreakdown(
                f=FrequencyGhz(float(cells[0])),
                mixer_pout=PowerDbm(float(cells[1])),
                pa_pdc=PowerMw(float(cells[2])),
                mixer_pdc=PowerMw(float(cells[3])),
                osc_pdc=PowerMw(float(cells[4])),
                total_pdc=PowerMw(float(cells[5])),
                pa_share=float(cells[6]),
                mixer_share=float(cells[7]),
                osc_share=float(cells[8]),
                pa_extrapolated="pa" in flags,
                mixer_extrapolated="mixer" in flags,
                osc_extrapolated="osc" in flags,
            ))
        except ValueError as exc:
            raise ToolkitError(f"breakdown CSV row {line_no}: {exc}") from exc
    if not rows:
        raise ToolkitError("breakdown CSV has no data rows")
    return rows
