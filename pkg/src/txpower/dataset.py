"""Survey-record schemas, CSV ingestion, and descriptive statistics.

Each component class (power amplifier, oscillator, mixer) has its own CSV
schema. Loading validates row by row: rows that violate an invariant are
rejected with a ``row N, column X`` diagnostic instead of poisoning the
dataset, and a load only fails outright when the header is wrong or no
valid rows remain.
"""

from __future__ import annotations

import csv
import io
import math
import sys
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import Callable, Generic, Iterator, Sequence, TypeVar

import numpy as np

from .errors import DatasetError
from .units import FrequencyGhz, PowerDbm, PowerMw

__all__ = [
    "PaSurveyEntry",
    "OscSurveyEntry",
    "MixerSurveyEntry",
    "Dataset",
    "Provenance",
    "FeatureStats",
    "PA_CSV_HEADER",
    "OSC_CSV_HEADER",
    "MIXER_CSV_HEADER",
    "PA_CORRELATION_FEATURES",
    "load_pa_csv",
    "load_osc_csv",
    "load_mixer_csv",
    "parse_pa_csv",
    "parse_osc_csv",
    "parse_mixer_csv",
    "to_csv_text",
    "filter_by_technology",
    "feature_names",
    "feature_values",
    "correlation_matrix",
    "summary_stats",
]


@dataclass(frozen=True)
class PaSurveyEntry:
    """One measured power amplifier from a survey."""

    freq: FrequencyGhz
    psat: PowerDbm          # saturated output power
    pae: float              # power-added efficiency, percent in (0, 100]
    gain: float             # dB
    area: float | None      # mm^2, optional
    technology: str = ""
    source: str = ""

    def __post_init__(self) -> None:
        if not 0.0 < self.pae <= 100.0:
            raise ValueError(f"PAE must be in (0, 100] percent, got {self.pae!r}")
        if not math.isfinite(self.gain):
            raise ValueError(f"gain must be finite, got {self.gain!r}")
        if self.area is not None and not self.area > 0.0:
            raise ValueError(f"area must be > 0 mm^2 when present, got {self.area!r}")


@dataclass(frozen=True)
class OscSurveyEntry:
    """One measured fundamental oscillator from a survey."""

    freq: FrequencyGhz
    pdc: PowerMw
    pout: PowerDbm
    phase_noise: float      # dBc/Hz at the given offset
    offset: float           # MHz
    technology: str = ""
    source: str = ""

    def __post_init__(self) -> None:
        if not self.pdc.value > 0.0:
            raise ValueError("oscillator P_DC must be > 0 mW")
        if not self.phase_noise < 0.0:
            raise ValueError(f"phase noise must be negative, got {self.phase_noise!r}")
        if not self.offset > 0.0:
            raise ValueError(f"offset must be > 0 MHz, got {self.offset!r}")


@dataclass(frozen=True)
class MixerSurveyEntry:
    """One measured mixer from a survey."""

    freq: FrequencyGhz
    pdc: PowerMw
    cg: float               # conversion gain, dB (negative means loss)
    technology: str = ""
    source: str = ""

    def __post_init__(self) -> None:
        if not self.pdc.value > 0.0:
            raise ValueError("mixer P_DC must be > 0 mW")
        if not math.isfinite(self.cg):
            raise ValueError(f"conversion gain must be finite, got {self.cg!r}")


E = TypeVar("E", PaSurveyEntry, OscSurveyEntry, MixerSurveyEntry)


@dataclass(frozen=True)
class Provenance:
    path: str
    loaded_at: datetime


@dataclass(frozen=True)
class Dataset(Generic[E]):
    """Immutable, validated collection of survey entries."""

    entries: tuple[E, ...]
    provenance: Provenance

    def __post_init__(self) -> None:
        if not self.entries:
            raise DatasetError(f"{self.provenance.path}: dataset has zero valid rows")

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[E]:
        return iter(self.entries)


# --- CSV schemas -----------------------------------------------------------

PA_CSV_HEADER = ("freq_ghz", "psat_dbm", "pae_pct", "gain_db", "area_mm2",
                 "technology", "source")
OSC_CSV_HEADER = ("freq_ghz", "pdc_mw", "pout_dbm", "pn_dbc_hz", "offset_mhz",
                  "technology", "source")
MIXER_CSV_HEADER = ("freq_ghz", "pdc_mw", "cg_db", "technology", "source")


def _num(cell: str) -> float:
    try:
        return float(cell)
    except ValueError:
        raise ValueError(f"could not parse {cell!r} as a number") from None


def _freq(cell: str) -> FrequencyGhz:
    return FrequencyGhz(_num(cell))


def _dbm(cell: str) -> PowerDbm:
    return PowerDbm(_num(cell))


def _pdc(cell: str) -> PowerMw:
    v = _num(cell)
    if v <= 0.0:
        raise ValueError(f"P_DC must be > 0 mW, got {v!r}")
    return PowerMw(v)


def _pae(cell: str) -> float:
    v = _num(cell)
    if not 0.0 < v <= 100.0:
        raise ValueError(f"PAE must be in (0, 100] percent, got {v!r}")
    return v


def _pos(cell: str) -> float:
    v = _num(cell)
    if v <= 0.0:
        raise ValueError(f"value must be > 0, got {v!r}")
    return v


def _neg(cell: str) -> float:
    v = _num(cell)
    if v >= 0.0:
        raise ValueError(f"value must be < 0, got {v!r}")
    return v


def _opt_area(cell: str) -> float | None:
    if cell.strip() == "":
        return None
    v = _num(cell)
    if v <= 0.0:
        raise ValueError(f"area must be > 0 mm^2, got {v!r}")
    return v


def _text(cell: str) -> str:
    return cell.strip()


# column name -> converter; ordering matches the header tuples above
_PA_CONVERTERS: dict[str, Callable[[str], object]] = {
    "freq_ghz": _freq, "psat_dbm": _dbm, "pae_pct": _pae, "gain_db": _num,
    "area_mm2": _opt_area, "technology": _text, "source": _text,
}
_OSC_CONVERTERS: dict[str, Callable[[str], object]] = {
    "freq_ghz": _freq, "pdc_mw": _pdc, "pout_dbm": _dbm, "pn_dbc_hz": _neg,
    "offset_mhz": _pos, "technology": _text, "source": _text,
}
_MIXER_CONVERTERS: dict[str, Callable[[str], object]] = {
    "freq_ghz": _freq, "pdc_mw": _pdc, "cg_db": _num,
    "technology": _text, "source": _text,
}


def _build_pa(v: dict) -> PaSurveyEntry:
    return PaSurveyEntry(freq=v["freq_ghz"], psat=v["psat_dbm"], pae=v["pae_pct"],
                         gain=v["gain_db"], area=v["area_mm2"],
                         technology=v["technology"], source=v["source"])


def _build_osc(v: dict) -> OscSurveyEntry:
    return OscSurveyEntry(freq=v["freq_ghz"], pdc=v["pdc_mw"], pout=v["pout_dbm"],
                          phase_noise=v["pn_dbc_hz"], offset=v["offset_mhz"],
                          technology=v["technology"], source=v["source"])


def _build_mixer(v: dict) -> MixerSurveyEntry:
    return MixerSurveyEntry(freq=v["freq_ghz"], pdc=v["pdc_mw"], cg=v["cg_db"],
                            technology=v["technology"], source=v["source"])


def _parse_csv(text, header, converters, builder, origin):
    reader = csv.reader(io.StringIO(text))
    try:
        first = next(reader)
    except StopIteration:
        raise DatasetError(f"{origin}: zero valid rows (file is empty)") from None
    got = tuple(c.strip().lower() for c in first)
    if got != header:
        raise DatasetError(
            f"{origin}: malformed header: expected {','.join(header)!r}, "
            f"got {','.join(got)!r}"
        )
    entries = []
    diagnostics: list[str] = []
    for line_no, row in enumerate(reader, start=2):
        if not row or all(c.strip() == "" for c in row):
            continue
        if len(row) != len(header):
            diagnostics.append(
                f"{origin}: row {line_no}: expected {len(header)} cells, got {len(row)}"
            )
            continue
        values: dict[str, object] = {}
        bad = False
        for name, cell in zip(header, row):
            try:
                values[name] = converters[name](cell)
            except ValueError as exc:
                diagnostics.append(f"{origin}: row {line_no}, column {name}: {exc}")
                bad = True
                break
        if bad:
            continue
        try:
            entries.append(builder(values))
        except ValueError as exc:
            diagnostics.append(f"{origin}: row {line_no}: {exc}")
    if not entries:
        raise DatasetError(f"{origin}: zero valid rows "
                           f"({len(diagnostics)} rejected)")
    ds = Dataset(tuple(entries), Provenance(origin, datetime.now(timezone.utc)))
    return ds, diagnostics


def parse_pa_csv(text: str, origin: str = "<memory>"):
    """Parse PA survey CSV text. Returns (dataset, row diagnostics)."""
    return _parse_csv(text, PA_CSV_HEADER, _PA_CONVERTERS, _build_pa, origin)


def parse_osc_csv(text: str, origin: str = "<memory>"):
    """Parse oscillator survey CSV text. Returns (dataset, row diagnostics)."""
    return _parse_csv(text, OSC_CSV_HEADER, _OSC_CONVERTERS, _build_osc, origin)


def parse_mixer_csv(text: str, origin: str = "<memory>"):
    """Parse mixer survey CSV text. Returns (dataset, row diagnostics)."""
    return _parse_csv(text, MIXER_CSV_HEADER, _MIXER_CONVERTERS, _build_mixer, origin)


def _load(path, parse) -> Dataset:
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise DatasetError(f"cannot read {p}: {exc.strerror or exc}") from exc
    ds, diagnostics = parse(text, str(p))
    for line in diagnostics:
        print(line, file=sys.stderr)
    return ds


def load_pa_csv(path) -> Dataset[PaSurveyEntry]:
    """Load and validate a PA survey CSV; row rejections go to stderr."""
    return _load(path, parse_pa_csv)


def load_osc_csv(path) -> Dataset[OscSurveyEntry]:
    """Load and validate an oscillator survey CSV; row rejections go to stderr."""
    return _load(path, parse_osc_csv)


def load_mixer_csv(path) -> Dataset[MixerSurveyEntry]:
    """Load and validate a mixer survey CSV; row rejections go to stderr."""
    return _load(path, parse_mixer_csv)


# --- serialization ---------------------------------------------------------

def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, (FrequencyGhz, PowerDbm, PowerMw)):
        return repr(value.value)
    if isinstance(value, float):
        return repr(value)
    return str(value)


_ROW_FIELDS = {
    PaSurveyEntry: (PA_CSV_HEADER, lambda e: (e.freq, e.psat, e.pae, e.gain,
                                              e.area, e.technology, e.source)),
    OscSurveyEntry: (OSC_CSV_HEADER, lambda e: (e.freq, e.pdc, e.pout,
                                                e.phase_noise, e.offset,
                                                e.technology, e.source)),
    MixerSurveyEntry: (MIXER_CSV_HEADER, lambda e: (e.freq, e.pdc, e.cg,
                                                    e.technology, e.source)),
}


def to_csv_text(ds: Dataset) -> str:
    """Serialize a dataset back to its CSV schema (numeric cells round-trip)."""
    header, fields = _ROW_FIELDS[type(ds.entries[0])]
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for entry in ds.entries:
        writer.writerow([_cell(v) for v in fields(entry)])
    return buf.getvalue()


def filter_by_technology(ds: Dataset, pattern: str) -> Dataset:
    """Keep entries whose technology label contains `pattern` (case-insensitive)."""
    needle = pattern.strip().lower()
    kept = tuple(e for e in ds.entries if needle in e.technology.lower())
    if not kept:
        raise DatasetError(
            f"technology filter {pattern!r} matches no rows in {ds.provenance.path}"
        )
    return Dataset(kept, ds.provenance)


# --- statistics ------------------------------------------------------------

_FEATURES: dict[type, dict[str, Callable]] = {
    PaSurveyEntry: {
        "freq": lambda e: e.freq.value,
        "psat": lambda e: e.psat.value,
        "pae": lambda e: e.pae,
        "gain": lambda e: e.gain,
        "area": lambda e: e.area,
    },
    OscSurveyEntry: {
        "freq": lambda e: e.freq.value,
        "pdc": lambda e: e.pdc.value,
        "pout": lambda e: e.pout.value,
        "phase_noise": lambda e: e.phase_noise,
        "offset": lambda e: e.offset,
    },
    MixerSurveyEntry: {
        "freq": lambda e: e.freq.value,
        "pdc": lambda e: e.pdc.value,
        "cg": lambda e: e.cg,
    },
}

# default feature order for the PA correlation report
PA_CORRELATION_FEATURES = ("psat", "pae", "gain", "area")


def feature_names(ds: Dataset) -> tuple[str, ...]:
    """Numeric feature selectors available for this dataset's entry type."""
    return tuple(_FEATURES[type(ds.entries[0])])


def feature_values(ds: Dataset, feature: str) -> list[float | None]:
    """Per-entry values of one feature; None where the entry lacks it."""
    table = _FEATURES[type(ds.entries[0])]
    if feature not in table:
        raise DatasetError(
            f"unknown feature {feature!r}; available: {', '.join(table)}"
        )
    return [table[feature](e) for e in ds.entries]


def correlation_matrix(ds: Dataset, features: Sequence[str]) -> np.ndarray:
    """Pearson correlation matrix over the selected features.

    Rows missing a value for a feature are excluded pairwise-complete: each
    (i, j) cell uses exactly the rows where both features are present. The
    result is symmetric with a unit diagonal and entries clipped to [-1, 1].
    """
    if len(features) < 1:
        raise DatasetError("no features selected")
    columns = [feature_values(ds, f) for f in features]
    k = len(features)
    mat = np.eye(k)
    for i in range(k):
        for j in range(i + 1, k):
            pairs = [(a, b) for a, b in zip(columns[i], columns[j])
                     if a is not None and b is not None]
            if len(pairs) < 3:
                raise DatasetError(
                    f"fewer than 3 usable rows for features "
                    f"{features[i]!r} x {features[j]!r}"
                )
            x = np.array([p[0] for p in pairs])
            y = np.array([p[1] for p in pairs])
            xc = x - x.mean()
            yc = y - y.mean()
            sxx = float(np.dot(xc, xc))
            syy = float(np.dot(yc, yc))
            if sxx == 0.0:
                raise DatasetError(f"feature {features[i]!r} has zero variance")
            if syy == 0.0:
                raise DatasetError(f"feature {features[j]!r} has zero variance")
            r = float(np.dot(xc, yc)) / math.sqrt(sxx * syy)
            mat[i, j] = mat[j, i] = min(1.0, max(-1.0, r))
    return mat


@dataclass(frozen=True)
class FeatureStats:
    min: float | None
    max: float | None
    mean: float | None
    count: int


def summary_stats(ds: Dataset,
                  features: Sequence[str] | None = None) -> dict[str, FeatureStats]:
    """Per-feature min/max/mean over the rows that carry the feature."""
    names = tuple(features) if features is not None else feature_names(ds)
    out: dict[str, FeatureStats] = {}
    for name in names:
        present = [v for v in feature_values(ds, name) if v is not None]
        if not present:
            out[name] = FeatureStats(None, None, None, 0)
            continue
        arr = np.array(present)
        out[name] = FeatureStats(float(arr.min()), float(arr.max()),
                                 float(arr.mean()), len(present))
    return out
