"""Deterministic generator for the bundled synthetic survey datasets.

The shipped CSVs are desk-scale stand-ins shaped like published survey
data: PA efficiency decays with frequency, oscillator DC-to-RF efficiency
rises to a peak near 42 GHz before an exponential decline, and mixer gain
per DC power decays with frequency (so mixer DC power grows). Values are
synthetic, not measurements. Regenerate with::

    python -m txpower.datagen --out-dir src/txpower/data
"""

from __future__ import annotations

import argparse
import csv
from pathlib import Path

import numpy as np

SEED = 20260401

PA_FREQ_RANGE = (2.0, 320.0)
OSC_FREQ_RANGE = (12.7, 272.0)
OSC_PEAK_GHZ = 42.0
MIXER_FREQ_RANGE = (5.0, 140.0)

_TECHNOLOGIES = ("CMOS 65nm", "CMOS 40nm", "CMOS 28nm", "CMOS 22nm FDSOI",
                 "SiGe BiCMOS", "GaAs pHEMT")


def _log_freqs(lo: float, hi: float, n: int, pin: float | None = None
               ) -> np.ndarray:
    f = np.round(np.geomspace(lo, hi, n), 1)
    f[0], f[-1] = lo, hi
    if pin is not None:
        f[int(np.argmin(np.abs(f - pin)))] = pin
    return f


def pa_rows(rng: np.random.Generator) -> list[list[str]]:
    freqs = _log_freqs(*PA_FREQ_RANGE, 60)
    rows = []
    for i, f in enumerate(freqs):
        pae = 48.0 * np.exp(-0.011 * f) * np.exp(rng.normal(0.0, 0.20))
        pae = float(np.clip(pae, 0.05, 99.0))
        psat = 20.0 - 0.028 * f + 0.09 * pae + rng.normal(0.0, 1.5)
        gain = float(np.clip(rng.normal(19.0, 4.0), 8.0, 32.0))
        area = float(np.exp(rng.normal(-1.1, 0.55)))
        tech = str(rng.choice(_TECHNOLOGIES))
        row = [f"{f:g}", f"{psat:.2f}", f"{pae:.2f}", f"{gain:.2f}",
               "" if rng.random() < 0.12 else f"{area:.3f}",
               tech, f"syn-pa-{i:03d}"]
        rows.append(row)
    return rows


def osc_rows(rng: np.random.Generator) -> list[list[str]]:
    freqs = _log_freqs(*OSC_FREQ_RANGE, 48, pin=OSC_PEAK_GHZ)
    rows = []
    for i, f in enumerate(freqs):
        if f <= OSC_PEAK_GHZ:
            eff = 0.185 - 1.45e-4 * (f - OSC_PEAK_GHZ) ** 2
        else:
            eff = 0.185 * np.exp(-0.0115 * (f - OSC_PEAK_GHZ))
        eff = float(eff * np.exp(rng.normal(0.0, 0.07)))
        pdc = float(rng.uniform(4.0, 32.0))
        pout = 10.0 * np.log10(eff * pdc)
        pn = float(np.clip(rng.normal(-96.0, 5.0), -115.0, -80.0))
        offset = float(rng.choice([1.0, 10.0]))
        rows.append([f"{f:g}", f"{pdc:.3f}", f"{pout:.2f}", f"{pn:.2f}",
                     f"{offset:g}", str(rng.choice(_TECHNOLOGIES)),
                     f"syn-osc-{i:03d}"])
    return rows


def mixer_rows(rng: np.random.Generator) -> list[list[str]]:
    freqs = _log_freqs(*MIXER_FREQ_RANGE, 40)
    rows = []
    for i, f in enumerate(freqs):
        eta = 3.2 * np.exp(-0.019 * f) * np.exp(rng.normal(0.0, 0.16))
        pdc = float(np.exp(rng.normal(1.9, 0.6)))
        cg = 10.0 * np.log10(eta * pdc)
        rows.append([f"{f:g}", f"{pdc:.3f}", f"{cg:.2f}",
                     str(rng.choice(_TECHNOLOGIES)), f"syn-mix-{i:03d}"])
    return rows


_FILES = (
    ("pa_survey.csv",
     ("freq_ghz", "psat_dbm", "pae_pct", "gain_db", "area_mm2", "technology",
      "source"), pa_rows),
    ("osc_survey.csv",
     ("freq_ghz", "pdc_mw", "pout_dbm", "pn_dbc_hz", "offset_mhz",
      "technology", "source"), osc_rows),
    ("mixer_survey.csv",
     ("freq_ghz", "pdc_mw", "cg_db", "technology", "source"), mixer_rows),
)


def write_datasets(out_dir) -> list[Path]:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    rng = np.random.default_rng(SEED)
    written = []
    for name, header, make in _FILES:
        path = out / name
        with path.open("w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(header)
            writer.writerows(make(rng))
        written.append(path)
    return written


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        description="Regenerate the bundled synthetic survey datasets.")
    parser.add_argument("--out-dir", default=".",
                        help="directory to write the CSV files into")
    args = parser.parse_args(argv)
    for path in write_datasets(args.out_dir):
        print(path)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
