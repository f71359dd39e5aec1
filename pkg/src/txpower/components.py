"""Figures of merit and per-component DC power models.

Each transmitter sub-block gets a frequency-dependent efficiency-style
metric fitted from survey data, then a rule that turns (frequency, power
targets) into DC power:

* PA: power-added efficiency PAE = (P_out - P_in) / P_DC, all in mW.
  P_DC follows by rearrangement once PAE(f) is fitted.
* Oscillator: DC-to-RF efficiency P_RF / P_DC, fitted with the
  peak-then-decay piecewise curve.
* Mixer: conversion gain CG = 10 log10(P_RF,out / P_IF,in) correlates with
  P_DC, so the model fits eta = linear-gain-per-mW and computes
  P_DC = G_lin / eta(f) at a fixed IF input level.

Efficiencies are fractions everywhere in this module; percent-to-fraction
conversion happens exactly once, when a model is built from a dataset.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, replace
from pathlib import Path

from .dataset import Dataset, MixerSurveyEntry, OscSurveyEntry, PaSurveyEntry
from .errors import ModelFormatError, QueryError
from .regression import (
    ExponentialCurve,
    FitReport,
    PiecewiseParabExpCurve,
    WeightedPoint,
    curve_from_dict,
    curve_to_dict,
    evaluate,
    fit_exponential_weighted,
    fit_piecewise_parab_exp,
    select_best_points,
)
from .units import FrequencyGhz, PowerDbm, PowerMw, dbm_to_mw

__all__ = [
    "PaPowerModel",
    "OscPowerModel",
    "MixerPowerModel",
    "compute_pae",
    "osc_fom",
    "osc_dc_to_rf_eff",
    "mixer_cg",
    "pa_pdc",
    "osc_pdc",
    "mixer_pdc",
    "build_pa_model",
    "build_osc_model",
    "build_mixer_model",
    "model_to_dict",
    "model_from_dict",
    "model_json",
    "save_model",
    "load_model",
]

DEFAULT_BINS = 8
DEFAULT_BEST_POINT_WEIGHT = 10.0
DEFAULT_MIXER_PIF_IN = PowerDbm(-20.0)


# --- figures of merit -------------------------------------------------------

def compute_pae(p_out: PowerMw, p_in: PowerMw, p_dc: PowerMw) -> float:
    """Power-added efficiency (P_out - P_in) / P_DC as a fraction."""
    if p_dc.value <= 0.0:
        raise QueryError("PAE needs P_DC > 0 mW")
    if p_out.value < p_in.value:
        raise QueryError("PAE needs P_out >= P_in; an absorbing amplifier is "
                         "outside this model")
    return (p_out.value - p_in.value) / p_dc.value


def osc_fom(pn_dbc_hz: float, p_dc: PowerMw, p_out: PowerDbm,
            f_o: FrequencyGhz, delta_f_mhz: float) -> float:
    """Oscillator figure of merit in dB.

    PN + 10 log10(P_DC / 1 mW) - P_out - 20 log10(f_o / delta_f), with the
    oscillation frequency and the offset brought to a common unit (Hz)
    before the ratio. Diagnostic only; the power model uses DC-to-RF
    efficiency instead.
    """
    if p_dc.value <= 0.0:
        raise QueryError("oscillator FOM needs P_DC > 0 mW")
    if delta_f_mhz <= 0.0:
        raise QueryError("oscillator FOM needs a positive frequency offset")
    ratio = f_o.hz / (delta_f_mhz * 1e6)
    return (pn_dbc_hz + 10.0 * math.log10(p_dc.value) - p_out.value
            - 20.0 * math.log10(ratio))


def osc_dc_to_rf_eff(p_rf: PowerMw, p_dc: PowerMw) -> float:
    """Oscillator DC-to-RF efficiency P_RF / P_DC as a fraction."""
    if p_rf.value <= 0.0 or p_dc.value <= 0.0:
        raise QueryError("DC-to-RF efficiency needs positive RF and DC power")
    return p_rf.value / p_dc.value


def mixer_cg(p_rf_out: PowerMw, p_if_in: PowerMw) -> float:
    """Mixer conversion gain 10 log10(P_RF,out / P_IF,in) in dB."""
    if p_rf_out.value <= 0.0 or p_if_in.value <= 0.0:
        raise QueryError("conversion gain needs positive input and output power")
    return 10.0 * math.log10(p_rf_out.value / p_if_in.value)


# --- component models -------------------------------------------------------

@dataclass(frozen=True)
class PaPowerModel:
    """PA DC power from a fitted PAE-vs-frequency exponential."""

    pae_curve: ExponentialCurve
    report: FitReport


@dataclass(frozen=True)
class OscPowerModel:
    """Oscillator DC power from a fitted DC-to-RF efficiency curve."""

    eff_curve: PiecewiseParabExpCurve
    report: FitReport


@dataclass(frozen=True)
class MixerPowerModel:
    """Mixer DC power from fitted linear-gain-per-mW at a fixed IF input."""

    eff_curve: ExponentialCurve
    pif_in: PowerDbm
    report: FitReport


def pa_pdc(model: PaPowerModel, f: FrequencyGhz, p_out: PowerDbm,
           p_in: PowerDbm) -> tuple[PowerMw, bool]:
    """PA DC power at one operating point.

    Equal input and output levels mean the PA is bypassed and draws
    nothing. The extrapolation flag reflects the frequency's position
    against the fitted domain either way.
    """
    extrapolated = not model.pae_curve.contains(f.value)
    if p_out == p_in:
        return PowerMw(0.0), extrapolated
    if p_out.value < p_in.value:
        raise QueryError("PA query needs P_out >= P_in")
    pae, _ = evaluate(model.pae_curve, f)
    if not 0.0 < pae <= 1.0:
        raise QueryError(
            f"PAE {pae:.6g} outside (0, 1] at {f.value:g} GHz; "
            "query leaves the physical range of the model"
        )
    delta_mw = dbm_to_mw(p_out).value - dbm_to_mw(p_in).value
    return PowerMw(delta_mw / pae), extrapolated


def osc_pdc(model: OscPowerModel, f: FrequencyGhz,
            p_rf: PowerDbm) -> tuple[PowerMw, bool]:
    """Oscillator DC power needed to emit p_rf at frequency f."""
    eff, extrapolated = evaluate(model.eff_curve, f)
    if not 0.0 < eff <= 1.0:
        raise QueryError(
            f"DC-to-RF efficiency {eff:.6g} outside (0, 1] at {f.value:g} GHz"
        )
    return PowerMw(dbm_to_mw(p_rf).value / eff), extrapolated


def mixer_pdc(model: MixerPowerModel, f: FrequencyGhz,
              p_rf_out: PowerDbm) -> tuple[PowerMw, bool]:
    """Mixer DC power to reach p_rf_out from the model's fixed IF input."""
    eta, extrapolated = evaluate(model.eff_curve, f)
    if eta <= 0.0:
        raise QueryError(
            f"gain-per-mW {eta:.6g} is not positive at {f.value:g} GHz"
        )
    g_lin = dbm_to_mw(p_rf_out).value / dbm_to_mw(model.pif_in).value
    return PowerMw(g_lin / eta), extrapolated


# --- model building ---------------------------------------------------------

def _weighted_fit(points, n_bins, best_point_weight):
    best = select_best_points(points, n_bins)
    best_set = set(best)
    weighted = [
        WeightedPoint(f, y, best_point_weight if (f, y) in best_set else 1.0)
        for f, y in points
    ]
    curve, report = fit_exponential_weighted(weighted)
    return curve, replace(report, n_best_points=len(best))


def build_pa_model(ds: Dataset[PaSurveyEntry], *, n_bins: int = DEFAULT_BINS,
                   best_point_weight: float = DEFAULT_BEST_POINT_WEIGHT,
                   ) -> PaPowerModel:
    """Fit PAE (as a fraction) vs frequency with up-weighted best points."""
    points = [(e.freq.value, e.pae / 100.0) for e in ds.entries]
    curve, report = _weighted_fit(points, n_bins, best_point_weight)
    return PaPowerModel(curve, report)


def build_osc_model(ds: Dataset[OscSurveyEntry], *, n_bins: int = DEFAULT_BINS,
                    ) -> OscPowerModel:
    """Fit the peak-then-decay efficiency curve on per-bin best points."""
    points = [
        (e.freq.value, osc_dc_to_rf_eff(dbm_to_mw(e.pout), e.pdc))
        for e in ds.entries
    ]
    best = select_best_points(points, n_bins)
    curve, report = fit_piecewise_parab_exp(best)
    return OscPowerModel(curve, replace(report, n_best_points=len(best)))


def build_mixer_model(ds: Dataset[MixerSurveyEntry], *,
                      n_bins: int = DEFAULT_BINS,
                      best_point_weight: float = DEFAULT_BEST_POINT_WEIGHT,
                      pif_in: PowerDbm = DEFAULT_MIXER_PIF_IN,
                      ) -> MixerPowerModel:
    """Fit linear conversion gain per mW of DC power vs frequency."""
    points = [
        (e.freq.value, 10.0 ** (e.cg / 10.0) / e.pdc.value) for e in ds.entries
    ]
    curve, report = _weighted_fit(points, n_bins, best_point_weight)
    return MixerPowerModel(curve, pif_in, report)


# --- serialization ----------------------------------------------------------

_COMPONENT_KINDS = {"pa": "exp", "osc": "parab_exp", "mixer": "exp"}


def model_to_dict(model) -> dict:
    if isinstance(model, PaPowerModel):
        return {"component": "pa", "curve": curve_to_dict(model.pae_curve,
                                                          model.report)}
    if isinstance(model, OscPowerModel):
        return {"component": "osc", "curve": curve_to_dict(model.eff_curve,
                                                           model.report)}
    if isinstance(model, MixerPowerModel):
        return {
            "component": "mixer",
            "pif_in_dbm": model.pif_in.value,
            "curve": curve_to_dict(model.eff_curve, model.report),
        }
    raise ModelFormatError(f"unknown model type {type(model).__name__}")


def model_from_dict(doc: dict, expect: str | None = None):
    """Parse a component model document; `expect` pins the component kind."""
    if not isinstance(doc, dict):
        raise ModelFormatError("model document must be an object")
    component = doc.get("component")
    if component not in _COMPONENT_KINDS:
        raise ModelFormatError(f"unknown component {component!r}")
    if expect is not None and component != expect:
        raise ModelFormatError(
            f"model is for component {component!r}, expected {expect!r}"
        )
    curve, report = curve_from_dict(doc.get("curve"))
    want_kind = _COMPONENT_KINDS[component]
    have_kind = ("exp" if isinstance(curve, ExponentialCurve) else "parab_exp")
    if have_kind != want_kind:
        raise ModelFormatError(
            f"component {component!r} needs a {want_kind!r} curve, "
            f"got {have_kind!r}"
        )
    if component == "pa":
        return PaPowerModel(curve, report)
    if component == "osc":
        return OscPowerModel(curve, report)
    pif = doc.get("pif_in_dbm")
    if not isinstance(pif, (int, float)) or isinstance(pif, bool):
        raise ModelFormatError("mixer model needs a numeric 'pif_in_dbm'")
    return MixerPowerModel(curve, PowerDbm(float(pif)), report)


def model_json(model) -> str:
    """Canonical JSON text for a model: sorted keys, stable byte-for-byte."""
    return json.dumps(model_to_dict(model), indent=2, sort_keys=True) + "\n"


def save_model(model, path) -> None:
    Path(path).write_text(model_json(model), encoding="utf-8")


def load_model(path, expect: str | None = None):
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise ModelFormatError(f"cannot read {p}: {exc.strerror or exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelFormatError(f"{p}: not valid JSON: {exc}") from exc
    return model_from_dict(doc, expect=expect)
