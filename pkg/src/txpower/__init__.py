"""Survey-driven DC power models for mm-wave/THz transmitter front-ends.

Fits frequency-dependent efficiency metrics for the three RF sub-blocks of
a transmitter chain (power amplifier, oscillator, mixer) from survey CSVs
and composes them into a per-component DC power breakdown. Ships with a
CLI (`txpower`) and a FastAPI service (`txpower.service`).
"""

from .chain import (
    ChainBreakdown,
    ChainConfig,
    CellFailure,
    ComposeResult,
    compose,
    sweep,
)
from .components import (
    MixerPowerModel,
    OscPowerModel,
    PaPowerModel,
    build_mixer_model,
    build_osc_model,
    build_pa_model,
    compute_pae,
    load_model,
    mixer_cg,
    mixer_pdc,
    model_from_dict,
    model_json,
    model_to_dict,
    osc_dc_to_rf_eff,
    osc_fom,
    osc_pdc,
    pa_pdc,
    save_model,
)
from .dataset import (
    Dataset,
    MixerSurveyEntry,
    OscSurveyEntry,
    PaSurveyEntry,
    correlation_matrix,
    filter_by_technology,
    load_mixer_csv,
    load_osc_csv,
    load_pa_csv,
    summary_stats,
)
from .errors import (
    DatasetError,
    FitError,
    ModelFormatError,
    QueryError,
    ToolkitError,
)
from .regression import (
    ExponentialCurve,
    FitReport,
    PiecewiseParabExpCurve,
    WeightedPoint,
    evaluate,
    fit_exponential_loglinear,
    fit_exponential_weighted,
    fit_piecewise_parab_exp,
    select_best_points,
)
from .units import FrequencyGhz, PowerDbm, PowerMw, dbm_to_mw, gain_db, mw_to_dbm

__version__ = "0.1.0"

__all__ = [
    "ChainBreakdown", "ChainConfig", "CellFailure", "ComposeResult",
    "compose", "sweep",
    "MixerPowerModel", "OscPowerModel", "PaPowerModel",
    "build_mixer_model", "build_osc_model", "build_pa_model",
    "compute_pae", "osc_fom", "osc_dc_to_rf_eff", "mixer_cg",
    "pa_pdc", "osc_pdc", "mixer_pdc",
    "model_to_dict", "model_from_dict", "model_json", "save_model",
    "load_model",
    "Dataset", "PaSurveyEntry", "OscSurveyEntry", "MixerSurveyEntry",
    "load_pa_csv", "load_osc_csv", "load_mixer_csv",
    "correlation_matrix", "summary_stats", "filter_by_technology",
    "ToolkitError", "DatasetError", "FitError", "ModelFormatError",
    "QueryError",
    "ExponentialCurve", "PiecewiseParabExpCurve", "FitReport",
    "WeightedPoint", "select_best_points", "fit_exponential_loglinear",
    "fit_exponential_weighted", "fit_piecewise_parab_exp", "evaluate",
    "FrequencyGhz", "PowerDbm", "PowerMw",
    "dbm_to_mw", "mw_to_dbm", "gain_db",
    "__version__",
]
