"""Bundled synthetic survey datasets (see txpower.datagen to regenerate)."""

from importlib import resources
from pathlib import Path

_FILENAMES = {
    "pa": "pa_survey.csv",
    "osc": "osc_survey.csv",
    "mixer": "mixer_survey.csv",
}


def dataset_path(component: str) -> Path:
    """Filesystem path of a bundled dataset: 'pa', 'osc', or 'mixer'."""
    if component not in _FILENAMES:
        raise KeyError(f"no bundled dataset for {component!r}")
    return Path(resources.files(__package__) / _FILENAMES[component])
