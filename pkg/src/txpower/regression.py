"""Frequency-trend fitting for survey data.

Two curve families cover every trend in the toolkit: a plain exponential
``a * exp(b * f)`` fitted in closed form on ``ln y`` (optionally weighted,
so best-in-class survey points can dominate), and a piecewise curve that
rises as a parabola to a peak and decays exponentially past it. The
piecewise knot is grid-searched over the observed frequencies and their
midpoints; the exponential tail is re-anchored to the parabola's peak
value so the curve stays continuous.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import FitError, ModelFormatError
from .units import FrequencyGhz

__all__ = [
    "ExponentialCurve",
    "PiecewiseParabExpCurve",
    "FitReport",
    "WeightedPoint",
    "select_best_points",
    "fit_exponential_loglinear",
    "fit_exponential_weighted",
    "fit_piecewise_parab_exp",
    "evaluate",
    "curve_to_dict",
    "curve_from_dict",
]


@dataclass(frozen=True)
class FitReport:
    """Diagnostics of one fit: sizes, y-scale residual error, determination."""

    n_points: int
    n_best_points: int
    rmse: float
    r_squared: float
    converged: bool

    def __post_init__(self) -> None:
        if self.rmse < 0.0:
            raise ValueError("rmse cannot be negative")
        if self.n_best_points > self.n_points:
            raise ValueError("n_best_points cannot exceed n_points")


@dataclass(frozen=True)
class ExponentialCurve:
    """y(f) = a * exp(b * f) with a validity domain [f_min, f_max] in GHz."""

    a: float
    b: float            # 1/GHz; negative for decaying trends
    f_min: float
    f_max: float

    def __post_init__(self) -> None:
        if not self.a > 0.0:
            raise ValueError(f"amplitude must be > 0, got {self.a!r}")
        if not self.f_min < self.f_max:
            raise ValueError("curve domain must be non-degenerate")

    def value_at(self, f_ghz: float) -> float:
        return self.a * math.exp(self.b * f_ghz)

    def contains(self, f_ghz: float) -> bool:
        return self.f_min <= f_ghz <= self.f_max


@dataclass(frozen=True)
class PiecewiseParabExpCurve:
    """Parabola peaking at the knot, exponential decay past it.

    The parabola ``c0 + c1*f + c2*f**2`` applies on [f_min, knot], the
    exponential ``a * exp(b * f)`` on (knot, f_max]. Both segments agree at
    the knot and the parabola's vertex sits on the knot, so the curve is
    continuous and peaks exactly where the segments meet.
    """

    knot: float
    c0: float
    c1: float
    c2: float
    a: float
    b: float
    f_min: float
    f_max: float

    def __post_init__(self) -> None:
        if not self.f_min < self.f_max:
            raise ValueError("curve domain must be non-degenerate")
        if not self.f_min <= self.knot <= self.f_max:
            raise ValueError("knot must lie inside the curve domain")
        if not self.a > 0.0:
            raise ValueError(f"amplitude must be > 0, got {self.a!r}")
        if self.c2 > 0.0:
            raise ValueError("parabola must open downward (c2 <= 0)")
        if self.c2 != 0.0:
            vertex = -self.c1 / (2.0 * self.c2)
            if abs(vertex - self.knot) > 1e-6 * (1.0 + abs(self.knot)):
                raise ValueError(
                    f"parabola vertex {vertex!r} does not sit on knot {self.knot!r}"
                )
        left = self._parabola(self.knot)
        right = self.a * math.exp(self.b * self.knot)
        if abs(left - right) > 1e-9 * max(abs(left), abs(right), 1e-12):
            raise ValueError(
                f"segments disagree at the knot: {left!r} vs {right!r}"
            )
        if left <= 0.0 or self._parabola(self.f_min) <= 0.0:
            raise ValueError("curve must stay strictly positive on its domain")

    def _parabola(self, f_ghz: float) -> float:
        return self.c0 + self.c1 * f_ghz + self.c2 * f_ghz * f_ghz

    def value_at(self, f_ghz: float) -> float:
        if f_ghz <= self.knot:
            return self._parabola(f_ghz)
        return self.a * math.exp(self.b * f_ghz)

    def contains(self, f_ghz: float) -> bool:
        return self.f_min <= f_ghz <= self.f_max


@dataclass(frozen=True)
class WeightedPoint:
    """One (frequency GHz, value) observation with a fitting weight."""

    f: float
    y: float
    weight: float = 1.0

    def __post_init__(self) -> None:
        if not (math.isfinite(self.f) and math.isfinite(self.y)
                and math.isfinite(self.weight)):
            raise ValueError("weighted point fields must be finite")
        if self.weight <= 0.0:
            raise ValueError(f"weight must be > 0, got {self.weight!r}")


def evaluate(curve, f: FrequencyGhz) -> tuple[float, bool]:
    """Curve value at f plus an extrapolation flag.

    The evaluation formula is unchanged outside the domain; the flag is the
    only signal that the query left the fitted frequency span.
    """
    x = f.value
    return curve.value_at(x), not curve.contains(x)


# --- best-point selection ---------------------------------------------------

def _log_edges(f_lo: float, f_hi: float, n_bins: int) -> np.ndarray:
    lo = math.log10(f_lo)
    hi = math.log10(f_hi)
    edges = [10.0 ** (lo + (hi - lo) * i / n_bins) for i in range(n_bins + 1)]
    # pin the endpoints so min/max points cannot fall outside by rounding
    edges[0] = f_lo
    edges[-1] = f_hi
    return np.asarray(edges)


def select_best_points(points: Sequence[tuple[float, float]],
                       n_bins: int = 8) -> list[tuple[float, float]]:
    """Keep the maximal-y point of each non-empty log-spaced frequency bin.

    Bins are logarithmic over [min f, max f]; bin i covers
    [edge_i, edge_{i+1}) with the top edge closing the last bin. Ties on y
    inside a bin resolve to the lowest frequency. Output is ordered by bin.
    """
    pts = [(float(f), float(y)) for f, y in points]
    if not pts:
        raise FitError("no points to select from")
    if n_bins < 1:
        raise FitError(f"n_bins must be >= 1, got {n_bins}")
    fs = np.array([p[0] for p in pts])
    ys = np.array([p[1] for p in pts])
    if not (np.isfinite(fs).all() and np.isfinite(ys).all()):
        raise FitError("points must be finite")
    if fs.min() <= 0.0:
        raise FitError("frequencies must be > 0 for logarithmic binning")
    if fs.min() == fs.max():
        bins = np.zeros(len(pts), dtype=np.intp)
    else:
        edges = _log_edges(float(fs.min()), float(fs.max()), n_bins)
        bins = np.searchsorted(edges, fs, side="right") - 1
        bins = np.clip(bins, 0, n_bins - 1)
    # stable sort: per bin, highest y first, then lowest f, then input order
    order = np.lexsort((fs, -ys, bins))
    _, first = np.unique(bins[order], return_index=True)
    return [pts[i] for i in order[first]]


# --- exponential fits -------------------------------------------------------

def _as_fit_arrays(points) -> tuple[np.ndarray, np.ndarray]:
    if len(points) < 2:
        raise FitError(f"need at least 2 points to fit, got {len(points)}")
    f = np.array([float(p[0]) for p in points])
    y = np.array([float(p[1]) for p in points])
    if not (np.isfinite(f).all() and np.isfinite(y).all()):
        raise FitError("points must be finite")
    if (y <= 0.0).any():
        bad = int(np.argmax(y <= 0.0))
        raise FitError(
            f"exponential fitting needs y > 0; got y={y[bad]!r} at f={f[bad]!r}"
        )
    if np.unique(f).size < 2:
        raise FitError("all frequencies identical; trend is undetermined")
    return f, y


def _report(f: np.ndarray, y: np.ndarray, predicted: np.ndarray,
            n_best: int = 0) -> FitReport:
    res = y - predicted
    ss_res = float(np.dot(res, res))
    yc = y - y.mean()
    ss_tot = float(np.dot(yc, yc))
    r2 = 1.0 - ss_res / ss_tot if ss_tot > 0.0 else 1.0
    return FitReport(
        n_points=len(y),
        n_best_points=n_best,
        rmse=float(np.sqrt(ss_res / len(y))),
        r_squared=r2,
        converged=True,
    )


def fit_exponential_loglinear(points) -> tuple[ExponentialCurve, FitReport]:
    """Exact least-squares fit of ln(y) on f, exponentiated back.

    This is the unweighted reference fit; it doubles as the closed-form
    check for the weighted variant.
    """
    f, y = _as_fit_arrays(points)
    slope, intercept = np.polyfit(f, np.log(y), 1)
    curve = ExponentialCurve(a=float(np.exp(intercept)), b=float(slope),
                             f_min=float(f.min()), f_max=float(f.max()))
    predicted = curve.a * np.exp(curve.b * f)
    return curve, _report(f, y, predicted)


def fit_exponential_weighted(
        points: Sequence[WeightedPoint]) -> tuple[ExponentialCurve, FitReport]:
    """Closed-form weighted log-linear least squares.

    Minimizes sum(w_i * (ln y_i - ln a - b f_i)^2). With unit weights the
    result coincides with :func:`fit_exponential_loglinear`.
    """
    f, y = _as_fit_arrays([(p.f, p.y) for p in points])
    w = np.array([float(p.weight) for p in points])
    if (w <= 0.0).any() or not np.isfinite(w).all():
        raise FitError("weights must be finite and > 0")
    z = np.log(y)
    total = w.sum()
    f_bar = float((w * f).sum() / total)
    z_bar = float((w * z).sum() / total)
    s_ff = float((w * (f - f_bar) ** 2).sum())
    if s_ff == 0.0:
        raise FitError("zero weighted frequency variance; trend is undetermined")
    b = float((w * (f - f_bar) * (z - z_bar)).sum() / s_ff)
    a = float(np.exp(z_bar - b * f_bar))
    curve = ExponentialCurve(a=a, b=b, f_min=float(f.min()), f_max=float(f.max()))
    predicted = curve.a * np.exp(curve.b * f)
    return curve, _report(f, y, predicted)


# --- piecewise parabola + exponential ---------------------------------------

def _anchored_candidate(f, y, k):
    """Fit both segments for one knot candidate; None if infeasible.

    Left of the knot: least squares of y on {1, (f - k)^2} with the
    curvature clamped to <= 0, so the parabola peaks at the knot. Right of
    the knot: the exponential slope is fitted through the parabola's knot
    value, which enforces continuity by construction.
    """
    left = f <= k
    right = ~left
    if not left.any() or not right.any():
        return None
    fl, yl = f[left], y[left]
    fr, yr = f[right], y[right]
    u = (fl - k) ** 2
    u_bar, y_bar = u.mean(), yl.mean()
    duu = float(((u - u_bar) ** 2).sum())
    gamma = float(((u - u_bar) * (yl - y_bar)).sum() / duu) if duu > 0.0 else 0.0
    gamma = min(gamma, 0.0)
    alpha = float(y_bar - gamma * u_bar)
    peak = alpha
    # parabola opens downward, so its minimum over [f_min, k] sits at f_min
    if peak <= 0.0 or alpha + gamma * (fl.min() - k) ** 2 <= 0.0:
        return None
    d = fr - k
    t = np.log(yr) - math.log(peak)
    b = float((d * t).sum() / (d * d).sum())
    a = peak * math.exp(-b * k)
    ssr = float(((yl - (alpha + gamma * u)) ** 2).sum()
                + ((yr - a * np.exp(b * fr)) ** 2).sum())
    curve = PiecewiseParabExpCurve(
        knot=float(k),
        c0=alpha + gamma * k * k, c1=-2.0 * gamma * k, c2=gamma,
        a=a, b=b,
        f_min=float(f.min()), f_max=float(f.max()),
    )
    return curve, ssr


def fit_piecewise_parab_exp(points) -> tuple[PiecewiseParabExpCurve, FitReport]:
    """Fit the peak-then-decay curve by grid search over knot candidates.

    Candidates are the observed frequencies plus their midpoints. A flat
    degenerate candidate equal to the plain exponential fit is always in
    the family, so the piecewise residual never exceeds the single-segment
    one; near-ties resolve toward that candidate and then toward smaller
    knots, which makes trend-free data collapse to the plain exponential.
    """
    f, y = _as_fit_arrays(points)
    if len(y) < 6:
        raise FitError(f"piecewise fit needs at least 6 points, got {len(y)}")
    uniq = np.unique(f)
    if uniq.size < 3:
        raise FitError("piecewise fit needs at least 3 distinct frequencies")

    f_min, f_max = float(f.min()), float(f.max())
    exp_curve, _ = fit_exponential_loglinear(list(zip(f, y)))
    flat_value = exp_curve.a * math.exp(exp_curve.b * f_min)
    degenerate = PiecewiseParabExpCurve(
        knot=f_min, c0=flat_value, c1=0.0, c2=0.0,
        a=exp_curve.a, b=exp_curve.b, f_min=f_min, f_max=f_max,
    )
    res = y - exp_curve.a * np.exp(exp_curve.b * f)
    best_curve, best_ssr = degenerate, float(np.dot(res, res))

    yc = y - y.mean()
    tie_tol = 1e-9 * float(np.dot(yc, yc))

    candidates: list[float] = []
    for i in range(uniq.size - 1):
        candidates.append(float(uniq[i]))
        candidates.append(float((uniq[i] + uniq[i + 1]) / 2.0))
    found_split = False
    for k in candidates:
        fitted = _anchored_candidate(f, y, k)
        if fitted is None:
            continue
        found_split = True
        curve, ssr = fitted
        if ssr < best_ssr - tie_tol:
            best_curve, best_ssr = curve, ssr
    if not found_split:
        raise FitError("too few points on either side of every candidate knot")

    predicted = np.array([best_curve.value_at(v) for v in f])
    return best_curve, _report(f, y, predicted)


# --- serialization ----------------------------------------------------------

def curve_to_dict(curve, report: FitReport) -> dict:
    """JSON-ready document for a fitted curve; field names are a contract."""
    fit = {
        "rmse": report.rmse,
        "r2": report.r_squared,
        "n": report.n_points,
        "n_best": report.n_best_points,
    }
    if isinstance(curve, ExponentialCurve):
        return {
            "kind": "exp",
            "params": {"a": curve.a, "b": curve.b},
            "domain_ghz": [curve.f_min, curve.f_max],
            "fit": fit,
        }
    if isinstance(curve, PiecewiseParabExpCurve):
        return {
            "kind": "parab_exp",
            "params": {
                "knot_ghz": curve.knot,
                "c0": curve.c0, "c1": curve.c1, "c2": curve.c2,
                "a": curve.a, "b": curve.b,
            },
            "domain_ghz": [curve.f_min, curve.f_max],
            "fit": fit,
        }
    raise ModelFormatError(f"unknown curve type {type(curve).__name__}")


def _number(doc: dict, key: str, where: str) -> float:
    value = doc.get(key)
    if not isinstance(value, (int, float)) or isinstance(value, bool):
        raise ModelFormatError(f"{where}: missing or non-numeric field {key!r}")
    return float(value)


def curve_from_dict(doc: dict):
    """Parse a curve document back into (curve, FitReport)."""
    if not isinstance(doc, dict):
        raise ModelFormatError("curve document must be an object")
    kind = doc.get("kind")
    params = doc.get("params")
    domain = doc.get("domain_ghz")
    fit = doc.get("fit")
    if not isinstance(params, dict) or not isinstance(fit, dict):
        raise ModelFormatError("curve document needs 'params' and 'fit' objects")
    if (not isinstance(domain, (list, tuple)) or len(domain) != 2
            or not all(isinstance(v, (int, float)) for v in domain)):
        raise ModelFormatError("curve document needs a 2-element 'domain_ghz'")
    lo, hi = float(domain[0]), float(domain[1])
    try:
        if kind == "exp":
            curve = ExponentialCurve(
                a=_number(params, "a", "params"),
                b=_number(params, "b", "params"),
                f_min=lo, f_max=hi,
            )
        elif kind == "parab_exp":
            curve = PiecewiseParabExpCurve(
                knot=_number(params, "knot_ghz", "params"),
                c0=_number(params, "c0", "params"),
                c1=_number(params, "c1", "params"),
                c2=_number(params, "c2", "params"),
                a=_number(params, "a", "params"),
                b=_number(params, "b", "params"),
                f_min=lo, f_max=hi,
            )
        else:
            raise ModelFormatError(f"unknown curve kind {kind!r}")
        report = FitReport(
            n_points=int(_number(fit, "n", "fit")),
            n_best_points=int(_number(fit, "n_best", "fit")),
            rmse=_number(fit, "rmse", "fit"),
            r_squared=_number(fit, "r2", "fit"),
            converged=True,
        )
    except ValueError as exc:
        raise ModelFormatError(f"invalid curve in model document: {exc}") from exc
    return curve, report
