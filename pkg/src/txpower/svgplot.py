"""Self-contained SVG rendering for fitted curves and chain breakdowns.

No plotting library, no timestamps, fixed canvas geometry and fixed float
formatting: identical input yields byte-identical SVG.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .chain import ChainBreakdown

__all__ = ["render_curve_svg", "render_breakdown_svg", "CURVE_SAMPLES"]

CURVE_SAMPLES = 200

_WIDTH = 960
_HEIGHT = 560
_MARGIN_LEFT = 80
_MARGIN_RIGHT = 40
_MARGIN_TOP = 60
_MARGIN_BOTTOM = 70

_COMPONENT_COLORS = {"pa": "#1f77b4", "mixer": "#d62728", "osc": "#2ca02c"}
_CURVE_LABELS = {
    "pa": ("PA efficiency model", "PAE (fraction)"),
    "osc": ("Oscillator efficiency model", "DC-to-RF efficiency (fraction)"),
    "mixer": ("Mixer gain-per-power model", "linear gain per mW DC"),
}


def _escape(text: str) -> str:
    return (text.replace("&", "&amp;").replace("<", "&lt;")
            .replace(">", "&gt;").replace('"', "&quot;"))


def _open_svg(title: str) -> list[str]:
    return [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_WIDTH}" '
        f'height="{_HEIGHT}" viewBox="0 0 {_WIDTH} {_HEIGHT}">',
        '<rect x="0" y="0" width="100%" height="100%" fill="#ffffff"/>',
        f'<text x="{_WIDTH / 2:.1f}" y="30" text-anchor="middle" '
        f'font-size="20" font-family="sans-serif">{_escape(title)}</text>',
    ]


def _axes(lines: list[str], y_max: float, y_label: str) -> None:
    plot_bottom = _HEIGHT - _MARGIN_BOTTOM
    plot_right = _WIDTH - _MARGIN_RIGHT
    for i in range(7):
        value = y_max * i / 6
        y = plot_bottom - (plot_bottom - _MARGIN_TOP) * i / 6
        lines.append(
            f'<line x1="{_MARGIN_LEFT}" y1="{y:.2f}" x2="{plot_right}" '
            f'y2="{y:.2f}" stroke="#dddddd" stroke-width="1"/>'
        )
        lines.append(
            f'<text x="{_MARGIN_LEFT - 8}" y="{y + 4:.2f}" text-anchor="end" '
            f'font-size="12" font-family="sans-serif">{value:.3g}</text>'
        )
    lines.append(
        f'<text x="18" y="{_HEIGHT / 2:.1f}" text-anchor="middle" '
        f'font-size="14" font-family="sans-serif" '
        f'transform="rotate(-90 18 {_HEIGHT / 2:.1f})">{_escape(y_label)}</text>'
    )


def render_curve_svg(component: str, curve) -> str:
    """Line chart of one fitted curve sampled across its domain."""
    title, y_label = _CURVE_LABELS.get(
        component, (f"{component} model", "value"))
    xs = np.linspace(curve.f_min, curve.f_max, CURVE_SAMPLES)
    ys = np.array([curve.value_at(float(x)) for x in xs])
    y_max = float(ys.max()) * 1.08
    if y_max <= 0.0:
        y_max = 1.0
    plot_bottom = _HEIGHT - _MARGIN_BOTTOM
    plot_width = _WIDTH - _MARGIN_LEFT - _MARGIN_RIGHT
    plot_height = plot_bottom - _MARGIN_TOP
    span = curve.f_max - curve.f_min

    lines = _open_svg(title)
    _axes(lines, y_max, y_label)
    points = " ".join(
        f"{_MARGIN_LEFT + (x - curve.f_min) / span * plot_width:.2f},"
        f"{plot_bottom - y / y_max * plot_height:.2f}"
        for x, y in zip(xs, ys)
    )
    color = _COMPONENT_COLORS.get(component, "#333333")
    lines.append(
        f'<polyline fill="none" stroke="{color}" stroke-width="2" '
        f'points="{points}"/>'
    )
    for frac in (0.0, 0.25, 0.5, 0.75, 1.0):
        f_tick = curve.f_min + frac * span
        x = _MARGIN_LEFT + frac * plot_width
        lines.append(
            f'<text x="{x:.2f}" y="{plot_bottom + 20}" text-anchor="middle" '
            f'font-size="12" font-family="sans-serif">{f_tick:.4g}</text>'
        )
    lines.append(
        f'<text x="{_MARGIN_LEFT + plot_width / 2:.1f}" '
        f'y="{_HEIGHT - 18}" text-anchor="middle" font-size="14" '
        f'font-family="sans-serif">f (GHz)</text>'
    )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def render_breakdown_svg(rows: Sequence[ChainBreakdown]) -> str:
    """Stacked-bar chart of the chain breakdown, one group per frequency."""
    if not rows:
        raise ValueError("no breakdown rows to plot")
    freqs: list[float] = []
    levels: list[float] = []
    for row in rows:
        if row.f.value not in freqs:
            freqs.append(row.f.value)
        if row.mixer_pout.value not in levels:
            levels.append(row.mixer_pout.value)
    y_max = max(r.total_pdc.value for r in rows) * 1.08
    if y_max <= 0.0:
        y_max = 1.0

    plot_bottom = _HEIGHT - _MARGIN_BOTTOM
    plot_width = _WIDTH - _MARGIN_LEFT - _MARGIN_RIGHT
    plot_height = plot_bottom - _MARGIN_TOP
    group_w = plot_width / len(freqs)
    bar_w = group_w * 0.8 / max(len(levels), 1)

    lines = _open_svg("Transmitter chain DC power")
    _axes(lines, y_max, "P_DC (mW)")
    for row in rows:
        gi = freqs.index(row.f.value)
        bi = levels.index(row.mixer_pout.value)
        x = _MARGIN_LEFT + gi * group_w + group_w * 0.1 + bi * bar_w
        y_cursor = plot_bottom
        for name, part in (("pa", row.pa_pdc.value),
                           ("mixer", row.mixer_pdc.value),
                           ("osc", row.osc_pdc.value)):
            h = part / y_max * plot_height
            y_cursor -= h
            lines.append(
                f'<rect class="seg-{name}" x="{x:.2f}" y="{y_cursor:.2f}" '
                f'width="{bar_w:.2f}" height="{h:.2f}" '
                f'fill="{_COMPONENT_COLORS[name]}"/>'
            )
    for gi, f_value in enumerate(freqs):
        x = _MARGIN_LEFT + gi * group_w + group_w / 2
        lines.append(
            f'<text x="{x:.2f}" y="{plot_bottom + 20}" text-anchor="middle" '
            f'font-size="12" font-family="sans-serif">{f_value:.4g} GHz</text>'
        )
    for i, (name, color) in enumerate(_COMPONENT_COLORS.items()):
        x = _MARGIN_LEFT + i * 110
        lines.append(
            f'<rect x="{x}" y="40" width="12" height="12" fill="{color}"/>'
        )
        lines.append(
            f'<text x="{x + 18}" y="51" font-size="13" '
            f'font-family="sans-serif">{name}</text>'
        )
    lines.append(
        f'<text x="{_MARGIN_LEFT + plot_width / 2:.1f}" '
        f'y="{_HEIGHT - 18}" text-anchor="middle" font-size="14" '
        f'font-family="sans-serif">frequency group / mixer output level</text>'
    )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
