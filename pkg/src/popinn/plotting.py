"""Deterministic SVG rendering for loss curves and age-time heatmaps.

Hand-rolled SVG keeps outputs byte-identical across runs (no timestamps,
no library-generated ids).
"""
from __future__ import annotations

import math

import numpy as np

__all__ = ["render_loss_svg", "render_field_svg"]

_W, _H = 820, 520
_ML, _MR, _MT, _MB = 70, 30, 30, 50

SERIES_COLORS = {
    "total": "#000000",
    "pde": "#d62728",
    "ic": "#1f77b4",
    "bc": "#2ca02c",
}

# piecewise-linear approximation of a perceptually ordered colormap
_HEAT_ANCHORS = [
    (0.0, (68, 1, 84)),
    (0.25, (59, 82, 139)),
    (0.5, (33, 145, 140)),
    (0.75, (94, 201, 98)),
    (1.0, (253, 231, 37)),
]


def _heat_color(u: float) -> str:
    u = min(max(u, 0.0), 1.0)
    for (u0, c0), (u1, c1) in zip(_HEAT_ANCHORS, _HEAT_ANCHORS[1:]):
        if u <= u1:
            f = 0.0 if u1 == u0 else (u - u0) / (u1 - u0)
            r, g, b = (round(a + f * (bb - a)) for a, bb in zip(c0, c1))
            return f"#{r:02x}{g:02x}{b:02x}"
    return "#fde725"


def _svg_open(title: str) -> list:
    return [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_W}" height="{_H}" '
        f'viewBox="0 0 {_W} {_H}">',
        f'<rect width="{_W}" height="{_H}" fill="white"/>',
        f'<title>{title}</title>',
    ]


def _axis_labels(parts, xlabel, ylabel):
    parts.append(
        f'<text x="{(_ML + _W - _MR) / 2:.1f}" y="{_H - 12}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="14">{xlabel}</text>'
    )
    parts.append(
        f'<text x="18" y="{(_MT + _H - _MB) / 2:.1f}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="14" '
        f'transform="rotate(-90 18 {(_MT + _H - _MB) / 2:.1f})">{ylabel}</text>'
    )


def render_loss_svg(records) -> str:
    """Log-scale line chart of the four loss series."""
    if not records:
        raise ValueError("no loss records to plot")
    epochs = [r.epoch for r in records]
    series = {
        "total": [r.total for r in records],
        "pde": [r.pde for r in records],
        "ic": [r.ic for r in records],
        "bc": [r.bc for r in records],
    }
    floor = 1e-16
    logs = [math.log10(max(v, floor)) for vs in series.values() for v in vs]
    lo, hi = min(logs), max(logs)
    if hi - lo < 1e-9:
        hi = lo + 1.0
    x0, x1 = min(epochs), max(epochs)
    if x1 == x0:
        x1 = x0 + 1

    def sx(e):
        return _ML + (e - x0) / (x1 - x0) * (_W - _ML - _MR)

    def sy(v):
        lv = math.log10(max(v, floor))
        return _H - _MB - (lv - lo) / (hi - lo) * (_H - _MT - _MB)

    parts = _svg_open("training loss")
    parts.append(
        f'<rect x="{_ML}" y="{_MT}" width="{_W - _ML - _MR}" height="{_H - _MT - _MB}" '
        f'fill="none" stroke="#888"/>'
    )
    for name, values in series.items():
        pts = " ".join(f"{sx(e):.2f},{sy(v):.2f}" for e, v in zip(epochs, values))
        parts.append(
            f'<polyline fill="none" stroke="{SERIES_COLORS[name]}" stroke-width="1.5" '
            f'points="{pts}"/>'
        )
    for i, (name, color) in enumerate(SERIES_COLORS.items()):
        y = _MT + 16 + 18 * i
        parts.append(f'<line x1="{_W - 150}" y1="{y}" x2="{_W - 120}" y2="{y}" stroke="{color}" stroke-width="2"/>')
        parts.append(
            f'<text x="{_W - 112}" y="{y + 4}" font-family="sans-serif" font-size="12">{name}</text>'
        )
    for decade in range(math.floor(lo), math.ceil(hi) + 1):
        y = _H - _MB - (decade - lo) / (hi - lo) * (_H - _MT - _MB)
        if _MT <= y <= _H - _MB:
            parts.append(
                f'<text x="{_ML - 6}" y="{y + 4:.1f}" text-anchor="end" '
                f'font-family="sans-serif" font-size="11">1e{decade}</text>'
            )
    _axis_labels(parts, "epoch", "loss (log scale)")
    parts.append("</svg>")
    return "\n".join(parts)


def render_field_svg(ages, years, values) -> str:
    """Age-time heatmap with a linear color scale."""
    values = np.asarray(values, dtype=float)
    na, nt = values.shape
    vmin, vmax = float(values.min()), float(values.max())
    span = vmax - vmin
    cw = (_W - _ML - _MR) / nt
    ch = (_H - _MT - _MB) / na
    parts = _svg_open("population density")
    for i in range(na):
        # youngest age at the bottom
        y = _MT + (na - 1 - i) * ch
        for n in range(nt):
            u = 0.5 if span == 0.0 else (values[i, n] - vmin) / span
            x = _ML + n * cw
            parts.append(
                f'<rect x="{x:.2f}" y="{y:.2f}" width="{cw + 0.05:.2f}" '
                f'height="{ch + 0.05:.2f}" fill="{_heat_color(u)}"/>'
            )
    parts.append(
        f'<rect x="{_ML}" y="{_MT}" width="{_W - _ML - _MR}" height="{_H - _MT - _MB}" '
        f'fill="none" stroke="#444"/>'
    )
    for frac in (0.0, 0.5, 1.0):
        xv = years[0] + frac * (years[-1] - years[0])
        parts.append(
            f'<text x="{_ML + frac * (_W - _ML - _MR):.1f}" y="{_H - _MB + 16}" '
            f'text-anchor="middle" font-family="sans-serif" font-size="11">{xv:g}</text>'
        )
        yv = ages[0] + frac * (ages[-1] - ages[0])
        parts.append(
            f'<text x="{_ML - 6}" y="{_H - _MB - frac * (_H - _MT - _MB) + 4:.1f}" '
            f'text-anchor="end" font-family="sans-serif" font-size="11">{yv:g}</text>'
        )
    parts.append(
        f'<text x="{_W - _MR}" y="{_MT - 8}" text-anchor="end" font-family="sans-serif" '
        f'font-size="11">density {vmin:.4g} to {vmax:.4g}</text>'
    )
    _axis_labels(parts, "year", "age")
    parts.append("</svg>")
    return "\n".join(parts)
