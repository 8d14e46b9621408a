"""Line plots for the sweep tables, written with the same SVG rules as diagrams."""
from __future__ import annotations

from typing import Sequence

from .numfmt import fmt_svg
from .svg import SvgDoc

_W, _H = 480.0, 360.0
_ML, _MR, _MT, _MB = 60.0, 20.0, 30.0, 50.0
_COLORS = ("#1f4e9c", "#c0392b", "#2e7d32")


def line_plot(
    x: Sequence[float],
    series: Sequence[tuple[str, Sequence[float]]],
    x_label: str,
    y_label: str,
    x_range: tuple[float, float],
    y_range: tuple[float, float],
    title: str = "",
) -> str:
    doc = SvgDoc(_W, _H)
    doc.rect(0, 0, _W, _H, fill="white", cls="background")
    pw, ph = _W - _ML - _MR, _H - _MT - _MB
    (x0, x1), (y0, y1) = x_range, y_range

    def px(v: float) -> float:
        return _ML + (v - x0) / (x1 - x0) * pw

    def py(v: float) -> float:
        return _MT + ph - (v - y0) / (y1 - y0) * ph

    doc.line(_ML, _MT + ph, _ML + pw, _MT + ph, cls="axis")
    doc.line(_ML, _MT, _ML, _MT + ph, cls="axis")
    for k in range(5):
        xv = x0 + (x1 - x0) * k / 4
        yv = y0 + (y1 - y0) * k / 4
        doc.line(px(xv), _MT + ph, px(xv), _MT + ph + 5, cls="tick")
        doc.text(px(xv), _MT + ph + 18, fmt_svg(round(xv, 4)), size=10, cls="tick")
        doc.line(_ML - 5, py(yv), _ML, py(yv), cls="tick")
        doc.text(_ML - 8, py(yv) + 3, fmt_svg(round(yv, 4)), size=10, anchor="end", cls="tick")
    doc.text(_ML + pw / 2, _H - 12, x_label, cls="label")
    doc.text(14, _MT + ph / 2, y_label, cls="label")
    if title:
        doc.text(_ML + pw / 2, 18, title, cls="title")
    for k, (name, ys) in enumerate(series):
        color = _COLORS[k % len(_COLORS)]
        for i in range(len(x) - 1):
            doc.line(px(x[i]), py(ys[i]), px(x[i + 1]), py(ys[i + 1]), 2.0, stroke=color, cls="series")
        doc.line(_ML + pw - 90, _MT + 12 + 16 * k, _ML + pw - 70, _MT + 12 + 16 * k, 2.0, stroke=color, cls="key")
        doc.text(_ML + pw - 65, _MT + 16 + 16 * k, name, size=11, anchor="start", cls="key")
    return doc.render()
