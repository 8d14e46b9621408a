"""Minimal deterministic SVG 1.1 writer (rect, line and text only)."""
from __future__ import annotations

from xml.sax.saxutils import escape, quoteattr

from .numfmt import fmt_svg


class SvgDoc:
    def __init__(self, width: float, height: float):
        self.width = width
        self.height = height
        self._items: list[str] = []

    @staticmethod
    def _attrs(pairs) -> str:
        out = []
        for k, v in pairs:
            if v is None:
                continue
            text = fmt_svg(v) if isinstance(v, (int, float)) else str(v)
            out.append(f"{k}={quoteattr(text)}")
        return " ".join(out)

    def rect(self, x, y, w, h, fill="white", stroke=None, cls=None) -> None:
        a = self._attrs([("class", cls), ("x", x), ("y", y), ("width", w), ("height", h),
                         ("fill", fill), ("stroke", stroke)])
        self._items.append(f"<rect {a}/>")

    def line(self, x1, y1, x2, y2, width=1.0, stroke="black", cls=None) -> None:
        a = self._attrs([("class", cls), ("x1", x1), ("y1", y1), ("x2", x2), ("y2", y2),
                         ("stroke", stroke), ("stroke-width", width)])
        self._items.append(f"<line {a}/>")

    def text(self, x, y, body: str, size=12, anchor="middle", cls=None) -> None:
        a = self._attrs([("class", cls), ("x", x), ("y", y), ("font-family", "monospace"),
                         ("font-size", size), ("text-anchor", anchor)])
        self._items.append(f"<text {a}>{escape(body)}</text>")

    def render(self) -> str:
        w, h = fmt_svg(self.width), fmt_svg(self.height)
        head = (
            '<?xml version="1.0" encoding="UTF-8"?>\n'
            f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" '
            f'viewBox="0 0 {w} {h}">\n'
        )
        return head + "".join(f"  {item}\n" for item in self._items) + "</svg>\n"
