"""Deterministic CSV and SVG emission.

Numbers use the shortest round-trip representation at precision 17 (which
switches to scientific notation below 1e-4) and ``%.{p}g`` otherwise. The
SVG writer uses a fixed 800x600 canvas with a linear axis mapping recorded
in a comment, and no fonts or scripts.
"""
from __future__ import annotations

import csv
import html
import io
import math
from typing import Iterable, Sequence

WIDTH, HEIGHT = 800, 600
MARGIN = 50


def format_number(v: float, precision: int = 17) -> str:
    v = float(v)
    if precision == 17 or not math.isfinite(v):
        return repr(v)
    return f"{v:.{precision}g}"


def csv_text(header: Sequence[str], rows: Iterable[Sequence[object]], precision: int = 17) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([format_number(c, precision) if isinstance(c, float) else c for c in row])
    return buf.getvalue()


class SvgCanvas:
    """A plot area mapping data coordinates linearly onto the fixed canvas."""

    def __init__(self, x_range: tuple[float, float], y_range: tuple[float, float], title: str = ""):
        self.x0, self.x1 = x_range
        self.y0, self.y1 = y_range
        if not (self.x1 > self.x0 and self.y1 > self.y0):
            raise ValueError("degenerate plot range")
        self.title = title
        self._body: list[str] = []

    def px(self, x: float) -> float:
        return MARGIN + (WIDTH - 2 * MARGIN) * (x - self.x0) / (self.x1 - self.x0)

    def py(self, y: float) -> float:
        return HEIGHT - MARGIN - (HEIGHT - 2 * MARGIN) * (y - self.y0) / (self.y1 - self.y0)

    def _pt(self, x: float, y: float) -> str:
        return f"{self.px(x):.3f},{self.py(y):.3f}"

    def polyline(self, points: Iterable[tuple[float, float]], stroke: str, width: float = 1.0) -> None:
        pts = " ".join(self._pt(x, y) for x, y in points if math.isfinite(x) and math.isfinite(y))
        self._body.append(
            f'<polyline points="{pts}" fill="none" stroke="{stroke}" stroke-width="{width:g}"/>'
        )

    def dots(self, points: Iterable[tuple[float, float]], fill: str, r: float = 1.5) -> None:
        for x, y in points:
            if math.isfinite(x) and math.isfinite(y):
                self._body.append(
                    f'<circle cx="{self.px(x):.3f}" cy="{self.py(y):.3f}" r="{r:g}" fill="{fill}"/>'
                )

    def cell(self, x: float, y: float, w: float, h: float, fill: str) -> None:
        # (x, y) is the lower-left corner in data units
        left, top = self.px(x), self.py(y + h)
        self._body.append(
            f'<rect x="{left:.3f}" y="{top:.3f}" width="{self.px(x + w) - left:.3f}" '
            f'height="{self.py(y) - top:.3f}" fill="{fill}"/>'
        )

    def render(self) -> str:
        span_x = WIDTH - 2 * MARGIN
        span_y = HEIGHT - 2 * MARGIN
        lines = [
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
            f'viewBox="0 0 {WIDTH} {HEIGHT}">',
            f"<!-- axes: px = {MARGIN} + {span_x}*(x - {self.x0!r})/({self.x1!r} - {self.x0!r}); "
            f"py = {HEIGHT - MARGIN} - {span_y}*(y - {self.y0!r})/({self.y1!r} - {self.y0!r}) -->",
        ]
        if self.title:
            lines.append(f"<desc>{html.escape(self.title)}</desc>")
        lines.append(f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>')
        lines.append(
            f'<rect x="{MARGIN}" y="{MARGIN}" width="{span_x}" height="{span_y}" '
            f'fill="none" stroke="black" stroke-width="1"/>'
        )
        lines.extend(self._body)
        lines.append("</svg>")
        return "\n".join(lines) + "\n"
