"""Minimal self-contained SVG charts of mean evaluations per swept parameter.

Hand-rolled on purpose: the output must be a deterministic, dependency-free
vector file (no fonts to embed, no randomized element ids), and a line/point
chart with optionally log-scaled axes does not need a plotting library.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path
from xml.sax.saxutils import escape

__all__ = ["ChartAxes", "emit_svg"]

WIDTH = 640
HEIGHT = 440
MARGIN_LEFT = 86
MARGIN_RIGHT = 24
MARGIN_TOP = 34
MARGIN_BOTTOM = 58

PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")


@dataclass(frozen=True)
class ChartAxes:
    """Axis labels and scales for :func:`emit_svg`."""

    x_label: str
    y_label: str = "mean evaluations"
    x_log_base: int | None = None
    y_log_base: int | None = 10
    title: str = ""


def emit_svg(results, path: str | Path, axes: ChartAxes, x_field: str = "pop_size") -> Path:
    """Chart mean evaluations against the swept parameter, one series per pc.

    ``results`` is the output of run_experiment (triples) or (cell, summary)
    pairs; cells whose mean is undefined (no successful runs) are skipped.
    """
    series: dict[float, list[tuple[float, float]]] = {}
    for item in results:
        cell, summary = item[0], item[1]
        if summary.mean_evaluations is None:
            continue
        x = getattr(cell, x_field)
        if x is None:
            raise ValueError(f"cell {cell} has no value for {x_field!r}")
        series.setdefault(cell.pc, []).append((float(x), summary.mean_evaluations))
    if not series:
        raise ValueError("nothing to chart: no cell has a defined mean")

    xs = [x for pts in series.values() for x, _ in pts]
    ys = [y for pts in series.values() for _, y in pts]
    x_scale = _Scale(min(xs), max(xs), axes.x_log_base, MARGIN_LEFT, WIDTH - MARGIN_RIGHT)
    y_scale = _Scale(min(ys), max(ys), axes.y_log_base, HEIGHT - MARGIN_BOTTOM, MARGIN_TOP)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
    ]
    if axes.title:
        parts.append(
            f'<text x="{WIDTH / 2:.1f}" y="20" text-anchor="middle" '
            f'font-family="sans-serif" font-size="14">{escape(axes.title)}</text>'
        )
    parts.extend(_axis_lines())
    parts.extend(_x_ticks(x_scale))
    parts.extend(_y_ticks(y_scale))
    parts.append(
        f'<text x="{(MARGIN_LEFT + WIDTH - MARGIN_RIGHT) / 2:.1f}" y="{HEIGHT - 14}" '
        f'text-anchor="middle" font-family="sans-serif" font-size="12">'
        f"{escape(axes.x_label)}</text>"
    )
    parts.append(
        f'<text x="18" y="{(MARGIN_TOP + HEIGHT - MARGIN_BOTTOM) / 2:.1f}" '
        f'text-anchor="middle" font-family="sans-serif" font-size="12" '
        f'transform="rotate(-90 18 {(MARGIN_TOP + HEIGHT - MARGIN_BOTTOM) / 2:.1f})">'
        f"{escape(axes.y_label)}</text>"
    )

    for index, pc in enumerate(sorted(series)):
        color = PALETTE[index % len(PALETTE)]
        points = sorted(series[pc])
        coords = [(x_scale(x), y_scale(y)) for x, y in points]
        if len(coords) > 1:
            joined = " ".join(f"{px:.2f},{py:.2f}" for px, py in coords)
            parts.append(
                f'<polyline points="{joined}" fill="none" stroke="{color}" stroke-width="1.5"/>'
            )
        for px, py in coords:
            parts.append(f'<circle cx="{px:.2f}" cy="{py:.2f}" r="3" fill="{color}"/>')
        legend_y = MARGIN_TOP + 8 + 16 * index
        parts.append(
            f'<line x1="{WIDTH - 150}" y1="{legend_y}" x2="{WIDTH - 126}" y2="{legend_y}" '
            f'stroke="{color}" stroke-width="1.5"/>'
        )
        parts.append(
            f'<text x="{WIDTH - 120}" y="{legend_y + 4}" font-family="sans-serif" '
            f'font-size="11">{escape(f"pc={pc:g}")}</text>'
        )

    parts.append("</svg>")
    out = Path(path)
    out.write_text("\n".join(parts) + "\n", encoding="utf-8", newline="\n")
    return out


class _Scale:
    """Maps data values to pixel positions, linearly or logarithmically."""

    def __init__(self, lo: float, hi: float, log_base: int | None, p0: float, p1: float):
        self.log_base = log_base
        if log_base is not None:
            if lo <= 0:
                raise ValueError("log-scaled axes need positive values")
            lo = math.log(lo, log_base)
            hi = math.log(hi, log_base)
            lo, hi = math.floor(lo), math.ceil(hi)
            if lo == hi:
                hi += 1
        elif lo == hi:
            lo -= 0.5
            hi += 0.5
        else:
            pad = 0.05 * (hi - lo)
            lo -= pad
            hi += pad
        self.lo = lo
        self.hi = hi
        self.p0 = p0
        self.p1 = p1

    def __call__(self, value: float) -> float:
        v = math.log(value, self.log_base) if self.log_base is not None else value
        frac = (v - self.lo) / (self.hi - self.lo)
        return self.p0 + frac * (self.p1 - self.p0)

    def ticks(self) -> list[tuple[float, str]]:
        if self.log_base is not None:
            exps = range(int(self.lo), int(self.hi) + 1)
            step = max(1, len(range(int(self.lo), int(self.hi) + 1)) // 8)
            return [
                (self.log_base**e, _tick_label(float(self.log_base**e)))
                for e in exps
                if (e - int(self.lo)) % step == 0
            ]
        span = self.hi - self.lo
        raw = span / 5
        mag = 10 ** math.floor(math.log10(raw)) if raw > 0 else 1
        for mult in (1, 2, 5, 10):
            if raw <= mult * mag:
                step = mult * mag
                break
        first = math.ceil(self.lo / step) * step
        out = []
        v = first
        while v <= self.hi + 1e-9 * max(1.0, abs(self.hi)):
            out.append((v, _tick_label(v)))
            v += step
        return out


def _tick_label(value: float) -> str:
    if value == int(value) and abs(value) < 1e6:
        return str(int(value))
    return f"{value:g}"


def _axis_lines() -> list[str]:
    x0, x1 = MARGIN_LEFT, WIDTH - MARGIN_RIGHT
    y0, y1 = HEIGHT - MARGIN_BOTTOM, MARGIN_TOP
    return [
        f'<line x1="{x0}" y1="{y0}" x2="{x1}" y2="{y0}" stroke="black"/>',
        f'<line x1="{x0}" y1="{y0}" x2="{x0}" y2="{y1}" stroke="black"/>',
    ]


def _x_ticks(scale: _Scale) -> list[str]:
    y = HEIGHT - MARGIN_BOTTOM
    parts = []
    for value, label in scale.ticks():
        px = scale(value)
        parts.append(f'<line x1="{px:.2f}" y1="{y}" x2="{px:.2f}" y2="{y + 5}" stroke="black"/>')
        parts.append(
            f'<text x="{px:.2f}" y="{y + 18}" text-anchor="middle" font-family="sans-serif" '
            f'font-size="11">{escape(label)}</text>'
        )
    return parts


def _y_ticks(scale: _Scale) -> list[str]:
    x = MARGIN_LEFT
    parts = []
    for value, label in scale.ticks():
        py = scale(value)
        parts.append(f'<line x1="{x - 5}" y1="{py:.2f}" x2="{x}" y2="{py:.2f}" stroke="black"/>')
        parts.append(
            f'<text x="{x - 8}" y="{py + 4:.2f}" text-anchor="end" font-family="sans-serif" '
            f'font-size="11">{escape(label)}</text>'
        )
    return parts
