"""CSV output with a fixed numeric format, and a dependency-free SVG line plot."""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence, TextIO
from xml.sax.saxutils import escape

from .errors import ContractError, FormatError


def format_value(v) -> str:
    """17 significant digits for floats (round-trips exactly), exact text for
    integers and rationals, empty field for None."""
    if v is None:
        return ""
    if isinstance(v, bool):
        return str(int(v))
    if isinstance(v, int):
        return str(v)
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, float):
        if math.isnan(v):
            return "nan"
        return format(v, ".17g")
    if hasattr(v, "dtype"):  # numpy scalar
        return format_value(v.item())
    return str(v)


def parse_value(text: str, kind: type):
    if text == "":
        return None
    if kind is Fraction:
        return Fraction(text)
    return kind(text)


def write_csv(stream: TextIO, header: Sequence[str], rows: Iterable[Sequence]) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        if len(row) != len(header):
            raise ContractError(f"row has {len(row)} fields, header has {len(header)}")
        writer.writerow([format_value(v) for v in row])


def csv_text(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    buf = io.StringIO()
    write_csv(buf, header, rows)
    return buf.getvalue()


def read_csv(stream: TextIO, types: Sequence[type]) -> tuple[list[str], list[tuple]]:
    """Parse a CSV written by ``write_csv`` back into typed tuples."""
    reader = csv.reader(stream)
    try:
        header = next(reader)
    except StopIteration:
        raise FormatError("empty CSV") from None
    if len(header) != len(types):
        raise FormatError(f"expected {len(types)} columns, found {len(header)}")
    rows = []
    for lineno, fields in enumerate(reader, start=2):
        if len(fields) != len(types):
            raise FormatError(f"line {lineno}: expected {len(types)} fields")
        rows.append(tuple(parse_value(f, t) for f, t in zip(fields, types)))
    return header, rows


# --- SVG ---------------------------------------------------------------------

PALETTE = ("#1f77b4", "#e377c2", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd")


@dataclass
class Series:
    label: str
    xs: Sequence[float]
    ys: Sequence[float | None]

    def points(self) -> list[tuple[float, float]]:
        return [(float(x), float(y)) for x, y in zip(self.xs, self.ys) if y is not None and math.isfinite(y)]


@dataclass
class Panel:
    title: str
    series: list[Series] = field(default_factory=list)
    xlabel: str = ""
    ylabel: str = ""


def _ticks(lo: float, hi: float, count: int = 5) -> list[float]:
    if hi == lo:
        return [lo]
    raw = (hi - lo) / count
    mag = 10 ** math.floor(math.log10(raw))
    step = min((m * mag for m in (1, 2, 5, 10) if m * mag >= raw), default=10 * mag)
    start = math.ceil(lo / step) * step
    out = []
    t = start
    while t <= hi + 1e-9 * step:
        out.append(0.0 if abs(t) < 1e-12 * step else t)
        t += step
    return out


def _span(values: list[float]) -> tuple[float, float]:
    lo, hi = min(values), max(values)
    if lo == hi:
        pad = abs(lo) * 0.1 or 1.0
        return lo - pad, hi + pad
    return lo, hi


def render_svg(panels: Sequence[Panel], width: int = 640, panel_height: int = 280) -> str:
    """Panels stacked vertically; each gets axes, ticks, a legend and one
    polyline per series (a dot when a series has a single point)."""
    if not panels or not any(s.points() for p in panels for s in p.series):
        raise ContractError("nothing to plot")
    margin_l, margin_r, margin_t, margin_b = 70, 20, 30, 45
    height = panel_height * len(panels)
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="11">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
    ]
    for idx, panel in enumerate(panels):
        top = idx * panel_height
        pts = [pt for s in panel.series for pt in s.points()]
        if not pts:
            continue
        x0, x1 = _span([p[0] for p in pts])
        y0, y1 = _span([p[1] for p in pts])
        left, right = margin_l, width - margin_r
        upper, lower = top + margin_t, top + panel_height - margin_b

        def sx(x):
            return left + (x - x0) / (x1 - x0) * (right - left)

        def sy(y):
            return lower - (y - y0) / (y1 - y0) * (lower - upper)

        out.append(f'<text x="{width / 2:.1f}" y="{top + 18}" text-anchor="middle" font-size="13">{escape(panel.title)}</text>')
        out.append(f'<rect x="{left}" y="{upper}" width="{right - left}" height="{lower - upper}" fill="none" stroke="#333"/>')
        for t in _ticks(x0, x1):
            X = sx(t)
            out.append(f'<line x1="{X:.2f}" y1="{lower}" x2="{X:.2f}" y2="{lower + 4}" stroke="#333"/>')
            out.append(f'<text x="{X:.2f}" y="{lower + 16}" text-anchor="middle">{t:g}</text>')
        for t in _ticks(y0, y1):
            Y = sy(t)
            out.append(f'<line x1="{left - 4}" y1="{Y:.2f}" x2="{left}" y2="{Y:.2f}" stroke="#333"/>')
            out.append(f'<text x="{left - 6}" y="{Y + 4:.2f}" text-anchor="end">{t:.4g}</text>')
        if panel.xlabel:
            out.append(f'<text x="{(left + right) / 2:.1f}" y="{lower + 34}" text-anchor="middle">{escape(panel.xlabel)}</text>')
        if panel.ylabel:
            out.append(
                f'<text x="14" y="{(upper + lower) / 2:.1f}" text-anchor="middle" '
                f'transform="rotate(-90 14 {(upper + lower) / 2:.1f})">{escape(panel.ylabel)}</text>'
            )
        for k, series in enumerate(panel.series):
            colour = PALETTE[k % len(PALETTE)]
            spts = series.points()
            if len(spts) == 1:
                (x, y), = spts
                out.append(f'<circle cx="{sx(x):.2f}" cy="{sy(y):.2f}" r="3" fill="{colour}"/>')
            elif spts:
                coords = " ".join(f"{sx(x):.2f},{sy(y):.2f}" for x, y in spts)
                out.append(f'<polyline points="{coords}" fill="none" stroke="{colour}" stroke-width="1.2"/>')
            out.append(
                f'<text x="{right - 6}" y="{upper + 14 + 14 * k}" text-anchor="end" fill="{colour}">{escape(series.label)}</text>'
            )
    out.append("</svg>")
    return "\n".join(out) + "\n"
