"""Chart rendering.

Every chart kind takes a :class:`~clima.analytics.ClimateFrame` plus a
:class:`ChartRequest` and produces a standalone SVG document.  Output is
deterministic: the same frame, request, and library version yield the same
bytes, which is what makes HTTP-level caching of chart responses safe.

Layout is computed with plain arithmetic (no layout engine) and all numeric
output goes through :func:`clima.render.svg.fmt`, so coordinates are stable
across platforms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .._version import VERSION
from ..analytics import (
    ClimateFrame,
    Filters,
    _apply_filters,
    _float_column,
    degree_days,
    explorer_triple,
    psychro_bins,
    wind_rose,
)
from ..errors import IncompatibleRequest
from ..thermo import STANDARD_PRESSURE, humidity_ratio
from . import palettes
from .ranges import axis_range, nice_ticks
from .svg import Svg, SvgDocument, escape, fmt, request_hash

CHART_KINDS = (
    "heatmap",
    "yearly_range",
    "daily_profiles",
    "wind_rose",
    "psychrometric",
    "sun_path_spherical",
    "sun_path_cartesian",
    "degree_days",
    "histogram",
    "explorer_scatter",
    "monthly_solar",
)

MONTH_ABBR = ("Jan", "Feb", "Mar", "Apr", "May", "Jun",
              "Jul", "Aug", "Sep", "Oct", "Nov", "Dec")

# charts where row filters are meaningful; elsewhere they are ignored
_FILTERABLE = {"wind_rose", "psychrometric", "histogram", "explorer_scatter"}

_AXIS_STROKE = "#555555"
_GRID_STROKE = "#e3e3e3"
_TEXT_FILL = "#333333"
_FONT = "Helvetica, Arial, sans-serif"


@dataclass(frozen=True)
class ChartRequest:
    """Everything needed to draw one chart.

    ``variable`` is the primary column; ``y_variable`` and
    ``color_variable`` only apply to kinds that use them.  ``range_mode``
    selects between the shared global axis presets and data-driven local
    ranges.
    """

    kind: str
    variable: str | None = None
    y_variable: str | None = None
    color_variable: str | None = None
    range_mode: str = "local"
    filters: Filters = field(default_factory=Filters)
    base_heating: float = 18.0
    base_cooling: float = 21.0
    width: int = 960
    height: int = 560


def _request_payload(request: ChartRequest) -> dict:
    f = request.filters
    return {
        "kind": request.kind,
        "variable": request.variable,
        "y_variable": request.y_variable,
        "color_variable": request.color_variable,
        "range_mode": request.range_mode,
        "filters": {
            "month_range": list(f.month_range) if f.month_range else None,
            "hour_range": list(f.hour_range) if f.hour_range else None,
            "column": f.column,
            "column_range": list(f.column_range) if f.column_range else None,
        },
        "base_heating": request.base_heating,
        "base_cooling": request.base_cooling,
        "width": request.width,
        "height": request.height,
    }


def _label(frame: ClimateFrame, name: str) -> str:
    unit = frame.units.get(name, "")
    return f"{name} [{unit}]" if unit else name


@dataclass
class Plot:
    """A rectangular data region with linear axes (y grows upward)."""

    x0: float
    y0: float
    w: float
    h: float
    xlo: float
    xhi: float
    ylo: float
    yhi: float

    def x(self, v: float) -> float:
        span = self.xhi - self.xlo
        return self.x0 + (v - self.xlo) / span * self.w

    def y(self, v: float) -> float:
        span = self.yhi - self.ylo
        return self.y0 + self.h - (v - self.ylo) / span * self.h


def _draw_axes(svg: Svg, p: Plot, xticks, yticks, xlabel: str = "",
               ylabel: str = "", xtick_labels=None, grid: bool = True,
               font_size: float = 11.0) -> None:
    if grid:
        for t in yticks:
            if p.ylo < t < p.yhi:
                svg.el("line", x1=p.x0, y1=p.y(t), x2=p.x0 + p.w, y2=p.y(t),
                       stroke=_GRID_STROKE, stroke_width=1)
    svg.el("rect", x=p.x0, y=p.y0, width=p.w, height=p.h, fill="none",
           stroke=_AXIS_STROKE, stroke_width=1)
    labels = xtick_labels if xtick_labels is not None else [fmt(t) for t in xticks]
    for t, lab in zip(xticks, labels):
        if not (p.xlo <= t <= p.xhi):
            continue
        svg.el("line", x1=p.x(t), y1=p.y0 + p.h, x2=p.x(t), y2=p.y0 + p.h + 4,
               stroke=_AXIS_STROKE, stroke_width=1)
        svg.text(lab, p.x(t), p.y0 + p.h + 15, font_size=font_size,
                 text_anchor="middle", fill=_TEXT_FILL, font_family=_FONT)
    for t in yticks:
        if not (p.ylo <= t <= p.yhi):
            continue
        svg.el("line", x1=p.x0 - 4, y1=p.y(t), x2=p.x0, y2=p.y(t),
               stroke=_AXIS_STROKE, stroke_width=1)
        svg.text(fmt(t), p.x0 - 7, p.y(t) + 3.5, font_size=font_size,
                 text_anchor="end", fill=_TEXT_FILL, font_family=_FONT)
    if xlabel:
        svg.text(xlabel, p.x0 + p.w / 2, p.y0 + p.h + 32, font_size=12,
                 text_anchor="middle", fill=_TEXT_FILL, font_family=_FONT)
    if ylabel:
        cx = p.x0 - 46
        cy = p.y0 + p.h / 2
        svg.raw(f'<text x="{fmt(cx)}" y="{fmt(cy)}" font-size="12" '
                f'text-anchor="middle" fill="{_TEXT_FILL}" '
                f'font-family="{_FONT}" '
                f'transform="rotate(-90 {fmt(cx)} {fmt(cy)})">'
                f"{escape(ylabel)}</text>")


def _month_tick_positions(months: np.ndarray) -> tuple[list, list]:
    """Day-index tick positions at month starts plus centered labels."""
    days = months[::24] if months.size % 24 == 0 else months[:: 24]
    positions, labels = [], []
    seen = None
    starts: list[int] = []
    for i, m in enumerate(days):
        if m != seen:
            starts.append(i)
            seen = m
    starts.append(len(days))
    for a, b in zip(starts[:-1], starts[1:]):
        positions.append((a + b) / 2.0)
        labels.append(MONTH_ABBR[int(days[a]) - 1])
    return positions, labels


def _color_legend(svg: Svg, x: float, y: float, h: float, vmin: float,
                  vmax: float, anchors, title: str, centered: bool = False) -> None:
    n = 32
    seg = h / n
    for i in range(n):
        t = 1.0 - (i + 0.5) / n
        if centered:
            m = max(abs(vmin), abs(vmax)) or 1.0
            v = (t * 2.0 - 1.0) * m
            color = palettes.sample(np.array([v]), vmin, vmax, anchors, centered=True)[0]
        else:
            color = palettes.interpolate(anchors, t)
        svg.el("rect", x=x, y=y + i * seg, width=14, height=seg + 0.5, fill=color)
    svg.el("rect", x=x, y=y, width=14, height=h, fill="none",
           stroke=_AXIS_STROKE, stroke_width=0.75)
    svg.text(fmt(vmax), x + 18, y + 4, font_size=10, fill=_TEXT_FILL,
             font_family=_FONT)
    svg.text(fmt(vmin), x + 18, y + h + 3, font_size=10, fill=_TEXT_FILL,
             font_family=_FONT)
    svg.text(title, x, y - 8, font_size=11, fill=_TEXT_FILL, font_family=_FONT)


def _category_legend(svg: Svg, x: float, y: float, title: str) -> None:
    from ..comfort import UTCI_CATEGORIES

    svg.text(title, x, y - 6, font_size=11, fill=_TEXT_FILL, font_family=_FONT)
    for i, name in enumerate(UTCI_CATEGORIES):
        yy = y + i * 16
        svg.el("rect", x=x, y=yy, width=12, height=12,
               fill=palettes.UTCI_CATEGORY_COLORS[i])
        svg.text(name, x + 16, yy + 10, font_size=9.5, fill=_TEXT_FILL,
                 font_family=_FONT)


def _is_category(name: str) -> bool:
    return name.startswith("utci_category_")


def _daily_stats(values: np.ndarray):
    """Per-day nan-aware min/mean/max over complete leading days."""
    n_days = values.size // 24
    d = values[: n_days * 24].reshape(n_days, 24)
    with np.errstate(all="ignore"):
        lo = np.nanmin(d, axis=1)
        hi = np.nanmax(d, axis=1)
        mean = np.nanmean(d, axis=1)
    return lo, mean, hi


def _polyline(svg: Svg, pts: list[tuple[float, float]], stroke: str,
              width: float, opacity: float = 1.0, dash: str | None = None) -> None:
    if len(pts) < 2:
        return
    coords = " ".join(f"{fmt(a)},{fmt(b)}" for a, b in pts)
    attrs = {"points": coords, "fill": "none", "stroke": stroke,
             "stroke_width": width}
    if opacity != 1.0:
        attrs["stroke_opacity"] = opacity
    if dash:
        attrs["stroke_dasharray"] = dash
    svg.el("polyline", **attrs)


def _segments(xs, ys, valid) -> list[list[tuple[float, float]]]:
    """Split into contiguous runs where ``valid`` holds."""
    runs, cur = [], []
    for x, y, ok in zip(xs, ys, valid):
        if ok:
            cur.append((x, y))
        elif cur:
            runs.append(cur)
            cur = []
    if cur:
        runs.append(cur)
    return runs


# ---------------------------------------------------------------- heatmap

def _render_heatmap(frame: ClimateFrame, req: ChartRequest, svg: Svg) -> str:
    if req.variable is None:
        raise IncompatibleRequest("heatmap requires a variable")
    name = req.variable
    values = _float_column(frame, name)
    n = frame.n_rows
    n_days = (n + 23) // 24
    hours = np.asarray(frame.column("hour"), dtype=int)

    legend_w = 150 if _is_category(name) else 70
    p = Plot(60, 46, req.width - 60 - legend_w - 20, req.height - 46 - 50,
             0, n_days, 0, 24)

    categorical = _is_category(name)
    if categorical:
        vmin, vmax = 0.0, 9.0
        colors = np.full(n, palettes.ABSENT_COLOR, dtype=object)
        ok = np.isfinite(values)
        idx = values[ok].astype(int)
        colors[ok] = [palettes.UTCI_CATEGORY_COLORS[i] for i in idx]
    else:
        vmin, vmax = axis_range(name, req.range_mode, frame)
        unit = frame.units.get(name, "")
        centered = unit == "C" and vmin < 0.0 < vmax
        anchors = palettes.DIVERGING if centered else palettes.SEQUENTIAL
        colors = palettes.sample(values, vmin, vmax, anchors, centered=centered)

    cw = p.w / n_days
    ch = p.h / 24
    for i in range(n):
        d = i // 24
        h = int(hours[i]) - 1
        svg.el("rect", class_="cell", x=p.x0 + d * cw,
               y=p.y0 + p.h - (h + 1) * ch, width=cw + 0.02, height=ch + 0.02,
               fill=colors[i])

    positions, labels = _month_tick_positions(np.asarray(frame.column("month")))
    _draw_axes(svg, p, positions, [0, 6, 12, 18, 24], xlabel="",
               ylabel="hour of day", xtick_labels=labels, grid=False)
    lx = p.x0 + p.w + 26
    if categorical:
        _category_legend(svg, lx, 70, "stress category")
    else:
        anchors = palettes.DIVERGING if (not categorical and frame.units.get(name, "") == "C" and vmin < 0.0 < vmax) else palettes.SEQUENTIAL
        _color_legend(svg, lx, 70, p.h - 60, vmin, vmax, anchors,
                      frame.units.get(name, ""),
                      centered=anchors is palettes.DIVERGING)
    return f"{_label(frame, name)} by day and hour, {frame.location.city}"


# ------------------------------------------------------------ yearly range

def _render_yearly_range(frame: ClimateFrame, req: ChartRequest, svg: Svg) -> str:
    name = req.variable or "t_db"
    values = _float_column(frame, name)
    lo, mean, hi = _daily_stats(values)
    n_days = lo.size
    ylo, yhi = axis_range(name, req.range_mode, frame)
    p = Plot(60, 46, req.width - 60 - 30, req.height - 46 - 50, 0, n_days, ylo, yhi)

    if name == "t_db" and "adaptive_applicable" in frame.columns:
        app = np.asarray(frame.column("adaptive_applicable"), dtype=float)[::24][:n_days]
        for lo_col, hi_col, fill, op in (
            ("adaptive_lower_80", "adaptive_upper_80", "#79c779", 0.30),
            ("adaptive_lower_90", "adaptive_upper_90", "#2f8f2f", 0.30),
        ):
            a = np.asarray(frame.column(lo_col), dtype=float)[::24][:n_days]
            b = np.asarray(frame.column(hi_col), dtype=float)[::24][:n_days]
            valid = (app == 1.0) & np.isfinite(a) & np.isfinite(b)
            for run in _segments(range(n_days), range(n_days), valid):
                idx = [i for i, _ in run]
                pts = [(p.x(i + 0.5), p.y(a[i])) for i in idx]
                pts += [(p.x(i + 0.5), p.y(b[i])) for i in reversed(idx)]
                if len(pts) >= 4:
                    d = "M " + " L ".join(f"{fmt(x)} {fmt(y)}" for x, y in pts) + " Z"
                    svg.el("path", class_="adaptive-band", d=d, fill=fill,
                           fill_opacity=op, stroke="none")

    valid = np.isfinite(lo) & np.isfinite(hi)
    for run in _segments(range(n_days), range(n_days), valid):
        idx = [i for i, _ in run]
        pts = [(p.x(i + 0.5), p.y(lo[i])) for i in idx]
        pts += [(p.x(i + 0.5), p.y(hi[i])) for i in reversed(idx)]
        if len(pts) >= 4:
            d = "M " + " L ".join(f"{fmt(x)} {fmt(y)}" for x, y in pts) + " Z"
            svg.el("path", class_="range-band", d=d, fill="#9ec9e8",
                   fill_opacity=0.55, stroke="none")

    mvalid = np.isfinite(mean)
    for run in _segments([p.x(i + 0.5) for i in range(n_days)],
                         [p.y(v) if np.isfinite(v) else 0.0 for v in mean], mvalid):
        _polyline(svg, run, "#15507c", 1.6)

    positions, labels = _month_tick_positions(np.asarray(frame.column("month")))
    _draw_axes(svg, p, positions, nice_ticks(ylo, yhi), xlabel="",
               ylabel=_label(frame, name), xtick_labels=labels)
    return f"Daily range of {_label(frame, name)}, {frame.location.city}"


# --------------------------------------------------------- daily profiles

def _panel_grid(req: ChartRequest, n_cols: int = 4, n_rows: int = 3,
                top: float = 46.0):
    gap_x, gap_y = 14.0, 30.0
    x0, y0 = 52.0, top
    pw = (req.width - x0 - 20 - gap_x * (n_cols - 1)) / n_cols
    ph = (req.height - y0 - 40 - gap_y * (n_rows - 1)) / n_rows
    out = []
    for m in range(12):
        r, c = divmod(m, n_cols)
        out.append((x0 + c * (pw + gap_x), y0 + r * (ph + gap_y), pw, ph))
    return out


def _render_daily_profiles(frame: ClimateFrame, req: ChartRequest, svg: Svg) -> str:
    name = req.variable or "t_db"
    values = _float_column(frame, name)
    months = np.asarray(frame.column("month"), dtype=int)
    days = np.asarray(frame.column("day"), dtype=int)
    hours = np.asarray(frame.column("hour"), dtype=int)
    ylo, yhi = axis_range(name, req.range_mode, frame)

    for m, (px, py, pw, ph) in enumerate(_panel_grid(req), start=1):
        p = Plot(px, py, pw, ph, 0.5, 24.5, ylo, yhi)
        sel = months == m
        svg.el("rect", x=p.x0, y=p.y0, width=p.w, height=p.h, fill="#fbfbfb")
        msum = np.zeros(24)
        mcnt = np.zeros(24)
        for d in np.unique(days[sel]):
            rows = sel & (days == d)
            hv = hours[rows]
            vv = values[rows]
            ok = np.isfinite(vv)
            pts = [(p.x(h), p.y(v)) for h, v in zip(hv[ok], vv[ok])]
            _polyline(svg, pts, "#a9c4dd", 0.6, opacity=0.5)
            np.add.at(msum, hv[ok] - 1, vv[ok])
            np.add.at(mcnt, hv[ok] - 1, 1)
        with np.errstate(invalid="ignore"):
            prof = np.where(mcnt > 0, msum / np.maximum(mcnt, 1), np.nan)
        pts = [(p.x(h + 1), p.y(v)) for h, v in enumerate(prof) if np.isfinite(v)]
        _polyline(svg, pts, "#1f5fa8", 1.8)
        ticks = nice_ticks(ylo, yhi)
        _draw_axes(svg, p, [6, 12, 18, 24], ticks[:: max(1, len(ticks) // 3)],
                   grid=False, font_size=9)
        svg.text(MONTH_ABBR[m - 1], px + pw / 2, py - 5, font_size=11,
                 text_anchor="middle", fill=_TEXT_FILL, font_family=_FONT)
    svg.text(_label(frame, name), 16, req.height / 2, font_size=12,
             text_anchor="middle", fill=_TEXT_FILL, font_family=_FONT,
             transform=f"rotate(-90 16 {fmt(req.height / 2)})")
    return f"Daily profiles of {_label(frame, name)} by month, {frame.location.city}"


# -------------------------------------------------------------- wind rose

_COMPASS = ("N", "NNE", "NE", "ENE", "E", "ESE", "SE", "SSE",
            "S", "SSW", "SW", "WSW", "W", "WNW", "NW", "NNW")


def _wedge_path(cx: float, cy: float, r0: float, r1: float,
                a0: float, a1: float, steps: int = 6) -> str:
    def pt(a, r):
        rad = math.radians(a)
        return cx + r * math.sin(rad), cy - r * math.cos(rad)

    angles = [a0 + (a1 - a0) * i / steps for i in range(steps + 1)]
    pts = [pt(a, r1) for a in angles] + [pt(a, r0) for a in reversed(angles)]
    return ("M " + " L ".join(f"{fmt(x)} {fmt(y)}" for x, y in pts) + " Z")


def _render_wind_rose(frame: ClimateFrame, req: ChartRequest, svg: Svg) -> str:
    if req.variable not in (None, "wind_speed"):
        raise IncompatibleRequest(
            f"wind_rose is defined for wind_speed, not {req.variable!r}")
    f = req.filters
    rose = wind_rose(frame, month_range=f.month_range, hour_range=f.hour_range)
    matrix = np.asarray(rose.matrix)  # 16 x 6, percent
    totals = matrix.sum(axis=1)
    rmax = float(totals.max()) if totals.size and totals.max() > 0 else 1.0
    rmax = math.ceil(rmax / 2.0) * 2.0

    cx, cy = (req.width - 170) / 2, req.height / 2 + 8
    radius = min(cx - 60, req.height / 2 - 60)
    colors = palettes.sequential_bins(6)

    for frac in (0.25, 0.5, 0.75, 1.0):
        svg.el("circle", cx=cx, cy=cy, r=radius * frac, fill="none",
               stroke=_GRID_STROKE, stroke_width=1)
        svg.text(f"{fmt(rmax * frac)}%", cx + 4, cy - radius * frac - 3,
                 font_size=9, fill="#888888", font_family=_FONT)
    for i in range(16):
        a = math.radians(i * 22.5)
        svg.el("line", x1=cx, y1=cy, x2=cx + radius * math.sin(a),
               y2=cy - radius * math.cos(a), stroke=_GRID_STROKE,
               stroke_width=0.5)
    for i in range(0, 16, 2):
        a = math.radians(i * 22.5)
        svg.text(_COMPASS[i], cx + (radius + 14) * math.sin(a),
                 cy - (radius + 14) * math.cos(a) + 3.5, font_size=11,
                 text_anchor="middle", fill=_TEXT_FILL, font_family=_FONT)

    for i in range(16):
        a0 = i * 22.5 - 11.25 + 1.0
        a1 = i * 22.5 + 11.25 - 1.0
        r_in = 0.0
        for b in range(6):
            pct = matrix[i, b]
            if pct <= 0:
                continue
            r_out = r_in + pct / rmax * radius
            svg.el("path", class_="wedge",
                   d=_wedge_path(cx, cy, r_in, r_out, a0, a1),
                   fill=colors[b], stroke="#ffffff", stroke_width=0.5)
            r_in = r_out

    lx = req.width - 150
    svg.text("wind speed [m/s]", lx, 64, font_size=11, fill=_TEXT_FILL,
             font_family=_FONT)
    labels = ("0.5 to 2", "2 to 4", "4 to 6", "6 to 8", "8 to 10", "over 10")
    for b, lab in enumerate(labels):
        yy = 74 + b * 18
        svg.el("rect", x=lx, y=yy, width=13, height=13, fill=colors[b])
        svg.text(lab, lx + 18, yy + 11, font_size=10.5, fill=_TEXT_FILL,
                 font_family=_FONT)
    svg.text(f"calm {fmt(round(rose.calm_pct, 1))}%", lx, 74 + 6 * 18 + 14,
             font_size=10.5, fill=_TEXT_FILL, font_family=_FONT)
    return f"Wind rose, {frame.location.city}"


# ----------------------------------------------------------- psychrometric

def _render_psychrometric(frame: ClimateFrame, req: ChartRequest, svg: Svg) -> str:
    xlo, xhi = axis_range("t_db", req.range_mode, frame)
    yhw = axis_range("humidity_ratio", req.range_mode, frame)
    ylo, yhi = max(0.0, yhw[0]), yhw[1]
    legend = req.color_variable is not None
    p = Plot(70, 46, req.width - 70 - (95 if legend else 30),
             req.height - 46 - 52, xlo, xhi, ylo, yhi)

    ts = np.arange(xlo, xhi + 0.25, 0.5)
    for rh in range(10, 101, 10):
        with np.errstate(all="ignore"):
            w = humidity_ratio(ts, np.full(ts.size, float(rh)),
                               np.full(ts.size, STANDARD_PRESSURE))
        ok = np.isfinite(w) & (w <= yhi)
        pts = [(p.x(t), p.y(v)) for t, v in zip(ts[ok], w[ok])]
        is_sat = rh == 100
        _polyline(svg, pts, "#7a7a7a" if is_sat else "#c8c8c8",
                  1.4 if is_sat else 0.8)
        if pts and rh in (20, 40, 60, 80, 100):
            x_end, y_end = pts[-1]
            if y_end > p.y0 + 10:
                svg.text(f"{rh}%", x_end - 4, y_end - 4, font_size=8.5,
                         fill="#999999", font_family=_FONT)

    result = psychro_bins(frame, color_by=req.color_variable,
                          filters=req.filters)
    if req.color_variable is None:
        counts = np.asarray(result.counts, dtype=float)
        cmax = counts.max() if counts.size else 1.0
        fills = palettes.sample(counts, 0.0, cmax, palettes.SEQUENTIAL)
        ts_bin = np.asarray(result.t_idx, dtype=float) * result.t_bin_size
        ws_bin = np.asarray(result.w_idx, dtype=float) * result.w_bin_size
        for t, w, fill in zip(ts_bin, ws_bin, fills):
            if t + result.t_bin_size < xlo or t > xhi or w > yhi:
                continue
            x = p.x(max(t, xlo))
            x2 = p.x(min(t + result.t_bin_size, xhi))
            y2 = p.y(max(w, ylo))
            y = p.y(min(w + result.w_bin_size, yhi))
            svg.el("rect", class_="bin", x=x, y=y, width=x2 - x, height=y2 - y,
                   fill=fill, fill_opacity=0.9)
        if counts.size:
            _color_legend(svg, p.x0 + p.w + 24, 70, p.h - 70, 0.0, cmax,
                          palettes.SEQUENTIAL, "hours")
    else:
        cname = req.color_variable
        clo, chi = axis_range(cname, req.range_mode, frame)
        cv = np.asarray(result.colors, dtype=float)
        fills = np.where(np.isfinite(cv),
                         palettes.sample(cv, clo, chi, palettes.SEQUENTIAL),
                         palettes.ABSENT_COLOR)
        for xv, wv, fill in zip(result.points_t, result.points_w, fills):
            if not (xlo <= xv <= xhi and ylo <= wv <= yhi):
                continue
            svg.el("circle", class_="pt", cx=p.x(xv), cy=p.y(wv), r=1.8,
                   fill=fill, fill_opacity=0.7)
        _color_legend(svg, p.x0 + p.w + 24, 70, p.h - 70, clo, chi,
                      palettes.SEQUENTIAL, _label(frame, cname))

    _draw_axes(svg, p, nice_ticks(xlo, xhi), nice_ticks(ylo, yhi),
               xlabel=_label(frame, "t_db"),
               ylabel=_label(frame, "humidity_ratio"))
    return f"Psychrometric chart, {frame.location.city}"


# ---------------------------------------------------------------- sun path

def _sun_day_curves(frame: ClimateFrame):
    """Hourly (altitude, azimuth) sequences for day 21 of each month."""
    months = np.asarray(frame.column("month"), dtype=int)
    days = np.asarray(frame.column("day"), dtype=int)
    alt = np.asarray(frame.column("altitude"), dtype=float)
    az = np.asarray(frame.column("azimuth"), dtype=float)
    curves = []
    for m in range(1, 13):
        sel = (months == m) & (days == 21)
        if not sel.any():
            continue
        a = alt[sel]
        z = az[sel]
        ok = a > 0.0
        curves.append((a[ok], z[ok]))
    return curves


def _render_sun_path(frame: ClimateFrame, req: ChartRequest, svg: Svg,
                     spherical: bool) -> str:
    alt = np.asarray(frame.column("altitude"), dtype=float)
    az = np.asarray(frame.column("azimuth"), dtype=float)
    up = alt > 0.0

    color_var = req.color_variable
    if color_var is not None:
        cv = _float_column(frame, color_var)[up]
        clo, chi = axis_range(color_var, req.range_mode, frame)
        fills = np.where(np.isfinite(cv),
                         palettes.sample(cv, clo, chi, palettes.SEQUENTIAL),
                         palettes.ABSENT_COLOR)
    else:
        fills = np.full(int(up.sum()), "#e0a020", dtype=object)

    if spherical:
        cx, cy = (req.width - (150 if color_var else 0)) / 2, req.height / 2 + 6
        radius = min(cx - 50, req.height / 2 - 56)

        def to_xy(a, z):
            r = (90.0 - a) / 90.0 * radius
            rad = math.radians(z)
            return cx + r * math.sin(rad), cy - r * math.cos(rad)

        for aa in (0.0, 30.0, 60.0):
            rr = (90.0 - aa) / 90.0 * radius
            svg.el("circle", cx=cx, cy=cy, r=rr, fill="none",
                   stroke=_GRID_STROKE, stroke_width=1)
            svg.text(fmt(aa), cx + 3, cy - rr - 3, font_size=9,
                     fill="#888888", font_family=_FONT)
        for lab, ang in (("N", 0.0), ("E", 90.0), ("S", 180.0), ("W", 270.0)):
            rad = math.radians(ang)
            svg.el("line", x1=cx, y1=cy, x2=cx + radius * math.sin(rad),
                   y2=cy - radius * math.cos(rad), stroke=_GRID_STROKE,
                   stroke_width=0.5)
            svg.text(lab, cx + (radius + 13) * math.sin(rad),
                     cy - (radius + 13) * math.cos(rad) + 4, font_size=12,
                     text_anchor="middle", fill=_TEXT_FILL, font_family=_FONT)
        for a_arr, z_arr in _sun_day_curves(frame):
            pts = [to_xy(a, z) for a, z in zip(a_arr, z_arr)]
            _polyline(svg, pts, "#b0b0b0", 0.9)
        ua, uz = alt[up], az[up]
        for a, z, fill in zip(ua, uz, fills):
            x, y = to_xy(a, z)
            svg.el("circle", class_="pt", cx=x, cy=y, r=2.0, fill=fill,
                   fill_opacity=0.75)
        if color_var:
            _color_legend(svg, req.width - 120, 70, req.height - 170, clo, chi,
                          palettes.SEQUENTIAL, _label(frame, color_var))
        return f"Sun path (spherical), {frame.location.city}"

    p = Plot(60, 46, req.width - 60 - (110 if color_var else 30),
             req.height - 46 - 52, 0.0, 360.0, 0.0, 90.0)
    for a_arr, z_arr in _sun_day_curves(frame):
        order = np.argsort(z_arr)
        pts = [(p.x(z_arr[i]), p.y(a_arr[i])) for i in order]
        _polyline(svg, pts, "#b0b0b0", 0.9)
    ua, uz = alt[up], az[up]
    for a, z, fill in zip(ua, uz, fills):
        svg.el("circle", class_="pt", cx=p.x(z), cy=p.y(a), r=2.0, fill=fill,
               fill_opacity=0.75)
    _draw_axes(svg, p, [0, 90, 180, 270, 360], [0, 15, 30, 45, 60, 75, 90],
               xlabel="solar azimuth [deg]", ylabel="solar altitude [deg]",
               xtick_labels=["N", "E", "S", "W", "N"])
    if color_var:
        _color_legend(svg, p.x0 + p.w + 30, 70, p.h - 70, clo, chi,
                      palettes.SEQUENTIAL, _label(frame, color_var))
    return f"Sun path (cartesian), {frame.location.city}"


# -------------------------------------------------------------- degree days

def _render_degree_days(frame: ClimateFrame, req: ChartRequest, svg: Svg) -> str:
    result = degree_days(frame, base_heating=req.base_heating,
                         base_cooling=req.base_cooling)
    hdd = np.asarray(result.hdd_monthly)
    cdd = np.asarray(result.cdd_monthly)
    top = max(float(hdd.max()) if hdd.size else 0.0,
              float(cdd.max()) if cdd.size else 0.0, 1.0)
    ticks = nice_ticks(0.0, top * 1.05)
    p = Plot(64, 46, req.width - 64 - 30, req.height - 46 - 56,
             0.0, 12.0, 0.0, ticks[-1])

    bw = p.w / 12 * 0.34
    for m in range(12):
        xc = p.x(m + 0.5)
        svg.el("rect", class_="bar-heating", x=xc - bw - 1,
               y=p.y(hdd[m]), width=bw, height=p.y(0) - p.y(hdd[m]),
               fill="#3a6fc4")
        svg.el("rect", class_="bar-cooling", x=xc + 1,
               y=p.y(cdd[m]), width=bw, height=p.y(0) - p.y(cdd[m]),
               fill="#e25b39")
    _draw_axes(svg, p, [m + 0.5 for m in range(12)], ticks,
               ylabel="degree days [C d]", xtick_labels=list(MONTH_ABBR))
    lx = p.x0 + p.w - 300
    svg.el("rect", x=lx, y=56, width=12, height=12, fill="#3a6fc4")
    svg.text(f"heating, base {fmt(req.base_heating)} C "
             f"(annual {fmt(round(result.hdd_annual, 1))})",
             lx + 17, 66, font_size=10.5, fill=_TEXT_FILL, font_family=_FONT)
    svg.el("rect", x=lx, y=74, width=12, height=12, fill="#e25b39")
    svg.text(f"cooling, base {fmt(req.base_cooling)} C "
             f"(annual {fmt(round(result.cdd_annual, 1))})",
             lx + 17, 84, font_size=10.5, fill=_TEXT_FILL, font_family=_FONT)
    return f"Heating and cooling degree days, {frame.location.city}"


# --------------------------------------------------------------- histogram

def _render_histogram(frame: ClimateFrame, req: ChartRequest, svg: Svg) -> str:
    if req.variable is None:
        raise IncompatibleRequest("histogram requires a variable")
    name = req.variable
    values = _float_column(frame, name)
    mask = _apply_filters(frame, req.filters) & np.isfinite(values)
    v = values[mask]
    xlo, xhi = axis_range(name, req.range_mode, frame)
    nbins = 24
    counts, _ = np.histogram(v[(v >= xlo) & (v <= xhi)], bins=nbins,
                             range=(xlo, xhi))
    top = float(counts.max()) if counts.size and counts.max() > 0 else 1.0
    ticks = nice_ticks(0.0, top * 1.05)
    p = Plot(64, 46, req.width - 64 - 30, req.height - 46 - 56,
             xlo, xhi, 0.0, ticks[-1])
    bw = p.w / nbins
    for i, c in enumerate(counts):
        if c == 0:
            continue
        svg.el("rect", class_="bar", x=p.x0 + i * bw + 0.5, y=p.y(c),
               width=bw - 1.0, height=p.y(0) - p.y(c), fill="#4a8ac4",
               fill_opacity=0.85)
    _draw_axes(svg, p, nice_ticks(xlo, xhi), ticks,
               xlabel=_label(frame, name), ylabel="hours")
    return f"Distribution of {_label(frame, name)}, {frame.location.city}"


# ---------------------------------------------------------------- explorer

def _render_explorer(frame: ClimateFrame, req: ChartRequest, svg: Svg) -> str:
    if not (req.variable and req.y_variable and req.color_variable):
        raise IncompatibleRequest(
            "explorer_scatter requires variable, y_variable and color_variable")
    triple = explorer_triple(frame, req.variable, req.y_variable,
                             req.color_variable, filters=req.filters)
    xname, yname, cname = req.variable, req.y_variable, req.color_variable
    xlo, xhi = axis_range(xname, req.range_mode, frame)
    ylo, yhi = axis_range(yname, req.range_mode, frame)
    clo, chi = axis_range(cname, req.range_mode, frame)

    hx, hy = 64.0, 110.0
    main_w = req.width - hx - 330
    main_h = req.height - hy - 56
    p = Plot(hx, hy, main_w, main_h, xlo, xhi, ylo, yhi)

    xs = np.asarray(triple.x)
    ys = np.asarray(triple.y)
    cs = np.asarray(triple.color)
    fills = np.where(np.isfinite(cs),
                     palettes.sample(cs, clo, chi, palettes.SEQUENTIAL),
                     palettes.ABSENT_COLOR)
    for xv, yv, fill in zip(xs, ys, fills):
        if not (xlo <= xv <= xhi and ylo <= yv <= yhi):
            continue
        svg.el("circle", class_="pt", cx=p.x(xv), cy=p.y(yv), r=1.9,
               fill=fill, fill_opacity=0.65)
    _draw_axes(svg, p, nice_ticks(xlo, xhi), nice_ticks(ylo, yhi),
               xlabel=_label(frame, xname), ylabel=_label(frame, yname))

    # marginal histograms over the explorer's own data-driven edges
    xedges = np.asarray(triple.x_edges)
    yedges = np.asarray(triple.y_edges)
    xc = np.asarray(triple.x_hist, dtype=float)
    yc = np.asarray(triple.y_hist, dtype=float)
    if xc.size and xc.max() > 0:
        hh = hy - 46
        scale = hh / xc.max()
        for i, c in enumerate(xc):
            a, b = xedges[i], xedges[i + 1]
            if b < xlo or a > xhi or c == 0:
                continue
            x1 = p.x(max(a, xlo))
            x2 = p.x(min(b, xhi))
            svg.el("rect", class_="xhist", x=x1 + 0.3, y=hy - 6 - c * scale,
                   width=max(x2 - x1 - 0.6, 0.4), height=c * scale,
                   fill="#9fb8d0")
    if yc.size and yc.max() > 0:
        ww = 74.0
        scale = ww / yc.max()
        for i, c in enumerate(yc):
            a, b = yedges[i], yedges[i + 1]
            if b < ylo or a > yhi or c == 0:
                continue
            y1 = p.y(min(b, yhi))
            y2 = p.y(max(a, ylo))
            svg.el("rect", class_="yhist", x=p.x0 + p.w + 6, y=y1 + 0.3,
                   width=c * scale, height=max(y2 - y1 - 0.6, 0.4),
                   fill="#9fb8d0")

    # count heatmap inset on the explorer's bin grid
    heat = np.asarray(triple.heatmap, dtype=float)
    side = 170.0
    gx = req.width - side - 40
    gy = req.height - side - 60
    if heat.size and heat.max() > 0:
        nb = heat.shape[0]
        cw = side / nb
        hmax = heat.max()
        for i in range(nb):
            for j in range(nb):
                c = heat[i, j]
                if c == 0:
                    continue
                fill = palettes.interpolate(palettes.SEQUENTIAL, c / hmax)
                svg.el("rect", class_="hcell", x=gx + i * cw,
                       y=gy + side - (j + 1) * cw, width=cw + 0.02,
                       height=cw + 0.02, fill=fill)
    svg.el("rect", x=gx, y=gy, width=side, height=side, fill="none",
           stroke=_AXIS_STROKE, stroke_width=0.8)
    svg.text("joint counts", gx + side / 2, gy - 6, font_size=10.5,
             text_anchor="middle", fill=_TEXT_FILL, font_family=_FONT)
    _color_legend(svg, gx, 70, 130, clo, chi, palettes.SEQUENTIAL,
                  _label(frame, cname))
    return (f"{_label(frame, yname)} vs {_label(frame, xname)}, "
            f"{frame.location.city}")


# ------------------------------------------------------------ monthly solar

def _render_monthly_solar(frame: ClimateFrame, req: ChartRequest, svg: Svg) -> str:
    months = np.asarray(frame.column("month"), dtype=int)
    hours = np.asarray(frame.column("hour"), dtype=int)
    ghi = np.asarray(frame.column("ghi"), dtype=float)
    dhi = np.asarray(frame.column("dhi"), dtype=float)
    ylo, yhi = axis_range("ghi", req.range_mode, frame)
    ylo = min(ylo, 0.0)

    for m, (px, py, pw, ph) in enumerate(_panel_grid(req, top=62.0), start=1):
        p = Plot(px, py, pw, ph, 0.5, 24.5, ylo, yhi)
        svg.el("rect", x=p.x0, y=p.y0, width=p.w, height=p.h, fill="#fbfbfb")
        sel = months == m
        for series, color in ((ghi, "#e08020"), (dhi, "#3a6fc4")):
            tot = np.zeros(24)
            cnt = np.zeros(24)
            vv = series[sel]
            hh = hours[sel]
            ok = np.isfinite(vv)
            np.add.at(tot, hh[ok] - 1, vv[ok])
            np.add.at(cnt, hh[ok] - 1, 1)
            prof = np.where(cnt > 0, tot / np.maximum(cnt, 1), np.nan)
            pts = [(p.x(h + 1), p.y(v)) for h, v in enumerate(prof)
                   if np.isfinite(v)]
            _polyline(svg, pts, color, 1.6)
        ticks = nice_ticks(ylo, yhi)
        _draw_axes(svg, p, [6, 12, 18, 24], ticks[:: max(1, len(ticks) // 3)],
                   grid=False, font_size=9)
        svg.text(MONTH_ABBR[m - 1], px + pw / 2, py - 5, font_size=11,
                 text_anchor="middle", fill=_TEXT_FILL, font_family=_FONT)
    svg.el("rect", x=60, y=34, width=12, height=4, fill="#e08020")
    svg.text("global horizontal", 77, 40, font_size=10.5, fill=_TEXT_FILL,
             font_family=_FONT)
    svg.el("rect", x=190, y=34, width=12, height=4, fill="#3a6fc4")
    svg.text("diffuse horizontal", 207, 40, font_size=10.5, fill=_TEXT_FILL,
             font_family=_FONT)
    svg.text("mean irradiance [Wh/m2]", 16, req.height / 2, font_size=12,
             text_anchor="middle", fill=_TEXT_FILL, font_family=_FONT,
             transform=f"rotate(-90 16 {fmt(req.height / 2)})")
    return f"Mean hourly solar irradiance by month, {frame.location.city}"


# ---------------------------------------------------------------- dispatch

_RENDERERS = {
    "heatmap": _render_heatmap,
    "yearly_range": _render_yearly_range,
    "daily_profiles": _render_daily_profiles,
    "wind_rose": _render_wind_rose,
    "psychrometric": _render_psychrometric,
    "degree_days": _render_degree_days,
    "histogram": _render_histogram,
    "explorer_scatter": _render_explorer,
    "monthly_solar": _render_monthly_solar,
}


def render(frame: ClimateFrame, request: ChartRequest) -> SvgDocument:
    """Draw one chart and return the finished SVG document."""
    if request.kind not in CHART_KINDS:
        raise IncompatibleRequest(f"unknown chart kind {request.kind!r}")
    if request.range_mode not in ("global", "local"):
        raise IncompatibleRequest(
            f"range_mode must be 'global' or 'local', got {request.range_mode!r}")
    req_hash = request_hash(_request_payload(request))
    svg = Svg(request.width, request.height)
    svg.el("rect", x=0, y=0, width=request.width, height=request.height,
           fill="#ffffff")
    if request.kind == "sun_path_spherical":
        title = _render_sun_path(frame, request, svg, spherical=True)
    elif request.kind == "sun_path_cartesian":
        title = _render_sun_path(frame, request, svg, spherical=False)
    else:
        title = _RENDERERS[request.kind](frame, request, svg)
    svg.text(title, request.width / 2, 24, font_size=15, text_anchor="middle",
             fill="#111111", font_family=_FONT)
    return svg.finish(title, VERSION, req_hash)
