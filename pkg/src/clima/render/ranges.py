"""Axis ranges: the Global preset table and the Local data-driven rule.

Global mode reads the versioned preset file ``clima/data/global_ranges.json``
so two stations rendered with the same request share identical axis
transforms. Local mode expands the data span by 5% each side and rounds
outward to a nice step; a degenerate span (constant column) becomes
value +- 1.
"""

from __future__ import annotations

import json
import math
from importlib import resources

import numpy as np

from ..analytics import ClimateFrame
from ..errors import IncompatibleRequest

__all__ = ["axis_range", "global_ranges", "nice_ticks"]

_CACHE: dict | None = None


def global_ranges() -> dict:
    """The preset table, loaded once from the packaged config file."""
    global _CACHE
    if _CACHE is None:
        with resources.files("clima.data").joinpath("global_ranges.json").open() as f:
            _CACHE = json.load(f)
    return _CACHE


def _nice_step(span: float) -> float:
    """A 1/2/5 step that cuts the span into roughly 5-10 intervals."""
    raw = span / 8.0
    mag = 10.0 ** math.floor(math.log10(raw))
    for mult in (1.0, 2.0, 5.0, 10.0):
        if raw <= mult * mag:
            return mult * mag
    return 10.0 * mag


def axis_range(variable: str, mode: str, frame: ClimateFrame) -> tuple[float, float]:
    """(min, max) for a chart axis of ``variable`` under the range mode."""
    if mode not in ("global", "local"):
        raise IncompatibleRequest(f"range mode must be global or local, got {mode!r}")
    values = np.asarray(frame.column(variable), dtype=float)

    if mode == "global":
        preset = global_ranges()["ranges"].get(variable)
        if preset is not None:
            return float(preset[0]), float(preset[1])
        # not in the table: fall through to the local rule

    present = values[~np.isnan(values)]
    if present.size == 0:
        return (-1.0, 1.0)
    lo = float(present.min())
    hi = float(present.max())
    if lo == hi:
        return (lo - 1.0, hi + 1.0)
    pad = 0.05 * (hi - lo)
    lo -= pad
    hi += pad
    step = _nice_step(hi - lo)
    return (math.floor(lo / step) * step, math.ceil(hi / step) * step)


def nice_ticks(lo: float, hi: float) -> list[float]:
    """Tick positions at nice multiples inside [lo, hi]."""
    if hi <= lo:
        return [lo]
    step = _nice_step(hi - lo)
    first = math.ceil(lo / step) * step
    ticks = []
    t = first
    while t <= hi + 1e-9 * step:
        ticks.append(0.0 if abs(t) < 1e-12 else t)
        t += step
    return ticks
