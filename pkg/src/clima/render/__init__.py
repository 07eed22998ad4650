"""Deterministic SVG chart rendering."""

from .charts import CHART_KINDS, ChartRequest, render
from .ranges import axis_range, global_ranges, nice_ticks
from .svg import SvgDocument, request_hash

__all__ = [
    "CHART_KINDS",
    "ChartRequest",
    "SvgDocument",
    "axis_range",
    "global_ranges",
    "nice_ticks",
    "render",
    "request_hash",
]
