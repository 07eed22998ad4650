"""Request parameter parsing shared by the HTTP API and the CLI.

Both front ends accept the same textual parameters (month/hour spans like
"6-8", variable names, range mode) and must build identical
:class:`~clima.render.ChartRequest` objects so that a chart fetched over
HTTP is byte-for-byte the chart written by ``clima chart``.
"""

from __future__ import annotations

from typing import Mapping

from .analytics import Filters
from .errors import BadRange
from .render import ChartRequest


def parse_span(text: str, lo: int, hi: int, what: str) -> tuple[int, int]:
    """Parse an "a-b" span; wrap-around (e.g. months "11-2") is allowed."""
    parts = text.split("-")
    if len(parts) != 2:
        raise BadRange(f"{what} must look like 'a-b', got {text!r}")
    try:
        a, b = int(parts[0]), int(parts[1])
    except ValueError:
        raise BadRange(f"{what} must be two integers, got {text!r}") from None
    if not (lo <= a <= hi and lo <= b <= hi):
        raise BadRange(f"{what} values must lie in {lo}..{hi}, got {text!r}")
    return a, b


def _get(params: Mapping[str, str], key: str) -> str | None:
    v = params.get(key)
    return None if v in (None, "") else v


def _float(params: Mapping[str, str], key: str, default: float) -> float:
    v = _get(params, key)
    if v is None:
        return default
    try:
        return float(v)
    except ValueError:
        raise BadRange(f"parameter {key!r} must be a number, got {v!r}") from None


def _int(params: Mapping[str, str], key: str, default: int,
         lo: int, hi: int) -> int:
    v = _get(params, key)
    if v is None:
        return default
    try:
        n = int(v)
    except ValueError:
        raise BadRange(f"parameter {key!r} must be an integer, got {v!r}") from None
    if not (lo <= n <= hi):
        raise BadRange(f"parameter {key!r} must lie in {lo}..{hi}, got {n}")
    return n


def filters_from_params(params: Mapping[str, str]) -> Filters:
    months = _get(params, "months")
    hours = _get(params, "hours")
    column = _get(params, "filter_column")
    column_range = None
    if column is not None:
        lo, hi = _get(params, "filter_min"), _get(params, "filter_max")
        if lo is None or hi is None:
            raise BadRange("filter_column needs filter_min and filter_max")
        column_range = (_float(params, "filter_min", 0.0),
                        _float(params, "filter_max", 0.0))
    return Filters(
        month_range=parse_span(months, 1, 12, "months") if months else None,
        hour_range=parse_span(hours, 1, 24, "hours") if hours else None,
        column=column,
        column_range=column_range,
    )


def chart_request_from_params(kind: str, params: Mapping[str, str]) -> ChartRequest:
    return ChartRequest(
        kind=kind,
        variable=_get(params, "variable"),
        y_variable=_get(params, "y"),
        color_variable=_get(params, "color"),
        range_mode=_get(params, "range") or "local",
        filters=filters_from_params(params),
        base_heating=_float(params, "base_heating", 18.0),
        base_cooling=_float(params, "base_cooling", 21.0),
        width=_int(params, "width", 960, 320, 4000),
        height=_int(params, "height", 560, 240, 4000),
    )
