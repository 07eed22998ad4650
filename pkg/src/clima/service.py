"""HTTP JSON API over the analysis engine.

The service adds exactly two things on top of the library: short-lived
sessions (a parsed file plus its derived frame, kept server side so the
UI's repeated requests don't re-upload the file) and a fetch-and-cache
client for the station catalog. Every analysis and chart response is the
direct library computation on the session's frame; nothing is recomputed
differently for HTTP.

Run with ``python3 -m clima.service`` (port from CLIMA_PORT, default 8000).
"""

from __future__ import annotations

import hashlib
import json
import math
import os
import secrets
import threading
import time
from collections import OrderedDict
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from fastapi import FastAPI, Request, Response
from fastapi.responses import JSONResponse

from ._version import VERSION
from . import analytics
from .analytics import ClimateFrame, build_frame, export_frame_csv
from .epw import EpwError, EpwFile, FileTooLarge, parse_epw, serialize_epw
from .errors import (
    BadRange,
    ClimaError,
    DomainError,
    IncompatibleRequest,
    UnknownColumn,
    UpstreamCorrupt,
    UpstreamUnavailable,
)
from .params import chart_request_from_params, filters_from_params, parse_span
from .render import render
from .stations import FetchClient, load_catalog

DEFAULT_MAX_UPLOAD_MB = 20
DEFAULT_TTL_HOURS = 24.0
DEFAULT_MAX_SESSIONS = 64

ANALYSIS_KINDS = ("summary", "degree_days", "natural_ventilation", "wind_rose",
                  "monthly_statistics", "explorer", "utci")


@dataclass
class Session:
    session_id: str
    epw: EpwFile
    frame: ClimateFrame
    created_at: float
    expires_at: float
    origin: str  # "upload" or the station_id


class SessionStore:
    """TTL plus LRU-capped session map; immutable sessions, so one lock."""

    def __init__(self, ttl_seconds: float, cap: int, clock=time.time):
        self.ttl = float(ttl_seconds)
        self.cap = int(cap)
        self.clock = clock
        self._lock = threading.Lock()
        self._sessions: OrderedDict[str, Session] = OrderedDict()

    def put(self, epw: EpwFile, frame: ClimateFrame, origin: str) -> Session:
        now = self.clock()
        session = Session(
            session_id=secrets.token_urlsafe(16), epw=epw, frame=frame,
            created_at=now, expires_at=now + self.ttl, origin=origin,
        )
        with self._lock:
            self._sessions[session.session_id] = session
            while len(self._sessions) > self.cap:
                self._sessions.popitem(last=False)
        return session

    def get(self, session_id: str) -> Session | None:
        now = self.clock()
        with self._lock:
            session = self._sessions.get(session_id)
            if session is None:
                return None
            if now >= session.expires_at:
                del self._sessions[session_id]
                return None
            self._sessions.move_to_end(session_id)
            return session

    def __len__(self) -> int:
        with self._lock:
            return len(self._sessions)


def _jsonable(obj):
    """Recursively convert numpy containers and NaN for JSON transport."""
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (np.floating, float)):
        v = float(obj)
        return None if math.isnan(v) or math.isinf(v) else v
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    return obj


def _error(status: int, code: str, message: str, detail=None) -> JSONResponse:
    body = {"error": {"code": code, "message": message}}
    if detail is not None:
        body["error"]["detail"] = detail
    return JSONResponse(body, status_code=status)


def _summary_payload(frame: ClimateFrame) -> dict | None:
    try:
        return analytics.summary_json(frame)
    except ClimaError:
        return None  # partial-year files have no year-level summary


def _require(params, key: str, kind: str) -> str:
    v = params.get(key)
    if v in (None, ""):
        raise BadRange(f"analysis {kind!r} requires parameter {key!r}")
    return v


def _run_analysis(frame: ClimateFrame, kind: str, params) -> dict:
    if kind == "summary":
        payload = _summary_payload(frame)
        if payload is None:
            raise IncompatibleRequest("summary needs a full-year file")
        return payload

    if kind == "degree_days":
        table = analytics.degree_days(
            frame,
            base_heating=float(_require(params, "base_heating", kind))
            if params.get("base_heating") else 18.0,
            base_cooling=float(_require(params, "base_cooling", kind))
            if params.get("base_cooling") else 21.0,
        )
        return _jsonable({
            "base_heating": table.base_heating,
            "base_cooling": table.base_cooling,
            "hdd_monthly": table.hdd_monthly, "cdd_monthly": table.cdd_monthly,
            "hdd_annual": table.hdd_annual, "cdd_annual": table.cdd_annual,
            "method": table.method,
        })

    if kind == "natural_ventilation":
        t_min = float(_require(params, "t_min", kind))
        t_max = float(_require(params, "t_max", kind))
        months = params.get("months")
        hours = params.get("hours")
        radiant = params.get("radiant_t")
        result = analytics.natural_ventilation(
            frame, (t_min, t_max),
            month_range=parse_span(months, 1, 12, "months") if months else None,
            hour_range=parse_span(hours, 1, 24, "hours") if hours else None,
            radiant_surface_t=float(radiant) if radiant not in (None, "") else None,
        )
        pct = (result.eligible_hours / result.total_hours * 100.0
               if result.total_hours else None)
        return _jsonable({
            "eligible_hours": result.eligible_hours,
            "total_hours": result.total_hours,
            "eligible_pct": pct,
            "t_db_range": list(result.t_db_range),
            "month_range": result.month_range, "hour_range": result.hour_range,
            "radiant_surface_t": result.radiant_surface_t,
        })

    if kind == "wind_rose":
        months = params.get("months")
        hours = params.get("hours")
        rose = analytics.wind_rose(
            frame,
            month_range=parse_span(months, 1, 12, "months") if months else None,
            hour_range=parse_span(hours, 1, 24, "hours") if hours else None,
        )
        return _jsonable({
            "sector_labels": rose.sector_labels,
            "speed_edges": rose.speed_edges,
            "matrix": rose.matrix,
            "calm_pct": rose.calm_pct,
            "n_classified": rose.n_classified,
        })

    if kind == "monthly_statistics":
        column = _require(params, "column", kind)
        stats = analytics.monthly_statistics(frame, column)
        def row(r):
            return {"label": r.label, "count": r.count, "mean": r.mean,
                    "std": r.std, "min": r.min, "p25": r.p25,
                    "median": r.median, "p75": r.p75, "max": r.max}
        return _jsonable({
            "column": stats.column, "units": stats.units,
            "months": [row(r) for r in stats.months],
            "annual": row(stats.annual),
        })

    if kind == "explorer":
        x = _require(params, "x", kind)
        y = _require(params, "y", kind)
        color = _require(params, "color", kind)
        data = analytics.explorer_triple(frame, x, y, color,
                                         filters=filters_from_params(params))
        return _jsonable({
            "x_name": data.x_name, "y_name": data.y_name,
            "color_name": data.color_name,
            "x": data.x, "y": data.y, "color": data.color,
            "x_edges": data.x_edges, "y_edges": data.y_edges,
            "x_hist": data.x_hist, "y_hist": data.y_hist,
            "heatmap": data.heatmap,
            "n_points": int(len(data.x)),
        })

    if kind == "utci":
        scenario = _require(params, "scenario", kind)
        dist = analytics.utci_stress_distribution(frame, scenario)
        return _jsonable({
            "scenario": dist.scenario,
            "categories": dist.categories,
            "monthly_pct": dist.monthly_pct,
            "monthly_hours": dist.monthly_hours,
            "annual_pct": dist.annual_pct,
        })

    raise LookupError(kind)


def create_app(catalog_path: str | Path | None = None,
               cache_dir: str | Path | None = None,
               fetch_transport=None,
               max_upload_bytes: int | None = None,
               ttl_hours: float | None = None,
               max_sessions: int = DEFAULT_MAX_SESSIONS,
               clock=time.time) -> FastAPI:
    """Build the application; keyword arguments override the environment."""
    if cache_dir is None:
        cache_dir = os.environ.get(
            "CLIMA_CACHE_DIR", os.path.join(Path.home(), ".cache", "clima"))
    if max_upload_bytes is None:
        max_upload_bytes = int(float(
            os.environ.get("CLIMA_MAX_UPLOAD_MB", DEFAULT_MAX_UPLOAD_MB)) * 1024 * 1024)
    if ttl_hours is None:
        ttl_hours = float(os.environ.get("CLIMA_SESSION_TTL_H", DEFAULT_TTL_HOURS))

    app = FastAPI(title="clima", version=VERSION)
    try:
        index = load_catalog(catalog_path)
    except Exception:
        index = None
    store = SessionStore(ttl_hours * 3600.0, max_sessions, clock=clock)
    fetcher = FetchClient(cache_dir, transport=fetch_transport)
    app.state.index = index
    app.state.store = store
    app.state.fetcher = fetcher
    app.state.max_upload_bytes = max_upload_bytes

    @app.get("/api/health")
    def health():
        return {"status": "ok", "version": VERSION,
                "stations": len(index) if index is not None else 0,
                "sessions": len(store)}

    @app.get("/api/stations")
    def stations(q: str | None = None, bbox: str | None = None,
                 page: int = 1, page_size: int = 100):
        if index is None:
            return _error(503, "index_unavailable", "station index not built")
        if page < 1 or not (1 <= page_size <= 1000):
            return _error(400, "bad_range", "page must be >= 1 and page_size in 1..1000")
        box = None
        if bbox is not None:
            parts = bbox.split(",")
            try:
                if len(parts) != 4:
                    raise ValueError(f"bbox needs 4 numbers, got {len(parts)}")
                box = tuple(float(p) for p in parts)
            except ValueError as exc:
                return _error(400, "bad_bbox", f"malformed bbox {bbox!r}: {exc}")
        try:
            matches = index.search(query=q, bbox=box)
        except ValueError as exc:
            return _error(400, "bad_bbox", str(exc))
        start = (page - 1) * page_size
        rows = [{
            "station_id": s.station_id, "name": s.name, "country": s.country,
            "latitude": s.latitude, "longitude": s.longitude,
            "source": s.source,
        } for s in matches[start:start + page_size]]
        return {"stations": rows, "total": len(matches),
                "page": page, "page_size": page_size}

    def _create_session(epw: EpwFile, origin: str) -> JSONResponse:
        try:
            frame = build_frame(epw)
        except ClimaError as exc:
            return _error(400, exc.code, str(exc))
        session = store.put(epw, frame, origin)
        return JSONResponse({
            "session_id": session.session_id,
            "n_records": len(epw.records),
            "origin": origin,
            "expires_in_s": int(store.ttl),
            "summary": _summary_payload(frame),
        }, status_code=201)

    @app.post("/api/sessions")
    async def create_session(request: Request):
        body = await request.body()
        if len(body) > max_upload_bytes:
            return _error(413, "file_too_large",
                          f"upload exceeds {max_upload_bytes} bytes")
        content_type = request.headers.get("content-type", "")
        if content_type.startswith("application/json"):
            try:
                payload = json.loads(body.decode("utf-8"))
            except (UnicodeDecodeError, json.JSONDecodeError) as exc:
                return _error(400, "bad_request", f"invalid JSON body: {exc}")
            station_id = payload.get("station_id") if isinstance(payload, dict) else None
            if not station_id:
                return _error(400, "bad_request", "JSON body needs station_id")
            if index is None:
                return _error(503, "index_unavailable", "station index not built")
            station = index.get(station_id)
            if station is None:
                return _error(404, "unknown_station",
                              f"station {station_id!r} not in catalog")
            try:
                epw, _cached = fetcher.fetch(station)
            except (UpstreamUnavailable, UpstreamCorrupt) as exc:
                return _error(502, exc.code, str(exc))
            return _create_session(epw, origin=station_id)
        # anything else is a raw EPW upload
        try:
            text = body.decode("utf-8", errors="replace")
            epw = parse_epw(text, max_bytes=max_upload_bytes)
        except FileTooLarge as exc:
            return _error(413, exc.code, str(exc))
        except EpwError as exc:
            detail = {"line_no": exc.line_no} if hasattr(exc, "line_no") else None
            return _error(400, exc.code, str(exc), detail=detail)
        return _create_session(epw, origin="upload")

    def _session_or_none(session_id: str) -> Session | None:
        return store.get(session_id)

    @app.get("/api/sessions/{session_id}/frame.csv")
    def frame_csv(session_id: str):
        session = _session_or_none(session_id)
        if session is None:
            return _error(404, "unknown_session", "unknown or expired session")
        csv_text = export_frame_csv(session.frame)
        name = session.frame.location.city.replace(" ", "_") or "frame"
        return Response(csv_text, media_type="text/csv; charset=utf-8",
                        headers={"Content-Disposition":
                                 f'attachment; filename="{name}.csv"'})

    @app.get("/api/sessions/{session_id}/epw")
    def epw_download(session_id: str):
        session = _session_or_none(session_id)
        if session is None:
            return _error(404, "unknown_session", "unknown or expired session")
        text = serialize_epw(session.epw)
        name = session.frame.location.city.replace(" ", "_") or "weather"
        return Response(text, media_type="text/plain; charset=utf-8",
                        headers={"Content-Disposition":
                                 f'attachment; filename="{name}.epw"'})

    @app.get("/api/sessions/{session_id}/analysis/{kind}")
    def analysis(session_id: str, kind: str, request: Request):
        session = _session_or_none(session_id)
        if session is None:
            return _error(404, "unknown_session", "unknown or expired session")
        if kind not in ANALYSIS_KINDS:
            return _error(404, "unknown_analysis",
                          f"unknown analysis {kind!r}, expected one of "
                          f"{', '.join(ANALYSIS_KINDS)}")
        params = dict(request.query_params)
        try:
            payload = _run_analysis(session.frame, kind, params)
        except (BadRange, UnknownColumn, IncompatibleRequest, DomainError) as exc:
            return _error(400, exc.code, str(exc))
        except ValueError as exc:
            return _error(400, "bad_request", str(exc))
        return JSONResponse(payload)

    @app.get("/api/sessions/{session_id}/charts/{kind}.svg")
    def chart(session_id: str, kind: str, request: Request):
        session = _session_or_none(session_id)
        if session is None:
            return _error(404, "unknown_session", "unknown or expired session")
        try:
            chart_request = chart_request_from_params(kind, dict(request.query_params))
            document = render(session.frame, chart_request)
        except (BadRange, UnknownColumn, IncompatibleRequest, DomainError) as exc:
            return _error(400, exc.code, str(exc))
        payload = document.text.encode("utf-8")
        etag = '"' + hashlib.sha256(payload).hexdigest()[:32] + '"'
        headers = {"ETag": etag, "Cache-Control": "private, max-age=86400"}
        if request.headers.get("if-none-match") == etag:
            return Response(status_code=304, headers=headers)
        return Response(payload, media_type="image/svg+xml", headers=headers)

    return app


def main() -> None:
    import uvicorn

    port = int(os.environ.get("CLIMA_PORT", "8000"))
    uvicorn.run(create_app(), host="127.0.0.1", port=port)


if __name__ == "__main__":
    main()
