"""HTTP API: sessions, analyses, charts, and the station catalog."""

import math

import httpx
import numpy as np
import pytest
from fastapi.testclient import TestClient

from clima import analytics, epw, render, service
from clima.params import chart_request_from_params
from clima.stations import load_catalog


@pytest.fixture(scope="module")
def med_text(epw_texts):
    return epw_texts["mediterranean"]


@pytest.fixture(scope="module")
def mock_transport(epw_texts):
    """Serves the tropical preset for every catalog URL; counts nothing itself."""

    def handler(request: httpx.Request) -> httpx.Response:
        if request.url.path.endswith(".epw"):
            return httpx.Response(200, text=epw_texts["tropical_humid"])
        return httpx.Response(404)

    return httpx.MockTransport(handler)


@pytest.fixture(scope="module")
def client(tmp_path_factory, mock_transport):
    app = service.create_app(
        cache_dir=tmp_path_factory.mktemp("cache"),
        fetch_transport=mock_transport,
    )
    return TestClient(app)


@pytest.fixture(scope="module")
def sid(client, med_text):
    resp = client.post("/api/sessions", content=med_text.encode(),
                       headers={"content-type": "text/plain"})
    assert resp.status_code == 201, resp.text
    return resp.json()["session_id"]


@pytest.fixture(scope="module")
def med_served_frame(client, sid, med_text):
    # what the service is holding, rebuilt independently for comparisons
    return analytics.build_frame(epw.parse_epw(med_text))


# ---------------------------------------------------------------------------
# Health and stations

def test_health(client):
    body = client.get("/api/health").json()
    assert body["status"] == "ok"
    assert body["stations"] >= 20


def test_stations_listing_and_paging(client):
    body = client.get("/api/stations").json()
    assert body["total"] >= 20
    assert len(body["stations"]) == body["total"]  # fits one default page
    page = client.get("/api/stations", params={"page_size": 5, "page": 2}).json()
    assert len(page["stations"]) == 5
    assert page["stations"][0] == body["stations"][5]


def test_stations_text_query(client):
    body = client.get("/api/stations", params={"q": "harbor"}).json()
    assert body["total"] >= 1
    assert all("harbor" in (s["name"] + s["station_id"]).lower()
               for s in body["stations"])


def test_stations_bbox(client):
    # northern hemisphere box
    body = client.get("/api/stations", params={"bbox": "-180,0,180,90"}).json()
    assert 0 < body["total"]
    assert all(0.0 <= s["latitude"] <= 90.0 for s in body["stations"])


def test_stations_bad_bbox(client):
    resp = client.get("/api/stations", params={"bbox": "1,2,3"})
    assert resp.status_code == 400
    assert resp.json()["error"]["code"] == "bad_bbox"
    resp = client.get("/api/stations", params={"bbox": "10,5,-10,8"})
    assert resp.status_code == 400


def test_stations_bad_paging(client):
    resp = client.get("/api/stations", params={"page": 0})
    assert resp.status_code == 400
    assert resp.json()["error"]["code"] == "bad_range"


def test_stations_unavailable_catalog(tmp_path):
    app = service.create_app(catalog_path=tmp_path / "missing.csv",
                             cache_dir=tmp_path)
    c = TestClient(app)
    resp = c.get("/api/stations")
    assert resp.status_code == 503
    assert resp.json()["error"]["code"] == "index_unavailable"


# ---------------------------------------------------------------------------
# Session creation

def test_upload_session_response_shape(client, med_text):
    resp = client.post("/api/sessions", content=med_text.encode(),
                       headers={"content-type": "text/plain"})
    assert resp.status_code == 201
    body = resp.json()
    assert body["n_records"] == 8760
    assert body["origin"] == "upload"
    assert body["expires_in_s"] > 0
    assert body["summary"]["koppen"]["label"] == "Cs"


def test_upload_garbage_rejected(client):
    resp = client.post("/api/sessions", content=b"not an epw file at all")
    assert resp.status_code == 400
    assert resp.json()["error"]["code"] == "malformed_header"


def test_upload_with_broken_record_carries_line_number(client, med_text):
    lines = med_text.splitlines()
    fields = lines[100].split(",")
    fields[6] = "oops"
    lines[100] = ",".join(fields)
    resp = client.post("/api/sessions", content="\n".join(lines).encode())
    assert resp.status_code == 400
    err = resp.json()["error"]
    assert err["code"] == "bad_record"
    assert err["detail"]["line_no"] == 101


def test_upload_size_cap(tmp_path, med_text):
    app = service.create_app(cache_dir=tmp_path, max_upload_bytes=100)
    c = TestClient(app)
    resp = c.post("/api/sessions", content=med_text.encode())
    assert resp.status_code == 413
    assert resp.json()["error"]["code"] == "file_too_large"


def test_station_session_and_cache(client):
    fetcher = client.app.state.fetcher
    start_calls = fetcher.network_calls
    resp = client.post("/api/sessions", json={"station_id": "SGP_Tropic.Harbor.990010"})
    assert resp.status_code == 201, resp.text
    body = resp.json()
    assert body["origin"] == "SGP_Tropic.Harbor.990010"
    assert body["summary"]["koppen"]["label"] == "Af"
    assert fetcher.network_calls == start_calls + 1
    # a second session for the same station is served from the cache
    resp2 = client.post("/api/sessions", json={"station_id": "SGP_Tropic.Harbor.990010"})
    assert resp2.status_code == 201
    assert fetcher.network_calls == start_calls + 1


def test_station_unknown(client):
    resp = client.post("/api/sessions", json={"station_id": "XYZ_Nowhere.000000"})
    assert resp.status_code == 404
    assert resp.json()["error"]["code"] == "unknown_station"


def test_station_upstream_failure(tmp_path):
    transport = httpx.MockTransport(lambda req: httpx.Response(500))
    app = service.create_app(cache_dir=tmp_path, fetch_transport=transport)
    c = TestClient(app)
    resp = c.post("/api/sessions", json={"station_id": "SGP_Tropic.Harbor.990010"})
    assert resp.status_code == 502
    assert resp.json()["error"]["code"] == "upstream_unavailable"


def test_station_corrupt_payload_not_cached(tmp_path):
    transport = httpx.MockTransport(
        lambda req: httpx.Response(200, text="LOCATION,garbage\nnope"))
    app = service.create_app(cache_dir=tmp_path, fetch_transport=transport)
    c = TestClient(app)
    resp = c.post("/api/sessions", json={"station_id": "SGP_Tropic.Harbor.990010"})
    assert resp.status_code == 502
    assert resp.json()["error"]["code"] == "upstream_corrupt"
    assert list(tmp_path.glob("*.epw")) == []


def test_session_json_body_validation(client):
    resp = client.post("/api/sessions", json={"nope": 1})
    assert resp.status_code == 400
    resp = client.post("/api/sessions", content=b"{broken",
                       headers={"content-type": "application/json"})
    assert resp.status_code == 400


# ---------------------------------------------------------------------------
# Exports round trip

def test_frame_csv_is_exact_library_output(client, sid, med_served_frame):
    resp = client.get(f"/api/sessions/{sid}/frame.csv")
    assert resp.status_code == 200
    assert resp.headers["content-type"].startswith("text/csv")
    assert "attachment" in resp.headers["content-disposition"]
    assert resp.text == analytics.export_frame_csv(med_served_frame)


def test_epw_download_round_trips(client, sid, med_text):
    resp = client.get(f"/api/sessions/{sid}/epw")
    assert resp.status_code == 200
    reparsed = epw.parse_epw(resp.text)
    original = epw.parse_epw(med_text)
    assert reparsed.records == original.records
    assert reparsed.location == original.location


def test_unknown_session_404(client):
    for path in ("frame.csv", "epw", "analysis/summary", "charts/heatmap.svg"):
        resp = client.get(f"/api/sessions/nosuch/{path}")
        assert resp.status_code == 404
        assert resp.json()["error"]["code"] == "unknown_session"


# ---------------------------------------------------------------------------
# Analyses equal direct library calls

def test_analysis_summary_parity(client, sid, med_served_frame):
    got = client.get(f"/api/sessions/{sid}/analysis/summary").json()
    assert got == analytics.summary_json(med_served_frame)


def test_analysis_degree_days_parity(client, sid, med_served_frame):
    got = client.get(f"/api/sessions/{sid}/analysis/degree_days",
                     params={"base_heating": 16, "base_cooling": 24}).json()
    table = analytics.degree_days(med_served_frame, 16.0, 24.0)
    assert got["hdd_monthly"] == list(table.hdd_monthly)
    assert got["cdd_monthly"] == list(table.cdd_monthly)
    assert got["hdd_annual"] == table.hdd_annual
    assert got["method"] == "daily-mean"


def test_analysis_nat_vent_parity(client, sid, med_served_frame):
    got = client.get(f"/api/sessions/{sid}/analysis/natural_ventilation",
                     params={"t_min": 12, "t_max": 26, "months": "5-9",
                             "hours": "8-18", "radiant_t": 15}).json()
    res = analytics.natural_ventilation(
        med_served_frame, (12.0, 26.0), month_range=(5, 9),
        hour_range=(8, 18), radiant_surface_t=15.0)
    assert got["eligible_hours"] == res.eligible_hours
    assert got["total_hours"] == res.total_hours
    assert got["eligible_pct"] == pytest.approx(
        100.0 * res.eligible_hours / res.total_hours)


def test_analysis_wind_rose_parity(client, sid, med_served_frame):
    got = client.get(f"/api/sessions/{sid}/analysis/wind_rose",
                     params={"months": "11-2"}).json()
    rose = analytics.wind_rose(med_served_frame, month_range=(11, 2))
    assert got["matrix"] == rose.matrix.tolist()
    assert got["calm_pct"] == rose.calm_pct
    assert got["n_classified"] == rose.n_classified
    assert got["sector_labels"] == list(rose.sector_labels)


def test_analysis_monthly_statistics_parity(client, sid, med_served_frame):
    got = client.get(f"/api/sessions/{sid}/analysis/monthly_statistics",
                     params={"column": "rh"}).json()
    stats = analytics.monthly_statistics(med_served_frame, "rh")
    assert got["units"] == "%"
    assert got["months"][3]["mean"] == stats.months[3].mean
    assert got["annual"]["count"] == stats.annual.count


def test_analysis_explorer_parity(client, sid, med_served_frame):
    params = {"x": "t_db", "y": "rh", "color": "ghi", "months": "6-8"}
    got = client.get(f"/api/sessions/{sid}/analysis/explorer", params=params).json()
    tri = analytics.explorer_triple(med_served_frame, "t_db", "rh", "ghi",
                                    filters=analytics.Filters(month_range=(6, 8)))
    assert got["n_points"] == len(tri.x)
    assert got["x"] == tri.x.tolist()
    assert got["x_hist"] == tri.x_hist.tolist()
    assert got["heatmap"] == tri.heatmap.tolist()
    expected_color = [None if math.isnan(v) else v for v in tri.color]
    assert got["color"] == expected_color


def test_analysis_utci_parity(client, sid, med_served_frame):
    got = client.get(f"/api/sessions/{sid}/analysis/utci",
                     params={"scenario": "nosun_wind"}).json()
    dist = analytics.utci_stress_distribution(med_served_frame, "nosun_wind")
    assert got["monthly_pct"] == dist.monthly_pct.tolist()
    assert got["annual_pct"] == list(dist.annual_pct)
    assert got["categories"] == list(dist.categories)


def test_analysis_unknown_kind(client, sid):
    resp = client.get(f"/api/sessions/{sid}/analysis/regression")
    assert resp.status_code == 404
    assert resp.json()["error"]["code"] == "unknown_analysis"


def test_analysis_parameter_errors(client, sid):
    resp = client.get(f"/api/sessions/{sid}/analysis/natural_ventilation",
                      params={"t_min": 26, "t_max": 12})
    assert resp.status_code == 400
    resp = client.get(f"/api/sessions/{sid}/analysis/monthly_statistics",
                      params={"column": "bogus"})
    assert resp.status_code == 400
    assert resp.json()["error"]["code"] == "unknown_column"
    resp = client.get(f"/api/sessions/{sid}/analysis/utci",
                      params={"scenario": "nope"})
    assert resp.status_code == 400
    resp = client.get(f"/api/sessions/{sid}/analysis/natural_ventilation",
                      params={"t_min": 12, "t_max": 26, "months": "0-5"})
    assert resp.status_code == 400


# ---------------------------------------------------------------------------
# Charts over HTTP equal direct renders

CHART_CASES = [
    ("heatmap", {"variable": "t_db"}),
    ("yearly_range", {"variable": "t_db", "range": "global"}),
    ("wind_rose", {"months": "6-8"}),
    ("psychrometric", {"color": "utci_sun_wind"}),
    ("sun_path_cartesian", {"color": "t_db"}),
    ("explorer_scatter", {"variable": "t_db", "y": "rh", "color": "ghi",
                          "hours": "9-17"}),
    ("degree_days", {"base_heating": "16.5"}),
    ("monthly_solar", {}),
]


def test_charts_byte_parity_with_library(client, sid, med_served_frame):
    for kind, params in CHART_CASES:
        resp = client.get(f"/api/sessions/{sid}/charts/{kind}.svg", params=params)
        assert resp.status_code == 200, (kind, resp.text)
        assert resp.headers["content-type"].startswith("image/svg+xml")
        expected = render.render(med_served_frame,
                                 chart_request_from_params(kind, params))
        assert resp.content == expected.text.encode("utf-8"), kind


def test_chart_etag_revalidation(client, sid):
    first = client.get(f"/api/sessions/{sid}/charts/heatmap.svg",
                       params={"variable": "t_db"})
    etag = first.headers["etag"]
    assert len(etag) == 34 and etag.startswith('"')
    again = client.get(f"/api/sessions/{sid}/charts/heatmap.svg",
                       params={"variable": "t_db"},
                       headers={"if-none-match": etag})
    assert again.status_code == 304
    assert again.content == b""
    assert again.headers["etag"] == etag


def test_chart_bad_request(client, sid):
    resp = client.get(f"/api/sessions/{sid}/charts/wind_rose.svg",
                      params={"variable": "t_db"})
    assert resp.status_code == 400
    resp = client.get(f"/api/sessions/{sid}/charts/heatmap.svg",
                      params={"variable": "t_db", "months": "5-99"})
    assert resp.status_code == 400
    resp = client.get(f"/api/sessions/{sid}/charts/nope.svg")
    assert resp.status_code == 400


# ---------------------------------------------------------------------------
# Session lifecycle

def test_session_ttl_expiry(tmp_path, med_text):
    now = [1000.0]
    app = service.create_app(cache_dir=tmp_path, ttl_hours=1.0,
                             clock=lambda: now[0])
    c = TestClient(app)
    sid = c.post("/api/sessions", content=med_text.encode()).json()["session_id"]
    assert c.get(f"/api/sessions/{sid}/analysis/summary").status_code == 200
    now[0] += 3601.0
    assert c.get(f"/api/sessions/{sid}/analysis/summary").status_code == 404


def test_session_lru_eviction(tmp_path, med_text):
    app = service.create_app(cache_dir=tmp_path, max_sessions=2)
    c = TestClient(app)
    ids = [c.post("/api/sessions", content=med_text.encode()).json()["session_id"]
           for _ in range(3)]
    assert c.get(f"/api/sessions/{ids[0]}/epw").status_code == 404
    assert c.get(f"/api/sessions/{ids[1]}/epw").status_code == 200
    assert c.get(f"/api/sessions/{ids[2]}/epw").status_code == 200


def test_packaged_catalog_loads():
    index = load_catalog()
    assert len(index) >= 20
