"""
The HTTP service from a client's point of view
==============================================

Walks the session flow the web UI uses: list stations, open a session,
pull analyses, download a chart. Uses the in-process test client so no
port or network is needed; `clima-serve` (or uvicorn) exposes the same
app over TCP.
"""

import tempfile

import httpx
from fastapi.testclient import TestClient

from clima import service, synthetic

# The bundled catalog points at a placeholder host, so this demo answers
# those fetches locally with a synthetic year.
transport = httpx.MockTransport(
    lambda req: httpx.Response(200, text=synthetic.synthetic_epw("tropical_humid", 2017)))

app = service.create_app(cache_dir=tempfile.mkdtemp(),
                         fetch_transport=transport)
client = TestClient(app)

print(client.get("/api/health").json())

stations = client.get("/api/stations", params={"q": "harbor"}).json()
print(f"{stations['total']} match(es); first:", stations["stations"][0]["name"])

sid = client.post("/api/sessions", json={
    "station_id": stations["stations"][0]["station_id"],
}).json()["session_id"]

summary = client.get(f"/api/sessions/{sid}/analysis/summary").json()
print("Koppen:", summary["koppen"]["label"])

rose = client.get(f"/api/sessions/{sid}/analysis/wind_rose",
                  params={"months": "6-8"}).json()
print("calm share Jun-Aug:", round(rose["calm_pct"], 1), "%")

svg = client.get(f"/api/sessions/{sid}/charts/heatmap.svg",
                 params={"variable": "t_db"})
print("heatmap:", len(svg.content), "bytes,", svg.headers["etag"])

# Repeat requests revalidate instead of re-rendering.
again = client.get(f"/api/sessions/{sid}/charts/heatmap.svg",
                   params={"variable": "t_db"},
                   headers={"if-none-match": svg.headers["etag"]})
print("second fetch:", again.status_code)
