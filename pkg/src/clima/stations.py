"""Station catalog and the fetch-and-cache client for remote EPW files.

The catalog is a CSV snapshot shipped with the package (columns
station_id, name, country, lat, lon, url, source). Nothing here scrapes
upstream repositories at import or startup; the snapshot is refreshed
offline, which keeps program behavior reproducible.
"""

from __future__ import annotations

import csv
import hashlib
import os
import tempfile
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

import httpx

from .epw import EpwFile, parse_epw
from .errors import ClimaError, UpstreamCorrupt, UpstreamUnavailable

KNOWN_SOURCES = ("energyplus", "onebuilding")


class BadCatalog(ClimaError):
    code = "bad_catalog"


@dataclass(frozen=True)
class Station:
    station_id: str
    name: str
    country: str
    latitude: float
    longitude: float
    url: str
    source: str


class StationIndex:
    """In-memory station catalog with text and bounding-box queries."""

    def __init__(self, stations: list[Station]):
        seen: set[str] = set()
        for s in stations:
            if s.station_id in seen:
                raise BadCatalog(f"duplicate station_id {s.station_id}")
            seen.add(s.station_id)
            if not (-90.0 <= s.latitude <= 90.0 and -180.0 <= s.longitude <= 180.0):
                raise BadCatalog(f"{s.station_id}: coordinates out of range")
            if s.source not in KNOWN_SOURCES:
                raise BadCatalog(f"{s.station_id}: unknown source {s.source!r}")
        self._stations = tuple(stations)
        self._by_id = {s.station_id: s for s in stations}

    def __len__(self) -> int:
        return len(self._stations)

    def __iter__(self):
        return iter(self._stations)

    def get(self, station_id: str) -> Station | None:
        return self._by_id.get(station_id)

    def search(self, query: str | None = None,
               bbox: tuple[float, float, float, float] | None = None) -> list[Station]:
        """Filter by case-insensitive substring and/or bounding box.

        ``bbox`` is (min_lon, min_lat, max_lon, max_lat), edges inclusive.
        """
        out = list(self._stations)
        if bbox is not None:
            min_lon, min_lat, max_lon, max_lat = (float(v) for v in bbox)
            if not (-180.0 <= min_lon <= 180.0 and -180.0 <= max_lon <= 180.0
                    and -90.0 <= min_lat <= max_lat <= 90.0
                    and min_lon <= max_lon):
                raise ValueError(f"malformed bbox {bbox}")
            out = [s for s in out
                   if min_lat <= s.latitude <= max_lat
                   and min_lon <= s.longitude <= max_lon]
        if query:
            q = query.lower()
            out = [s for s in out
                   if q in s.name.lower() or q in s.country.lower()
                   or q in s.station_id.lower()]
        return out


def load_catalog(path: str | Path | None = None) -> StationIndex:
    """Load the snapshot CSV; defaults to the file shipped in the package."""
    if path is None:
        ref = resources.files("clima").joinpath("data/stations_snapshot.csv")
        text = ref.read_text(encoding="utf-8")
    else:
        text = Path(path).read_text(encoding="utf-8")
    reader = csv.DictReader(text.splitlines())
    expected = {"station_id", "name", "country", "lat", "lon", "url", "source"}
    if reader.fieldnames is None or set(reader.fieldnames) != expected:
        raise BadCatalog(f"catalog header {reader.fieldnames} != {sorted(expected)}")
    stations = []
    for row in reader:
        try:
            stations.append(Station(
                station_id=row["station_id"], name=row["name"],
                country=row["country"], latitude=float(row["lat"]),
                longitude=float(row["lon"]), url=row["url"],
                source=row["source"],
            ))
        except (TypeError, ValueError) as exc:
            raise BadCatalog(f"bad catalog row {row}: {exc}") from exc
    return StationIndex(stations)


class FetchClient:
    """Downloads station EPW files into a content-addressed cache.

    Cache keys are the SHA-256 of the source URL, so a catalog refresh that
    repoints a station invalidates naturally. Files are verified (they must
    parse) before being placed in the cache, and placement is atomic, so
    readers never observe a partial file.
    """

    def __init__(self, cache_dir: str | Path, timeout: float = 10.0,
                 retries: int = 2, transport: httpx.BaseTransport | None = None):
        self.cache_dir = Path(cache_dir)
        self.cache_dir.mkdir(parents=True, exist_ok=True)
        self.timeout = timeout
        self.retries = max(0, int(retries))
        self._transport = transport
        self.network_calls = 0  # diagnostic counter, read by tests and /health

    def cache_path(self, station: Station) -> Path:
        digest = hashlib.sha256(station.url.encode("utf-8")).hexdigest()
        return self.cache_dir / f"{digest}.epw"

    def fetch(self, station: Station) -> tuple[EpwFile, bool]:
        """Return (parsed file, served_from_cache)."""
        path = self.cache_path(station)
        if path.exists():
            return parse_epw(path.read_text(encoding="utf-8", errors="replace")), True
        if not station.url.startswith("https://"):
            raise UpstreamUnavailable(
                f"{station.station_id}: refusing non-HTTPS url {station.url}")
        text = self._download(station)
        try:
            parsed = parse_epw(text)
        except ClimaError as exc:
            raise UpstreamCorrupt(
                f"{station.station_id}: fetched file does not parse: {exc}") from exc
        fd, tmp = tempfile.mkstemp(dir=self.cache_dir, suffix=".part")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                fh.write(text)
            os.replace(tmp, path)  # atomic on POSIX
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise
        return parsed, False

    def _download(self, station: Station) -> str:
        last_error: Exception | None = None
        for _ in range(self.retries + 1):
            self.network_calls += 1
            try:
                with httpx.Client(transport=self._transport,
                                  timeout=self.timeout,
                                  follow_redirects=True) as client:
                    response = client.get(station.url)
            except httpx.HTTPError as exc:
                last_error = exc
                continue
            if response.status_code == 200:
                return response.text
            last_error = UpstreamUnavailable(
                f"{station.station_id}: upstream returned {response.status_code}")
            if 400 <= response.status_code < 500:
                break  # retrying a hard client error will not help
        raise UpstreamUnavailable(
            f"{station.station_id}: download failed: {last_error}")
