"""Apparent solar position and sun-path projections.

The position algorithm is the Astronomical Almanac approximation (Michalsky
1988): ecliptic coordinates from the day number since J2000, right
ascension/declination, then local hour angle through sidereal time. Quoted
accuracy is about 0.01 degrees over 1950-2050 and it degrades gracefully
outside; we support 1900-2100. A standard piecewise atmospheric-refraction
correction is applied to the geometric altitude.

Azimuth is measured clockwise from north, altitude from the horizon.
Timestamps are EPW local standard time (the file's fixed UTC offset, never
daylight-saving time); hour label h covers the interval (h-1, h], and
instantaneous positions for EPW rows are evaluated at the interval midpoint
h - 0.5.
"""

from __future__ import annotations

import datetime as _dt
from dataclasses import dataclass

import numpy as np

from .epw import Location
from .errors import DomainError

__all__ = ["SolarPosition", "solar_position", "annual_sun_path", "project",
           "position_arrays", "days_in_year"]

YEAR_MIN, YEAR_MAX = 1900, 2100

_DEG = np.pi / 180.0


@dataclass(frozen=True)
class SolarPosition:
    altitude: float   # degrees above horizon, refraction-corrected
    azimuth: float    # degrees clockwise from north, [0, 360)
    timestamp: _dt.datetime  # local standard time


def days_in_year(year: int) -> int:
    return 366 if (year % 4 == 0 and (year % 100 != 0 or year % 400 == 0)) else 365


def _julian_day(year, month, day, ut_hours):
    """Julian date from a calendar date and decimal UT hours (vectorized)."""
    y = np.asarray(year, dtype=np.int64)
    m = np.asarray(month, dtype=np.int64)
    d = np.asarray(day, dtype=np.int64)
    # (m - 14) / 12 in the original is a C-style truncating division; with
    # Python floor semantics that must be spelled -((14 - m) // 12).
    a = -((14 - m) // 12)
    jdn = ((1461 * (y + 4800 + a)) // 4
           + (367 * (m - 2 - 12 * a)) // 12
           - (3 * ((y + 4900 + a) // 100)) // 4
           + d - 32075)
    return jdn + (np.asarray(ut_hours, dtype=float) - 12.0) / 24.0


def _refraction_deg(el_deg: np.ndarray) -> np.ndarray:
    """Atmospheric refraction (degrees) added to the true elevation."""
    el = np.asarray(el_deg, dtype=float)
    tan_el = np.tan(np.clip(el, -5.0, 89.9) * _DEG)
    with np.errstate(divide="ignore", invalid="ignore"):
        high = (58.1 / tan_el - 0.07 / tan_el**3 + 0.000086 / tan_el**5) / 3600.0
        mid = (1735.0 + el * (-518.2 + el * (103.4 + el * (-12.79 + el * 0.711)))) / 3600.0
        low = -20.774 / tan_el / 3600.0
    r = np.where(el > 5.0, high, np.where(el > -0.575, mid, low))
    return np.where(el > 85.0, 0.0, r)


def position_arrays(latitude, longitude, timezone, year, month, day, local_hours):
    """Refracted altitude and azimuth (degrees) for arrays of timestamps.

    ``local_hours`` are decimal hours past local standard midnight.
    """
    ut_hours = np.asarray(local_hours, dtype=float) - timezone
    n = _julian_day(year, month, day, ut_hours) - 2451545.0

    mean_long = (280.460 + 0.9856474 * n) % 360.0
    mean_anom = ((357.528 + 0.9856003 * n) % 360.0) * _DEG
    ecliptic_long = ((mean_long + 1.915 * np.sin(mean_anom)
                      + 0.020 * np.sin(2.0 * mean_anom)) % 360.0) * _DEG
    obliquity = (23.439 - 4.0e-7 * n) * _DEG

    ra = np.arctan2(np.cos(obliquity) * np.sin(ecliptic_long), np.cos(ecliptic_long))
    dec = np.arcsin(np.sin(obliquity) * np.sin(ecliptic_long))

    gmst_hours = (6.697375 + 0.0657098242 * n + ut_hours) % 24.0
    lmst = (gmst_hours * 15.0 + longitude) * _DEG
    hour_angle = (lmst - ra + np.pi) % (2.0 * np.pi) - np.pi

    lat = latitude * _DEG
    sin_alt = np.clip(
        np.sin(lat) * np.sin(dec) + np.cos(lat) * np.cos(dec) * np.cos(hour_angle),
        -1.0, 1.0,
    )
    altitude = np.arcsin(sin_alt) / _DEG

    azimuth = np.arctan2(
        -np.cos(dec) * np.sin(hour_angle),
        np.sin(dec) * np.cos(lat) - np.cos(dec) * np.sin(lat) * np.cos(hour_angle),
    ) / _DEG % 360.0

    return altitude + _refraction_deg(altitude), azimuth


def solar_position(location: Location, timestamp: _dt.datetime) -> SolarPosition:
    """Apparent solar position at one local-standard-time instant."""
    if not YEAR_MIN <= timestamp.year <= YEAR_MAX:
        raise DomainError(f"year {timestamp.year} outside supported {YEAR_MIN}-{YEAR_MAX}")
    hours = (timestamp.hour + timestamp.minute / 60.0
             + timestamp.second / 3600.0 + timestamp.microsecond / 3.6e9)
    alt, az = position_arrays(
        location.latitude, location.longitude, location.timezone,
        timestamp.year, timestamp.month, timestamp.day, hours,
    )
    return SolarPosition(altitude=float(alt), azimuth=float(az), timestamp=timestamp)


def annual_sun_path(location: Location, year: int) -> list[SolarPosition]:
    """Positions at every EPW interval midpoint of the year, in file order.

    The list aligns index-for-index with an hourly full-year frame: entry k
    belongs to day-of-year k//24 + 1, hour label k%24 + 1, evaluated at
    h - 0.5 local standard time.
    """
    if not YEAR_MIN <= year <= YEAR_MAX:
        raise DomainError(f"year {year} outside supported {YEAR_MIN}-{YEAR_MAX}")
    n_days = days_in_year(year)
    start = _dt.date(year, 1, 1)
    dates = [start + _dt.timedelta(days=int(k)) for k in range(n_days)]
    years = np.repeat([year] * n_days, 24)
    months = np.repeat([d.month for d in dates], 24)
    days = np.repeat([d.day for d in dates], 24)
    hours = np.tile(np.arange(1, 25, dtype=float) - 0.5, n_days)
    alt, az = position_arrays(
        location.latitude, location.longitude, location.timezone,
        years, months, days, hours,
    )
    out = []
    for k in range(n_days * 24):
        ts = _dt.datetime(int(years[k]), int(months[k]), int(days[k])) \
            + _dt.timedelta(hours=float(hours[k]))
        out.append(SolarPosition(float(alt[k]), float(az[k]), ts))
    return out


def project(position: SolarPosition, mode: str) -> tuple[float, float]:
    """Chart coordinates of one position.

    ``cartesian``: (azimuth, altitude) directly. ``spherical``: the polar
    chart embedding with radius 90 - altitude and angle = azimuth, north up
    and clockwise, returned as (x, y) = (r*sin(az), r*cos(az)).
    """
    if mode == "cartesian":
        return (position.azimuth, position.altitude)
    if mode == "spherical":
        r = 90.0 - position.altitude
        a = position.azimuth * _DEG
        return (r * np.sin(a), r * np.cos(a))
    raise ValueError(f"unknown projection mode {mode!r}")
