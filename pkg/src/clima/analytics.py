"""The derived climate frame and every page-level analysis.

``build_frame`` turns a parsed EPW file into a columnar table: the EPW
variables plus psychrometric state, solar geometry, the four UTCI exposure
scenarios, and the adaptive-comfort series. All analyses run off that frame
and are read-only, so they can be called concurrently and always give the
same answer for the same file.

Absent values are NaN inside columns (-1 in the integer category columns)
and become empty fields in CSV export. Derived columns are absent exactly
where their inputs are: no filling, no interpolation.
"""

from __future__ import annotations

import calendar
import math
from dataclasses import dataclass, field

import numpy as np

from . import comfort, solar, thermo
from .epw import EXTRA_FIELDS, FIELDS, EpwFile, Location
from .errors import BadRange, IncompatibleRequest, UnknownColumn, UnsupportedCadence

__all__ = [
    "ClimateFrame", "Filters", "SummaryReport", "KoppenLabel", "DegreeDayTable",
    "NatVentResult", "WindRose", "PsychroBins", "ExplorerData",
    "MonthlyStatistics", "StatRow",
    "build_frame", "climate_summary", "degree_days", "koppen_geiger",
    "natural_ventilation", "wind_rose", "psychro_bins", "explorer_triple",
    "monthly_statistics", "export_frame_csv",
    "SEASON_PRESETS", "DAYNIGHT_PRESETS",
]

# month ranges (inclusive, wrapping) for the conventional season groupings
SEASON_PRESETS = {
    "winter": (12, 2),
    "spring": (3, 5),
    "summer": (6, 8),
    "autumn": (9, 11),
}
# hour-label ranges: EPW hour h covers (h-1, h], so 7..18 is 06:00-18:00
DAYNIGHT_PRESETS = {
    "day": (7, 18),
    "night": (19, 6),
}

WIND_SECTOR_LABELS = ("N", "NNE", "NE", "ENE", "E", "ESE", "SE", "SSE",
                      "S", "SSW", "SW", "WSW", "W", "WNW", "NW", "NNW")
WIND_SPEED_EDGES = (0.5, 2.0, 4.0, 6.0, 8.0, 10.0)
CALM_THRESHOLD = 0.5

EXPLORER_BINS = 24

# EPW column order for the frame: calendar fields, then every numeric field
_EPW_NUMERIC = tuple(f for f in FIELDS if f.kind != "text")
_DERIVED_ORDER = (
    "humidity_ratio", "t_wb", "enthalpy", "vapor_pressure",
    "altitude", "azimuth", "delta_t_r",
    "utci_sun_wind", "utci_sun_nowind", "utci_nosun_wind", "utci_nosun_nowind",
    "utci_category_sun_wind", "utci_category_sun_nowind",
    "utci_category_nosun_wind", "utci_category_nosun_nowind",
    "t_rm", "t_comf",
    "adaptive_lower_80", "adaptive_upper_80",
    "adaptive_lower_90", "adaptive_upper_90", "adaptive_applicable",
)

_EPW_UNITS = {
    "year": "-", "month": "-", "day": "-", "hour": "-", "minute": "-",
    "t_db": "C", "t_dp": "C", "rh": "%", "pressure": "Pa",
    "extraterrestrial_horizontal": "Wh/m2", "extraterrestrial_direct_normal": "Wh/m2",
    "horizontal_infrared": "Wh/m2", "ghi": "Wh/m2", "dni": "Wh/m2", "dhi": "Wh/m2",
    "global_horizontal_illuminance": "lux", "direct_normal_illuminance": "lux",
    "diffuse_horizontal_illuminance": "lux", "zenith_luminance": "cd/m2",
    "wind_dir": "deg", "wind_speed": "m/s",
    "total_sky_cover": "tenths", "opaque_sky_cover": "tenths",
    "visibility": "km", "ceiling_height": "m",
    "present_weather_observation": "code",
    "precipitable_water": "mm", "aerosol_optical_depth": "1",
    "snow_depth": "cm", "days_since_snow": "day", "albedo": "1",
    "liquid_precipitation_depth": "mm", "liquid_precipitation_rate": "h",
}
_DERIVED_UNITS = {
    "humidity_ratio": "kg/kg", "t_wb": "C", "enthalpy": "kJ/kg",
    "vapor_pressure": "Pa", "altitude": "deg", "azimuth": "deg",
    "delta_t_r": "K",
    "utci_sun_wind": "C", "utci_sun_nowind": "C",
    "utci_nosun_wind": "C", "utci_nosun_nowind": "C",
    "utci_category_sun_wind": "code", "utci_category_sun_nowind": "code",
    "utci_category_nosun_wind": "code", "utci_category_nosun_nowind": "code",
    "t_rm": "C", "t_comf": "C",
    "adaptive_lower_80": "C", "adaptive_upper_80": "C",
    "adaptive_lower_90": "C", "adaptive_upper_90": "C",
    "adaptive_applicable": "bool",
}

_INT_COLUMNS = frozenset({
    "year", "month", "day", "hour", "minute",
    "utci_category_sun_wind", "utci_category_sun_nowind",
    "utci_category_nosun_wind", "utci_category_nosun_nowind",
    "adaptive_applicable",
})


@dataclass(frozen=True)
class ClimateFrame:
    """Columnar table of one weather file plus all derived series."""

    location: Location
    columns: dict[str, np.ndarray]
    units: dict[str, str]
    notes: tuple[str, ...]

    @property
    def n_rows(self) -> int:
        return len(self.columns["t_db"])

    @property
    def column_order(self) -> tuple[str, ...]:
        return tuple(self.columns.keys())

    def column(self, name: str) -> np.ndarray:
        try:
            return self.columns[name]
        except KeyError:
            raise UnknownColumn(name) from None

    def row(self, i: int) -> dict:
        out = {}
        for name, col in self.columns.items():
            v = col[i]
            if name in _INT_COLUMNS:
                out[name] = int(v)
            else:
                out[name] = None if np.isnan(v) else float(v)
        return out


def _records_column(records, key: str) -> np.ndarray:
    return np.array(
        [np.nan if getattr(r, key) is None else getattr(r, key) for r in records],
        dtype=float,
    )


def _extras_column(records, index: int) -> np.ndarray:
    return np.array(
        [np.nan if r.extras.get(index) is None else r.extras.get(index) for r in records],
        dtype=float,
    )


def build_frame(epw: EpwFile) -> ClimateFrame:
    """Derive the full analysis frame from a parsed weather file.

    Requires hourly cadence and a single data period; everything else about
    the file (length, gaps marked absent, leap year) is handled. The running
    mean and adaptive columns need whole days, at least eight of them, and
    are absent otherwise.
    """
    if epw.records_per_hour != 1:
        raise UnsupportedCadence(
            f"need hourly records, file has {epw.records_per_hour} per hour")
    if len(epw.data_periods) != 1:
        raise UnsupportedCadence(
            f"need a single data period, file has {len(epw.data_periods)}")

    records = epw.records
    n = len(records)
    cols: dict[str, np.ndarray] = {}

    for spec in _EPW_NUMERIC:
        if spec.key in ("year", "month", "day", "hour", "minute"):
            continue
        if spec.named:
            cols[spec.key] = _records_column(records, spec.key)
        else:
            cols[spec.key] = _extras_column(records, spec.index)

    years = np.array([r.year for r in records], dtype=np.int64)
    months = np.array([r.month for r in records], dtype=np.int64)
    days = np.array([r.day for r in records], dtype=np.int64)
    hours = np.array([r.hour for r in records], dtype=np.int64)
    minutes = np.array(
        [r.extras.get(4) if isinstance(r.extras.get(4), int) else 0 for r in records],
        dtype=np.int64,
    )

    ordered: dict[str, np.ndarray] = {
        "year": years, "month": months, "day": days, "hour": hours, "minute": minutes,
    }
    for spec in _EPW_NUMERIC:
        if spec.key not in ordered:
            ordered[spec.key] = cols[spec.key]

    t_db = ordered["t_db"]
    rh = ordered["rh"]
    pressure = ordered["pressure"]
    p_eff = np.where(np.isnan(pressure),
                     thermo.station_pressure(epw.location.elevation), pressure)

    with np.errstate(invalid="ignore"):
        ordered["humidity_ratio"] = thermo.humidity_ratio(t_db, rh, p_eff)
        ordered["t_wb"] = thermo.wet_bulb(t_db, rh, p_eff)
        ordered["enthalpy"] = thermo.enthalpy(t_db, ordered["humidity_ratio"])
        ordered["vapor_pressure"] = thermo.vapor_pressure(t_db, rh)

    loc = epw.location
    altitude, azimuth = solar.position_arrays(
        loc.latitude, loc.longitude, loc.timezone,
        years, months, days, hours - 0.5,
    )
    ordered["altitude"] = altitude
    ordered["azimuth"] = azimuth

    delta = comfort.solar_mrt_delta(ordered["dni"], ordered["dhi"],
                                    ordered["ghi"], altitude)
    ordered["delta_t_r"] = delta

    wind = ordered["wind_speed"]
    utci_cols: dict[str, np.ndarray] = {}
    for name, (sun, windy) in comfort.SCENARIOS.items():
        t_r = t_db + (delta if sun else 0.0)
        speed = wind if windy else np.full(n, 0.5)
        values, _clamped = comfort.utci_values(t_db, t_r, speed, rh)
        utci_cols[f"utci_{name}"] = values
        utci_cols[f"utci_category_{name}"] = comfort.stress_category_codes(values)
    for key in _DERIVED_ORDER:
        if key in utci_cols:
            ordered[key] = utci_cols[key]

    # prevailing mean outdoor temperature needs whole days, cyclic year
    if n % 24 == 0 and n // 24 >= 8:
        daily = t_db.reshape(n // 24, 24)
        absent_per_day = np.isnan(daily).sum(axis=1)
        daily_mean = np.where(
            absent_per_day > 6, np.nan,
            np.nansum(daily, axis=1) / np.maximum(24 - absent_per_day, 1),
        )
        t_rm_daily = comfort.running_mean(daily_mean, 0.9)
        t_rm = np.repeat(t_rm_daily, 24)
        rm_note = "t_rm: alpha 0.9, 7-day window, annual series treated as cyclic"
    else:
        t_rm = np.full(n, np.nan)
        rm_note = "t_rm unavailable: file is not whole days or shorter than 8 days"

    ordered["t_rm"] = t_rm
    with np.errstate(invalid="ignore"):
        t_comf = 0.31 * t_rm + 17.8
        applicable = ((t_rm >= 10.0) & (t_rm <= 33.5)).astype(np.int64)
    ordered["t_comf"] = t_comf
    ordered["adaptive_lower_80"] = t_comf - 3.5
    ordered["adaptive_upper_80"] = t_comf + 3.5
    ordered["adaptive_lower_90"] = t_comf - 2.5
    ordered["adaptive_upper_90"] = t_comf + 2.5
    ordered["adaptive_applicable"] = applicable

    units = dict(_EPW_UNITS)
    units.update(_DERIVED_UNITS)
    notes = (
        thermo.FORMULATION_NOTE,
        comfort.SOLAR_GAIN_NOTE,
        rm_note,
        "absent pressure rows fall back to barometric pressure at station elevation",
    )
    for arr in ordered.values():
        arr.setflags(write=False)
    return ClimateFrame(location=loc, columns=ordered, units=units, notes=notes)


# ---------------------------------------------------------------------------
# filtering


@dataclass(frozen=True)
class Filters:
    """Row filters shared by the binning analyses.

    Ranges are inclusive at both ends; month and hour ranges may wrap
    (months (11, 2) is Nov-Feb, hours (19, 6) is evening through dawn).
    ``column``/``column_range`` filter on a secondary variable; rows where
    that variable is absent fail the filter.
    """

    month_range: tuple[int, int] | None = None
    hour_range: tuple[int, int] | None = None
    column: str | None = None
    column_range: tuple[float, float] | None = None


def _float_column(frame: ClimateFrame, name: str) -> np.ndarray:
    """Column as float with the absent marker normalized to NaN."""
    col = frame.column(name)
    values = np.asarray(col, dtype=float)
    if name.startswith("utci_category"):
        values = np.where(values == -1.0, np.nan, values)
    return values


def _wrap_mask(values: np.ndarray, lo, hi) -> np.ndarray:
    if lo <= hi:
        return (values >= lo) & (values <= hi)
    return (values >= lo) | (values <= hi)


def _filter_mask(frame: ClimateFrame, month_range, hour_range,
                 column=None, column_range=None) -> np.ndarray:
    mask = np.ones(frame.n_rows, dtype=bool)
    if month_range is not None:
        lo, hi = int(month_range[0]), int(month_range[1])
        if not (1 <= lo <= 12 and 1 <= hi <= 12):
            raise BadRange(f"month range {month_range} outside 1..12")
        mask &= _wrap_mask(frame.column("month"), lo, hi)
    if hour_range is not None:
        lo, hi = int(hour_range[0]), int(hour_range[1])
        if not (1 <= lo <= 24 and 1 <= hi <= 24):
            raise BadRange(f"hour range {hour_range} outside 1..24")
        mask &= _wrap_mask(frame.column("hour"), lo, hi)
    if column is not None and column_range is not None:
        lo, hi = float(column_range[0]), float(column_range[1])
        if lo > hi:
            raise BadRange(f"column range {column_range} has min > max")
        vals = _float_column(frame, column)
        with np.errstate(invalid="ignore"):
            mask &= np.where(np.isnan(vals), False, (vals >= lo) & (vals <= hi))
    return mask


def _apply_filters(frame: ClimateFrame, filters: Filters | None) -> np.ndarray:
    if filters is None:
        return np.ones(frame.n_rows, dtype=bool)
    return _filter_mask(frame, filters.month_range, filters.hour_range,
                        filters.column, filters.column_range)


# ---------------------------------------------------------------------------
# summary, degree days, Koppen


@dataclass(frozen=True)
class KoppenLabel:
    label: str
    precipitation_missing: bool
    monthly_t: tuple[float, ...]
    monthly_precip: tuple[float, ...] | None


@dataclass(frozen=True)
class SummaryReport:
    location: Location
    t_db_mean: float
    hottest_month: str
    hottest_month_mean: float
    coldest_month: str
    coldest_month_mean: float
    annual_ghi_kwh_m2: float
    diffuse_share_pct: float
    koppen: KoppenLabel


def summary_json(frame: ClimateFrame) -> dict:
    """:func:`climate_summary` as plain JSON-ready types (NaN becomes None).

    This is the one canonical wire shape for the summary; the HTTP API and
    the CLI both emit it, which keeps their outputs comparable.
    """
    report = climate_summary(frame)
    loc = frame.location

    def num(v):
        v = float(v)
        return None if math.isnan(v) else v

    return {
        "location": {
            "city": loc.city, "state_region": loc.state_region,
            "country": loc.country, "wmo_id": loc.wmo_id,
            "latitude": loc.latitude, "longitude": loc.longitude,
            "timezone": loc.timezone, "elevation": loc.elevation,
        },
        "t_db_mean": num(report.t_db_mean),
        "hottest_month": report.hottest_month,
        "hottest_month_mean": num(report.hottest_month_mean),
        "coldest_month": report.coldest_month,
        "coldest_month_mean": num(report.coldest_month_mean),
        "annual_ghi_kwh_m2": num(report.annual_ghi_kwh_m2),
        "diffuse_share_pct": num(report.diffuse_share_pct),
        "koppen": {
            "label": report.koppen.label,
            "precipitation_missing": report.koppen.precipitation_missing,
            "monthly_t": [num(v) for v in report.koppen.monthly_t],
            "monthly_precip": (None if report.koppen.monthly_precip is None
                               else [num(v) for v in report.koppen.monthly_precip]),
        },
    }


@dataclass(frozen=True)
class DegreeDayTable:
    base_heating: float
    base_cooling: float
    hdd_monthly: tuple[float, ...]
    cdd_monthly: tuple[float, ...]
    method: str = "daily-mean"

    @property
    def hdd_annual(self) -> float:
        return float(sum(self.hdd_monthly))

    @property
    def cdd_annual(self) -> float:
        return float(sum(self.cdd_monthly))


def _monthly_mean_t(frame: ClimateFrame) -> np.ndarray:
    months = frame.column("month")
    t_db = frame.column("t_db")
    out = np.full(12, np.nan)
    for m in range(1, 13):
        vals = t_db[(months == m) & ~np.isnan(t_db)]
        if vals.size:
            out[m - 1] = vals.mean()
    return out


def _require_full_year(frame: ClimateFrame, what: str) -> None:
    present = set(np.unique(frame.column("month")).tolist())
    if present != set(range(1, 13)):
        raise IncompatibleRequest(f"{what} needs data in all 12 months")


def climate_summary(frame: ClimateFrame) -> SummaryReport:
    """Headline figures for the climate summary page."""
    _require_full_year(frame, "climate summary")
    monthly = _monthly_mean_t(frame)
    t_db = frame.column("t_db")
    ghi = frame.column("ghi")
    dhi = frame.column("dhi")
    hottest = int(np.nanargmax(monthly))
    coldest = int(np.nanargmin(monthly))
    ghi_sum = float(np.nansum(ghi))
    dhi_sum = float(np.nansum(dhi))
    return SummaryReport(
        location=frame.location,
        t_db_mean=float(np.nanmean(t_db)),
        hottest_month=calendar.month_name[hottest + 1],
        hottest_month_mean=float(monthly[hottest]),
        coldest_month=calendar.month_name[coldest + 1],
        coldest_month_mean=float(monthly[coldest]),
        annual_ghi_kwh_m2=ghi_sum / 1000.0,
        diffuse_share_pct=(100.0 * dhi_sum / ghi_sum) if ghi_sum > 0 else 0.0,
        koppen=koppen_geiger(frame),
    )


def degree_days(frame: ClimateFrame, base_heating: float = 18.0,
                base_cooling: float = 21.0) -> DegreeDayTable:
    """Monthly heating/cooling degree days by the daily-mean method."""
    if not (np.isfinite(base_heating) and np.isfinite(base_cooling)):
        raise BadRange("degree-day bases must be finite")
    months = frame.column("month")
    days = frame.column("day")
    t_db = frame.column("t_db")
    hdd = np.zeros(12)
    cdd = np.zeros(12)
    # group by calendar day within month; absent hours drop out of the mean
    for m in range(1, 13):
        m_mask = months == m
        for d in np.unique(days[m_mask]):
            vals = t_db[m_mask & (days == d)]
            vals = vals[~np.isnan(vals)]
            if vals.size == 0:
                continue
            mean_d = vals.mean()
            hdd[m - 1] += max(0.0, base_heating - mean_d)
            cdd[m - 1] += max(0.0, mean_d - base_cooling)
    return DegreeDayTable(
        base_heating=float(base_heating), base_cooling=float(base_cooling),
        hdd_monthly=tuple(float(x) for x in hdd),
        cdd_monthly=tuple(float(x) for x in cdd),
    )


def _monthly_precip(frame: ClimateFrame) -> np.ndarray | None:
    precip = frame.column("liquid_precipitation_depth")
    if np.all(np.isnan(precip)):
        return None
    months = frame.column("month")
    out = np.zeros(12)
    for m in range(1, 13):
        out[m - 1] = np.nansum(precip[months == m])
    return out


def koppen_geiger(frame: ClimateFrame) -> KoppenLabel:
    """Two-letter Koppen-Geiger class from monthly means and precipitation.

    Standard threshold scheme on monthly mean dry bulb and monthly
    precipitation totals. Files without any precipitation data get a
    temperature-only letter (A/C/D, or ET/EF which need no precipitation)
    and the ``precipitation_missing`` flag; the arid B check is impossible
    there and is skipped.
    """
    _require_full_year(frame, "Koppen classification")
    t = _monthly_mean_t(frame)
    if np.any(np.isnan(t)):
        raise IncompatibleRequest("Koppen classification needs t_db in every month")
    p = _monthly_precip(frame)

    t_hot = float(t.max())
    t_cold = float(t.min())
    mat = float(t.mean())

    def _temperature_letter() -> str:
        if t_cold >= 18.0:
            return "A"
        if t_hot <= 10.0:
            return "ET" if t_hot > 0.0 else "EF"
        if t_cold > 0.0:
            return "C"
        return "D"

    if p is None:
        return KoppenLabel(
            label=_temperature_letter(), precipitation_missing=True,
            monthly_t=tuple(float(x) for x in t), monthly_precip=None,
        )

    high = (3, 4, 5, 6, 7, 8)    # April..September, 0-based months
    low = (9, 10, 11, 0, 1, 2)   # October..March
    if t[list(high)].mean() >= t[list(low)].mean():
        summer, winter = high, low
    else:
        summer, winter = low, high
    p_summer = float(p[list(summer)].sum())
    p_winter = float(p[list(winter)].sum())
    map_total = float(p.sum())

    if p_winter >= 0.7 * map_total:
        p_thresh = 2.0 * mat
    elif p_summer >= 0.7 * map_total:
        p_thresh = 2.0 * mat + 28.0
    else:
        p_thresh = 2.0 * mat + 14.0

    label: str
    if map_total < 10.0 * p_thresh:
        label = "BW" if map_total < 5.0 * p_thresh else "BS"
    elif t_cold >= 18.0:
        p_dry = float(p.min())
        if p_dry >= 60.0:
            label = "Af"
        elif p_dry >= 100.0 - map_total / 25.0:
            label = "Am"
        else:
            label = "Aw"
    elif t_hot <= 10.0:
        label = "ET" if t_hot > 0.0 else "EF"
    else:
        ps_dry = float(p[list(summer)].min())
        ps_wet = float(p[list(summer)].max())
        pw_dry = float(p[list(winter)].min())
        pw_wet = float(p[list(winter)].max())
        s = ps_dry < 40.0 and ps_dry < pw_wet / 3.0
        w = pw_dry < ps_wet / 10.0
        if s and w:
            second = "s" if p_winter > p_summer else "w"
        elif s:
            second = "s"
        elif w:
            second = "w"
        else:
            second = "f"
        label = ("C" if t_cold > 0.0 else "D") + second

    return KoppenLabel(
        label=label, precipitation_missing=False,
        monthly_t=tuple(float(x) for x in t),
        monthly_precip=tuple(float(x) for x in p),
    )


# ---------------------------------------------------------------------------
# natural ventilation, wind rose


@dataclass(frozen=True)
class NatVentResult:
    eligible_hours: int
    total_hours: int
    mask: np.ndarray
    t_db_range: tuple[float, float]
    month_range: tuple[int, int] | None
    hour_range: tuple[int, int] | None
    radiant_surface_t: float | None


def natural_ventilation(frame: ClimateFrame, t_db_range: tuple[float, float],
                        month_range: tuple[int, int] | None = None,
                        hour_range: tuple[int, int] | None = None,
                        radiant_surface_t: float | None = None) -> NatVentResult:
    """Hours suitable for natural ventilation under the given filters.

    An hour is eligible when its dry bulb lies inside ``t_db_range``
    (inclusive), passes the month/hour filters, and, if a radiant surface
    temperature is given, that surface stays above the hour's dew point
    (condensation guard). Hours with the needed inputs absent are never
    eligible. ``total_hours`` counts the rows passing the month/hour filters
    alone, so eligible/total is "how much of the selected period works".
    """
    lo, hi = float(t_db_range[0]), float(t_db_range[1])
    if lo > hi:
        raise BadRange(f"t_db range ({lo}, {hi}) has min > max")
    window = _filter_mask(frame, month_range, hour_range)
    t_db = frame.column("t_db")
    with np.errstate(invalid="ignore"):
        ok = window & ~np.isnan(t_db) & (t_db >= lo) & (t_db <= hi)
        if radiant_surface_t is not None:
            t_dp = frame.column("t_dp")
            ok &= ~np.isnan(t_dp) & (float(radiant_surface_t) > t_dp)
    ok.setflags(write=False)
    return NatVentResult(
        eligible_hours=int(ok.sum()), total_hours=int(window.sum()), mask=ok,
        t_db_range=(lo, hi), month_range=month_range, hour_range=hour_range,
        radiant_surface_t=None if radiant_surface_t is None else float(radiant_surface_t),
    )


@dataclass(frozen=True)
class WindRose:
    matrix: np.ndarray  # 16 sectors x 6 speed bins, percentages
    calm_pct: float
    n_classified: int
    sector_labels: tuple[str, ...]
    speed_edges: tuple[float, ...]
    month_range: tuple[int, int] | None
    hour_range: tuple[int, int] | None


def wind_rose(frame: ClimateFrame, month_range: tuple[int, int] | None = None,
              hour_range: tuple[int, int] | None = None) -> WindRose:
    """16-sector by speed-bin frequency table of the filtered hours.

    Sector i is centered on i*22.5 degrees (N, NNE, ...). Speeds below
    0.5 m/s count as calm whatever their direction; rows without a usable
    speed, or without a direction at non-calm speed, are left out of the
    percentages entirely.
    """
    window = _filter_mask(frame, month_range, hour_range)
    speed = frame.column("wind_speed")
    direction = frame.column("wind_dir")
    with np.errstate(invalid="ignore"):
        has_speed = window & ~np.isnan(speed)
        calm = has_speed & (speed < CALM_THRESHOLD)
        placed = has_speed & ~calm & ~np.isnan(direction)

    matrix = np.zeros((16, len(WIND_SPEED_EDGES)))
    n_classified = int(calm.sum() + placed.sum())
    if placed.any():
        d = direction[placed]
        s = speed[placed]
        sector = (np.floor(((d + 11.25) % 360.0) / 22.5)).astype(int)
        # searchsorted on the inner edges: bin j is [edge_j, edge_j+1)
        speed_bin = np.searchsorted(WIND_SPEED_EDGES, s, side="right") - 1
        for sec, sb in zip(sector, speed_bin):
            matrix[sec, sb] += 1.0
    if n_classified:
        matrix = matrix * (100.0 / n_classified)
        calm_pct = 100.0 * float(calm.sum()) / n_classified
    else:
        calm_pct = 0.0
    matrix.setflags(write=False)
    return WindRose(
        matrix=matrix, calm_pct=calm_pct, n_classified=n_classified,
        sector_labels=WIND_SECTOR_LABELS, speed_edges=WIND_SPEED_EDGES,
        month_range=month_range, hour_range=hour_range,
    )


# ---------------------------------------------------------------------------
# psychrometric binning, explorer, monthly statistics


@dataclass(frozen=True)
class PsychroBins:
    mode: str                     # "frequency" | "color"
    t_idx: np.ndarray             # per-bin t_db bin index (frequency mode)
    w_idx: np.ndarray             # per-bin humidity-ratio bin index
    counts: np.ndarray            # per-bin row count
    points_t: np.ndarray          # per-point coordinates (color mode)
    points_w: np.ndarray
    colors: np.ndarray
    color_by: str | None
    t_bin_size: float
    w_bin_size: float
    n_rows: int


def psychro_bins(frame: ClimateFrame, color_by: str | None = None,
                 filters: Filters | None = None) -> PsychroBins:
    """Psychrometric chart data: binned frequencies or per-point colors.

    Frequency mode bins (t_db, humidity_ratio) on a 1 degC x 0.001 kg/kg
    grid (floor binning, so bin k covers [k*size, (k+1)*size)). Color mode
    keeps the individual points and aligns ``color_by`` values with them;
    points where the color variable is absent keep NaN.
    """
    mask = _apply_filters(frame, filters)
    t_db = frame.column("t_db")
    w = frame.column("humidity_ratio")
    usable = mask & ~np.isnan(t_db) & ~np.isnan(w)
    t = t_db[usable]
    wv = w[usable]
    n_rows = int(usable.sum())

    if color_by is None:
        t_idx = np.floor(t / 1.0).astype(np.int64)
        w_idx = np.floor(wv / 0.001).astype(np.int64)
        if n_rows:
            pairs = np.stack([t_idx, w_idx], axis=1)
            uniq, counts = np.unique(pairs, axis=0, return_counts=True)
            order = np.lexsort((uniq[:, 1], uniq[:, 0]))
            uniq, counts = uniq[order], counts[order]
        else:
            uniq = np.zeros((0, 2), dtype=np.int64)
            counts = np.zeros(0, dtype=np.int64)
        return PsychroBins(
            mode="frequency", t_idx=uniq[:, 0], w_idx=uniq[:, 1], counts=counts,
            points_t=np.zeros(0), points_w=np.zeros(0), colors=np.zeros(0),
            color_by=None, t_bin_size=1.0, w_bin_size=0.001, n_rows=n_rows,
        )

    colors = _float_column(frame, color_by)[usable]
    return PsychroBins(
        mode="color", t_idx=np.zeros(0, dtype=np.int64),
        w_idx=np.zeros(0, dtype=np.int64), counts=np.zeros(0, dtype=np.int64),
        points_t=t, points_w=wv, colors=colors,
        color_by=color_by, t_bin_size=1.0, w_bin_size=0.001, n_rows=n_rows,
    )


@dataclass(frozen=True)
class ExplorerData:
    x_name: str
    y_name: str
    color_name: str
    x: np.ndarray
    y: np.ndarray
    color: np.ndarray
    x_edges: np.ndarray           # EXPLORER_BINS + 1 edges
    y_edges: np.ndarray
    x_hist: np.ndarray            # EXPLORER_BINS counts
    y_hist: np.ndarray
    heatmap: np.ndarray           # (EXPLORER_BINS, EXPLORER_BINS) counts


def _uniform_edges(values: np.ndarray, n_bins: int) -> np.ndarray:
    lo = float(values.min())
    hi = float(values.max())
    if lo == hi:
        lo, hi = lo - 0.5, hi + 0.5
    return np.linspace(lo, hi, n_bins + 1)


def _bin_index(values: np.ndarray, edges: np.ndarray) -> np.ndarray:
    # floor binning over uniform edges; the top edge folds into the last bin
    n_bins = len(edges) - 1
    width = (edges[-1] - edges[0]) / n_bins
    idx = np.floor((values - edges[0]) / width).astype(np.int64)
    return np.clip(idx, 0, n_bins - 1)


def explorer_triple(frame: ClimateFrame, x: str, y: str, color: str,
                    filters: Filters | None = None) -> ExplorerData:
    """Scatter of x against y colored by a third column, with distributions.

    Rows where x or y is absent are dropped; an absent color value keeps its
    point with NaN color. The marginal histograms and the count heatmap use
    the same uniform bin edges, so the heatmap total equals the number of
    plotted points.
    """
    mask = _apply_filters(frame, filters)
    xv_all = _float_column(frame, x)
    yv_all = _float_column(frame, y)
    cv_all = _float_column(frame, color)
    usable = mask & ~np.isnan(xv_all) & ~np.isnan(yv_all)
    xv = xv_all[usable]
    yv = yv_all[usable]
    cv = cv_all[usable]

    if xv.size:
        x_edges = _uniform_edges(xv, EXPLORER_BINS)
        y_edges = _uniform_edges(yv, EXPLORER_BINS)
        xi = _bin_index(xv, x_edges)
        yi = _bin_index(yv, y_edges)
        x_hist = np.bincount(xi, minlength=EXPLORER_BINS)
        y_hist = np.bincount(yi, minlength=EXPLORER_BINS)
        heatmap = np.zeros((EXPLORER_BINS, EXPLORER_BINS), dtype=np.int64)
        np.add.at(heatmap, (xi, yi), 1)
    else:
        x_edges = np.linspace(0.0, 1.0, EXPLORER_BINS + 1)
        y_edges = np.linspace(0.0, 1.0, EXPLORER_BINS + 1)
        x_hist = np.zeros(EXPLORER_BINS, dtype=np.int64)
        y_hist = np.zeros(EXPLORER_BINS, dtype=np.int64)
        heatmap = np.zeros((EXPLORER_BINS, EXPLORER_BINS), dtype=np.int64)

    return ExplorerData(
        x_name=x, y_name=y, color_name=color,
        x=xv, y=yv, color=cv,
        x_edges=x_edges, y_edges=y_edges,
        x_hist=x_hist, y_hist=y_hist, heatmap=heatmap,
    )


@dataclass(frozen=True)
class StatRow:
    label: str
    count: int
    mean: float
    std: float
    min: float
    p25: float
    median: float
    p75: float
    max: float


@dataclass(frozen=True)
class MonthlyStatistics:
    column: str
    units: str
    months: tuple[StatRow, ...]
    annual: StatRow


def _stat_row(label: str, values: np.ndarray) -> StatRow:
    values = values[~np.isnan(values)]
    if values.size == 0:
        nan = float("nan")
        return StatRow(label, 0, nan, nan, nan, nan, nan, nan, nan)
    q25, q50, q75 = np.percentile(values, [25, 50, 75])  # linear interpolation
    return StatRow(
        label=label, count=int(values.size),
        mean=float(values.mean()), std=float(values.std(ddof=0)),
        min=float(values.min()), p25=float(q25), median=float(q50),
        p75=float(q75), max=float(values.max()),
    )


def monthly_statistics(frame: ClimateFrame, column: str) -> MonthlyStatistics:
    """Descriptive statistics of one column per month and for the year."""
    values = _float_column(frame, column)
    months = frame.column("month")
    rows = tuple(
        _stat_row(calendar.month_abbr[m], values[months == m])
        for m in range(1, 13)
    )
    return MonthlyStatistics(
        column=column, units=frame.units.get(column, "-"),
        months=rows, annual=_stat_row("Year", values),
    )


@dataclass(frozen=True)
class StressDistribution:
    scenario: str
    categories: tuple[str, ...]
    monthly_pct: np.ndarray       # 12 x 10, percent of classified hours
    monthly_hours: np.ndarray     # 12, classified hours per month
    annual_pct: tuple[float, ...]


def utci_stress_distribution(frame: ClimateFrame, scenario: str) -> StressDistribution:
    """Share of each thermal stress category per month for one scenario.

    Percentages are over the hours the scenario could be evaluated for, so
    months with absent inputs still sum to 100 across categories (or to 0
    when nothing was classifiable).
    """
    from .comfort import SCENARIOS, UTCI_CATEGORIES

    if scenario not in SCENARIOS:
        raise IncompatibleRequest(
            f"unknown scenario {scenario!r}, expected one of {sorted(SCENARIOS)}")
    codes = np.asarray(frame.column(f"utci_category_{scenario}"), dtype=int)
    months = frame.column("month")
    monthly = np.zeros((12, len(UTCI_CATEGORIES)))
    hours = np.zeros(12)
    for m in range(1, 13):
        sel = codes[(months == m)]
        sel = sel[sel >= 0]
        hours[m - 1] = sel.size
        if sel.size:
            counts = np.bincount(sel, minlength=len(UTCI_CATEGORIES))
            monthly[m - 1] = counts / sel.size * 100.0
    all_codes = codes[codes >= 0]
    if all_codes.size:
        annual = np.bincount(all_codes, minlength=len(UTCI_CATEGORIES)) / all_codes.size * 100.0
    else:
        annual = np.zeros(len(UTCI_CATEGORIES))
    monthly.setflags(write=False)
    hours.setflags(write=False)
    return StressDistribution(
        scenario=scenario, categories=UTCI_CATEGORIES,
        monthly_pct=monthly, monthly_hours=hours,
        annual_pct=tuple(float(x) for x in annual),
    )


# ---------------------------------------------------------------------------
# CSV export


def _csv_cell(name: str, value) -> str:
    if name in _INT_COLUMNS:
        iv = int(value)
        return "" if iv == -1 and name.startswith("utci_category") else str(iv)
    v = float(value)
    if np.isnan(v):
        return ""
    if v == int(v) and abs(v) < 1e15:
        return str(int(v))
    return repr(v)


def export_frame_csv(frame: ClimateFrame) -> str:
    """The frame as deterministic CSV, one row per hour.

    Header cells are "name [unit]"; absent values are empty fields. Column
    order is the EPW field order followed by the derived columns.
    """
    names = list(frame.column_order)
    header = ",".join(f"{n} [{frame.units[n]}]" for n in names)
    cols = [frame.columns[n] for n in names]
    lines = [header]
    for i in range(frame.n_rows):
        lines.append(",".join(_csv_cell(n, col[i]) for n, col in zip(names, cols)))
    return "\n".join(lines) + "\n"
