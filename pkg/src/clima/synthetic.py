"""Deterministic synthetic weather files for offline fixtures and demos.

Each preset produces a physically coherent hourly year for a fictional
station: seasonal and diurnal temperature cycles with autocorrelated noise,
humidity anticorrelated with temperature, clear-sky irradiance attenuated by
a cloud series, and a monthly precipitation budget distributed onto the
cloudiest hours. The three presets are chosen to land in clearly different
Koppen classes (Af, Dfb, Csb) so classification tests have real spread.

Everything is seeded: the same preset, year, and library version yield
byte-identical files. A few values are deliberately withheld (emitted as the
EPW missing sentinel) so downstream absent-value handling is exercised by
every fixture.
"""

from __future__ import annotations

import datetime as _dt
from dataclasses import dataclass

import numpy as np

from . import solar, thermo
from .epw import (DataPeriod, EpwFile, GroundTemperatureSeries, HourlyRecord,
                  Location, ParseReport, serialize_epw)

__all__ = ["Preset", "PRESETS", "synthetic_epw", "synthetic_epw_file"]


@dataclass(frozen=True)
class Preset:
    key: str
    city: str
    region: str
    country: str
    wmo_id: str
    latitude: float
    longitude: float
    timezone: float
    elevation: float
    t_mean: float        # annual mean dry bulb, degC
    t_season: float      # seasonal half-amplitude, K
    t_diurnal: float     # diurnal half-amplitude, K
    warm_doy: int        # day of year of the seasonal maximum
    rh_base: float       # mean relative humidity, %
    rh_slope: float      # % RH lost per K above the seasonal mean
    cloud_mean: float    # mean cloud fraction 0..1
    cloud_season: float  # + means cloudier around warm_doy
    wind_mean: float     # m/s
    prevailing_dir: float
    precip_mm: tuple     # 12 monthly totals
    seed: int


PRESETS: dict[str, Preset] = {
    "tropical_humid": Preset(
        key="tropical_humid", city="Tropic Harbor", region="-", country="TRP",
        wmo_id="990010", latitude=1.35, longitude=103.8, timezone=8.0,
        elevation=15.0, t_mean=27.5, t_season=1.2, t_diurnal=3.5, warm_doy=135,
        rh_base=82.0, rh_slope=2.2, cloud_mean=0.62, cloud_season=0.08,
        wind_mean=2.8, prevailing_dir=90.0,
        precip_mm=(180, 150, 170, 180, 170, 160, 150, 160, 170, 190, 250, 230),
        seed=11,
    ),
    "cold_continental": Preset(
        key="cold_continental", city="Frostvale", region="-", country="FRS",
        wmo_id="990020", latitude=60.32, longitude=24.97, timezone=2.0,
        elevation=56.0, t_mean=5.5, t_season=11.5, t_diurnal=4.5, warm_doy=200,
        rh_base=79.0, rh_slope=2.0, cloud_mean=0.64, cloud_season=-0.12,
        wind_mean=3.8, prevailing_dir=210.0,
        precip_mm=(52, 40, 42, 44, 48, 58, 72, 76, 66, 70, 64, 58),
        seed=23,
    ),
    "mediterranean": Preset(
        key="mediterranean", city="Cape Westerly", region="-", country="CPW",
        wmo_id="990030", latitude=37.62, longitude=-122.37, timezone=-8.0,
        elevation=5.0, t_mean=13.8, t_season=4.0, t_diurnal=5.5, warm_doy=250,
        rh_base=74.0, rh_slope=2.5, cloud_mean=0.45, cloud_season=-0.18,
        wind_mean=4.5, prevailing_dir=280.0,
        precip_mm=(110, 100, 80, 40, 15, 5, 1, 2, 6, 25, 60, 110),
        seed=37,
    ),
}


def _ar1(rng: np.random.Generator, n: int, phi: float, sigma: float) -> np.ndarray:
    shocks = rng.normal(0.0, sigma, n)
    out = np.empty(n)
    acc = 0.0
    for i in range(n):
        acc = phi * acc + shocks[i]
        out[i] = acc
    # stationary variance normalization so sigma means the series std
    return out * np.sqrt(1.0 - phi * phi)


def _calendar(year: int):
    n_days = solar.days_in_year(year)
    start = _dt.date(year, 1, 1)
    dates = [start + _dt.timedelta(days=k) for k in range(n_days)]
    months = np.repeat([d.month for d in dates], 24)
    days = np.repeat([d.day for d in dates], 24)
    doy = np.repeat(np.arange(1, n_days + 1), 24)
    hours = np.tile(np.arange(1, 25), n_days)
    return n_days, months, days, doy, hours


def _round1(x: np.ndarray) -> np.ndarray:
    return np.round(x, 1)


def synthetic_epw_file(preset_name: str, year: int = 2017) -> EpwFile:
    """Build the synthetic station's parsed EPW structure."""
    preset = PRESETS[preset_name]
    rng = np.random.default_rng(preset.seed * 100003 + year)
    n_days, months, days, doy, hours = _calendar(year)
    n = n_days * 24
    year_len = float(n_days)

    season = np.cos(2.0 * np.pi * (doy - preset.warm_doy) / year_len)
    t_season = preset.t_mean + preset.t_season * season

    # cloud fraction: seasonal baseline plus slow noise
    cloud = (preset.cloud_mean + preset.cloud_season * season
             + _ar1(rng, n, 0.98, 0.38))
    cloud = np.clip(cloud, 0.0, 1.0)

    # temperature: diurnal cycle peaks at 15:00, damped by cloud
    diurnal = np.cos(2.0 * np.pi * (hours - 0.5 - 15.0) / 24.0)
    t_db = (t_season
            + preset.t_diurnal * diurnal * (1.0 - 0.4 * cloud)
            + _ar1(rng, n, 0.95, 1.3))

    rh = np.clip(
        preset.rh_base - preset.rh_slope * (t_db - t_season) + _ar1(rng, n, 0.9, 4.0),
        15.0, 100.0,
    )

    t_db = _round1(t_db)
    rh = np.round(rh, 0)
    t_dp = _round1(thermo.dew_point(t_db, rh))

    pressure = np.round(
        thermo.station_pressure(preset.elevation)
        + 120.0 * np.sin(2.0 * np.pi * doy / 29.0) + _ar1(rng, n, 0.97, 180.0), 0)

    # solar geometry at interval midpoints, then clear-sky attenuation
    alt, _az = solar.position_arrays(
        preset.latitude, preset.longitude, preset.timezone,
        np.full(n, year), months, days, hours - 0.5,
    )
    sin_alt = np.sin(np.radians(np.maximum(alt, 0.0)))
    e0 = 1.0 + 0.033 * np.cos(2.0 * np.pi * doy / year_len)
    with np.errstate(divide="ignore", invalid="ignore"):
        ghi_clear = np.where(sin_alt > 0.0,
                             1098.0 * sin_alt * np.exp(-0.059 / np.maximum(sin_alt, 1e-9)),
                             0.0)
    ghi = ghi_clear * (1.0 - 0.75 * cloud**3)
    diffuse_frac = np.clip(0.18 + 0.82 * cloud, 0.0, 1.0)
    dhi = ghi * diffuse_frac
    dni = np.where(sin_alt > 0.05, (ghi - dhi) / np.maximum(sin_alt, 0.05), 0.0)
    dni = np.clip(dni, 0.0, 1050.0)
    etr_h = np.maximum(1367.0 * e0 * sin_alt, 0.0)
    etr_dn = np.where(sin_alt > 0.0, 1367.0 * e0, 0.0)

    ghi = np.round(ghi, 0)
    dhi = np.round(dhi, 0)
    dni = np.round(dni, 0)

    wind_speed = np.clip(
        preset.wind_mean * (1.0 + 0.45 * _ar1(rng, n, 0.9, 1.0)) , 0.0, 25.0)
    wind_speed = _round1(wind_speed)
    wind_dir = (preset.prevailing_dir + 50.0 * _ar1(rng, n, 0.92, 1.0)) % 360.0
    scatter = rng.random(n) < 0.03
    wind_dir = np.where(scatter, rng.uniform(0.0, 360.0, n), wind_dir)
    wind_dir = (np.round(wind_dir / 10.0) * 10.0) % 360.0

    sky = np.round(cloud * 10.0, 0)
    t_k = t_db + 273.15
    ir = np.round(5.670374419e-8 * t_k**4 * (0.62 + 0.26 * cloud), 0)

    # distribute each month's precipitation total onto its cloudiest hours
    precip = np.zeros(n)
    for m in range(1, 13):
        total = float(preset.precip_mm[m - 1])
        idx = np.where(months == m)[0]
        if total <= 0.0 or idx.size == 0:
            continue
        n_events = max(1, int(round(total / 1.5)))
        n_events = min(n_events, idx.size)
        chosen = idx[np.argsort(cloud[idx], kind="stable")[-n_events:]]
        precip[chosen] = round(total / n_events, 1)

    # withhold a few values to exercise absent handling downstream
    def _mask(arr, count, pool=None):
        pool = np.arange(n) if pool is None else pool
        if pool.size == 0 or count == 0:
            return
        pick = rng.choice(pool, size=min(count, pool.size), replace=False)
        arr[pick] = np.nan

    absent_days = rng.choice(n_days, size=4, replace=False)
    for d in absent_days:
        h = int(rng.integers(0, 24))
        t_db[d * 24 + h] = np.nan
        t_dp[d * 24 + h] = np.nan
    _mask(rh, 10)
    _mask(pressure, 5)
    block = int(rng.integers(0, n - 6))
    wind_speed[block:block + 6] = np.nan
    wind_dir[block:block + 6] = np.nan
    _mask(wind_speed, 8)
    daytime = np.where(ghi > 50.0)[0]
    beam_absent = rng.choice(daytime, size=3, replace=False)
    dni[beam_absent] = np.nan
    dhi[beam_absent] = np.nan
    night = np.where(ghi == 0.0)[0]
    _mask(ghi, 2, night)

    lum_eff = 110.0
    g_ill = np.round(np.nan_to_num(ghi) * lum_eff, 0)
    d_ill = np.round(np.nan_to_num(dni) * 100.0, 0)
    s_ill = np.round(np.nan_to_num(dhi) * 125.0, 0)

    def _opt(x) -> float | None:
        return None if np.isnan(x) else float(x)

    records = []
    for i in range(n):
        raining = precip[i] > 0.0
        extras: dict[int, float | str | None] = {
            4: 0,
            5: "?9?9?9?9?9?9",
            11: float(np.round(etr_dn[i], 0)),
            12: _opt(ir[i]),
            16: float(g_ill[i]),
            17: float(d_ill[i]),
            18: float(s_ill[i]),
            19: None,
            24: None,
            25: None,
            26: 9.0,
            27: "999999999",
            28: None,
            29: None,
            30: 0.0,
            31: None,
            32: 0.2,
            34: 1.0 if raining else None,
        }
        records.append(HourlyRecord(
            year=year, month=int(months[i]), day=int(days[i]), hour=int(hours[i]),
            t_db=_opt(t_db[i]), t_dp=_opt(t_dp[i]), rh=_opt(rh[i]),
            pressure=_opt(pressure[i]),
            extraterrestrial_horizontal=float(np.round(etr_h[i], 0)),
            ghi=_opt(ghi[i]), dni=_opt(dni[i]), dhi=_opt(dhi[i]),
            wind_dir=_opt(wind_dir[i]), wind_speed=_opt(wind_speed[i]),
            total_sky_cover=_opt(sky[i]), opaque_sky_cover=_opt(np.round(sky[i] * 0.9, 0)),
            liquid_precipitation_depth=float(precip[i]),
            extras=extras,
        ))

    month_mid = np.arange(12) * 30.4 + 15.0
    ground_monthly = tuple(
        float(np.round(
            preset.t_mean + 0.55 * preset.t_season
            * np.cos(2.0 * np.pi * (m - preset.warm_doy - 30.0) / year_len), 1))
        for m in month_mid
    )

    location = Location(
        city=preset.city, state_region=preset.region, country=preset.country,
        source="SYNTH", wmo_id=preset.wmo_id, latitude=preset.latitude,
        longitude=preset.longitude, timezone=preset.timezone,
        elevation=preset.elevation,
    )
    return EpwFile(
        location=location,
        design_conditions="DESIGN CONDITIONS,0",
        typical_extreme_periods="TYPICAL/EXTREME PERIODS,0",
        ground_temperatures=(GroundTemperatureSeries(
            depth_m=2.0, soil_conductivity=None, soil_density=None,
            soil_specific_heat=None, monthly=ground_monthly),),
        holidays_dst="HOLIDAYS/DAYLIGHT SAVINGS,No,0,0,0",
        comments=(f"synthetic {preset.key} profile, seed {preset.seed}, year {year}",
                  "generated fixture for offline use"),
        records_per_hour=1,
        data_periods=(DataPeriod("Data", "Sunday", "1/1", "12/31"),),
        records=tuple(records),
        report=ParseReport(n_records=n),
    )


def synthetic_epw(preset_name: str, year: int = 2017) -> str:
    """EPW text for a synthetic station; deterministic per (preset, year)."""
    return serialize_epw(synthetic_epw_file(preset_name, year))
