"""Psychrometric state computations for moist air.

Saturation pressure follows the ASHRAE Hyland-Wexler correlations, with the
over-water branch at and above 0 degC and the over-ice branch below (the two
agree within 0.1 Pa at the switch). All functions accept scalars or numpy
arrays; scalar inputs outside a function's validity domain raise
:class:`~clima.errors.DomainError`, while invalid array elements come back
as NaN so whole-year columns can be processed in one call.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError

__all__ = [
    "MoistAirState",
    "saturation_vapor_pressure",
    "vapor_pressure",
    "humidity_ratio",
    "relative_humidity",
    "dew_point",
    "wet_bulb",
    "enthalpy",
    "moist_air_state",
    "station_pressure",
    "STANDARD_PRESSURE",
    "FORMULATION_NOTE",
]

STANDARD_PRESSURE = 101325.0  # Pa

# Ratio of water to dry-air molecular weight.
EPSILON = 0.621945

T_MIN, T_MAX = -60.0, 90.0  # validity range for the saturation correlation, degC

FORMULATION_NOTE = (
    "saturation pressure: ASHRAE Hyland-Wexler (water >=0C, ice <0C); "
    "wet bulb: adiabatic-saturation balance solved by bisection; "
    "enthalpy: h = 1.006*t + w*(2501 + 1.86*t) kJ/kg dry air"
)

# Hyland-Wexler coefficients, temperature in kelvin.
_ICE = (-5.6745359e3, 6.3925247, -9.6778430e-3, 6.2215701e-7,
        2.0747825e-9, -9.4840240e-13, 4.1635019)
_WATER = (-5.8002206e3, 1.3914993, -4.8640239e-2, 4.1764768e-5,
          -1.4452093e-8, 6.5459673)


@dataclass(frozen=True)
class MoistAirState:
    """One moist-air operating point with its derived properties."""

    t_db: float
    rh: float
    pressure: float
    humidity_ratio: float
    t_dp: float
    t_wb: float
    enthalpy: float
    vapor_pressure: float


def _as_array(x):
    return np.asarray(x, dtype=float)


def _scalar_in(*xs) -> bool:
    return all(np.ndim(x) == 0 for x in xs)


def _finish(value: np.ndarray, scalar: bool):
    return float(value) if scalar else value


def _pws(t: np.ndarray) -> np.ndarray:
    """Saturation pressure (Pa) with NaN passthrough, no domain check."""
    T = t + 273.15
    with np.errstate(invalid="ignore", divide="ignore"):
        over_ice = (
            _ICE[0] / T + _ICE[1] + _ICE[2] * T + _ICE[3] * T**2
            + _ICE[4] * T**3 + _ICE[5] * T**4 + _ICE[6] * np.log(T)
        )
        over_water = (
            _WATER[0] / T + _WATER[1] + _WATER[2] * T + _WATER[3] * T**2
            + _WATER[4] * T**3 + _WATER[5] * np.log(T)
        )
        return np.exp(np.where(t >= 0.0, over_water, over_ice))


def _check_domain(t: np.ndarray, scalar: bool) -> np.ndarray:
    bad = (t < T_MIN) | (t > T_MAX)
    if scalar and bool(bad):
        raise DomainError(f"temperature {float(t)} degC outside [{T_MIN}, {T_MAX}]")
    return np.where(bad, np.nan, t)


def saturation_vapor_pressure(t_db):
    """Saturation vapor pressure (Pa) of moist air at ``t_db`` (degC)."""
    scalar = _scalar_in(t_db)
    t = _check_domain(_as_array(t_db), scalar)
    return _finish(_pws(t), scalar)


def vapor_pressure(t_db, rh):
    """Partial pressure of water vapor (Pa) at ``t_db`` (degC), ``rh`` (%)."""
    scalar = _scalar_in(t_db, rh)
    t = _check_domain(_as_array(t_db), scalar)
    r = _as_array(rh)
    if scalar and not 0.0 <= float(r) <= 100.0:
        raise DomainError(f"relative humidity {float(r)} outside [0, 100]")
    r = np.where((r < 0.0) | (r > 100.0), np.nan, r)
    return _finish(r / 100.0 * _pws(t), scalar)


def humidity_ratio(t_db, rh, pressure=STANDARD_PRESSURE):
    """Humidity ratio w (kg water / kg dry air).

    w = 0.621945 * p_w / (p - p_w) with p_w the vapor partial pressure.
    """
    scalar = _scalar_in(t_db, rh, pressure)
    p = _as_array(pressure)
    pw = _as_array(vapor_pressure(t_db, rh))
    if scalar and float(pw) >= float(p):
        raise DomainError("vapor pressure exceeds total pressure")
    with np.errstate(invalid="ignore"):
        w = np.where(pw < p, EPSILON * pw / (p - pw), np.nan)
    return _finish(w, scalar)


def relative_humidity(t_db, w, pressure=STANDARD_PRESSURE):
    """Relative humidity (%) back out of a humidity ratio."""
    scalar = _scalar_in(t_db, w, pressure)
    t = _check_domain(_as_array(t_db), scalar)
    w_ = _as_array(w)
    p = _as_array(pressure)
    pw = p * w_ / (EPSILON + w_)
    return _finish(100.0 * pw / _pws(t), scalar)


def _invert_pws(pw: np.ndarray, hi: np.ndarray) -> np.ndarray:
    """Temperature (degC) where saturation pressure equals ``pw``, by bisection."""
    lo = np.full_like(pw, T_MIN)
    hi = np.minimum(np.asarray(hi, dtype=float), T_MAX)
    hi = np.broadcast_to(hi, pw.shape).copy() if hi.shape != pw.shape else hi
    for _ in range(48):
        mid = 0.5 * (lo + hi)
        too_low = _pws(mid) < pw
        lo = np.where(too_low, mid, lo)
        hi = np.where(too_low, hi, mid)
    out = 0.5 * (lo + hi)
    return np.where(np.isnan(pw), np.nan, out)


def dew_point(t_db, rh):
    """Dew-point temperature (degC): inverse of the saturation curve at p_w.

    Solved to better than 0.02 K. ``rh`` must be in (0, 100]; rh == 0 has no
    dew point.
    """
    scalar = _scalar_in(t_db, rh)
    t = _check_domain(_as_array(t_db), scalar)
    r = _as_array(rh)
    if scalar and not 0.0 < float(r) <= 100.0:
        raise DomainError(f"relative humidity {float(r)} outside (0, 100]")
    r = np.where((r <= 0.0) | (r > 100.0), np.nan, r)
    pw = r / 100.0 * _pws(t)
    td = _invert_pws(pw, hi=t + 0.5)
    return _finish(np.minimum(td, t), scalar)


def _ws_at(t: np.ndarray, p: np.ndarray) -> np.ndarray:
    pws = _pws(t)
    with np.errstate(invalid="ignore"):
        return np.where(pws < p, EPSILON * pws / (p - pws), np.nan)


def _wb_balance(t: np.ndarray, twb: np.ndarray, p: np.ndarray) -> np.ndarray:
    """Humidity ratio implied by the adiabatic-saturation energy balance."""
    ws = _ws_at(twb, p)
    with np.errstate(invalid="ignore"):
        over_water = ((2501.0 - 2.326 * twb) * ws - 1.006 * (t - twb)) / \
            (2501.0 + 1.86 * t - 4.186 * twb)
        over_ice = ((2830.0 - 0.24 * twb) * ws - 1.006 * (t - twb)) / \
            (2830.0 + 1.86 * t - 2.1 * twb)
    return np.where(twb >= 0.0, over_water, over_ice)


def wet_bulb(t_db, rh, pressure=STANDARD_PRESSURE):
    """Thermodynamic wet-bulb temperature (degC).

    Root of the adiabatic-saturation balance, bracketed between the dew
    point and the dry bulb; bisection keeps the bracket guaranteed at any
    humidity. Tolerance is well under 0.02 K.
    """
    scalar = _scalar_in(t_db, rh, pressure)
    t = _check_domain(_as_array(t_db), scalar)
    r = _as_array(rh)
    if scalar and not 0.0 <= float(r) <= 100.0:
        raise DomainError(f"relative humidity {float(r)} outside [0, 100]")
    r = np.where((r < 0.0) | (r > 100.0), np.nan, r)
    p = _as_array(pressure)
    w = _as_array(humidity_ratio(t, r, p))

    shape = np.broadcast_shapes(t.shape, r.shape, np.shape(p))
    t_b = np.broadcast_to(t, shape).astype(float)
    p_b = np.broadcast_to(p, shape).astype(float)
    lo = np.where(r > 0, _invert_pws(np.broadcast_to(r / 100.0 * _pws(t), shape), t_b + 0.5),
                  np.full(shape, T_MIN))
    lo = np.minimum(lo, t_b) - 0.05
    hi = t_b + 0.05
    for _ in range(44):
        mid = 0.5 * (lo + hi)
        under = _wb_balance(t_b, mid, p_b) < w
        lo = np.where(under, mid, lo)
        hi = np.where(under, hi, mid)
    twb = 0.5 * (lo + hi)
    twb = np.where(np.isnan(w) | np.isnan(t_b), np.nan, np.minimum(twb, t_b))
    return _finish(twb, scalar)


def enthalpy(t_db, w):
    """Specific enthalpy of moist air (kJ/kg dry air)."""
    scalar = _scalar_in(t_db, w)
    t = _as_array(t_db)
    w_ = _as_array(w)
    return _finish(1.006 * t + w_ * (2501.0 + 1.86 * t), scalar)


def moist_air_state(t_db: float, rh: float, pressure: float = STANDARD_PRESSURE) -> MoistAirState:
    """Complete psychrometric state for one (t_db, rh, pressure) point."""
    w = humidity_ratio(t_db, rh, pressure)
    return MoistAirState(
        t_db=float(t_db),
        rh=float(rh),
        pressure=float(pressure),
        humidity_ratio=w,
        t_dp=dew_point(t_db, rh) if rh > 0 else float("nan"),
        t_wb=wet_bulb(t_db, rh, pressure),
        enthalpy=enthalpy(t_db, w),
        vapor_pressure=vapor_pressure(t_db, rh),
    )


def station_pressure(elevation_m):
    """Barometric estimate of station pressure (Pa) from elevation (m).

    Fallback for EPW files whose atmospheric-pressure column is missing.
    """
    z = _as_array(elevation_m)
    p = STANDARD_PRESSURE * (1.0 - 2.25577e-5 * z) ** 5.2559
    return _finish(p, _scalar_in(elevation_m))
