"""Outdoor thermal comfort: UTCI scenarios and the adaptive comfort band.

UTCI comes from the operational 6th-order polynomial approximation of the
UTCI-Fiala model (UTCI_approx v0.002; coefficient table in
``_utci_coefficients``). Inputs outside the regression's validity domain are
clamped into it and flagged, never rejected: weather files routinely contain
calm hours and the 0.5 m/s floor is the model's own lower bound.

The adaptive band implements the ASHRAE 55 adaptive comfort model: neutral
temperature from the prevailing mean outdoor temperature, which in turn is
the exponentially weighted running mean (alpha 0.9, 7 days) of daily mean
outdoor temperature.

Scalar entry points raise DomainError on absent (None/NaN) air temperature;
the vectorized helpers propagate NaN instead.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._utci_coefficients import TERMS
from .errors import DomainError

__all__ = [
    "UtciResult", "AdaptiveBand", "UTCI_CATEGORIES", "UTCI_THRESHOLDS",
    "utci", "utci_values", "utci_scenarios", "solar_mrt_delta",
    "stress_category", "stress_category_codes", "running_mean",
    "adaptive_band", "SCENARIOS",
]

# validity domain of the polynomial regression
T_DB_RANGE = (-50.0, 50.0)
WIND_RANGE = (0.5, 17.0)
D_TR_RANGE = (-30.0, 70.0)
PA_MAX_KPA = 5.0

# the regression was fitted with the model's own saturation-pressure
# conversion, not the psychrometric formulation used elsewhere; using
# anything else drifts up to 0.5 K at the cold corner of the domain
_ES_G = (-2836.5744, -6028.076559, 19.54263612, -0.02737830188,
         0.000016261698, 7.0229056e-10, -1.8680009e-13)


def _es_kpa(ta):
    """Saturation vapor pressure (kPa) as specified by the comfort model."""
    tk = np.asarray(ta, dtype=float) + 273.15
    with np.errstate(invalid="ignore", divide="ignore"):
        acc = 2.7150305 * np.log(tk)
        for i, g in enumerate(_ES_G):
            acc = acc + g * tk ** (i - 2)
        return np.exp(acc) * 0.001

# assessment-scale boundaries; bin i is (UTCI_THRESHOLDS[i-1], UTCI_THRESHOLDS[i]]
UTCI_THRESHOLDS = (-40.0, -27.0, -13.0, 0.0, 9.0, 26.0, 32.0, 38.0, 46.0)
UTCI_CATEGORIES = (
    "extreme cold stress",
    "very strong cold stress",
    "strong cold stress",
    "moderate cold stress",
    "slight cold stress",
    "no thermal stress",
    "moderate heat stress",
    "strong heat stress",
    "very strong heat stress",
    "extreme heat stress",
)

# scenario name -> (sun exposure, wind exposure)
SCENARIOS = {
    "sun_wind": (True, True),
    "sun_nowind": (True, False),
    "nosun_wind": (False, True),
    "nosun_nowind": (False, False),
}

# solar-gain model constants (standing person)
F_EFF = 0.725
ALPHA_SW = 0.7
EMISSIVITY = 0.95
T_REF_K = 293.15
_SIGMA = 5.670374419e-8
_MRT_DENOM = F_EFF * EMISSIVITY * _SIGMA * 4.0 * T_REF_K**3

SOLAR_GAIN_NOTE = (
    "solar MRT delta: ERF model, standing person, "
    f"f_eff={F_EFF}, alpha_sw={ALPHA_SW}, emissivity={EMISSIVITY}, "
    "linearized at 20 C"
)


@dataclass(frozen=True)
class UtciResult:
    value: float          # degC equivalent temperature
    category: str         # one of UTCI_CATEGORIES
    scenario: str | None  # SCENARIOS key, or None for direct calls
    clamped: bool         # any input clipped into the validity domain


@dataclass(frozen=True)
class AdaptiveBand:
    t_rm: float
    t_comf: float
    lower_80: float
    upper_80: float
    lower_90: float
    upper_90: float
    applicable: bool


def _poly(ta, vel, d_tr, pa):
    """Evaluate the UTCI polynomial on same-shaped arrays (already clamped)."""
    pows = []
    for v in (ta, vel, d_tr, pa):
        cache = [np.ones_like(v), v]
        for _ in range(5):
            cache.append(cache[-1] * v)
        pows.append(cache)
    total = np.array(ta, dtype=float, copy=True)
    for coef, i, j, k, l in TERMS:
        term = np.full_like(ta, coef)
        if i:
            term = term * pows[0][i]
        if j:
            term = term * pows[1][j]
        if k:
            term = term * pows[2][k]
        if l:
            term = term * pows[3][l]
        total += term
    return total


def utci_values(t_db, t_r, wind10, rh):
    """Vectorized UTCI. Returns (values degC, clamped mask); NaN propagates."""
    ta = np.asarray(t_db, dtype=float)
    tr = np.asarray(t_r, dtype=float)
    vel = np.asarray(wind10, dtype=float)
    rh_ = np.asarray(rh, dtype=float)
    ta, tr, vel, rh_ = np.broadcast_arrays(ta, tr, vel, rh_)

    ta_c = np.clip(ta, *T_DB_RANGE)
    vel_c = np.clip(vel, *WIND_RANGE)
    d_tr = np.clip(tr - ta_c, *D_TR_RANGE)
    pa = _es_kpa(ta_c) * (rh_ / 100.0)
    pa_c = np.minimum(pa, PA_MAX_KPA)

    with np.errstate(invalid="ignore"):
        clamped = (ta_c != ta) | (vel_c != vel) | (d_tr != tr - ta_c) | (pa_c != pa)
    values = _poly(ta_c, vel_c, d_tr, pa_c)
    return values, clamped & np.isfinite(values)


def utci(t_db, t_r, wind10, rh, scenario: str | None = None) -> UtciResult:
    """UTCI equivalent temperature for one hour's conditions."""
    if t_db is None or (isinstance(t_db, float) and math.isnan(t_db)):
        raise DomainError("utci requires air temperature")
    value, clamped = utci_values(t_db, t_r, wind10, rh)
    v = float(value)
    if math.isnan(v):
        raise DomainError("utci inputs must be present and finite")
    return UtciResult(value=v, category=stress_category(v),
                      scenario=scenario, clamped=bool(clamped))


def stress_category(value: float) -> str:
    """Assessment-scale class containing ``value``; intervals are (lo, hi]."""
    if not math.isfinite(value):
        raise DomainError("stress category requires a finite value")
    idx = int(np.searchsorted(UTCI_THRESHOLDS, value, side="left"))
    return UTCI_CATEGORIES[idx]


def stress_category_codes(values) -> np.ndarray:
    """Vectorized category indices 0..9; -1 where the value is absent."""
    v = np.asarray(values, dtype=float)
    codes = np.searchsorted(UTCI_THRESHOLDS, v, side="left").astype(np.int64)
    return np.where(np.isfinite(v), codes, -1)


def solar_mrt_delta(dni, dhi, ghi, altitude):
    """Mean-radiant-temperature increment (K) from shortwave solar gain.

    ERF = f_eff*(alpha_sw/eps)*(f_p*I_dir + 0.5*I_diff), linearized to a
    t_r delta at 20 C. Zero whenever the sun is at or below the horizon or
    the global horizontal irradiance is zero.
    """
    dni_ = np.asarray(dni, dtype=float)
    dhi_ = np.asarray(dhi, dtype=float)
    ghi_ = np.asarray(ghi, dtype=float)
    alt = np.asarray(altitude, dtype=float)
    dni_, dhi_, ghi_, alt = np.broadcast_arrays(dni_, dhi_, ghi_, alt)

    # standing-person projected area fraction as a function of altitude
    f_p = 0.308 * np.cos(np.radians(alt * (0.998 - alt * alt / 50000.0)))
    erf = F_EFF * (ALPHA_SW / EMISSIVITY) * (f_p * dni_ + 0.5 * dhi_)
    delta = np.maximum(erf / _MRT_DENOM, 0.0)
    with np.errstate(invalid="ignore"):
        delta = np.where((alt <= 0.0) | (ghi_ == 0.0), 0.0, delta)
    if delta.ndim == 0:
        return float(delta)
    return delta


def utci_scenarios(row) -> dict:
    """Four exposure scenarios for one frame row.

    ``row`` is a mapping with t_db, rh, wind_speed, ghi, dni, dhi and solar
    altitude. No-sun scenarios use t_r = t_db; sun scenarios add the solar
    MRT delta. No-wind uses the model's 0.5 m/s floor; wind uses the file's
    10 m speed. Absent t_db or rh makes every scenario absent; absent wind
    makes the wind scenarios absent; absent irradiance while the sun is up
    makes the sun scenarios absent.
    """
    def _get(key):
        v = row.get(key)
        if v is None:
            return math.nan
        return float(v)

    t_db = _get("t_db")
    rh = _get("rh")
    wind = _get("wind_speed")
    delta = solar_mrt_delta(_get("dni"), _get("dhi"), _get("ghi"),
                            _get("altitude"))

    out = {}
    for name, (sun, windy) in SCENARIOS.items():
        t_r = t_db + (delta if sun else 0.0)
        speed = wind if windy else 0.5
        value, clamped = utci_values(t_db, t_r, speed, rh)
        v = float(value)
        if math.isnan(v):
            out[name] = None
        else:
            out[name] = UtciResult(value=v, category=stress_category(v),
                                   scenario=name, clamped=bool(clamped))
    return out


def running_mean(daily_means, alpha: float = 0.9):
    """Prevailing mean outdoor temperature for each day of an annual series.

    t_rm(d) = sum_{i=1..7} alpha^(i-1) * t(d-i) / sum alpha^(i-1), with the
    series treated as cyclic so early January draws on late December. Absent
    daily means (NaN) poison the seven dependent days rather than being
    filled in.
    """
    if not 0.0 < alpha < 1.0:
        raise DomainError(f"alpha must be in (0, 1), got {alpha}")
    t = np.asarray(daily_means, dtype=float)
    if t.ndim != 1 or t.size < 8:
        raise DomainError("running mean needs at least 8 daily values")
    weights = alpha ** np.arange(7)
    acc = np.zeros_like(t)
    for i in range(1, 8):
        acc += weights[i - 1] * np.roll(t, i)
    return acc / weights.sum()


def adaptive_band(t_rm: float) -> AdaptiveBand:
    """ASHRAE 55 adaptive comfort band around the neutral temperature.

    Applicable only for t_rm in [10, 33.5] C; outside that (or for an absent
    t_rm) the band values are still reported but flagged inapplicable.
    """
    t_rm = float(t_rm)
    t_comf = 0.31 * t_rm + 17.8
    applicable = bool(10.0 <= t_rm <= 33.5)
    return AdaptiveBand(
        t_rm=t_rm,
        t_comf=t_comf,
        lower_80=t_comf - 3.5,
        upper_80=t_comf + 3.5,
        lower_90=t_comf - 2.5,
        upper_90=t_comf + 2.5,
        applicable=applicable,
    )
