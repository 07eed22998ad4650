"""Independent reference implementations used only by the test suite.

Each oracle is implemented from the primary published source with no code
shared with the production package, so agreement between the two is
evidence rather than tautology.

Contents:
  * ``utci_oracle``: the published sixth-order UTCI approximation
    (UTCI_approx, version a 0.002, October 2009), ported term by term,
    including the polynomial's own saturation vapor pressure fit.
  * ``solar_position_noaa``: solar position from the NOAA General Solar
    Position Calculations equations (Julian-century formulation), a
    different algorithm family than the production one.
  * brute-force recounts for the binning analyses and degree days.
"""

from __future__ import annotations

import math


# ---------------------------------------------------------------------------
# UTCI reference


def saturated_vapor_pressure_hpa(db_temp: float) -> float:
    """Saturation vapor pressure (hPa); the fit shipped with UTCI_approx."""
    g = (-2836.5744, -6028.076559, 19.54263612, -0.02737830188, 0.000016261698,
         7.0229056e-10, -1.8680009e-13)
    tk = db_temp + 273.15
    es = 2.7150305 * math.log(tk)
    for i, x in enumerate(g):
        es = es + (x * (tk ** (i - 2)))
    return math.exp(es) * 0.01


def utci_oracle(ta: float, tr: float, vel: float, rh: float) -> float:
    """UTCI (degC) for air temperature, mean radiant temperature, 10 m wind
    speed, and relative humidity, per the published approximation.

    Wind speed is clamped to the 0.5..17 m/s validity range the way the
    reference implementations do before evaluating the polynomial.
    """
    vel = min(max(vel, 0.5), 17.0)
    eh_pa = saturated_vapor_pressure_hpa(ta) * (rh / 100.0)
    pa_pr = eh_pa / 10.0  # vapor pressure in kPa
    d_tr = tr - ta

    ta2 = ta * ta
    ta3 = ta2 * ta
    ta4 = ta3 * ta
    ta5 = ta4 * ta
    ta6 = ta5 * ta
    vel2 = vel * vel
    vel3 = vel2 * vel
    vel4 = vel3 * vel
    vel5 = vel4 * vel
    vel6 = vel5 * vel
    d_tr2 = d_tr * d_tr
    d_tr3 = d_tr2 * d_tr
    d_tr4 = d_tr3 * d_tr
    d_tr5 = d_tr4 * d_tr
    d_tr6 = d_tr5 * d_tr
    pa_pr2 = pa_pr * pa_pr
    pa_pr3 = pa_pr2 * pa_pr
    pa_pr4 = pa_pr3 * pa_pr
    pa_pr5 = pa_pr4 * pa_pr
    pa_pr6 = pa_pr5 * pa_pr

    utci_approx = ta + \
        0.607562052 + \
        -0.0227712343 * ta + \
        8.06470249e-4 * ta2 + \
        -1.54271372e-4 * ta3 + \
        -3.24651735e-6 * ta4 + \
        7.32602852e-8 * ta5 + \
        1.35959073e-9 * ta6 + \
        -2.25836520 * vel + \
        0.0880326035 * ta * vel + \
        0.00216844454 * ta2 * vel + \
        -1.53347087e-5 * ta3 * vel + \
        -5.72983704e-7 * ta4 * vel + \
        -2.55090145e-9 * ta5 * vel + \
        -0.751269505 * vel2 + \
        -0.00408350271 * ta * vel2 + \
        -5.21670675e-5 * ta2 * vel2 + \
        1.94544667e-6 * ta3 * vel2 + \
        1.14099531e-8 * ta4 * vel2 + \
        0.158137256 * vel3 + \
        -6.57263143e-5 * ta * vel3 + \
        2.22697524e-7 * ta2 * vel3 + \
        -4.16117031e-8 * ta3 * vel3 + \
        -0.0127762753 * vel4 + \
        9.66891875e-6 * ta * vel4 + \
        2.52785852e-9 * ta2 * vel4 + \
        4.56306672e-4 * vel5 + \
        -1.74202546e-7 * ta * vel5 + \
        -5.91491269e-6 * vel6 + \
        0.398374029 * d_tr + \
        1.83945314e-4 * ta * d_tr + \
        -1.73754510e-4 * ta2 * d_tr + \
        -7.60781159e-7 * ta3 * d_tr + \
        3.77830287e-8 * ta4 * d_tr + \
        5.43079673e-10 * ta5 * d_tr + \
        -0.0200518269 * vel * d_tr + \
        8.92859837e-4 * ta * vel * d_tr + \
        3.45433048e-6 * ta2 * vel * d_tr + \
        -3.77925774e-7 * ta3 * vel * d_tr + \
        -1.69699377e-9 * ta4 * vel * d_tr + \
        1.69992415e-4 * vel2 * d_tr + \
        -4.99204314e-5 * ta * vel2 * d_tr + \
        2.47417178e-7 * ta2 * vel2 * d_tr + \
        1.07596466e-8 * ta3 * vel2 * d_tr + \
        8.49242932e-5 * vel3 * d_tr + \
        1.35191328e-6 * ta * vel3 * d_tr + \
        -6.21531254e-9 * ta2 * vel3 * d_tr + \
        -4.99410301e-6 * vel4 * d_tr + \
        -1.89489258e-8 * ta * vel4 * d_tr + \
        8.15300114e-8 * vel5 * d_tr + \
        7.55043090e-4 * d_tr2 + \
        -5.65095215e-5 * ta * d_tr2 + \
        -4.52166564e-7 * ta2 * d_tr2 + \
        2.46688878e-8 * ta3 * d_tr2 + \
        2.42674348e-10 * ta4 * d_tr2 + \
        1.54547250e-4 * vel * d_tr2 + \
        5.24110970e-6 * ta * vel * d_tr2 + \
        -8.75874982e-8 * ta2 * vel * d_tr2 + \
        -1.50743064e-9 * ta3 * vel * d_tr2 + \
        -1.56236307e-5 * vel2 * d_tr2 + \
        -1.33895614e-7 * ta * vel2 * d_tr2 + \
        2.49709824e-9 * ta2 * vel2 * d_tr2 + \
        6.51711721e-7 * vel3 * d_tr2 + \
        1.94960053e-9 * ta * vel3 * d_tr2 + \
        -1.00361113e-8 * vel4 * d_tr2 + \
        -1.21206673e-5 * d_tr3 + \
        -2.18203660e-7 * ta * d_tr3 + \
        7.51269482e-9 * ta2 * d_tr3 + \
        9.79063848e-11 * ta3 * d_tr3 + \
        1.25006734e-6 * vel * d_tr3 + \
        -1.81584736e-9 * ta * vel * d_tr3 + \
        -3.52197671e-10 * ta2 * vel * d_tr3 + \
        -3.36514630e-8 * vel2 * d_tr3 + \
        1.35908359e-10 * ta * vel2 * d_tr3 + \
        4.17032620e-10 * vel3 * d_tr3 + \
        -1.30369025e-9 * d_tr4 + \
        4.13908461e-10 * ta * d_tr4 + \
        9.22652254e-12 * ta2 * d_tr4 + \
        -5.08220384e-9 * vel * d_tr4 + \
        -2.24730961e-11 * ta * vel * d_tr4 + \
        1.17139133e-10 * vel2 * d_tr4 + \
        6.62154879e-10 * d_tr5 + \
        4.03863260e-13 * ta * d_tr5 + \
        1.95087203e-12 * vel * d_tr5 + \
        -4.73602469e-12 * d_tr6 + \
        5.12733497 * pa_pr + \
        -0.312788561 * ta * pa_pr + \
        -0.0196701861 * ta2 * pa_pr + \
        9.99690870e-4 * ta3 * pa_pr + \
        9.51738512e-6 * ta4 * pa_pr + \
        -4.66426341e-7 * ta5 * pa_pr + \
        0.548050612 * vel * pa_pr + \
        -0.00330552823 * ta * vel * pa_pr + \
        -0.00164119440 * ta2 * vel * pa_pr + \
        -5.16670694e-6 * ta3 * vel * pa_pr + \
        9.52692432e-7 * ta4 * vel * pa_pr + \
        -0.0429223622 * vel2 * pa_pr + \
        0.00500845667 * ta * vel2 * pa_pr + \
        1.00601257e-6 * ta2 * vel2 * pa_pr + \
        -1.81748644e-6 * ta3 * vel2 * pa_pr + \
        -1.25813502e-3 * vel3 * pa_pr + \
        -1.79330391e-4 * ta * vel3 * pa_pr + \
        2.34994441e-6 * ta2 * vel3 * pa_pr + \
        1.29735808e-4 * vel4 * pa_pr + \
        1.29064870e-6 * ta * vel4 * pa_pr + \
        -2.28558686e-6 * vel5 * pa_pr + \
        -0.0369476348 * d_tr * pa_pr + \
        0.00162325322 * ta * d_tr * pa_pr + \
        -3.14279680e-5 * ta2 * d_tr * pa_pr + \
        2.59835559e-6 * ta3 * d_tr * pa_pr + \
        -4.77136523e-8 * ta4 * d_tr * pa_pr + \
        8.64203390e-3 * vel * d_tr * pa_pr + \
        -6.87405181e-4 * ta * vel * d_tr * pa_pr + \
        -9.13863872e-6 * ta2 * vel * d_tr * pa_pr + \
        5.15916806e-7 * ta3 * vel * d_tr * pa_pr + \
        -3.59217476e-5 * vel2 * d_tr * pa_pr + \
        3.28696511e-5 * ta * vel2 * d_tr * pa_pr + \
        -7.10542454e-7 * ta2 * vel2 * d_tr * pa_pr + \
        -1.24382300e-5 * vel3 * d_tr * pa_pr + \
        -7.38584400e-9 * ta * vel3 * d_tr * pa_pr + \
        2.20609296e-7 * vel4 * d_tr * pa_pr + \
        -7.32469180e-4 * d_tr2 * pa_pr + \
        -1.87381964e-5 * ta * d_tr2 * pa_pr + \
        4.80925239e-6 * ta2 * d_tr2 * pa_pr + \
        -8.75492040e-8 * ta3 * d_tr2 * pa_pr + \
        2.77862930e-5 * vel * d_tr2 * pa_pr + \
        -5.06004592e-6 * ta * vel * d_tr2 * pa_pr + \
        1.14325367e-7 * ta2 * vel * d_tr2 * pa_pr + \
        2.53016723e-6 * vel2 * d_tr2 * pa_pr + \
        -1.72857035e-8 * ta * vel2 * d_tr2 * pa_pr + \
        -3.95079398e-8 * vel3 * d_tr2 * pa_pr + \
        -3.59413173e-7 * d_tr3 * pa_pr + \
        7.04388046e-7 * ta * d_tr3 * pa_pr + \
        -1.89309167e-8 * ta2 * d_tr3 * pa_pr + \
        -4.79768731e-7 * vel * d_tr3 * pa_pr + \
        7.96079978e-9 * ta * vel * d_tr3 * pa_pr + \
        1.62897058e-9 * vel2 * d_tr3 * pa_pr + \
        3.94367674e-8 * d_tr4 * pa_pr + \
        -1.18566247e-9 * ta * d_tr4 * pa_pr + \
        3.34678041e-10 * vel * d_tr4 * pa_pr + \
        -1.15606447e-10 * d_tr5 * pa_pr + \
        -2.80626406 * pa_pr2 + \
        0.548712484 * ta * pa_pr2 + \
        -0.00399428410 * ta2 * pa_pr2 + \
        -9.54009191e-4 * ta3 * pa_pr2 + \
        1.93090978e-5 * ta4 * pa_pr2 + \
        -0.308806365 * vel * pa_pr2 + \
        0.0116952364 * ta * vel * pa_pr2 + \
        4.95271903e-4 * ta2 * vel * pa_pr2 + \
        -1.90710882e-5 * ta3 * vel * pa_pr2 + \
        0.00210787756 * vel2 * pa_pr2 + \
        -6.98445738e-4 * ta * vel2 * pa_pr2 + \
        2.30109073e-5 * ta2 * vel2 * pa_pr2 + \
        4.17856590e-4 * vel3 * pa_pr2 + \
        -1.27043871e-5 * ta * vel3 * pa_pr2 + \
        -3.04620472e-6 * vel4 * pa_pr2 + \
        0.0514507424 * d_tr * pa_pr2 + \
        -0.00432510997 * ta * d_tr * pa_pr2 + \
        8.99281156e-5 * ta2 * d_tr * pa_pr2 + \
        -7.14663943e-7 * ta3 * d_tr * pa_pr2 + \
        -2.66016305e-4 * vel * d_tr * pa_pr2 + \
        2.63789586e-4 * ta * vel * d_tr * pa_pr2 + \
        -7.01199003e-6 * ta2 * vel * d_tr * pa_pr2 + \
        -1.06823306e-4 * vel2 * d_tr * pa_pr2 + \
        3.61341136e-6 * ta * vel2 * d_tr * pa_pr2 + \
        2.29748967e-7 * vel3 * d_tr * pa_pr2 + \
        3.04788893e-4 * d_tr2 * pa_pr2 + \
        -6.42070836e-5 * ta * d_tr2 * pa_pr2 + \
        1.16257971e-6 * ta2 * d_tr2 * pa_pr2 + \
        7.68023384e-6 * vel * d_tr2 * pa_pr2 + \
        -5.47446896e-7 * ta * vel * d_tr2 * pa_pr2 + \
        -3.59937910e-8 * vel2 * d_tr2 * pa_pr2 + \
        -4.36497725e-6 * d_tr3 * pa_pr2 + \
        1.68737969e-7 * ta * d_tr3 * pa_pr2 + \
        2.67489271e-8 * vel * d_tr3 * pa_pr2 + \
        3.23926897e-9 * d_tr4 * pa_pr2 + \
        -0.0353874123 * pa_pr3 + \
        -0.221201190 * ta * pa_pr3 + \
        0.0155126038 * ta2 * pa_pr3 + \
        -2.63917279e-4 * ta3 * pa_pr3 + \
        0.0453433455 * vel * pa_pr3 + \
        -0.00432943862 * ta * vel * pa_pr3 + \
        1.45389826e-4 * ta2 * vel * pa_pr3 + \
        2.17508610e-4 * vel2 * pa_pr3 + \
        -6.66724702e-5 * ta * vel2 * pa_pr3 + \
        3.33217140e-5 * vel3 * pa_pr3 + \
        -0.00226921615 * d_tr * pa_pr3 + \
        3.80261982e-4 * ta * d_tr * pa_pr3 + \
        -5.45314314e-9 * ta2 * d_tr * pa_pr3 + \
        -7.96355448e-4 * vel * d_tr * pa_pr3 + \
        2.53458034e-5 * ta * vel * d_tr * pa_pr3 + \
        -6.31223658e-6 * vel2 * d_tr * pa_pr3 + \
        3.02122035e-4 * d_tr2 * pa_pr3 + \
        -4.77403547e-6 * ta * d_tr2 * pa_pr3 + \
        1.73825715e-6 * vel * d_tr2 * pa_pr3 + \
        -4.09087898e-7 * d_tr3 * pa_pr3 + \
        0.614155345 * pa_pr4 + \
        -0.0616755931 * ta * pa_pr4 + \
        0.00133374846 * ta2 * pa_pr4 + \
        0.00355375387 * vel * pa_pr4 + \
        -5.13027851e-4 * ta * vel * pa_pr4 + \
        1.02449757e-4 * vel2 * pa_pr4 + \
        -0.00148526421 * d_tr * pa_pr4 + \
        -4.11469183e-5 * ta * d_tr * pa_pr4 + \
        -6.80434415e-6 * vel * d_tr * pa_pr4 + \
        -9.77675906e-6 * d_tr2 * pa_pr4 + \
        0.0882773108 * pa_pr5 + \
        -0.00301859306 * ta * pa_pr5 + \
        0.00104452989 * vel * pa_pr5 + \
        2.47090539e-4 * d_tr * pa_pr5 + \
        0.00148348065 * pa_pr6
    return utci_approx

# ---------------------------------------------------------------------------
# Solar position, NOAA General Solar Position Calculations


def _rad(d: float) -> float:
    return math.radians(d)


def _deg(r: float) -> float:
    return math.degrees(r)


def solar_position_noaa(latitude: float, longitude: float, timezone: float,
                        year: int, month: int, day: int,
                        hour_local: float) -> tuple[float, float]:
    """(unrefracted altitude, azimuth clockwise from north), both degrees.

    The Julian-century series from the NOAA solar calculations spreadsheet;
    an algorithm family distinct from the production implementation.
    """
    y, m = year, month
    if m <= 2:
        y -= 1
        m += 12
    a = y // 100
    b = 2 - a + a // 4
    jd = int(365.25 * (y + 4716)) + int(30.6001 * (m + 1)) + day + b - 1524.5
    jd = jd + (hour_local - timezone) / 24.0
    jc = (jd - 2451545.0) / 36525.0

    gml = (280.46646 + jc * (36000.76983 + jc * 0.0003032)) % 360.0
    gma = 357.52911 + jc * (35999.05029 - 0.0001537 * jc)
    ecc = 0.016708634 - jc * (0.000042037 + 0.0000001267 * jc)
    ctr = (math.sin(_rad(gma)) * (1.914602 - jc * (0.004817 + 0.000014 * jc))
           + math.sin(_rad(2 * gma)) * (0.019993 - 0.000101 * jc)
           + math.sin(_rad(3 * gma)) * 0.000289)
    true_long = gml + ctr
    app_long = true_long - 0.00569 - 0.00478 * math.sin(_rad(125.04 - 1934.136 * jc))
    mean_obliq = 23.0 + (26.0 + (21.448 - jc * (46.815 + jc * (0.00059 - jc * 0.001813))) / 60.0) / 60.0
    obliq = mean_obliq + 0.00256 * math.cos(_rad(125.04 - 1934.136 * jc))
    decl = _deg(math.asin(math.sin(_rad(obliq)) * math.sin(_rad(app_long))))

    var_y = math.tan(_rad(obliq / 2.0)) ** 2
    eq_time = 4.0 * _deg(
        var_y * math.sin(2.0 * _rad(gml))
        - 2.0 * ecc * math.sin(_rad(gma))
        + 4.0 * ecc * var_y * math.sin(_rad(gma)) * math.cos(2.0 * _rad(gml))
        - 0.5 * var_y * var_y * math.sin(4.0 * _rad(gml))
        - 1.25 * ecc * ecc * math.sin(2.0 * _rad(gma)))

    tst = (hour_local * 60.0 + eq_time + 4.0 * longitude - 60.0 * timezone) % 1440.0
    ha = tst / 4.0 + 180.0 if tst / 4.0 < 0.0 else tst / 4.0 - 180.0

    lat_r = _rad(latitude)
    zen = _deg(math.acos(min(1.0, max(-1.0,
        math.sin(lat_r) * math.sin(_rad(decl))
        + math.cos(lat_r) * math.cos(_rad(decl)) * math.cos(_rad(ha))))))
    altitude = 90.0 - zen

    denom = math.cos(lat_r) * math.sin(_rad(zen))
    if abs(denom) < 1e-9:
        azimuth = 0.0
    else:
        core = _deg(math.acos(min(1.0, max(-1.0,
            (math.sin(lat_r) * math.cos(_rad(zen)) - math.sin(_rad(decl))) / denom))))
        azimuth = (core + 180.0) % 360.0 if ha > 0.0 else (540.0 - core) % 360.0
    return altitude, azimuth


def refraction_noaa(elevation: float) -> float:
    """Atmospheric refraction correction (degrees) per the same NOAA sheet."""
    if elevation > 85.0:
        return 0.0
    te = math.tan(_rad(elevation))
    if elevation > 5.0:
        sec = 58.1 / te - 0.07 / te ** 3 + 0.000086 / te ** 5
    elif elevation > -0.575:
        sec = 1735.0 + elevation * (-518.2 + elevation * (103.4 + elevation * (-12.79 + elevation * 0.711)))
    else:
        sec = -20.774 / te
    return sec / 3600.0


# ---------------------------------------------------------------------------
# Brute-force recounts (plain loops over per-row dictionaries)


def brute_wind_rose(rows, month_range=None, hour_range=None):
    """(16x6 count table, calm count, classified count)."""
    def in_span(v, span, lo, hi):
        if span is None:
            return True
        a, b = span
        return a <= v <= b if a <= b else (v >= a or v <= b)

    counts = [[0] * 6 for _ in range(16)]
    calm = 0
    for row in rows:
        if not in_span(row["month"], month_range, 1, 12):
            continue
        if not in_span(row["hour"], hour_range, 1, 24):
            continue
        speed = row["wind_speed"]
        if speed is None:
            continue
        if speed < 0.5:
            calm += 1
            continue
        direction = row["wind_dir"]
        if direction is None:
            continue
        sector = int(((direction + 11.25) % 360.0) // 22.5)
        edges = (0.5, 2.0, 4.0, 6.0, 8.0, 10.0)
        bin_i = 0
        for i, e in enumerate(edges):
            if speed >= e:
                bin_i = i
        counts[sector][bin_i] += 1
    classified = calm + sum(sum(r) for r in counts)
    return counts, calm, classified


def brute_psychro_bins(rows, month_range=None, hour_range=None):
    """dict (t_bin, w_bin) -> count over rows with both values present."""
    def in_span(v, span):
        if span is None:
            return True
        a, b = span
        return a <= v <= b if a <= b else (v >= a or v <= b)

    out: dict[tuple[int, int], int] = {}
    for row in rows:
        if not in_span(row["month"], month_range):
            continue
        if not in_span(row["hour"], hour_range):
            continue
        t, w = row["t_db"], row["humidity_ratio"]
        if t is None or w is None:
            continue
        key = (math.floor(t / 1.0), math.floor(w / 0.001))
        out[key] = out.get(key, 0) + 1
    return out


def brute_explorer(rows, x, y, color, n_bins=24):
    """(points, x_hist, y_hist, heatmap) with shared uniform edges."""
    pts = []
    for row in rows:
        xv, yv = row[x], row[y]
        if xv is None or yv is None:
            continue
        cv = row[color]
        pts.append((xv, yv, cv))
    if not pts:
        return pts, [0] * n_bins, [0] * n_bins, [[0] * n_bins for _ in range(n_bins)]

    def edges(values):
        lo, hi = min(values), max(values)
        if lo == hi:
            lo, hi = lo - 0.5, hi + 0.5
        return [lo + (hi - lo) * i / n_bins for i in range(n_bins + 1)]

    def index(v, e):
        # floor binning over the uniform width, top edge folded down
        width = (e[-1] - e[0]) / n_bins
        i = math.floor((v - e[0]) / width)
        return min(max(i, 0), n_bins - 1)

    xe = edges([p[0] for p in pts])
    ye = edges([p[1] for p in pts])
    xh = [0] * n_bins
    yh = [0] * n_bins
    heat = [[0] * n_bins for _ in range(n_bins)]
    for xv, yv, _ in pts:
        i, j = index(xv, xe), index(yv, ye)
        xh[i] += 1
        yh[j] += 1
        heat[i][j] += 1
    return pts, xh, yh, heat


def brute_nat_vent(rows, t_lo, t_hi, month_range=None, hour_range=None,
                   radiant_t=None):
    """(eligible count, window count) by direct re-evaluation."""
    def in_span(v, span):
        if span is None:
            return True
        a, b = span
        return a <= v <= b if a <= b else (v >= a or v <= b)

    eligible = total = 0
    for row in rows:
        if not in_span(row["month"], month_range):
            continue
        if not in_span(row["hour"], hour_range):
            continue
        total += 1
        t = row["t_db"]
        if t is None or not (t_lo <= t <= t_hi):
            continue
        if radiant_t is not None:
            dp = row["t_dp"]
            if dp is None or radiant_t <= dp:
                continue
        eligible += 1
    return eligible, total


def brute_running_mean(daily, alpha=0.9, days=7):
    """Cyclic 7-day weighted mean, written as the direct definition."""
    n = len(daily)
    out = []
    for i in range(n):
        num = 0.0
        den = 0.0
        for k in range(1, days + 1):
            w = alpha ** (k - 1)
            num += w * daily[(i - k) % n]
            den += w
        out.append(num / den)
    return out


def brute_degree_days(rows, base_heating, base_cooling):
    """Monthly (hdd, cdd) lists from daily means over the present hours."""
    by_day: dict[tuple[int, int], list[float]] = {}
    for row in rows:
        t = row["t_db"]
        if t is not None:
            by_day.setdefault((row["month"], row["day"]), []).append(t)
    hdd = [0.0] * 12
    cdd = [0.0] * 12
    for (month, _day), values in sorted(by_day.items()):
        mean = sum(values) / len(values)
        hdd[month - 1] += max(0.0, base_heating - mean)
        cdd[month - 1] += max(0.0, mean - base_cooling)
    return hdd, cdd
