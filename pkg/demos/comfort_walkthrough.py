"""
Outdoor comfort, step by step
=============================

What the UTCI scenario columns mean and where the adaptive band comes
from, using one summer day of the mediterranean preset.
"""

import numpy as np

from clima import analytics, comfort, synthetic

frame = analytics.build_frame(synthetic.synthetic_epw_file("mediterranean", 2017))

# Pick July 15th. EPW hour labels run 1..24, each covering the hour ending
# at the label, so row h-1 is the interval (h-1, h].
months = frame.column("month")
days = frame.column("day")
sel = np.flatnonzero((months == 7) & (days == 15))

print("hour  t_db   sun+wind  sun/calm  shade+wind  shade/calm")
for i in sel[::3]:
    row = frame.row(int(i))
    cells = [row[k] for k in ("utci_sun_wind", "utci_sun_nowind",
                              "utci_nosun_wind", "utci_nosun_nowind")]
    text = "  ".join("   n/a  " if c is None else f"{c:8.1f}" for c in cells)
    print(f"{row['hour']:4d} {row['t_db']:5.1f} {text}")

# At night all four agree (no sun to add, and the wind scenarios only
# differ when wind matters). By day the sun scenarios run warmer because
# the radiant load is converted into a mean-radiant-temperature increment.

# A single hour, done by hand:
delta = comfort.solar_mrt_delta(dni=700.0, dhi=120.0, ghi=800.0, altitude=60.0)
res = comfort.utci(30.0, 30.0 + delta, 3.0, 40.0, scenario="sun_wind")
print(f"\nnoon example: MRT delta {delta:.1f} K -> "
      f"UTCI {res.value:.1f} C ({res.category})")

# The adaptive band needs the prevailing mean outdoor temperature: an
# exponentially weighted running mean over the previous seven days.
daily = np.array([frame.column("t_db")[d * 24:(d + 1) * 24].mean()
                  for d in range(365)])
t_rm = comfort.running_mean(daily)
band = comfort.adaptive_band(float(t_rm[196]))  # July 16th
print(f"t_rm {t_rm[196]:.1f} C -> 80% band "
      f"{band.lower_80:.1f}..{band.upper_80:.1f} C")
