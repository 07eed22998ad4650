"""
A first look at the engine
==========================

Parse a weather file, summarize the climate, and write a couple of charts.
Runs entirely offline against a bundled synthetic year.

    python3 demos/quick_tour.py
"""

from pathlib import Path

from clima import analytics, render, synthetic
from clima.epw import parse_epw

out_dir = Path(__file__).parent / "out"
out_dir.mkdir(exist_ok=True)

# Any EPW text works here; the synthetic presets stand in for a real file.
text = synthetic.synthetic_epw("mediterranean", 2017)
epw = parse_epw(text)
print(f"{epw.location.city}: {len(epw.records)} hourly records")

# The frame carries the raw columns plus everything derived from them:
# psychrometrics, solar geometry, the four UTCI exposure scenarios, and
# the adaptive comfort band.
frame = analytics.build_frame(epw)
names = list(frame.columns)
print(f"{len(names)} columns, e.g. {names[:6]} ...")

summary = analytics.summary_json(frame)
print(f"Koppen-Geiger: {summary['koppen']['label']}")
print(f"mean dry bulb: {summary['t_db_mean']:.1f} C, "
      f"annual GHI {summary['annual_ghi_kwh_m2']:.0f} kWh/m2")

dd = analytics.degree_days(frame, base_heating=18.0, base_cooling=21.0)
print(f"degree days: HDD {dd.hdd_annual:.0f}, CDD {dd.cdd_annual:.0f}")

# Charts are plain SVG strings, deterministic for a given frame + request.
for kind, extras in [("heatmap", {"variable": "utci_sun_wind"}),
                     ("wind_rose", {}),
                     ("psychrometric", {"color_variable": "rh"})]:
    request = render.ChartRequest(kind=kind, **extras)
    doc = render.render(frame, request)
    path = out_dir / f"{kind}.svg"
    path.write_text(doc.text, encoding="utf-8")
    print(f"wrote {path} ({len(doc.text)} bytes, request {doc.request_hash})")
