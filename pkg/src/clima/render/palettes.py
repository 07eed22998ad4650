"""Color scales for chart rendering.

Three scales cover every chart: a perceptually uniform sequential scale for
magnitudes, a diverging scale for temperature fields (centered on 0 C so
frost reads blue), and ten fixed categorical colors for the UTCI stress
classes. Interpolation is plain RGB between anchor colors; anchors and
outputs are lowercase hex so rendered documents never vary by platform.
"""

from __future__ import annotations

import numpy as np

__all__ = ["SEQUENTIAL", "DIVERGING", "UTCI_CATEGORY_COLORS", "ABSENT_COLOR",
           "interpolate", "sample", "sequential_bins"]

# viridis-like anchors, dark violet to yellow
SEQUENTIAL = ("#440154", "#472d7b", "#3b528b", "#2c728e", "#21918c",
              "#28ae80", "#5ec962", "#addc30", "#fde725")

# cool blue through white to warm red, for values centered on zero
DIVERGING = ("#313695", "#4575b4", "#74add1", "#abd9e9", "#ffffff",
             "#fdae61", "#f46d43", "#d73027", "#a50026")

# one fixed color per stress class, extreme cold to extreme heat
UTCI_CATEGORY_COLORS = (
    "#1f306e", "#2c4a9e", "#3a6fc4", "#58a0dc", "#8ed0f0",
    "#7fc97f", "#f7c84a", "#f2913d", "#e25b39", "#b01c1c",
)

ABSENT_COLOR = "#d9d9d9"


def _rgb(hex_color: str) -> tuple[int, int, int]:
    h = hex_color.lstrip("#")
    return int(h[0:2], 16), int(h[2:4], 16), int(h[4:6], 16)


def interpolate(anchors: tuple[str, ...], t: float) -> str:
    """Color at fraction ``t`` in [0, 1] along the anchor sequence."""
    t = min(max(float(t), 0.0), 1.0)
    pos = t * (len(anchors) - 1)
    i = min(int(pos), len(anchors) - 2)
    frac = pos - i
    r0, g0, b0 = _rgb(anchors[i])
    r1, g1, b1 = _rgb(anchors[i + 1])
    r = round(r0 + (r1 - r0) * frac)
    g = round(g0 + (g1 - g0) * frac)
    b = round(b0 + (b1 - b0) * frac)
    return f"#{r:02x}{g:02x}{b:02x}"


def sample(values, vmin: float, vmax: float, anchors: tuple[str, ...],
           centered: bool = False) -> list[str]:
    """Map values onto the scale; NaN maps to the absent color.

    ``centered`` treats the scale as diverging around zero: the color ramp
    runs over [-m, +m] with m = max(|vmin|, |vmax|), so 0 always lands on
    the scale midpoint.
    """
    v = np.asarray(values, dtype=float)
    if centered:
        m = max(abs(vmin), abs(vmax)) or 1.0
        t = (v + m) / (2.0 * m)
    else:
        span = (vmax - vmin) or 1.0
        t = (v - vmin) / span
    out = []
    for ti, vi in zip(np.ravel(t), np.ravel(v)):
        out.append(ABSENT_COLOR if np.isnan(vi) else interpolate(anchors, float(ti)))
    return out


def sequential_bins(n: int) -> list[str]:
    """n evenly spaced swatches from the sequential scale (for stacked bins)."""
    if n == 1:
        return [interpolate(SEQUENTIAL, 0.5)]
    return [interpolate(SEQUENTIAL, i / (n - 1)) for i in range(n)]
