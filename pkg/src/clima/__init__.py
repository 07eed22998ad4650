"""Self-hostable climate analysis for building design.

Parse EnergyPlus Weather files, derive psychrometric, solar, and outdoor
comfort quantities, run the page-level analyses (summary, degree days,
natural ventilation, wind rose, data explorer, monthly statistics), render
deterministic SVG charts, and serve everything over a JSON HTTP API or the
``clima`` command line.
"""

from ._version import VERSION as __version__

from . import analytics, comfort, epw, render, solar, synthetic, thermo
from .analytics import ClimateFrame, Filters, build_frame
from .comfort import AdaptiveBand, UtciResult, adaptive_band, stress_category, utci
from .epw import EpwFile, parse_epw, serialize_epw, validate_structure
from .errors import ClimaError, DomainError
from .solar import SolarPosition, annual_sun_path, solar_position
from .render import ChartRequest, SvgDocument
from .thermo import moist_air_state

__all__ = [
    "__version__",
    "analytics", "comfort", "epw", "render", "solar", "synthetic", "thermo",
    "ClimateFrame", "Filters", "build_frame", "ChartRequest", "SvgDocument",
    "AdaptiveBand", "UtciResult", "adaptive_band", "stress_category", "utci",
    "EpwFile", "parse_epw", "serialize_epw", "validate_structure",
    "ClimaError", "DomainError",
    "SolarPosition", "annual_sun_path", "solar_position",
    "moist_air_state",
]
