"""EnergyPlus Weather (EPW) file parsing, validation, and serialization.

The EPW text format is 8 header lines (LOCATION, DESIGN CONDITIONS,
TYPICAL/EXTREME PERIODS, GROUND TEMPERATURES, HOLIDAYS/DAYLIGHT SAVINGS,
COMMENTS 1, COMMENTS 2, DATA PERIODS) followed by comma-separated data rows
of 35 fields, one row per record.

Parsing converts every documented missing-value sentinel (99.9 for dry bulb,
999 for relative humidity, 9999 for irradiance, ...) into an explicit absent
state (``None`` at record level). Values that are not sentinels but fall
outside the physically plausible range of their field are also coerced to
absent and counted in the parse report. Serialization re-emits the canonical
sentinel for each absent field, so parse -> serialize -> parse is the
identity on all retained fields.
"""

from __future__ import annotations

import datetime as _dt
from dataclasses import dataclass, field

from .errors import ClimaError

__all__ = [
    "EpwError",
    "MalformedHeader",
    "BadRecord",
    "EmptyData",
    "FileTooLarge",
    "Location",
    "DataPeriod",
    "GroundTemperatureSeries",
    "HourlyRecord",
    "ParseReport",
    "ValidationReport",
    "EpwFile",
    "parse_epw",
    "serialize_epw",
    "validate_structure",
    "FIELDS",
    "NAMED_FIELDS",
    "EXTRA_FIELDS",
    "N_FIELDS",
]

DEFAULT_MAX_BYTES = 20 * 1024 * 1024

# An EPW data row carries exactly 35 comma-separated fields.
N_FIELDS = 35


class EpwError(ClimaError):
    """Base class for EPW structural errors."""

    code = "epw_error"


class MalformedHeader(EpwError):
    code = "malformed_header"


class BadRecord(EpwError):
    code = "bad_record"

    def __init__(self, line_no: int, reason: str):
        self.line_no = line_no
        self.reason = reason
        super().__init__(f"line {line_no}: {reason}")


class EmptyData(EpwError):
    code = "empty_data"


class FileTooLarge(EpwError):
    code = "file_too_large"


@dataclass(frozen=True)
class FieldSpec:
    """One column of the 35-field EPW data row.

    ``sentinel`` is the canonical missing marker; ``missing_ge`` additionally
    treats any value at or above that bound as missing (irradiance and
    illuminance fields use this convention). ``lo``/``hi`` bound the
    physically plausible range; out-of-range values are coerced to absent.
    """

    index: int
    key: str
    kind: str  # "int" | "float" | "text"
    sentinel: float | None = None
    sentinel_text: str = ""
    missing_ge: float | None = None
    lo: float | None = None
    hi: float | None = None
    named: bool = False  # lives as a HourlyRecord attribute


FIELDS: tuple[FieldSpec, ...] = (
    FieldSpec(0, "year", "int", named=True),
    FieldSpec(1, "month", "int", named=True),
    FieldSpec(2, "day", "int", named=True),
    FieldSpec(3, "hour", "int", named=True),
    FieldSpec(4, "minute", "int"),
    FieldSpec(5, "data_source_flags", "text"),
    FieldSpec(6, "t_db", "float", 99.9, "99.9", lo=-70.0, hi=70.0, named=True),
    FieldSpec(7, "t_dp", "float", 99.9, "99.9", lo=-70.0, hi=70.0, named=True),
    FieldSpec(8, "rh", "float", 999.0, "999", lo=0.0, hi=100.0, named=True),
    FieldSpec(9, "pressure", "float", 999999.0, "999999", lo=31000.0, hi=120000.0, named=True),
    FieldSpec(10, "extraterrestrial_horizontal", "float", 9999.0, "9999",
              missing_ge=9999.0, lo=0.0, hi=2000.0, named=True),
    FieldSpec(11, "extraterrestrial_direct_normal", "float", 9999.0, "9999",
              missing_ge=9999.0, lo=0.0, hi=2000.0),
    FieldSpec(12, "horizontal_infrared", "float", 9999.0, "9999",
              missing_ge=9999.0, lo=0.0, hi=2000.0),
    FieldSpec(13, "ghi", "float", 9999.0, "9999", missing_ge=9999.0, lo=0.0, hi=2000.0, named=True),
    FieldSpec(14, "dni", "float", 9999.0, "9999", missing_ge=9999.0, lo=0.0, hi=2000.0, named=True),
    FieldSpec(15, "dhi", "float", 9999.0, "9999", missing_ge=9999.0, lo=0.0, hi=2000.0, named=True),
    FieldSpec(16, "global_horizontal_illuminance", "float", 999999.0, "999999",
              missing_ge=999900.0, lo=0.0),
    FieldSpec(17, "direct_normal_illuminance", "float", 999999.0, "999999",
              missing_ge=999900.0, lo=0.0),
    FieldSpec(18, "diffuse_horizontal_illuminance", "float", 999999.0, "999999",
              missing_ge=999900.0, lo=0.0),
    FieldSpec(19, "zenith_luminance", "float", 9999.0, "9999", missing_ge=9999.0, lo=0.0),
    FieldSpec(20, "wind_dir", "float", 999.0, "999", lo=0.0, hi=360.0, named=True),
    FieldSpec(21, "wind_speed", "float", 999.0, "999", lo=0.0, hi=40.0, named=True),
    FieldSpec(22, "total_sky_cover", "float", 99.0, "99", lo=0.0, hi=10.0, named=True),
    FieldSpec(23, "opaque_sky_cover", "float", 99.0, "99", lo=0.0, hi=10.0, named=True),
    FieldSpec(24, "visibility", "float", 9999.0, "9999", lo=0.0),
    FieldSpec(25, "ceiling_height", "float", 99999.0, "99999", lo=0.0),
    FieldSpec(26, "present_weather_observation", "float"),
    FieldSpec(27, "present_weather_codes", "text"),
    FieldSpec(28, "precipitable_water", "float", 999.0, "999", lo=0.0),
    FieldSpec(29, "aerosol_optical_depth", "float", 0.999, "0.999", lo=0.0),
    FieldSpec(30, "snow_depth", "float", 999.0, "999", lo=0.0),
    FieldSpec(31, "days_since_snow", "float", 99.0, "99", lo=0.0),
    FieldSpec(32, "albedo", "float", 999.0, "999", lo=0.0, hi=1.0),
    FieldSpec(33, "liquid_precipitation_depth", "float", 999.0, "999",
              lo=0.0, hi=500.0, named=True),
    FieldSpec(34, "liquid_precipitation_rate", "float", 99.0, "99", lo=0.0),
)

NAMED_FIELDS = tuple(f for f in FIELDS if f.named)
EXTRA_FIELDS = tuple(f for f in FIELDS if not f.named)
_FIELD_BY_INDEX = {f.index: f for f in FIELDS}


@dataclass(frozen=True)
class Location:
    """Parsed LOCATION header line."""

    city: str
    state_region: str
    country: str
    source: str
    wmo_id: str
    latitude: float   # degrees north, [-90, 90]
    longitude: float  # degrees east, [-180, 180]
    timezone: float   # hours offset from UTC, [-12, 14]
    elevation: float  # meters, [-1000, 9999.9]


@dataclass(frozen=True)
class DataPeriod:
    name: str
    start_day_of_week: str
    start: str  # "M/D" as canonicalized at parse
    end: str


@dataclass(frozen=True)
class GroundTemperatureSeries:
    """One depth series of the GROUND TEMPERATURES header."""

    depth_m: float
    soil_conductivity: float | None
    soil_density: float | None
    soil_specific_heat: float | None
    monthly: tuple[float | None, ...]  # 12 values, January..December


@dataclass(frozen=True)
class HourlyRecord:
    """One EPW data row.

    Missing values are ``None``; a present value is never equal to its EPW
    sentinel. Fields beyond the named ones are retained in ``extras`` keyed
    by EPW field index (text fields verbatim, numerics sentinel-normalized)
    so serialization is lossless.
    """

    year: int
    month: int
    day: int
    hour: int  # 1..24; hour h labels the interval (h-1, h]
    t_db: float | None
    t_dp: float | None
    rh: float | None
    pressure: float | None
    extraterrestrial_horizontal: float | None
    ghi: float | None
    dni: float | None
    dhi: float | None
    wind_dir: float | None
    wind_speed: float | None
    total_sky_cover: float | None
    opaque_sky_cover: float | None
    liquid_precipitation_depth: float | None
    extras: dict[int, float | str | None]


@dataclass
class ParseReport:
    """Per-parse bookkeeping: sentinel conversions and range coercions."""

    n_records: int = 0
    missing_counts: dict[str, int] = field(default_factory=dict)
    coerced_counts: dict[str, int] = field(default_factory=dict)
    warnings: list[str] = field(default_factory=list)

    def _bump(self, table: dict[str, int], key: str) -> None:
        table[key] = table.get(key, 0) + 1


@dataclass
class ValidationReport:
    """Structural check result; problems are entries, never exceptions."""

    ok: bool
    header_ok: bool
    record_count: int
    missing_counts: dict[str, int]
    chronology_violations: list[str]
    problems: list[str]


@dataclass(frozen=True, eq=True)
class EpwFile:
    """A parsed EPW file; immutable and safe to share across threads."""

    location: Location
    design_conditions: str          # raw header line, verbatim
    typical_extreme_periods: str    # raw header line, verbatim
    ground_temperatures: tuple[GroundTemperatureSeries, ...]
    holidays_dst: str               # raw header line, verbatim
    comments: tuple[str, str]
    records_per_hour: int
    data_periods: tuple[DataPeriod, ...]
    records: tuple[HourlyRecord, ...]
    report: ParseReport = field(compare=False, repr=False, default_factory=ParseReport)

    @property
    def is_leap(self) -> bool:
        return len(self.records) == 8784 * self.records_per_hour


def _fmt_num(x: float | int) -> str:
    """Shortest decimal text that parses back to the same number."""
    if isinstance(x, int):
        return str(x)
    if x == int(x) and abs(x) < 1e15:
        return f"{x:.1f}"
    return repr(x)


def _parse_float(text: str) -> float:
    v = float(text)
    if v != v or v in (float("inf"), float("-inf")):
        raise ValueError("non-finite value")
    return v


def _normalize_value(spec: FieldSpec, value: float, report: ParseReport) -> float | None:
    """Apply sentinel and plausibility rules for one numeric field."""
    if spec.sentinel is not None and value == spec.sentinel:
        report._bump(report.missing_counts, spec.key)
        return None
    if spec.missing_ge is not None and value >= spec.missing_ge:
        report._bump(report.missing_counts, spec.key)
        return None
    if spec.key == "wind_dir" and value == 360.0:
        return 0.0
    if (spec.lo is not None and value < spec.lo) or (spec.hi is not None and value > spec.hi):
        report._bump(report.coerced_counts, spec.key)
        return None
    return value


def _parse_location_line(line: str) -> Location:
    parts = line.split(",")
    if parts[0].strip().upper() != "LOCATION":
        raise MalformedHeader(f"first header line must be LOCATION, got {parts[0]!r}")
    if len(parts) != 10:
        raise MalformedHeader(f"LOCATION line needs 10 fields, got {len(parts)}")
    try:
        lat = _parse_float(parts[6])
        lon = _parse_float(parts[7])
        tz = _parse_float(parts[8])
        elev = _parse_float(parts[9])
    except ValueError as exc:
        raise MalformedHeader(f"LOCATION numeric field unparseable: {exc}") from None
    if not -90.0 <= lat <= 90.0:
        raise MalformedHeader(f"latitude {lat} outside [-90, 90]")
    if not -180.0 <= lon <= 180.0:
        raise MalformedHeader(f"longitude {lon} outside [-180, 180]")
    if not -12.0 <= tz <= 14.0:
        raise MalformedHeader(f"timezone {tz} outside [-12, 14]")
    if not -1000.0 <= elev <= 9999.9:
        raise MalformedHeader(f"elevation {elev} outside [-1000, 9999.9]")
    return Location(
        city=parts[1].strip(),
        state_region=parts[2].strip(),
        country=parts[3].strip(),
        source=parts[4].strip(),
        wmo_id=parts[5].strip(),
        latitude=lat,
        longitude=lon,
        timezone=tz,
        elevation=elev,
    )


def _parse_ground_temperatures(line: str) -> tuple[GroundTemperatureSeries, ...]:
    parts = [p.strip() for p in line.split(",")]
    if parts[0].upper() != "GROUND TEMPERATURES":
        raise MalformedHeader("header line 4 must start with GROUND TEMPERATURES")
    if len(parts) < 2 or parts[1] == "":
        return ()
    try:
        n_sets = int(float(parts[1]))
    except ValueError:
        raise MalformedHeader(f"GROUND TEMPERATURES count unparseable: {parts[1]!r}") from None
    series = []
    cursor = 2
    for _ in range(n_sets):
        chunk = parts[cursor:cursor + 16]
        if len(chunk) < 16:
            raise MalformedHeader("GROUND TEMPERATURES set truncated")
        try:
            depth = _parse_float(chunk[0])
            props = [None if c == "" else _parse_float(c) for c in chunk[1:4]]
            monthly = tuple(None if c == "" else _parse_float(c) for c in chunk[4:16])
        except ValueError as exc:
            raise MalformedHeader(f"GROUND TEMPERATURES value unparseable: {exc}") from None
        series.append(GroundTemperatureSeries(depth, props[0], props[1], props[2], monthly))
        cursor += 16
    return tuple(series)


def _parse_data_periods(line: str) -> tuple[int, tuple[DataPeriod, ...]]:
    parts = [p.strip() for p in line.split(",")]
    if parts[0].upper() != "DATA PERIODS":
        raise MalformedHeader("header line 8 must start with DATA PERIODS")
    if len(parts) < 3:
        raise MalformedHeader("DATA PERIODS needs a period count and records/hour")
    try:
        n_periods = int(float(parts[1]))
        rph = int(float(parts[2]))
    except ValueError:
        raise MalformedHeader("DATA PERIODS counts unparseable") from None
    if n_periods < 1 or rph < 1:
        raise MalformedHeader("DATA PERIODS counts must be positive")
    if len(parts) < 3 + 4 * n_periods:
        raise MalformedHeader("DATA PERIODS line shorter than declared period count")
    periods = []
    for i in range(n_periods):
        base = 3 + 4 * i
        name, dow, start, end = parts[base:base + 4]
        periods.append(DataPeriod(name, dow, _canon_date(start), _canon_date(end)))
    return rph, tuple(periods)


def _canon_date(text: str) -> str:
    """Normalize 'M/D' dates (' 1/ 1' -> '1/1'); leave anything else as-is."""
    bits = text.split("/")
    if len(bits) in (2, 3):
        try:
            return "/".join(str(int(b)) for b in bits)
        except ValueError:
            return text.strip()
    return text.strip()


def _header_remainder(line: str, expected: str) -> str:
    """Text after the header keyword and its comma; '' when absent."""
    head, _, rest = line.partition(",")
    if head.strip().upper() != expected:
        raise MalformedHeader(f"expected header line {expected!r}, got {head!r}")
    return rest.rstrip("\r\n")


def _next_timestamp(year: int, month: int, day: int, hour: int) -> tuple[int, int, int]:
    """(month, day, hour) that must follow the given EPW timestamp."""
    if hour < 24:
        return month, day, hour + 1
    nxt = _dt.date(year, month, day) + _dt.timedelta(days=1)
    return nxt.month, nxt.day, 1


def _parse_record(line: str, line_no: int, report: ParseReport) -> HourlyRecord:
    parts = line.split(",")
    if len(parts) != N_FIELDS:
        raise BadRecord(line_no, f"expected {N_FIELDS} fields, got {len(parts)}")

    named: dict[str, float | int | None] = {}
    extras: dict[int, float | str | None] = {}
    for spec in FIELDS:
        raw = parts[spec.index].strip()
        if spec.kind == "text":
            extras[spec.index] = raw
            continue
        if spec.kind == "int":
            try:
                value = int(raw)
            except ValueError:
                raise BadRecord(line_no, f"field {spec.key!r} not an integer: {raw!r}") from None
            if spec.named:
                named[spec.key] = value
            else:
                extras[spec.index] = value
            continue
        try:
            fval = _parse_float(raw)
        except ValueError:
            raise BadRecord(line_no, f"field {spec.key!r} unparseable: {raw!r}") from None
        norm = _normalize_value(spec, fval, report)
        if spec.named:
            named[spec.key] = norm
        else:
            extras[spec.index] = norm

    month, day, hour = named["month"], named["day"], named["hour"]
    if not 1 <= hour <= 24:
        raise BadRecord(line_no, f"hour {hour} outside 1..24")
    try:
        _dt.date(named["year"], month, day)
    except ValueError:
        raise BadRecord(line_no, f"invalid calendar date {named['year']}-{month}-{day}") from None
    return HourlyRecord(extras=extras, **named)  # type: ignore[arg-type]


def parse_epw(raw_text: str, max_bytes: int = DEFAULT_MAX_BYTES) -> EpwFile:
    """Parse EPW text into an :class:`EpwFile`.

    Raises MalformedHeader, BadRecord, EmptyData, or FileTooLarge; any
    syntactically broken input maps to one of these, never to an internal
    exception.
    """
    if not isinstance(raw_text, str):
        raise MalformedHeader("input must be text")
    if len(raw_text.encode("utf-8", errors="replace")) > max_bytes:
        raise FileTooLarge(f"input exceeds {max_bytes} bytes")

    lines = raw_text.splitlines()
    if len(lines) < 8:
        raise MalformedHeader(f"EPW needs 8 header lines, got {len(lines)}")

    location = _parse_location_line(lines[0])
    design_conditions = lines[1].rstrip("\r\n")
    if not design_conditions.upper().startswith("DESIGN CONDITIONS"):
        raise MalformedHeader("header line 2 must start with DESIGN CONDITIONS")
    typical_extreme = lines[2].rstrip("\r\n")
    if not typical_extreme.upper().startswith("TYPICAL/EXTREME PERIODS"):
        raise MalformedHeader("header line 3 must start with TYPICAL/EXTREME PERIODS")
    ground = _parse_ground_temperatures(lines[3])
    holidays = lines[4].rstrip("\r\n")
    if not holidays.upper().startswith("HOLIDAYS/DAYLIGHT SAVINGS"):
        raise MalformedHeader("header line 5 must start with HOLIDAYS/DAYLIGHT SAVINGS")
    comment1 = _header_remainder(lines[5], "COMMENTS 1")
    comment2 = _header_remainder(lines[6], "COMMENTS 2")
    rph, periods = _parse_data_periods(lines[7])

    report = ParseReport()
    records: list[HourlyRecord] = []
    prev: HourlyRecord | None = None
    for offset, line in enumerate(lines[8:], start=9):
        if line.strip() == "":
            if all(l.strip() == "" for l in lines[offset - 1:]):
                break  # trailing blank line(s)
            raise BadRecord(offset, "blank line inside data section")
        rec = _parse_record(line, offset, report)
        if prev is not None:
            expected = _next_timestamp(prev.year, prev.month, prev.day, prev.hour)
            if (rec.month, rec.day, rec.hour) != expected:
                raise BadRecord(
                    offset,
                    f"timestamp {rec.month}/{rec.day} hour {rec.hour} breaks chronology; "
                    f"expected {expected[0]}/{expected[1]} hour {expected[2]}",
                )
        records.append(rec)
        prev = rec

    if not records:
        raise EmptyData("no data records after the 8 header lines")
    report.n_records = len(records)

    return EpwFile(
        location=location,
        design_conditions=design_conditions,
        typical_extreme_periods=typical_extreme,
        ground_temperatures=ground,
        holidays_dst=holidays,
        comments=(comment1, comment2),
        records_per_hour=rph,
        data_periods=periods,
        records=tuple(records),
        report=report,
    )


def _serialize_location(loc: Location) -> str:
    return ",".join([
        "LOCATION", loc.city, loc.state_region, loc.country, loc.source, loc.wmo_id,
        _fmt_num(loc.latitude), _fmt_num(loc.longitude),
        _fmt_num(loc.timezone), _fmt_num(loc.elevation),
    ])


def _serialize_ground(series: tuple[GroundTemperatureSeries, ...]) -> str:
    parts = ["GROUND TEMPERATURES", str(len(series))]
    for s in series:
        parts.append(_fmt_num(s.depth_m))
        for prop in (s.soil_conductivity, s.soil_density, s.soil_specific_heat):
            parts.append("" if prop is None else _fmt_num(prop))
        parts.extend("" if m is None else _fmt_num(m) for m in s.monthly)
    return ",".join(parts)


def _serialize_record(rec: HourlyRecord) -> str:
    out = [""] * N_FIELDS
    for spec in FIELDS:
        value = getattr(rec, spec.key) if spec.named else rec.extras.get(spec.index)
        if spec.kind == "text":
            out[spec.index] = "" if value is None else str(value)
        elif value is None:
            out[spec.index] = spec.sentinel_text
        else:
            out[spec.index] = _fmt_num(value)
    return ",".join(out)


def serialize_epw(epw: EpwFile) -> str:
    """Emit standards-conforming EPW text; total on any valid EpwFile."""
    lines = [
        _serialize_location(epw.location),
        epw.design_conditions,
        epw.typical_extreme_periods,
        _serialize_ground(epw.ground_temperatures),
        epw.holidays_dst,
        "COMMENTS 1," + epw.comments[0],
        "COMMENTS 2," + epw.comments[1],
        ",".join(
            ["DATA PERIODS", str(len(epw.data_periods)), str(epw.records_per_hour)]
            + [p for period in epw.data_periods
               for p in (period.name, period.start_day_of_week, period.start, period.end)]
        ),
    ]
    lines.extend(_serialize_record(r) for r in epw.records)
    return "\n".join(lines) + "\n"


def validate_structure(raw_text: str, max_bytes: int = DEFAULT_MAX_BYTES) -> ValidationReport:
    """Structural check; every problem becomes a report entry.

    Unlike :func:`parse_epw` this never raises: chronology breaks and bad
    records are listed with their line numbers and parsing continues where
    possible.
    """
    problems: list[str] = []
    chronology: list[str] = []
    missing: dict[str, int] = {}
    header_ok = True
    count = 0

    if not isinstance(raw_text, str):
        return ValidationReport(False, False, 0, {}, [], ["input is not text"])
    if len(raw_text.encode("utf-8", errors="replace")) > max_bytes:
        return ValidationReport(False, False, 0, {}, [], ["input exceeds size limit"])

    lines = raw_text.splitlines()
    if len(lines) < 8:
        return ValidationReport(False, False, 0, {}, [],
                                [f"EPW needs 8 header lines, got {len(lines)}"])

    try:
        _parse_location_line(lines[0])
        _parse_ground_temperatures(lines[3])
        _header_remainder(lines[5], "COMMENTS 1")
        _header_remainder(lines[6], "COMMENTS 2")
        _parse_data_periods(lines[7])
        for idx, keyword in ((1, "DESIGN CONDITIONS"), (2, "TYPICAL/EXTREME PERIODS"),
                             (4, "HOLIDAYS/DAYLIGHT SAVINGS")):
            if not lines[idx].upper().startswith(keyword):
                raise MalformedHeader(f"header line {idx + 1} must start with {keyword}")
    except EpwError as exc:
        header_ok = False
        problems.append(str(exc))

    report = ParseReport()
    prev: HourlyRecord | None = None
    for offset, line in enumerate(lines[8:], start=9):
        if line.strip() == "":
            continue
        try:
            rec = _parse_record(line, offset, report)
        except BadRecord as exc:
            problems.append(str(exc))
            prev = None
            continue
        count += 1
        if prev is not None:
            expected = _next_timestamp(prev.year, prev.month, prev.day, prev.hour)
            if (rec.month, rec.day, rec.hour) != expected:
                chronology.append(
                    f"line {offset}: {rec.month}/{rec.day} hour {rec.hour} after "
                    f"{prev.month}/{prev.day} hour {prev.hour}"
                )
        prev = rec

    if count == 0:
        problems.append("no data records")
    for spec in NAMED_FIELDS:
        if spec.kind == "float":
            missing[spec.key] = report.missing_counts.get(spec.key, 0) + \
                report.coerced_counts.get(spec.key, 0)

    ok = header_ok and not problems and not chronology
    return ValidationReport(
        ok=ok,
        header_ok=header_ok,
        record_count=count,
        missing_counts=missing,
        chronology_violations=chronology,
        problems=problems,
    )
