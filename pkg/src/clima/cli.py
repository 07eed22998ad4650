"""The ``clima`` command line: summarize, export, chart.

Batch access to the same engine the HTTP service uses, so a chart written
here is byte-identical to the one the service returns for the same
parameters. No subcommand touches the network.

Exit codes: 0 success, 2 input error (unreadable or unparseable file, bad
parameters), 3 internal error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from ._version import VERSION
from .analytics import build_frame, export_frame_csv, summary_json
from .epw import parse_epw
from .errors import ClimaError
from .params import chart_request_from_params
from .render import CHART_KINDS, render

_EPILOG = """\
month and hour filters use the span syntax 'a-b' and may wrap around the
year or the day: --months 11-2 is November through February, --hours 19-6
is evening through dawn. Hour labels follow the weather file convention
(hour 1 covers midnight to 1am).
"""


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="clima",
        description="Climate analysis for EPW weather files.",
        epilog=_EPILOG,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("--version", action="version", version=f"clima {VERSION}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("summarize", help="print the climate summary",
                       epilog=_EPILOG)
    p.add_argument("file", help="EPW file to read")
    p.add_argument("--json", action="store_true",
                   help="emit machine-readable JSON on stdout")

    p = sub.add_parser("export", help="export the derived data frame",
                       epilog=_EPILOG)
    p.add_argument("file", help="EPW file to read")
    p.add_argument("--frame", required=True, metavar="OUT.csv",
                   help="write the frame as CSV to this path")

    p = sub.add_parser("chart", help="render a chart to SVG",
                       formatter_class=argparse.RawDescriptionHelpFormatter,
                       epilog=_EPILOG)
    p.add_argument("file", help="EPW file to read")
    p.add_argument("--kind", required=True, choices=CHART_KINDS)
    p.add_argument("--var", help="primary variable (column name)")
    p.add_argument("--y", help="y variable (explorer_scatter)")
    p.add_argument("--color", help="color variable")
    p.add_argument("--range", choices=("global", "local"), default="local",
                   help="axis range mode (default local)")
    p.add_argument("--months", help="month span 'a-b', wrap allowed")
    p.add_argument("--hours", help="hour span 'a-b', wrap allowed")
    p.add_argument("--filter-column", help="extra filter variable")
    p.add_argument("--filter-min", type=float)
    p.add_argument("--filter-max", type=float)
    p.add_argument("--base-heating", type=float, default=18.0)
    p.add_argument("--base-cooling", type=float, default=21.0)
    p.add_argument("--width", type=int, default=960)
    p.add_argument("--height", type=int, default=560)
    p.add_argument("-o", "--out", required=True, metavar="OUT.svg",
                   help="output SVG path")
    return parser


def _load(path: str):
    text = Path(path).read_text(encoding="utf-8", errors="replace")
    return parse_epw(text)


def _print_summary(payload: dict) -> None:
    loc = payload["location"]
    place = ", ".join(p for p in (loc["city"], loc["state_region"],
                                  loc["country"]) if p)
    tz = loc["timezone"]
    print(f"{place} (WMO {loc['wmo_id']})")
    print(f"  latitude {loc['latitude']}  longitude {loc['longitude']}  "
          f"elevation {loc['elevation']} m  UTC{tz:+g}")
    koppen = payload["koppen"]
    label = koppen["label"]
    if koppen["precipitation_missing"]:
        label += " (precipitation missing, temperature letters only)"
    print(f"  Koppen-Geiger class: {label}")

    def show(v, unit=""):
        return "n/a" if v is None else f"{v:.1f}{unit}"

    print(f"  mean dry bulb: {show(payload['t_db_mean'], ' C')}")
    print(f"  hottest month: {payload['hottest_month']} "
          f"({show(payload['hottest_month_mean'], ' C')})")
    print(f"  coldest month: {payload['coldest_month']} "
          f"({show(payload['coldest_month_mean'], ' C')})")
    print(f"  global horizontal irradiation: "
          f"{show(payload['annual_ghi_kwh_m2'], ' kWh/m2')}")
    print(f"  diffuse share: {show(payload['diffuse_share_pct'], ' %')}")


def _dispatch(args: argparse.Namespace) -> int:
    epw = _load(args.file)
    frame = build_frame(epw)

    if args.command == "summarize":
        payload = summary_json(frame)
        if args.json:
            print(json.dumps(payload, indent=2, sort_keys=True))
        else:
            _print_summary(payload)
        return 0

    if args.command == "export":
        text = export_frame_csv(frame)
        Path(args.frame).write_text(text, encoding="utf-8")
        n = text.count("\n")
        print(f"wrote {args.frame} ({n} lines)", file=sys.stderr)
        return 0

    if args.command == "chart":
        params = {
            "variable": args.var, "y": args.y, "color": args.color,
            "range": args.range, "months": args.months, "hours": args.hours,
            "filter_column": args.filter_column,
            "filter_min": None if args.filter_min is None else str(args.filter_min),
            "filter_max": None if args.filter_max is None else str(args.filter_max),
            "base_heating": str(args.base_heating),
            "base_cooling": str(args.base_cooling),
            "width": str(args.width), "height": str(args.height),
        }
        request = chart_request_from_params(args.kind, params)
        document = render(frame, request)
        Path(args.out).write_text(document.text, encoding="utf-8")
        print(f"wrote {args.out} ({len(document.text)} bytes, "
              f"request {document.request_hash})", file=sys.stderr)
        return 0

    raise AssertionError(f"unhandled command {args.command}")  # pragma: no cover


def main(argv: list[str] | None = None) -> int:
    args = _parser().parse_args(argv)
    try:
        return _dispatch(args)
    except ClimaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # pragma: no cover - last resort
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
