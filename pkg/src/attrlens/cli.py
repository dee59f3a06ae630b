"""Command-line interface.

Subcommands: ``profile`` (typing + characteristics + CV for every attribute),
``filter`` (interactive-style attribute filtering), ``enhance`` (write a
data-enhanced model as DOT or JSON), and ``serve`` (run the HTTP service).

Exit codes: 0 success, 1 usage error, 2 data error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .discovery import discover_dfg
from .enhancement import AggregationFn, EnhancedModel, Selection, enhance_model, export_dot, export_json
from .errors import AttrLensError
from .eventlog import EventLog, log_from_json
from .ingest import ColumnMapping, parse_csv, parse_xes
from .profiles import (
    AttributeProfile,
    FilterQuery,
    FilterResult,
    build_profile,
    filter_attributes,
    filter_result_to_json,
    profiles_to_json,
)
from .service import LogStore, serve
from .typeclass import DEFAULT_TYPE_THRESHOLD


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit(2); we reserve 2 for data errors
        raise UsageError(message)


def _add_csv_options(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("CSV options")
    group.add_argument("--case-col", default="Case ID", help="case id column (default: %(default)s)")
    group.add_argument("--activity-col", default="Activity", help="activity column (default: %(default)s)")
    group.add_argument("--time-col", default="Timestamp", help="timestamp column (default: %(default)s)")
    group.add_argument(
        "--time-format",
        default="auto",
        choices=["auto", "iso8601", "epoch-seconds", "ordinal"],
        help="timestamp interpretation (default: %(default)s)",
    )
    group.add_argument(
        "--boolean-cols",
        default="",
        metavar="A,B",
        help="comma-separated columns to read as booleans (accepts 0/1)",
    )


def _build_parser() -> _Parser:
    parser = _Parser(
        prog="attrlens",
        description="Profile event-log attributes and build data-enhanced process models.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_profile = sub.add_parser("profile", help="profile every attribute of a log")
    p_profile.add_argument("log", help="path to a .csv, .xes, or internal .json log")
    p_profile.add_argument("--type-threshold", type=float, default=DEFAULT_TYPE_THRESHOLD)
    p_profile.add_argument("--format", choices=["json", "table"], default="json")
    _add_csv_options(p_profile)

    p_filter = sub.add_parser("filter", help="filter attributes by characteristic, type, and CV range")
    p_filter.add_argument("log")
    p_filter.add_argument("--characteristic", choices=["static", "semi-dynamic", "dynamic"])
    p_filter.add_argument("--cv-min", type=float, default=None, help="inclusive lower CV bound, percent")
    p_filter.add_argument("--cv-max", type=float, default=None, help="inclusive upper CV bound, percent")
    p_filter.add_argument("--type", choices=["quantitative", "categorical"], dest="type_filter")
    p_filter.add_argument("--activity", default=None, help="only attributes used at this activity")
    p_filter.add_argument("--type-threshold", type=float, default=DEFAULT_TYPE_THRESHOLD)
    p_filter.add_argument("--format", choices=["json", "table"], default="json")
    _add_csv_options(p_filter)

    p_enhance = sub.add_parser("enhance", help="write a data-enhanced process model")
    p_enhance.add_argument("log")
    p_enhance.add_argument("--attribute", required=True)
    p_enhance.add_argument("--fn", default="mean", help="mean|median|min|max|stddev|count|mode|topk[:k]")
    p_enhance.add_argument(
        "--scope",
        default="all",
        help="'all' (every activity using the attribute) or 'activity:<name>'",
    )
    p_enhance.add_argument("--out", required=True, help="output path; .dot or .json decides the format")
    _add_csv_options(p_enhance)

    p_serve = sub.add_parser("serve", help="run the HTTP service")
    p_serve.add_argument("log", nargs="*", help="log files to preload into the store")
    p_serve.add_argument("--port", type=int, default=None, help="default: $ATTRLENS_PORT or 8000")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--store-dir", default=None, help="persist uploads to this directory")
    _add_csv_options(p_serve)

    return parser


def _mapping_from_args(args: argparse.Namespace) -> ColumnMapping:
    return ColumnMapping(
        case_col=args.case_col,
        activity_col=args.activity_col,
        time_col=args.time_col,
        time_format=args.time_format,
        boolean_cols=frozenset(c for c in args.boolean_cols.split(",") if c),
    )


def _load_log(path_text: str, args: argparse.Namespace) -> EventLog:
    path = Path(path_text)
    data = path.read_bytes()
    suffix = path.suffix.lower()
    if suffix == ".xes":
        return parse_xes(data)
    if suffix == ".json":
        return log_from_json(data)
    return parse_csv(data, _mapping_from_args(args))


def _fmt_deg_var(profile: AttributeProfile) -> str:
    return f"{profile.cv.deg_var:.1f}%" if profile.cv is not None else "-"


def _print_profile_table(profiles: dict[str, AttributeProfile]) -> None:
    headers = ["attribute", "kind", "type", "characteristic", "activities", "avg/trace", "deg_var"]
    rows = [
        [
            p.name,
            p.kind,
            p.type_class.variant.value,
            p.characteristic.variant.value,
            str(p.characteristic.activity_count),
            str(p.characteristic.avg_per_trace),
            _fmt_deg_var(p),
        ]
        for p in profiles.values()
    ]
    _print_table(headers, rows)


def _print_table(headers: list[str], rows: list[list[str]]) -> None:
    widths = [max(len(h), *(len(r[i]) for r in rows)) if rows else len(h) for i, h in enumerate(headers)]
    print("  ".join(h.ljust(widths[i]) for i, h in enumerate(headers)))
    for row in rows:
        print("  ".join(cell.ljust(widths[i]) for i, cell in enumerate(row)))


def _print_filter_table(result: FilterResult) -> None:
    for title, profiles, total in (
        ("quantitative", result.quantitative, result.total_quantitative),
        ("categorical", result.categorical, result.total_categorical),
    ):
        print(f"{title} ({len(profiles)} shown / {total} before CV filter)")
        for p in profiles:
            print(f"  {p.name}  {_fmt_deg_var(p)}")


def _run(args: argparse.Namespace) -> int:
    if args.command == "profile":
        log = _load_log(args.log, args)
        profiles = build_profile(log, args.type_threshold)
        if args.format == "json":
            print(profiles_to_json(profiles, args.type_threshold))
        else:
            _print_profile_table(profiles)
        return 0

    if args.command == "filter":
        log = _load_log(args.log, args)
        profiles = build_profile(log, args.type_threshold)
        query = FilterQuery(
            activity=args.activity,
            characteristic=args.characteristic,
            cv_min=args.cv_min,
            cv_max=args.cv_max,
            type_filter=args.type_filter,
        )
        result = filter_attributes(profiles, query)
        if args.format == "json":
            print(filter_result_to_json(result, query))
        else:
            _print_filter_table(result)
        return 0

    if args.command == "enhance":
        log = _load_log(args.log, args)
        try:
            fn = AggregationFn.parse(args.fn)
            activity = _parse_scope_arg(args.scope)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        dep = enhance_model(discover_dfg(log), log, Selection(args.attribute, fn, activity))
        out = Path(args.out)
        if out.suffix.lower() == ".json":
            out.write_text(export_json(dep) + "\n", "utf-8")
        else:
            out.write_text(export_dot(dep), "utf-8")
        return 0

    if args.command == "serve":
        store = LogStore(args.store_dir)
        for path_text in args.log:
            stored = store.add(
                Path(path_text).read_bytes(),
                fmt="xes" if path_text.lower().endswith(".xes") else "csv",
                mapping=None if path_text.lower().endswith(".xes") else _mapping_from_args(args),
            )
            print(f"{path_text}: {stored.id}")
        serve(store, port=args.port, host=args.host)
        return 0

    raise UsageError(f"unknown command {args.command!r}")


def _parse_scope_arg(scope: str) -> str | None:
    if scope == "all":
        return None
    prefix, _, name = scope.partition(":")
    if prefix != "activity" or not name:
        raise ValueError(f"scope must be 'all' or 'activity:<name>', got {scope!r}")
    return name


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return _run(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except AttrLensError as exc:
        print(f"error [{exc.code}]: {exc.message}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
