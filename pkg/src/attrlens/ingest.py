"""Event-log ingestion from delimited text (RFC 4180) and XES XML.

Both parsers produce structurally identical logs for the same logical input:
they feed the shared :func:`attrlens.eventlog.build_log` assembler, which
owns grouping, time sorting, and catalog construction.
"""

from __future__ import annotations

import csv
import io
import math
import re
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from datetime import datetime, timedelta, timezone

from .errors import ParseError
from .eventlog import EPOCH, AttrValue, EventLog, build_log

TIME_FORMATS = ("auto", "iso8601", "epoch-seconds", "ordinal")

_TRUE_WORDS = frozenset({"true"})
_FALSE_WORDS = frozenset({"false"})

_FRACTION_RE = re.compile(r"(\.\d{6})\d+")


@dataclass(frozen=True)
class ColumnMapping:
    """Which CSV columns carry the mandatory event fields.

    ``time_format`` controls timestamp interpretation:

    * ``iso8601``: ISO 8601 text, naive values taken as UTC
    * ``epoch-seconds``: decimal seconds since the Unix epoch
    * ``ordinal``: plain integer sequence numbers (1, 2, 3, ...)
    * ``auto`` (default): ``ordinal`` when every timestamp cell is numeric,
      ``iso8601`` otherwise

    Columns named in ``boolean_cols`` are read as booleans and additionally
    accept 0/1 cells.
    """

    case_col: str = "Case ID"
    activity_col: str = "Activity"
    time_col: str = "Timestamp"
    time_format: str = "auto"
    boolean_cols: frozenset[str] = field(default_factory=frozenset)

    def __post_init__(self):
        if self.time_format not in TIME_FORMATS:
            raise ParseError(
                f"unknown time format {self.time_format!r}; expected one of {', '.join(TIME_FORMATS)}"
            )


def parse_iso_timestamp(text: str) -> datetime:
    """Parse ISO 8601 text, tolerating a ``Z`` suffix and long fractional seconds."""
    cleaned = text.strip()
    if cleaned.endswith(("Z", "z")):
        cleaned = cleaned[:-1] + "+00:00"
    cleaned = _FRACTION_RE.sub(r"\1", cleaned)
    return datetime.fromisoformat(cleaned)


def _finite_float(cell: str) -> float | None:
    try:
        value = float(cell)
    except ValueError:
        return None
    return value if math.isfinite(value) else None


def parse_csv(data: bytes, mapping: ColumnMapping | None = None) -> EventLog:
    """Parse RFC 4180 CSV bytes (UTF-8, header row required) into an event log.

    One event is created per data row. Unmapped columns become event
    attributes; empty cells are missing values. A column is numeric when all
    of its non-empty cells parse as finite decimals, boolean when they are
    all true/false words (or 0/1 for declared boolean columns), and text
    otherwise.
    """
    mapping = mapping or ColumnMapping()
    text = data.decode("utf-8-sig")
    reader = csv.reader(io.StringIO(text, newline=""))

    try:
        header = next(reader)
    except StopIteration:
        raise ParseError("empty file: no header row") from None
    if not header or all(not h for h in header):
        raise ParseError("empty file: no header row")

    for col in (mapping.case_col, mapping.activity_col, mapping.time_col):
        if col not in header:
            raise ParseError(f"mapped column {col!r} not in header {header}")
    index = {name: i for i, name in enumerate(header)}
    attr_cols = [h for h in header if h not in (mapping.case_col, mapping.activity_col, mapping.time_col)]

    rows: list[tuple[int, list[str]]] = []
    for row in reader:
        if not row:
            continue
        if len(row) > len(header):
            raise ParseError(f"line {reader.line_num}: row has {len(row)} cells, header has {len(header)}")
        if len(row) < len(header):
            row = row + [""] * (len(header) - len(row))
        rows.append((reader.line_num, row))

    time_format = mapping.time_format
    if time_format == "auto":
        numeric = all(_finite_float(row[index[mapping.time_col]]) is not None for _, row in rows)
        time_format = "ordinal" if numeric else "iso8601"

    def parse_time(cell: str, line: int) -> datetime:
        if time_format == "iso8601":
            try:
                return parse_iso_timestamp(cell)
            except ValueError:
                raise ParseError(f"line {line}: unparsable timestamp {cell!r}") from None
        value = _finite_float(cell)
        if value is None:
            raise ParseError(f"line {line}: unparsable timestamp {cell!r}")
        if time_format == "ordinal" and not value.is_integer():
            raise ParseError(f"line {line}: ordinal timestamp {cell!r} is not an integer")
        return EPOCH + timedelta(seconds=value)

    kinds = {col: _infer_column_kind(col, [row[index[col]] for _, row in rows], mapping) for col in attr_cols}

    def convert(col: str, cell: str) -> AttrValue:
        if cell == "":
            return None
        kind = kinds[col]
        if kind == "number":
            return float(cell)
        if kind == "boolean":
            return cell.strip().lower() in _TRUE_WORDS or cell.strip() == "1"
        return cell

    def records():
        for line, row in rows:
            case = row[index[mapping.case_col]]
            activity = row[index[mapping.activity_col]]
            if not case:
                raise ParseError(f"line {line}: empty case identifier")
            if not activity:
                raise ParseError(f"line {line}: empty activity")
            ts = parse_time(row[index[mapping.time_col]], line)
            attrs = {col: convert(col, row[index[col]]) for col in attr_cols}
            yield case, activity, ts, attrs

    return build_log(records())


def _infer_column_kind(col: str, cells: list[str], mapping: ColumnMapping) -> str:
    values = [c for c in cells if c != ""]
    if not values:
        return "text"
    lowered = [v.strip().lower() for v in values]
    if col in mapping.boolean_cols:
        bad = [v for v in lowered if v not in ("true", "false", "0", "1")]
        if bad:
            raise ParseError(f"column {col!r} declared boolean but has cell {bad[0]!r}")
        return "boolean"
    if all(v in _TRUE_WORDS | _FALSE_WORDS for v in lowered):
        return "boolean"
    if all(_finite_float(v) is not None for v in values):
        return "number"
    return "text"


def _local_name(tag: str) -> str:
    return tag.rsplit("}", 1)[-1]


def parse_xes(data: bytes) -> EventLog:
    """Parse an XES (IEEE 1849) document into an event log.

    Supported subset: log/trace/event structure with string, int, float,
    boolean, and date child attributes. Trace identity comes from the
    trace-level ``concept:name``; per event, ``concept:name`` is the activity
    and ``time:timestamp`` the timestamp, and both are required. Extensions,
    globals, classifiers, and nested attributes are ignored.
    """
    try:
        root = ET.fromstring(data)
    except ET.ParseError as exc:
        raise ParseError(f"malformed XML: {exc}") from exc

    log_el = root if _local_name(root.tag) == "log" else _find_child(root, "log")
    if log_el is None:
        raise ParseError("no <log> element found")

    def records():
        for t_index, trace_el in enumerate(log_el):
            if _local_name(trace_el.tag) != "trace":
                continue
            case = _trace_name(trace_el) or f"trace-{t_index + 1}"
            for event_el in trace_el:
                if _local_name(event_el.tag) != "event":
                    continue
                yield _read_event(case, event_el)

    return build_log(records())


def _find_child(el: ET.Element, name: str) -> ET.Element | None:
    for child in el:
        if _local_name(child.tag) == name:
            return child
    return None


def _trace_name(trace_el: ET.Element) -> str | None:
    for child in trace_el:
        if _local_name(child.tag) == "string" and child.get("key") == "concept:name":
            return child.get("value")
    return None


def _read_event(case: str, event_el: ET.Element):
    activity: str | None = None
    timestamp: datetime | None = None
    attrs: dict[str, AttrValue] = {}
    for child in event_el:
        tag = _local_name(child.tag)
        key = child.get("key")
        raw = child.get("value")
        if key is None or raw is None:
            continue
        if key == "concept:name":
            activity = raw
            continue
        if key == "time:timestamp":
            try:
                timestamp = parse_iso_timestamp(raw)
            except ValueError:
                raise ParseError(f"event in case {case!r}: unparsable time:timestamp {raw!r}") from None
            continue
        if tag == "string":
            attrs[key] = raw
        elif tag in ("int", "float"):
            try:
                attrs[key] = float(raw)
            except ValueError:
                raise ParseError(f"event in case {case!r}: bad {tag} value {raw!r} for {key!r}") from None
        elif tag == "boolean":
            attrs[key] = raw.strip().lower() == "true"
        elif tag == "date":
            # dates other than time:timestamp carry no dedicated kind; keep the text
            attrs[key] = raw
        # container and unknown attribute elements are outside the subset
    if activity is None:
        raise ParseError(f"event in case {case!r} has no concept:name")
    if timestamp is None:
        raise ParseError(f"event in case {case!r} has no time:timestamp")
    return case, activity, timestamp, attrs
