"""In-memory event-log data model.

A log is a multiset of traces; a trace is a sequence of events ordered by
timestamp; an event maps attribute names to values. Missing values are
represented by *absence* from the event's attribute mapping (``event.value``
returns ``None``), never by empty strings or sentinel numbers.

Logs are immutable once built and safe for concurrent reads.
"""

from __future__ import annotations

import json
import logging
from collections import Counter
from dataclasses import dataclass
from datetime import datetime, timezone
from typing import Iterable, Iterator, Mapping

from .errors import ParseError

logger = logging.getLogger(__name__)

#: A single attribute value; ``None`` marks a missing value.
AttrValue = str | float | bool | None

#: Base kinds an attribute can have within one log.
BASE_KINDS = ("text", "number", "boolean")

LOG_SCHEMA = "eventlog/1"

EPOCH = datetime(1970, 1, 1, tzinfo=timezone.utc)


def value_kind(value: AttrValue) -> str | None:
    """Base kind of a value, or ``None`` for a missing value.

    ``bool`` is checked before the numeric types because it is an ``int``
    subclass in Python.
    """
    if value is None:
        return None
    if isinstance(value, bool):
        return "boolean"
    if isinstance(value, (int, float)):
        return "number"
    return "text"


@dataclass(frozen=True, eq=True)
class Event:
    """One observed event: mandatory case/activity/timestamp plus payload.

    ``ordinal`` is the position within the trace after timestamp sorting,
    which makes ``(case, ordinal)`` unique across the log.
    """

    case: str
    activity: str
    timestamp: datetime
    attributes: Mapping[str, AttrValue]
    ordinal: int

    def value(self, attr: str) -> AttrValue:
        """The event's value for ``attr``; ``None`` if missing."""
        return self.attributes.get(attr)


@dataclass(frozen=True, eq=True)
class Trace:
    """Timestamp-ordered events of one case."""

    case: str
    events: tuple[Event, ...]

    def __len__(self) -> int:
        return len(self.events)

    def __iter__(self) -> Iterator[Event]:
        return iter(self.events)

    @property
    def activities(self) -> tuple[str, ...]:
        """Activity ordering of the trace (defines trace identity)."""
        return tuple(e.activity for e in self.events)


@dataclass(frozen=True, eq=True)
class EventLog:
    """Multiset of traces plus a catalog of attribute base kinds.

    The catalog lists exactly the attribute names that appear with at least
    one non-missing value; the mandatory case/activity/timestamp fields are
    not part of it.
    """

    traces: tuple[Trace, ...]
    catalog: Mapping[str, str]

    def __len__(self) -> int:
        return len(self.traces)

    def __iter__(self) -> Iterator[Trace]:
        return iter(self.traces)

    @property
    def event_count(self) -> int:
        return sum(len(t) for t in self.traces)

    def events(self) -> Iterator[Event]:
        for trace in self.traces:
            yield from trace.events

    def activity_names(self) -> set[str]:
        return {e.activity for e in self.events()}

    def variants(self) -> Counter:
        """Trace multiplicities keyed by activity ordering (reporting aid).

        Two traces count as the same variant iff their activity orderings
        match; storage always keeps both trace objects.
        """
        return Counter(t.activities for t in self.traces)


def normalize_timestamp(ts: datetime) -> datetime:
    """Convert to UTC (naive timestamps are taken as UTC) at millisecond precision."""
    if ts.tzinfo is None:
        ts = ts.replace(tzinfo=timezone.utc)
    else:
        ts = ts.astimezone(timezone.utc)
    return ts.replace(microsecond=(ts.microsecond // 1000) * 1000)


def build_log(
    records: Iterable[tuple[str, str, datetime, Mapping[str, AttrValue]]],
) -> EventLog:
    """Assemble an :class:`EventLog` from (case, activity, timestamp, attributes) records.

    Events are grouped by case in first-appearance order and stably sorted by
    timestamp within each trace, so source order breaks timestamp ties.
    Integer attribute values are normalized to floats; missing values are
    dropped from the per-event mappings. Attributes whose non-missing values
    mix base kinds are demoted to text with a warning, since one attribute
    must keep one kind throughout a log.
    """
    by_case: dict[str, list[tuple[str, datetime, dict[str, AttrValue]]]] = {}
    kinds: dict[str, str] = {}
    demoted: set[str] = set()

    for case, activity, ts, attrs in records:
        if not case:
            raise ParseError("event without a case identifier")
        if not activity:
            raise ParseError("event without an activity")
        if not isinstance(ts, datetime):
            raise ParseError(f"event timestamp must be a datetime, got {type(ts).__name__}")
        clean: dict[str, AttrValue] = {}
        for name, value in attrs.items():
            kind = value_kind(value)
            if kind is None:
                continue
            if kind == "number":
                value = float(value)
            seen = kinds.get(name)
            if seen is None:
                kinds[name] = kind
            elif seen != kind:
                demoted.add(name)
            clean[name] = value
        by_case.setdefault(case, []).append((activity, normalize_timestamp(ts), clean))

    if demoted:
        for name in sorted(demoted):
            logger.warning("attribute %r mixes value kinds; demoting to text", name)
            kinds[name] = "text"

    traces = []
    for case, rows in by_case.items():
        rows.sort(key=lambda r: r[1])
        events = []
        for ordinal, (activity, ts, attrs) in enumerate(rows):
            if demoted:
                attrs = {
                    name: _as_text(value) if name in demoted else value
                    for name, value in attrs.items()
                }
            events.append(Event(case, activity, ts, attrs, ordinal))
        traces.append(Trace(case, tuple(events)))

    return EventLog(tuple(traces), dict(sorted(kinds.items())))


def _as_text(value: AttrValue) -> str:
    """Text rendering used when an attribute is demoted to the text kind."""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return str(int(value)) if value.is_integer() else repr(value)
    return str(value)


def attribute_values(log: EventLog, attr: str) -> list[AttrValue]:
    """All non-missing values of ``attr``, traces in log order, events in trace order."""
    return [
        e.attributes[attr]
        for trace in log.traces
        for e in trace.events
        if attr in e.attributes
    ]


def attribute_catalog(log: EventLog) -> list[tuple[str, str, int, int]]:
    """Per-attribute summary rows ``(name, kind, non_missing, total_events)``.

    Rows are ordered lexicographically by name; the mandatory
    case/activity/timestamp fields are excluded.
    """
    total = log.event_count
    rows = []
    for name in sorted(log.catalog):
        non_missing = sum(1 for e in log.events() if name in e.attributes)
        rows.append((name, log.catalog[name], non_missing, total))
    return rows


def log_to_json(log: EventLog) -> str:
    """Serialize to the canonical internal JSON format (``eventlog/1``)."""
    doc = {
        "schema": LOG_SCHEMA,
        "catalog": dict(log.catalog),
        "traces": [
            {
                "case": t.case,
                "events": [
                    {
                        "activity": e.activity,
                        "timestamp": e.timestamp.isoformat(timespec="milliseconds"),
                        "attributes": dict(e.attributes),
                    }
                    for e in t.events
                ],
            }
            for t in log.traces
        ],
    }
    return json.dumps(doc, sort_keys=True, ensure_ascii=False, separators=(",", ":"))


def log_from_json(text: str | bytes) -> EventLog:
    """Parse the internal JSON format back into an :class:`EventLog`.

    ``null`` attribute values are accepted and treated as missing.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict) or doc.get("schema") != LOG_SCHEMA:
        raise ParseError(f"expected a {LOG_SCHEMA!r} document")

    def records():
        for trace in doc.get("traces", []):
            case = trace.get("case")
            for event in trace.get("events", []):
                try:
                    ts = datetime.fromisoformat(event["timestamp"])
                except (KeyError, ValueError) as exc:
                    raise ParseError(f"bad event timestamp in case {case!r}: {exc}") from exc
                yield case, event.get("activity"), ts, event.get("attributes", {})

    return build_log(records())
