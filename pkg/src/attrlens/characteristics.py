"""Process characteristics of event attributes.

An attribute is *static* when it occurs at one activity and once per trace,
*semi-dynamic* when it occurs at several activities but still once per trace,
and *dynamic* when it occurs multiple times within traces (which covers the
single-activity loop). All counting is restricted to the sub-log of traces
that use the attribute at least once, so the average per trace is never
below one.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .errors import NoDataError
from .eventlog import EventLog, Trace

__all__ = [
    "CharacteristicVariant",
    "Characteristic",
    "activity_coverage",
    "filter_traces_with",
    "avg_occurrences",
    "classify_characteristic",
]


class CharacteristicVariant(str, Enum):
    STATIC = "static"
    SEMI_DYNAMIC = "semi-dynamic"
    DYNAMIC = "dynamic"


@dataclass(frozen=True)
class Characteristic:
    """Process-behaviour summary of one attribute.

    ``avg_per_trace`` is kept as an exact rational and equals
    ``total_occurrences / trace_support``; the dynamic test is the integer
    comparison of those two counts, so a value of exactly one is never
    subject to floating-point noise.
    """

    variant: CharacteristicVariant
    activities: frozenset[str]
    avg_per_trace: Fraction
    trace_support: int
    total_occurrences: int

    @property
    def activity_count(self) -> int:
        return len(self.activities)


def _uses(trace: Trace, attr: str) -> int:
    return sum(1 for e in trace.events if attr in e.attributes)


def activity_coverage(log: EventLog, attr: str) -> set[str]:
    """Activities at which ``attr`` occurs with a non-missing value."""
    return {
        e.activity
        for trace in log.traces
        for e in trace.events
        if attr in e.attributes
    }


def filter_traces_with(log: EventLog, attr: str) -> EventLog:
    """Sub-log of exactly the traces using ``attr`` at least once, traces kept whole."""
    kept = tuple(t for t in log.traces if _uses(t, attr) > 0)
    names = {name for t in kept for e in t.events for name in e.attributes}
    catalog = {name: kind for name, kind in log.catalog.items() if name in names}
    return EventLog(kept, catalog)


def avg_occurrences(log: EventLog, attr: str) -> Fraction:
    """Average occurrences of ``attr`` per trace of the using sub-log, exact."""
    counts = [n for t in log.traces if (n := _uses(t, attr)) > 0]
    if not counts:
        raise NoDataError(f"attribute {attr!r} is unused in this log")
    return Fraction(sum(counts), len(counts))


def classify_characteristic(log: EventLog, attr: str) -> Characteristic:
    """Classify ``attr`` as static, semi-dynamic, or dynamic."""
    counts = [n for t in log.traces if (n := _uses(t, attr)) > 0]
    if not counts:
        raise NoDataError(f"attribute {attr!r} is unused in this log")
    support = len(counts)
    total = sum(counts)
    activities = frozenset(activity_coverage(log, attr))
    if total > support:
        variant = CharacteristicVariant.DYNAMIC
    elif len(activities) == 1:
        variant = CharacteristicVariant.STATIC
    else:
        variant = CharacteristicVariant.SEMI_DYNAMIC
    return Characteristic(variant, activities, Fraction(total, support), support, total)
