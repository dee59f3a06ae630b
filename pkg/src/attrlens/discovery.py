"""Directly-follows graph discovery.

The discovered model is the plain DFG: one node per activity name with its
event frequency, one edge per observed direct succession with its traversal
frequency, plus start and end activity frequencies. Gateways and other
model elements are out of scope because enhancement only decorates
activities.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Mapping

from .errors import EmptyLogError
from .eventlog import EventLog, Trace


@dataclass(frozen=True)
class ProcessModel:
    """Activity nodes and directly-follows edges with frequencies."""

    activities: Mapping[str, int]
    edges: Mapping[tuple[str, str], int]
    start_activities: Mapping[str, int]
    end_activities: Mapping[str, int]


def discover_dfg(log: EventLog) -> ProcessModel:
    """Discover the directly-follows graph of ``log``."""
    if not log.traces:
        raise EmptyLogError("cannot discover a model from an empty log")
    activities: Counter = Counter()
    edges: Counter = Counter()
    starts: Counter = Counter()
    ends: Counter = Counter()
    for trace in log.traces:
        names = trace.activities
        activities.update(names)
        starts[names[0]] += 1
        ends[names[-1]] += 1
        edges.update(zip(names, names[1:]))
    return ProcessModel(dict(activities), dict(edges), dict(starts), dict(ends))


def filter_edges(model: ProcessModel, min_frequency: int) -> ProcessModel:
    """Display aid: drop edges below ``min_frequency``; nodes are kept."""
    kept = {edge: n for edge, n in model.edges.items() if n >= min_frequency}
    return ProcessModel(model.activities, kept, model.start_activities, model.end_activities)


def can_replay(model: ProcessModel, trace: Trace) -> bool:
    """Whether every step of ``trace`` is an activity or edge of ``model``."""
    names = trace.activities
    if not names:
        return False
    if any(name not in model.activities for name in names):
        return False
    return all(pair in model.edges for pair in zip(names, names[1:]))
