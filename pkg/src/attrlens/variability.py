"""Degree-of-variability measurement for dynamic attributes.

Per trace, the coefficient of variation (sample standard deviation over mean,
as a percentage) measures how much an attribute's values move within one
process instance; the attribute's overall degree of variability is the
arithmetic mean of those per-trace CVs. Quantitative attributes with negative
values are shifted by the absolute log-wide minimum first, and categorical
attributes are mapped to frequency ranks 1..n, so the CV is always computed
on nonnegative numbers.
"""

from __future__ import annotations

import math
import statistics
from collections import Counter
from dataclasses import dataclass
from typing import Mapping, Sequence

from .errors import NoDataError, UndefinedCvError, VariabilityUndefinedError
from .eventlog import AttrValue, EventLog, attribute_values
from .typeclass import TypeClass

__all__ = [
    "CategoryEntry",
    "CategoryMapping",
    "ShiftNormalization",
    "CategoryNormalization",
    "CvReport",
    "trace_cv",
    "shift_nonnegative",
    "map_categories",
    "degree_of_variation",
]


@dataclass(frozen=True)
class CategoryEntry:
    value: AttrValue
    frequency: int
    rank: int


@dataclass(frozen=True)
class CategoryMapping:
    """Frequency-ranked mapping of categories to the integers 1..n.

    Ranks follow the frequency-sorted order (most frequent first); frequency
    ties are broken by the lexicographic text rendering of the category so
    identical logs always produce identical mappings.
    """

    entries: tuple[CategoryEntry, ...]

    def rank_of(self, value: AttrValue) -> int:
        for entry in self.entries:
            if entry.value == value:
                return entry.rank
        raise KeyError(value)

    def as_dict(self) -> dict:
        return {entry.value: entry.rank for entry in self.entries}


@dataclass(frozen=True)
class ShiftNormalization:
    """All values were incremented by ``offset`` (the absolute log-wide minimum)."""

    offset: float


@dataclass(frozen=True)
class CategoryNormalization:
    """Values were replaced by their frequency ranks before the CV."""

    mapping: CategoryMapping


Normalization = ShiftNormalization | CategoryNormalization | None


@dataclass(frozen=True)
class CvReport:
    """Per-trace CVs and their mean for one attribute.

    ``per_trace`` holds only traces contributing at least two non-missing
    values; traces with exactly one are counted in
    ``skipped_single_value_traces`` instead of being scored as zero
    variability.
    """

    per_trace: Mapping[str, float]
    deg_var: float
    contributing_traces: int
    skipped_single_value_traces: int
    normalization: Normalization


def trace_cv(values: Sequence[float]) -> float:
    """Coefficient of variation of a value sequence, in percent.

    Uses the sample standard deviation (divisor n-1) and returns 0 whenever
    the dispersion is zero, even around a zero mean. A zero mean with
    positive dispersion has no defined CV; the normalization paths make that
    case unreachable for pipeline data.
    """
    if len(values) < 2:
        raise ValueError("CV needs at least two values")
    if any(not math.isfinite(v) for v in values):
        raise ValueError("CV needs finite values")
    sigma = statistics.stdev(values)
    if sigma == 0:
        return 0.0
    mu = statistics.fmean(values)
    if mu == 0:
        raise UndefinedCvError("CV undefined: zero mean with positive dispersion")
    return sigma / mu * 100.0


def shift_nonnegative(values: Sequence[float]) -> tuple[tuple[float, ...], float]:
    """Shift a sequence so its minimum is nonnegative.

    When the minimum is negative, its absolute value is added to every
    element and returned as the offset; otherwise the sequence is returned
    unchanged with offset 0. Applying the shift twice equals applying it
    once.
    """
    if not values:
        raise ValueError("cannot shift an empty sequence")
    lowest = min(values)
    if lowest >= 0:
        return tuple(values), 0.0
    offset = abs(lowest)
    return tuple(v + offset for v in values), offset


def map_categories(log: EventLog, attr: str) -> CategoryMapping:
    """Rank the categories of ``attr`` by log-wide frequency, 1 = most frequent."""
    values = attribute_values(log, attr)
    if not values:
        raise NoDataError(f"attribute {attr!r} has no values")
    frequencies = Counter(values)
    ordered = sorted(frequencies.items(), key=lambda item: (-item[1], str(item[0])))
    entries = tuple(
        CategoryEntry(value, frequency, rank)
        for rank, (value, frequency) in enumerate(ordered, start=1)
    )
    return CategoryMapping(entries)


def degree_of_variation(log: EventLog, attr: str, type_class: TypeClass) -> CvReport:
    """Average per-trace CV of ``attr`` over the traces that use it.

    Pipeline: restrict to the using sub-log; per trace, collect the
    attribute's non-missing values in event order; replace categorical values
    by their frequency ranks, or shift quantitative values by one log-wide
    offset when any value in the sub-log is negative; score every trace with
    at least two values and average.
    """
    from .characteristics import filter_traces_with

    sublog = filter_traces_with(log, attr)
    if not sublog.traces:
        raise NoDataError(f"attribute {attr!r} is unused in this log")

    normalization: Normalization = None
    if type_class.is_quantitative:
        lowest = min(attribute_values(sublog, attr))
        offset = abs(lowest) if lowest < 0 else 0.0
        if offset > 0:
            normalization = ShiftNormalization(offset)

        def prepare(raw: list[AttrValue]) -> list[float]:
            return [v + offset for v in raw]

    else:
        mapping = map_categories(log, attr)
        normalization = CategoryNormalization(mapping)
        ranks = mapping.as_dict()

        def prepare(raw: list[AttrValue]) -> list[float]:
            return [float(ranks[v]) for v in raw]

    per_trace: dict[str, float] = {}
    skipped = 0
    for trace in sublog.traces:
        raw = [e.attributes[attr] for e in trace.events if attr in e.attributes]
        if len(raw) < 2:
            skipped += 1
            continue
        per_trace[trace.case] = trace_cv(prepare(raw))
    if not per_trace:
        raise VariabilityUndefinedError(
            f"attribute {attr!r}: no trace has two or more values"
        )

    deg_var = statistics.fmean(per_trace.values())
    return CvReport(per_trace, deg_var, len(per_trace), skipped, normalization)
