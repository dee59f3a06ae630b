"""Attribute aggregation and data-enhanced process models.

Per activity, the non-missing values of an attribute form a multiset that an
aggregation function reduces to a displayable result. Attaching those
aggregations to the activities of a process model yields a data-enhanced
model, exportable as DOT or canonical JSON.
"""

from __future__ import annotations

import json
import statistics
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from typing import Mapping

from .characteristics import activity_coverage
from .errors import EmptyValuesError, KindMismatchError, UnknownActivityError
from .eventlog import AttrValue, EventLog, value_kind
from .discovery import ProcessModel

DEP_SCHEMA = "depmodel/1"

#: Share pairs of a top-k result: ((category, percentage), ...).
SharesResult = tuple[tuple[AttrValue, float], ...]

AggregationResult = float | str | bool | SharesResult | None


class AggKind(str, Enum):
    MEAN = "mean"
    MEDIAN = "median"
    MIN = "min"
    MAX = "max"
    STDDEV = "stddev"
    COUNT = "count"
    MODE = "mode"
    TOPK = "topk"


QUANTITATIVE_AGGS = frozenset(
    {AggKind.MEAN, AggKind.MEDIAN, AggKind.MIN, AggKind.MAX, AggKind.STDDEV, AggKind.COUNT}
)
CATEGORICAL_AGGS = frozenset({AggKind.MODE, AggKind.TOPK})


@dataclass(frozen=True)
class AggregationFn:
    """An aggregation selector; ``k`` applies to top-k shares only."""

    kind: AggKind
    k: int | None = None

    def __post_init__(self):
        if self.kind is AggKind.TOPK:
            if self.k is None or self.k < 1:
                raise ValueError("topk needs k >= 1")
        elif self.k is not None:
            raise ValueError(f"{self.kind.value} takes no k")

    @classmethod
    def parse(cls, text: str) -> AggregationFn:
        """Parse CLI/API notation: ``mean``, ``mode``, ``topk`` or ``topk:2``."""
        name, _, suffix = text.strip().lower().partition(":")
        if name == "topk":
            k = int(suffix) if suffix else 3
            return cls(AggKind.TOPK, k)
        if suffix:
            raise ValueError(f"{name!r} takes no argument")
        try:
            return cls(AggKind(name))
        except ValueError:
            raise ValueError(f"unknown aggregation {text!r}") from None

    def label(self) -> str:
        if self.kind is AggKind.TOPK:
            return f"top{self.k}"
        return self.kind.value


def extract_values(log: EventLog, activity: str, attr: str) -> list[AttrValue]:
    """Multiset of non-missing ``attr`` values at ``activity``, in log order."""
    if activity not in log.activity_names():
        raise UnknownActivityError(f"activity {activity!r} does not occur in the log")
    return [
        e.attributes[attr]
        for trace in log.traces
        for e in trace.events
        if e.activity == activity and attr in e.attributes
    ]


def aggregate(values: list[AttrValue], fn: AggregationFn) -> AggregationResult:
    """Reduce a value multiset with ``fn``.

    Quantitative functions require number values; mode and top-k shares
    require text or boolean values. Mode ties break lexicographically on the
    text rendering; top-k shares are percentages and sum to at most 100.
    """
    if not values:
        raise EmptyValuesError("cannot aggregate an empty multiset")
    kinds = {value_kind(v) for v in values}
    numeric = kinds == {"number"}
    if fn.kind in QUANTITATIVE_AGGS and not numeric:
        raise KindMismatchError(f"{fn.label()} needs number values, got {sorted(kinds)}")
    if fn.kind in CATEGORICAL_AGGS and numeric:
        raise KindMismatchError(f"{fn.label()} needs categorical values, got numbers")

    if fn.kind is AggKind.MEAN:
        return statistics.fmean(values)
    if fn.kind is AggKind.MEDIAN:
        return float(statistics.median(values))
    if fn.kind is AggKind.MIN:
        return min(values)
    if fn.kind is AggKind.MAX:
        return max(values)
    if fn.kind is AggKind.STDDEV:
        # sample standard deviation; a single observation displays as zero dispersion
        return statistics.stdev(values) if len(values) > 1 else 0.0
    if fn.kind is AggKind.COUNT:
        return float(len(values))
    frequencies = Counter(values)
    ordered = sorted(frequencies.items(), key=lambda item: (-item[1], str(item[0])))
    if fn.kind is AggKind.MODE:
        return ordered[0][0]
    total = len(values)
    return tuple((value, count / total * 100.0) for value, count in ordered[: fn.k])


@dataclass(frozen=True)
class AttributeAggregation:
    """One aggregation attached to one activity.

    ``result`` is ``None`` exactly when the activity had no non-missing
    values for the attribute (the explicit "no data" marker);
    ``excluded_missing`` counts the events at the activity whose value was
    missing and therefore left out of the multiset.
    """

    activity: str
    attribute: str
    values: tuple[AttrValue, ...]
    fn: AggregationFn
    result: AggregationResult
    excluded_missing: int


@dataclass(frozen=True)
class Selection:
    """What to aggregate and where: ``activity=None`` means every activity using the attribute."""

    attribute: str
    fn: AggregationFn
    activity: str | None = None


@dataclass(frozen=True)
class EnhancedModel:
    """A process model whose activities carry sets of aggregations."""

    model: ProcessModel
    annotations: Mapping[str, frozenset[AttributeAggregation]]

    @classmethod
    def plain(cls, model: ProcessModel) -> EnhancedModel:
        return cls(model, {})


def enhance_model(
    model: ProcessModel | EnhancedModel,
    log: EventLog,
    selection: Selection,
) -> EnhancedModel:
    """Attach the selected aggregation to ``model``, returning a new enhanced model.

    With a selected activity, the aggregation is attached there even when no
    values exist (as a "no data" marker). Without one, every activity where
    the attribute occurs is annotated. Repeated calls accumulate annotations
    as set union.
    """
    dep = model if isinstance(model, EnhancedModel) else EnhancedModel.plain(model)
    if selection.activity is not None:
        if selection.activity not in dep.model.activities:
            raise UnknownActivityError(f"activity {selection.activity!r} is not in the model")
        targets = [selection.activity]
    else:
        targets = sorted(activity_coverage(log, selection.attribute))
        unknown = [a for a in targets if a not in dep.model.activities]
        if unknown:
            raise UnknownActivityError(
                f"attribute {selection.attribute!r} occurs at {unknown[0]!r}, which is not in the model"
            )

    annotations = {a: set(aggs) for a, aggs in dep.annotations.items()}
    for activity in targets:
        values = extract_values(log, activity, selection.attribute)
        total_at_activity = sum(
            1 for t in log.traces for e in t.events if e.activity == activity
        )
        result = aggregate(values, selection.fn) if values else None
        annotation = AttributeAggregation(
            activity=activity,
            attribute=selection.attribute,
            values=tuple(values),
            fn=selection.fn,
            result=result,
            excluded_missing=total_at_activity - len(values),
        )
        annotations.setdefault(activity, set()).add(annotation)
    return EnhancedModel(dep.model, {a: frozenset(s) for a, s in annotations.items()})


def format_result(result: AggregationResult) -> str:
    """Display rendering with one decimal place; ``None`` renders as ``n/a``."""
    if result is None:
        return "n/a"
    if isinstance(result, bool):
        return "true" if result else "false"
    if isinstance(result, float):
        return f"{result:.1f}"
    if isinstance(result, tuple):
        return ", ".join(f"{_category_text(v)} {share:.1f}%" for v, share in result)
    return str(result)


def _category_text(value: AttrValue) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


def _sorted_annotations(aggs: frozenset[AttributeAggregation]) -> list[AttributeAggregation]:
    return sorted(aggs, key=lambda a: (a.attribute, a.fn.label()))


_DOT_ESCAPES = str.maketrans(
    {c: "\\" + c for c in ("\\", '"', "|", "{", "}", "<", ">")}
)


def _record_escape(text: str) -> str:
    return text.translate(_DOT_ESCAPES)


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_dot(dep: EnhancedModel) -> str:
    """Render as a Graphviz digraph with record-shaped activity nodes.

    Each node shows the activity name, its event frequency, and one line per
    annotation (``attr | fn = value``). Output is deterministic: activities
    and edges are emitted in sorted order.
    """
    lines = ["digraph dep {", "  rankdir=TB;", '  node [shape=record, fontname="Helvetica"];']
    for name in sorted(dep.model.activities):
        fields = [_record_escape(name), f"events: {dep.model.activities[name]}"]
        for agg in _sorted_annotations(dep.annotations.get(name, frozenset())):
            line = f"{agg.attribute} | {agg.fn.label()} = {format_result(agg.result)}"
            fields.append(_record_escape(line))
        lines.append(f"  {_quote(name)} [label=\"{{{'|'.join(fields)}}}\"];")
    for src, dst in sorted(dep.model.edges):
        frequency = dep.model.edges[(src, dst)]
        lines.append(f"  {_quote(src)} -> {_quote(dst)} [label=\"{frequency}\"];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _result_to_dict(agg: AttributeAggregation) -> dict:
    if agg.result is None:
        return {"kind": "none"}
    if isinstance(agg.result, bool):
        return {"kind": "category", "value": agg.result}
    if isinstance(agg.result, float):
        return {"kind": "number", "value": agg.result}
    if isinstance(agg.result, tuple):
        return {
            "kind": "shares",
            "values": [{"share": share, "value": value} for value, share in agg.result],
        }
    return {"kind": "category", "value": agg.result}


def dep_to_dict(dep: EnhancedModel) -> dict:
    """Canonical dictionary form of an enhanced model (``depmodel/1``)."""
    return {
        "schema": DEP_SCHEMA,
        "activities": [
            {
                "name": name,
                "frequency": dep.model.activities[name],
                "annotations": [
                    {
                        "attribute": agg.attribute,
                        "fn": agg.fn.label(),
                        "valueCount": len(agg.values),
                        "excludedMissing": agg.excluded_missing,
                        "result": _result_to_dict(agg),
                    }
                    for agg in _sorted_annotations(dep.annotations.get(name, frozenset()))
                ],
            }
            for name in sorted(dep.model.activities)
        ],
        "edges": [
            {"from": src, "to": dst, "frequency": dep.model.edges[(src, dst)]}
            for src, dst in sorted(dep.model.edges)
        ],
        "starts": dict(sorted(dep.model.start_activities.items())),
        "ends": dict(sorted(dep.model.end_activities.items())),
    }


def export_json(dep: EnhancedModel) -> str:
    """Canonical JSON rendering: sorted keys, full float precision, stable bytes."""
    return json.dumps(dep_to_dict(dep), sort_keys=True, ensure_ascii=False, separators=(",", ":"))
