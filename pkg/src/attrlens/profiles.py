"""Attribute profiles and interactive filtering.

A profile bundles the three selection mechanisms for one attribute: its
type class, its process characteristic, and (for dynamic attributes) its
degree of variability. Profiles are pure caches: every field is
recomputable from the log.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Mapping

from .characteristics import Characteristic, CharacteristicVariant, classify_characteristic
from .errors import EmptyLogError, InvalidRangeError
from .eventlog import EventLog
from .typeclass import DEFAULT_TYPE_THRESHOLD, TypeClass, TypeVariant, classify_type
from .variability import (
    CategoryNormalization,
    CvReport,
    ShiftNormalization,
    degree_of_variation,
)

PROFILE_SCHEMA = "profile/1"
SELECTION_SCHEMA = "selection/1"


@dataclass(frozen=True)
class AttributeProfile:
    """Everything known about one attribute; ``cv`` is present iff dynamic."""

    name: str
    kind: str
    type_class: TypeClass
    characteristic: Characteristic
    cv: CvReport | None

    @property
    def is_dynamic(self) -> bool:
        return self.characteristic.variant is CharacteristicVariant.DYNAMIC


def build_profile(log: EventLog, th: float = DEFAULT_TYPE_THRESHOLD) -> dict[str, AttributeProfile]:
    """Profile every catalog attribute of ``log``: typing, characteristic, CV.

    CV reports are computed for dynamic attributes only, following the
    pipeline order typing -> characteristics -> variability. A dynamic
    attribute always has at least one trace with two values, so its CV
    report always exists.
    """
    if not log.traces:
        raise EmptyLogError("cannot profile an empty log")
    profiles: dict[str, AttributeProfile] = {}
    for name in sorted(log.catalog):
        type_class = classify_type(log, name, th)
        characteristic = classify_characteristic(log, name)
        cv = None
        if characteristic.variant is CharacteristicVariant.DYNAMIC:
            cv = degree_of_variation(log, name, type_class)
        profiles[name] = AttributeProfile(name, log.catalog[name], type_class, characteristic, cv)
    return profiles


@dataclass(frozen=True)
class FilterQuery:
    """Interactive filter: activity scope, characteristic, CV range, type.

    CV bounds are percentages, inclusive on the attribute's degree of
    variability, and only legal together with ``characteristic="dynamic"``.
    """

    activity: str | None = None
    characteristic: str | None = None
    cv_min: float | None = None
    cv_max: float | None = None
    type_filter: str | None = None

    def validate(self) -> None:
        if self.characteristic is not None:
            choices = [v.value for v in CharacteristicVariant]
            if self.characteristic not in choices:
                raise InvalidRangeError(
                    f"unknown characteristic {self.characteristic!r}; expected one of {choices}"
                )
        if self.type_filter is not None:
            choices = [v.value for v in TypeVariant]
            if self.type_filter not in choices:
                raise InvalidRangeError(
                    f"unknown type filter {self.type_filter!r}; expected one of {choices}"
                )
        has_bounds = self.cv_min is not None or self.cv_max is not None
        if has_bounds and self.characteristic != CharacteristicVariant.DYNAMIC.value:
            raise InvalidRangeError("CV bounds require characteristic=dynamic")
        if self.cv_min is not None and self.cv_max is not None and self.cv_min > self.cv_max:
            raise InvalidRangeError(f"cv_min {self.cv_min} exceeds cv_max {self.cv_max}")


@dataclass(frozen=True)
class FilterResult:
    """Matching attributes split by type, plus pre-CV-filter counts per list."""

    quantitative: tuple[AttributeProfile, ...]
    categorical: tuple[AttributeProfile, ...]
    total_quantitative: int
    total_categorical: int


def _sort_key(profile: AttributeProfile):
    if profile.cv is not None:
        return (0, -profile.cv.deg_var, profile.name)
    return (1, 0.0, profile.name)


def filter_attributes(
    profiles: Mapping[str, AttributeProfile], query: FilterQuery
) -> FilterResult:
    """Apply ``query`` to ``profiles``.

    An attribute passes the activity filter when the activity is in its
    coverage set. Lists are sorted by degree of variability descending, then
    name; attributes without a CV sort after those with one, by name. The
    totals count candidates before the CV range is applied, so callers can
    show both numbers.
    """
    query.validate()
    candidates = []
    for name in sorted(profiles):
        profile = profiles[name]
        if query.activity is not None and query.activity not in profile.characteristic.activities:
            continue
        if (
            query.characteristic is not None
            and profile.characteristic.variant.value != query.characteristic
        ):
            continue
        if query.type_filter is not None and profile.type_class.variant.value != query.type_filter:
            continue
        candidates.append(profile)

    total_quant = sum(1 for p in candidates if p.type_class.is_quantitative)
    total_cat = len(candidates) - total_quant

    if query.cv_min is not None or query.cv_max is not None:
        low = query.cv_min if query.cv_min is not None else float("-inf")
        high = query.cv_max if query.cv_max is not None else float("inf")
        candidates = [p for p in candidates if p.cv is not None and low <= p.cv.deg_var <= high]

    candidates.sort(key=_sort_key)
    quantitative = tuple(p for p in candidates if p.type_class.is_quantitative)
    categorical = tuple(p for p in candidates if not p.type_class.is_quantitative)
    return FilterResult(quantitative, categorical, total_quant, total_cat)


def _normalization_to_dict(cv: CvReport) -> dict:
    norm = cv.normalization
    if norm is None:
        return {"kind": "none"}
    if isinstance(norm, ShiftNormalization):
        return {"kind": "shifted", "offset": norm.offset}
    if isinstance(norm, CategoryNormalization):
        return {
            "kind": "category-mapped",
            "mapping": [
                {"value": e.value, "frequency": e.frequency, "rank": e.rank}
                for e in norm.mapping.entries
            ],
        }
    raise TypeError(f"unknown normalization {norm!r}")


def _cv_to_dict(cv: CvReport) -> dict:
    return {
        "perTrace": dict(cv.per_trace),
        "degVar": cv.deg_var,
        "contributingTraces": cv.contributing_traces,
        "skippedSingleValueTraces": cv.skipped_single_value_traces,
        "normalization": _normalization_to_dict(cv),
    }


def profile_to_dict(profile: AttributeProfile) -> dict:
    return {
        "name": profile.name,
        "kind": profile.kind,
        "type": {
            "class": profile.type_class.variant.value,
            "cf": float(profile.type_class.cf),
            "threshold": float(profile.type_class.threshold),
        },
        "characteristic": {
            "characteristic": profile.characteristic.variant.value,
            "activityCount": profile.characteristic.activity_count,
            "activities": sorted(profile.characteristic.activities),
            "avgPerTrace": str(profile.characteristic.avg_per_trace),
            "traceSupport": profile.characteristic.trace_support,
            "totalOccurrences": profile.characteristic.total_occurrences,
        },
        "cv": _cv_to_dict(profile.cv) if profile.cv is not None else None,
    }


def profiles_to_json(profiles: Mapping[str, AttributeProfile], th: float) -> str:
    """Canonical JSON for a full profile map (``profile/1``)."""
    doc = {
        "schema": PROFILE_SCHEMA,
        "threshold": float(th),
        "attributes": {name: profile_to_dict(p) for name, p in profiles.items()},
    }
    return json.dumps(doc, sort_keys=True, ensure_ascii=False, separators=(",", ":"))


def _entry(profile: AttributeProfile) -> dict:
    return {
        "name": profile.name,
        "kind": profile.kind,
        "type": profile.type_class.variant.value,
        "characteristic": profile.characteristic.variant.value,
        "degVar": profile.cv.deg_var if profile.cv is not None else None,
    }


def filter_result_to_json(result: FilterResult, query: FilterQuery) -> str:
    """Canonical JSON for a filter result (``selection/1``)."""
    doc = {
        "schema": SELECTION_SCHEMA,
        "query": {
            "activity": query.activity,
            "characteristic": query.characteristic,
            "cvMin": query.cv_min,
            "cvMax": query.cv_max,
            "type": query.type_filter,
        },
        "quantitative": [_entry(p) for p in result.quantitative],
        "categorical": [_entry(p) for p in result.categorical],
        "totals": {
            "quantitative": result.total_quantitative,
            "categorical": result.total_categorical,
        },
    }
    return json.dumps(doc, sort_keys=True, ensure_ascii=False, separators=(",", ":"))
