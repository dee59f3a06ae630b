"""Categorical vs. quantitative attribute typing via the distinct-value ratio.

The ratio ``cf`` is the number of unique values divided by the number of all
values of an attribute, both counted over non-missing values log-wide. A
numeric attribute is quantitative when ``cf`` strictly exceeds the threshold;
text and boolean attributes are categorical unconditionally, because the
quantitative aggregations require numbers.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .errors import InvalidRangeError, NoDataError
from .eventlog import EventLog, attribute_values

DEFAULT_TYPE_THRESHOLD = 0.05


class TypeVariant(str, Enum):
    CATEGORICAL = "categorical"
    QUANTITATIVE = "quantitative"


@dataclass(frozen=True)
class TypeClass:
    """Typing verdict for one attribute: variant, exact ratio, threshold used."""

    variant: TypeVariant
    cf: Fraction
    threshold: float

    @property
    def is_quantitative(self) -> bool:
        return self.variant is TypeVariant.QUANTITATIVE


def distinct_ratio(log: EventLog, attr: str) -> Fraction:
    """Unique over total non-missing values of ``attr``, as an exact fraction in (0, 1]."""
    values = attribute_values(log, attr)
    if not values:
        raise NoDataError(f"attribute {attr!r} has no values")
    return Fraction(len(set(values)), len(values))


def classify_type(log: EventLog, attr: str, th: float = DEFAULT_TYPE_THRESHOLD) -> TypeClass:
    """Classify ``attr`` as categorical or quantitative at threshold ``th``.

    Only number-kind attributes can be quantitative, and only when
    ``cf > th`` (strict, so ``cf == th`` stays categorical).
    """
    if not 0 < th < 1:
        raise InvalidRangeError(f"type threshold must be in (0, 1), got {th}")
    cf = distinct_ratio(log, attr)
    quantitative = log.catalog.get(attr) == "number" and cf > th
    variant = TypeVariant.QUANTITATIVE if quantitative else TypeVariant.CATEGORICAL
    return TypeClass(variant, cf, th)
