"""Exception hierarchy for the toolkit.

Every error carries a short machine-readable ``code`` so the CLI and the
HTTP service can map failures to exit codes and status responses without
matching on message text.
"""

from __future__ import annotations


class AttrLensError(Exception):
    """Base class for all data and usage errors raised by this package."""

    code = "error"

    def __init__(self, message: str):
        super().__init__(message)
        self.message = message


class ParseError(AttrLensError):
    """Input bytes could not be turned into an event log."""

    code = "parse-error"


class EmptyLogError(AttrLensError):
    """An operation that needs at least one trace received an empty log."""

    code = "empty-log"


class NoDataError(AttrLensError):
    """The attribute is absent or has no non-missing values."""

    code = "no-data"


class UnknownActivityError(AttrLensError):
    code = "unknown-activity"


class KindMismatchError(AttrLensError):
    """Aggregation family does not match the kind of the value multiset."""

    code = "kind-mismatch"


class EmptyValuesError(AttrLensError):
    code = "empty-values"


class UndefinedCvError(AttrLensError):
    """Coefficient of variation is undefined: dispersion around a zero mean."""

    code = "undefined-cv"


class VariabilityUndefinedError(AttrLensError):
    """No trace contributes two or more values, so no per-trace CV exists."""

    code = "variability-undefined"


class InvalidRangeError(AttrLensError):
    code = "invalid-range"


class UnknownLogError(AttrLensError):
    code = "unknown-log"
