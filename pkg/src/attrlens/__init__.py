"""attrlens: profile event-log attributes and build data-enhanced process models."""

from .characteristics import (
    Characteristic,
    CharacteristicVariant,
    activity_coverage,
    avg_occurrences,
    classify_characteristic,
    filter_traces_with,
)
from .discovery import ProcessModel, can_replay, discover_dfg, filter_edges
from .enhancement import (
    AggKind,
    AggregationFn,
    AttributeAggregation,
    EnhancedModel,
    Selection,
    aggregate,
    dep_to_dict,
    enhance_model,
    export_dot,
    export_json,
    extract_values,
)
from .errors import (
    AttrLensError,
    EmptyLogError,
    EmptyValuesError,
    InvalidRangeError,
    KindMismatchError,
    NoDataError,
    ParseError,
    UndefinedCvError,
    UnknownActivityError,
    UnknownLogError,
    VariabilityUndefinedError,
)
from .eventlog import (
    AttrValue,
    Event,
    EventLog,
    Trace,
    attribute_catalog,
    attribute_values,
    build_log,
    log_from_json,
    log_to_json,
    value_kind,
)
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
from .typeclass import DEFAULT_TYPE_THRESHOLD, TypeClass, TypeVariant, classify_type, distinct_ratio
from .variability import (
    CategoryMapping,
    CategoryNormalization,
    CvReport,
    ShiftNormalization,
    degree_of_variation,
    map_categories,
    shift_nonnegative,
    trace_cv,
)

__version__ = "0.1.0"
