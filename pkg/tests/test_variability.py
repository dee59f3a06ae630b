from __future__ import annotations

import math
import random
from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from attrlens import (
    CategoryNormalization,
    NoDataError,
    ShiftNormalization,
    UndefinedCvError,
    VariabilityUndefinedError,
    classify_type,
    degree_of_variation,
    map_categories,
    shift_nonnegative,
    trace_cv,
)
from attrlens.errors import AttrLensError

from synth import make_log, random_categorical_log


def cv_oracle(xs):
    """Textbook CV: sample standard deviation over mean, in percent."""
    n = len(xs)
    mu = sum(xs) / n
    var = sum((x - mu) ** 2 for x in xs) / (n - 1)
    sigma = math.sqrt(var)
    return 0.0 if sigma == 0 else sigma / mu * 100.0


def rank_oracle(values):
    """Brute-force frequency ranking: most frequent first, ties by text."""
    ordered = sorted(Counter(values).items(), key=lambda kv: (-kv[1], str(kv[0])))
    return {value: rank for rank, (value, _) in enumerate(ordered, start=1)}


# Frozen from the oracle above on the Table 1 value sequences.
GLUCOSE_CV_CASE1 = 27.152165210427814
GLUCOSE_CV_CASE2 = 23.419423301078574
GLUCOSE_DEG_VAR = 25.285794255753196
CREATININE_CV_CASE1 = 7.872958216222176
CREATININE_CV_CASE2 = 9.116056881941459
CREATININE_DEG_VAR = 8.494507549081817


class TestTraceCv:
    def test_glucose_case1(self):
        assert trace_cv([140, 200, 120]) == pytest.approx(GLUCOSE_CV_CASE1, abs=1e-9)
        # the published figure rounds this to 27%
        assert round(trace_cv([140, 200, 120])) == 27

    def test_creatinine_case1(self):
        assert trace_cv([0.7, 0.7, 0.8]) == pytest.approx(CREATININE_CV_CASE1, abs=1e-9)

    def test_zero_dispersion(self):
        assert trace_cv([5, 5, 5]) == 0.0

    def test_zero_dispersion_beats_zero_mean(self):
        assert trace_cv([0.0, 0.0]) == 0.0

    def test_undefined_for_zero_mean_with_dispersion(self):
        with pytest.raises(UndefinedCvError):
            trace_cv([-1.0, 1.0])

    def test_needs_two_values(self):
        with pytest.raises(ValueError):
            trace_cv([1.0])

    def test_needs_finite_values(self):
        with pytest.raises(ValueError):
            trace_cv([1.0, math.inf])

    def test_matches_oracle_on_random_sequences(self, rng):
        for _ in range(200):
            values = [rng.uniform(0.1, 500) for _ in range(rng.randint(2, 9))]
            assert trace_cv(values) == pytest.approx(cv_oracle(values), rel=1e-12)


class TestShiftNonnegative:
    def test_published_example(self):
        shifted, offset = shift_nonnegative([-2, 2, 4])
        assert shifted == (0, 4, 6)
        assert offset == 2

    def test_already_nonnegative_unchanged(self):
        assert shift_nonnegative([1, 3]) == ((1, 3), 0.0)

    def test_single_negative_value(self):
        assert shift_nonnegative([-5]) == ((0,), 5)

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            shift_nonnegative([])

    @given(st.lists(st.floats(-1e6, 1e6, allow_nan=False), min_size=1, max_size=20))
    @settings(max_examples=100)
    def test_idempotent_and_nonnegative(self, values):
        shifted, _ = shift_nonnegative(values)
        assert min(shifted) >= 0
        again, offset2 = shift_nonnegative(shifted)
        assert again == shifted
        assert offset2 == 0.0


class TestMapCategories:
    def test_frequency_ranking(self):
        log = make_log(
            {"c1": [("s", {"x": v}) for v in ["A"] * 5 + ["B"] * 3 + ["C"] * 2]}
        )
        mapping = map_categories(log, "x")
        assert mapping.as_dict() == {"A": 1, "B": 2, "C": 3}
        assert [e.frequency for e in mapping.entries] == [5, 3, 2]

    def test_single_category(self):
        log = make_log({"c1": [("s", {"x": "X"}) for _ in range(7)]})
        assert map_categories(log, "x").as_dict() == {"X": 1}

    def test_tie_breaks_lexicographically(self):
        log = make_log({"c1": [("s", {"x": v}) for v in ["B", "A", "B", "A"]]})
        assert map_categories(log, "x").as_dict() == {"A": 1, "B": 2}

    def test_no_data(self, table1_log):
        with pytest.raises(NoDataError):
            map_categories(table1_log, "nope")

    def test_matches_brute_force_on_random_logs(self, rng):
        log = random_categorical_log(rng, n_attrs=30)
        for name in log.catalog:
            expected = rank_oracle(
                [e.attributes[name] for e in log.events() if name in e.attributes]
            )
            assert map_categories(log, name).as_dict() == expected

    def test_deterministic_for_identical_logs(self, rng):
        log_a = random_categorical_log(random.Random(3), n_attrs=10)
        log_b = random_categorical_log(random.Random(3), n_attrs=10)
        for name in log_a.catalog:
            assert map_categories(log_a, name) == map_categories(log_b, name)


class TestDegreeOfVariation:
    def test_table1_glucose(self, table1_log):
        tc = classify_type(table1_log, "Glucose Value")
        report = degree_of_variation(table1_log, "Glucose Value", tc)
        assert report.per_trace["1"] == pytest.approx(GLUCOSE_CV_CASE1, abs=1e-9)
        assert report.per_trace["2"] == pytest.approx(GLUCOSE_CV_CASE2, abs=1e-9)
        assert report.deg_var == pytest.approx(GLUCOSE_DEG_VAR, abs=1e-9)
        assert report.contributing_traces == 2
        assert report.skipped_single_value_traces == 0
        assert report.normalization is None

    def test_table1_creatinine_below_glucose(self, table1_log):
        tc = classify_type(table1_log, "Creatinine Value")
        report = degree_of_variation(table1_log, "Creatinine Value", tc)
        assert report.per_trace["1"] == pytest.approx(CREATININE_CV_CASE1, abs=1e-9)
        assert report.per_trace["2"] == pytest.approx(CREATININE_CV_CASE2, abs=1e-9)
        assert report.deg_var == pytest.approx(CREATININE_DEG_VAR, abs=1e-9)
        assert report.deg_var < GLUCOSE_DEG_VAR

    def test_constant_attribute_has_zero_deg_var(self):
        log = make_log({"c1": [("s", {"x": 4.0})] * 3, "c2": [("s", {"x": 4.0})] * 2})
        tc = classify_type(log, "x")
        assert degree_of_variation(log, "x", tc).deg_var == 0.0

    def test_single_value_traces_are_skipped_not_zeroed(self):
        log = make_log(
            {
                "c1": [("s", {"x": 1.0}), ("s", {"x": 3.0})],
                "c2": [("s", {"x": 9.0}), ("t", {})],
            }
        )
        report = degree_of_variation(log, "x", classify_type(log, "x"))
        assert report.contributing_traces == 1
        assert report.skipped_single_value_traces == 1
        assert "c2" not in report.per_trace

    def test_all_single_value_traces_is_undefined(self):
        log = make_log({"c1": [("s", {"x": 1.0})], "c2": [("s", {"x": 2.0})]})
        with pytest.raises(VariabilityUndefinedError) as info:
            degree_of_variation(log, "x", classify_type(log, "x"))
        assert isinstance(info.value, AttrLensError)

    def test_negative_values_shift_log_wide(self):
        log = make_log(
            {
                "c1": [("s", {"x": v}) for v in [-2.0, 2.0, 4.0]],
                "c2": [("s", {"x": v}) for v in [1.0, 5.0]],
            }
        )
        report = degree_of_variation(log, "x", classify_type(log, "x"))
        assert report.normalization == ShiftNormalization(2.0)
        # one global offset: trace c2 is scored on [3, 7], not on its raw values
        assert report.per_trace["c1"] == pytest.approx(cv_oracle([0, 4, 6]), abs=1e-9)
        assert report.per_trace["c2"] == pytest.approx(cv_oracle([3, 7]), abs=1e-9)

    def test_categorical_uses_frequency_ranks(self):
        # five traces, boolean attribute occurring three times per trace
        rng = random.Random(11)
        traces = {
            f"c{i}": [("s", {"flag": rng.random() < 0.7}) for _ in range(3)]
            for i in range(5)
        }
        log = make_log(traces)
        tc = classify_type(log, "flag")
        assert not tc.is_quantitative
        report = degree_of_variation(log, "flag", tc)
        assert isinstance(report.normalization, CategoryNormalization)

        ranks = rank_oracle([e.attributes["flag"] for e in log.events()])
        for trace in log.traces:
            mapped = [float(ranks[e.attributes["flag"]]) for e in trace.events]
            assert report.per_trace[trace.case] == pytest.approx(cv_oracle(mapped), abs=1e-9)

    def test_unused_attribute(self, table1_log):
        with pytest.raises(NoDataError):
            degree_of_variation(table1_log, "nope", classify_type(table1_log, "Glucose Value"))

    @given(
        values=st.lists(st.floats(0.5, 1e4, allow_nan=False), min_size=2, max_size=10),
        factor=st.floats(1e-6, 1e6, exclude_min=True, allow_nan=False),
    )
    @settings(max_examples=100)
    def test_scale_invariance(self, values, factor):
        base = trace_cv(values)
        scaled = trace_cv([v * factor for v in values])
        assert scaled == pytest.approx(base, rel=1e-9)

    def test_deg_var_zero_iff_all_traces_constant(self):
        constant = make_log(
            {"c1": [("s", {"x": 2.0})] * 2, "c2": [("s", {"x": 7.0})] * 4}
        )
        report = degree_of_variation(constant, "x", classify_type(constant, "x"))
        assert report.deg_var == 0.0

        varying = make_log({"c1": [("s", {"x": 2.0}), ("s", {"x": 3.0})]})
        report = degree_of_variation(varying, "x", classify_type(varying, "x"))
        assert report.deg_var > 0.0
