"""Acceptance gate: one test per release criterion, each printing a verdict line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see one line per
criterion. Tolerances are fixed here and nowhere else.
"""

from __future__ import annotations

import json
import random
import subprocess
import sys
import time
from fractions import Fraction
from pathlib import Path

import pytest
from fastapi.testclient import TestClient

from attrlens import (
    AggregationFn,
    CharacteristicVariant,
    FilterQuery,
    Selection,
    TypeVariant,
    aggregate,
    build_profile,
    can_replay,
    classify_characteristic,
    classify_type,
    degree_of_variation,
    discover_dfg,
    enhance_model,
    extract_values,
    filter_attributes,
    filter_result_to_json,
    map_categories,
    parse_csv,
    profiles_to_json,
    shift_nonnegative,
)
from attrlens.service import LogStore, create_app

from synth import make_log, parity_csv, planted_characteristic_log, random_categorical_log
from test_variability import cv_oracle, rank_oracle

DATA = Path(__file__).parent / "data"
TABLE1 = DATA / "table1.csv"

CV_TOLERANCE_PP = 0.05  # percentage points


def _report(criterion: str, status: str = "PASS") -> None:
    print(f"acceptance[{criterion}]: {status}")


def _canonical(text: str) -> str:
    return json.dumps(json.loads(text), sort_keys=True, ensure_ascii=False, separators=(",", ":"))


def test_table1_typing(table1_log):
    """Both Table 1 lab values classify quantitative at th = 0.05, within one second."""
    t0 = time.perf_counter()
    glucose = classify_type(table1_log, "Glucose Value", 0.05)
    creatinine = classify_type(table1_log, "Creatinine Value", 0.05)
    elapsed = time.perf_counter() - t0
    assert glucose.variant is TypeVariant.QUANTITATIVE
    assert glucose.cf == Fraction(1)
    assert creatinine.variant is TypeVariant.QUANTITATIVE
    assert creatinine.cf == Fraction(1, 2)
    assert creatinine.cf > Fraction(1, 20)
    assert elapsed < 1.0
    _report("table1-typing")


def test_table1_characteristics(table1_log):
    """Both attributes dynamic, four covered activities, exactly three occurrences per trace."""
    for attr in ("Glucose Value", "Creatinine Value"):
        ch = classify_characteristic(table1_log, attr)
        assert ch.variant is CharacteristicVariant.DYNAMIC, attr
        assert ch.activity_count == 4, attr
        assert ch.avg_per_trace == Fraction(3), attr
    _report("table1-characteristics")


def test_table1_cv(table1_log):
    """Per-trace and averaged CVs at the documented sample-std convention."""
    glucose = degree_of_variation(
        table1_log, "Glucose Value", classify_type(table1_log, "Glucose Value")
    )
    creatinine = degree_of_variation(
        table1_log, "Creatinine Value", classify_type(table1_log, "Creatinine Value")
    )
    assert glucose.per_trace["1"] == pytest.approx(27.13, abs=CV_TOLERANCE_PP)
    assert glucose.per_trace["2"] == pytest.approx(23.42, abs=CV_TOLERANCE_PP)
    assert glucose.deg_var == pytest.approx(25.28, abs=CV_TOLERANCE_PP)
    assert glucose.deg_var > creatinine.deg_var
    _report("table1-cv")


def test_shift_path():
    """Documented shift example is exact; shifting zeroes the minimum on random data."""
    shifted, offset = shift_nonnegative([-2.0, 2.0, 4.0])
    assert shifted == (0.0, 4.0, 6.0)
    assert offset == 2.0

    rng = random.Random(42)
    for _ in range(1000):
        values = [rng.uniform(-1e6, 1e6) for _ in range(rng.randint(1, 12))]
        if min(values) >= 0:
            values[rng.randrange(len(values))] = -abs(rng.uniform(1e-3, 1e6))
        post, off = shift_nonnegative(values)
        assert min(post) == 0.0
        assert off == abs(min(values))
    _report("shift-path")


def test_scale_invariance():
    """Scaling positive dynamic attributes by any c > 0 leaves per-trace CVs unchanged."""
    rng = random.Random(77)
    n_attrs = 500
    attrs = [f"m{i}" for i in range(n_attrs)]
    factors = {a: rng.uniform(1e-9, 1e6) for a in attrs}

    base_traces = {}
    scaled_traces = {}
    for t in range(10):
        base_rows, scaled_rows = [], []
        for _ in range(5):
            values = {a: rng.uniform(0.1, 1000.0) for a in attrs}
            base_rows.append(("measure", values))
            scaled_rows.append(("measure", {a: v * factors[a] for a, v in values.items()}))
        base_traces[f"c{t}"] = base_rows
        scaled_traces[f"c{t}"] = scaled_rows

    base_log = make_log(base_traces)
    scaled_log = make_log(scaled_traces)
    for attr in attrs:
        base = degree_of_variation(base_log, attr, classify_type(base_log, attr))
        scaled = degree_of_variation(scaled_log, attr, classify_type(scaled_log, attr))
        for case, cv in base.per_trace.items():
            assert scaled.per_trace[case] == pytest.approx(cv, rel=1e-9), attr
    _report("scale-invariance")


def test_classification_oracle():
    """Fifty attributes of planted characteristic are all recovered."""
    log, expected = planted_characteristic_log(
        random.Random(123), n_static=17, n_semi=17, n_dynamic=16
    )
    assert len(expected) == 50
    hits = sum(
        classify_characteristic(log, attr).variant.value == label
        for attr, label in expected.items()
    )
    assert hits == 50
    _report("classification-oracle", f"PASS ({hits}/50)")


def test_mapping_oracle():
    """Brute-force frequency counting reproduces every category rank."""
    log = random_categorical_log(random.Random(321), n_attrs=100)
    checked = 0
    for attr in log.catalog:
        expected = rank_oracle(
            [e.attributes[attr] for e in log.events() if attr in e.attributes]
        )
        assert map_categories(log, attr).as_dict() == expected, attr
        checked += 1
    assert checked == 100
    _report("mapping-oracle", f"PASS ({checked}/100)")


@pytest.mark.xfail(
    reason="target of five nodes is unattainable: the fixture log contains exactly "
    "four distinct activities, and its own companion clauses (four edges, starts, "
    "ends, replay) pin the node set to those four",
    strict=True,
)
def test_table1_dfg_as_stated(table1_log):
    """Literal criterion text: five nodes, four edges, starts, ends, replay."""
    _report("table1-dfg-as-stated", "FAIL (documented: fixture has 4 distinct activities)")
    model = discover_dfg(table1_log)
    assert len(model.activities) == 5
    assert len(model.edges) == 4
    assert model.start_activities == {"Admit to hospital": 2}
    assert model.end_activities == {"Discharge Patient": 2}
    assert all(can_replay(model, t) for t in table1_log.traces)


def test_table1_dfg_verified(table1_log):
    """DFG shape as derivable from the fixture: every clause except the node count."""
    model = discover_dfg(table1_log)
    assert len(model.activities) == 4
    assert set(model.activities) == {
        "Admit to hospital",
        "Treat in Medical Ward",
        "Treat in ICU",
        "Discharge Patient",
    }
    assert len(model.edges) == 4
    assert all(freq == 1 for freq in model.edges.values())
    assert model.start_activities == {"Admit to hospital": 2}
    assert model.end_activities == {"Discharge Patient": 2}
    assert all(can_replay(model, t) for t in table1_log.traces)
    _report("table1-dfg-verified", "PASS (4 nodes; 5-node target documented as unattainable)")


def test_table1_aggregation(table1_log):
    """Exact means at the two shared activities; full-coverage enhancement hits 4 activities."""
    mean = AggregationFn.parse("mean")
    admit = aggregate(extract_values(table1_log, "Admit to hospital", "Glucose Value"), mean)
    discharge = aggregate(extract_values(table1_log, "Discharge Patient", "Glucose Value"), mean)
    assert admit == 137.5
    assert discharge == 115.0

    dep = enhance_model(
        discover_dfg(table1_log), table1_log, Selection("Glucose Value", mean)
    )
    assert len(dep.annotations) == 4
    _report("table1-aggregation")


@pytest.fixture(scope="module")
def big_csv(tmp_path_factory) -> Path:
    data = parity_csv(random.Random(2024), n_traces=1000)
    path = tmp_path_factory.mktemp("parity") / "big.csv"
    path.write_bytes(data)
    return path


class TestEndToEndParity:
    """CLI output and HTTP responses equal direct library results after canonicalization."""

    def test_cli_profile_parity_table1(self, table1_log):
        result = subprocess.run(
            [sys.executable, "-m", "attrlens.cli", "profile", str(TABLE1)],
            capture_output=True,
            text=True,
            timeout=60,
        )
        assert result.returncode == 0
        expected = profiles_to_json(build_profile(table1_log, 0.05), 0.05)
        assert _canonical(result.stdout) == _canonical(expected)

    def test_cli_filter_parity_table1(self, capsys, table1_log):
        from attrlens.cli import main

        assert main(["filter", str(TABLE1), "--characteristic", "dynamic", "--cv-min", "10"]) == 0
        out = capsys.readouterr().out
        query = FilterQuery(characteristic="dynamic", cv_min=10.0)
        expected = filter_result_to_json(
            filter_attributes(build_profile(table1_log, 0.05), query), query
        )
        assert _canonical(out) == _canonical(expected)

    def test_cli_profile_parity_big_log(self, capsys, big_csv):
        from attrlens.cli import main

        log = parse_csv(big_csv.read_bytes())
        assert len(log.traces) == 1000
        assert main(["profile", str(big_csv)]) == 0
        out = capsys.readouterr().out
        assert _canonical(out) == _canonical(profiles_to_json(build_profile(log, 0.05), 0.05))

    def test_http_parity_both_logs(self, table1_csv_bytes, big_csv):
        client = TestClient(create_app(LogStore()))
        for raw in (table1_csv_bytes, big_csv.read_bytes()):
            log = parse_csv(raw)
            log_id = client.post("/logs", content=raw).json()["id"]

            profile_body = client.get(f"/logs/{log_id}/profile").text
            assert _canonical(profile_body) == _canonical(
                profiles_to_json(build_profile(log, 0.05), 0.05)
            )

            attr_body = client.get(
                f"/logs/{log_id}/attributes",
                params={"characteristic": "dynamic", "cvMin": 5, "cvMax": 100},
            ).text
            query = FilterQuery(characteristic="dynamic", cv_min=5.0, cv_max=100.0)
            assert _canonical(attr_body) == _canonical(
                filter_result_to_json(
                    filter_attributes(build_profile(log, 0.05), query), query
                )
            )
        _report("end-to-end-parity")
