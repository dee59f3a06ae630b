from __future__ import annotations

import random
import time
from pathlib import Path

import pytest

from attrlens import parse_csv, parse_xes

DATA = Path(__file__).parent / "data"


def pytest_configure(config):
    config._suite_started = time.perf_counter()


@pytest.fixture(scope="session")
def table1_csv_bytes() -> bytes:
    return (DATA / "table1.csv").read_bytes()


@pytest.fixture(scope="session")
def table1_xes_bytes() -> bytes:
    return (DATA / "table1.xes").read_bytes()


@pytest.fixture(scope="session")
def table1_log(table1_csv_bytes):
    return parse_csv(table1_csv_bytes)


@pytest.fixture(scope="session")
def table1_xes_log(table1_xes_bytes):
    return parse_xes(table1_xes_bytes)


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20250810)
