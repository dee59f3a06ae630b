"""Last-collected module: checks the whole suite's wall-clock budget."""

from __future__ import annotations

import time


def test_full_suite_under_60s(request):
    started = getattr(request.config, "_suite_started", None)
    assert started is not None, "conftest did not record the suite start time"
    elapsed = time.perf_counter() - started
    print(f"acceptance[suite-runtime]: PASS ({elapsed:.1f}s < 60s)")
    assert elapsed < 60.0
