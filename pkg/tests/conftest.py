import os
import time

import pytest
from hypothesis import settings

settings.register_profile("ci", max_examples=60, deadline=None)
settings.register_profile("dev", max_examples=200, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "ci"))

_CRITERIA = []


class Criterion:
    """Times one acceptance criterion and records a pass/fail line."""

    def __init__(self, name, limit):
        self.name = name
        self.limit = limit
        self.detail = ""

    def __enter__(self):
        self.start = time.perf_counter()
        self.entry = [self.name, False, 0.0, self.limit, ""]
        _CRITERIA.append(self.entry)
        return self

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.perf_counter() - self.start
        self.entry[1:] = [exc_type is None and elapsed < self.limit, elapsed, self.limit,
                          self.detail if exc_type is None else f"{exc_type.__name__}: {exc}"]
        if exc_type is None:
            assert elapsed < self.limit, f"{self.name}: {elapsed:.2f} s exceeds {self.limit} s"
        return False


@pytest.fixture
def criterion():
    return Criterion


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, elapsed, limit, detail in _CRITERIA:
        tail = f"  {detail}" if detail else ""
        terminalreporter.write_line(
            f"{'PASS' if ok else 'FAIL'}  {name:<34} {elapsed:7.3f} s (limit {limit} s){tail}")
