from __future__ import annotations

import random
import sys
import time
from contextlib import contextmanager
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))

ACCEPTANCE_LINES = pytest.StashKey[list]()


def pytest_configure(config: pytest.Config) -> None:
    config.stash[ACCEPTANCE_LINES] = []


def pytest_terminal_summary(terminalreporter, exitstatus, config: pytest.Config) -> None:
    lines = config.stash.get(ACCEPTANCE_LINES, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240601)


@pytest.fixture
def criterion(request):
    """Context manager timing one acceptance criterion and recording a PASS/FAIL line."""
    lines = request.config.stash[ACCEPTANCE_LINES]

    @contextmanager
    def record(number: int, title: str, limit_s: float):
        start = time.perf_counter()
        detail: list[str] = []
        try:
            yield detail
        except BaseException as exc:
            elapsed = time.perf_counter() - start
            reason = str(exc).splitlines()[0] if str(exc) else type(exc).__name__
            line = f"criterion {number:2d}: FAIL  {title} [{elapsed:.1f} s / {limit_s:g} s] {reason}"
            lines.append(line)
            print(line)
            raise
        elapsed = time.perf_counter() - start
        extra = f" {'; '.join(detail)}" if detail else ""
        if elapsed > limit_s:
            line = f"criterion {number:2d}: FAIL  {title} [{elapsed:.1f} s / {limit_s:g} s] time limit exceeded{extra}"
            lines.append(line)
            print(line)
            pytest.fail(line)
        line = f"criterion {number:2d}: PASS  {title} [{elapsed:.1f} s / {limit_s:g} s]{extra}"
        lines.append(line)
        print(line)

    return record
