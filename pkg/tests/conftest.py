import functools
import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from nihocodes.field import build_field  # noqa: E402


@functools.lru_cache(maxsize=None)
def cached_field(p, m):
    return build_field(p, m)


@pytest.fixture
def field():
    return cached_field


# acceptance criteria register one line each here; printed after the run
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
        terminalreporter.write_line(line)
