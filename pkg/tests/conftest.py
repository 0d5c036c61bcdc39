import functools
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from groupbounds.catalog import construct


@functools.lru_cache(maxsize=None)
def group(spec):
    return construct(spec)


@pytest.fixture
def S3():
    return group("symmetric:3")


@pytest.fixture
def Q8():
    return group("dicyclic:2")


@pytest.fixture
def S4():
    return group("symmetric:4")


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        terminalreporter.write_line(results[n])
