import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from catopo import zoo  # noqa: E402


@pytest.fixture
def paper3():
    return zoo.paper3()


@pytest.fixture
def identity():
    return zoo.identity()


@pytest.fixture
def shift():
    return zoo.shift()


@pytest.fixture
def rot3():
    return zoo.rot3()


@pytest.fixture
def wallxor():
    return zoo.wallxor()


# one summary line per acceptance criterion

_CRITERIA = []


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance" in report.nodeid:
        name = report.nodeid.split("::")[-1]
        status = "PASS" if report.passed else "FAIL"
        _CRITERIA.append((name, status, report.duration))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for name, status, duration in _CRITERIA:
        terminalreporter.write_line(f"{status}  {name}  ({duration:.2f}s)")
