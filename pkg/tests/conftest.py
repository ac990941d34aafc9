import pytest

from rankswap.ring import PointSet


@pytest.fixture
def P5():
    return PointSet.standard(5)


@pytest.fixture
def P6():
    return PointSet.standard(6)


def tri(x):
    """Sign function written out by cases, used by several oracles."""
    if x > 0:
        return 1
    if x < 0:
        return -1
    return 0


ACCEPTANCE_LINES: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])
