import pytest

from homnambu.catalog import build_heisenberg, build_sl2


@pytest.fixture
def sl2_2():
    return build_sl2(2)


@pytest.fixture
def sl2_1():
    return build_sl2(1)


@pytest.fixture
def h3():
    return build_heisenberg(3)


@pytest.fixture
def h4():
    return build_heisenberg(4)


@pytest.fixture
def h5():
    return build_heisenberg(5)


# one summary line per acceptance criterion, printed after every run
ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[n])
