import itertools

import pytest

from magmalab.core import from_flat


@pytest.fixture(scope="session")
def order2():
    return [from_flat(2, f) for f in itertools.product(range(2), repeat=4)]


@pytest.fixture(scope="session")
def order3():
    return [from_flat(3, f) for f in itertools.product(range(3), repeat=9)]


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
