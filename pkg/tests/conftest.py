from __future__ import annotations

import pytest

from knotinv.table import default_table

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def table():
    return default_table()


@pytest.fixture(scope="session")
def K(table):
    """Resolve a knot name (``3_1``, ``3_1^2``, ``3_1#4_1``) from the bundled table."""
    return table.knot


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
