import numpy as np
import pytest

from evensearch.criteria import BitString, ItemList, SearchSpec


@pytest.fixture
def instance_r():
    """n=2, m=3, L=[101,010,110,011], identity, z=110 (matches only at 2)."""
    items = ItemList.from_strings(["101", "010", "110", "011"])
    spec = SearchSpec("identity", BitString.parse("110"))
    return spec, items


@pytest.fixture
def rng():
    return np.random.default_rng(20261016)


ACCEPTANCE_REPORT = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_REPORT:
        return
    terminalreporter.section("acceptance criteria")
    for line in ACCEPTANCE_REPORT:
        terminalreporter.write_line(line)
