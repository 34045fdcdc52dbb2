import numpy as np
import pytest

from acceptance_log import RESULTS as ACCEPTANCE_RESULTS
from fluidrank import Graph


@pytest.fixture
def g1():
    """Single dangling node."""
    return Graph.from_edges([], n=1)


@pytest.fixture
def g2():
    """Two-node cycle."""
    return Graph.from_edges([(0, 1), (1, 0)])


@pytest.fixture
def g3():
    return Graph.from_edges([(0, 1), (0, 2), (1, 2)])


@pytest.fixture
def chain():
    return Graph.from_edges([(0, 1), (1, 2)])


@pytest.fixture
def rng():
    return np.random.default_rng(20121010)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key, title, status, detail in sorted(ACCEPTANCE_RESULTS, key=lambda r: int(r[0])):
        terminalreporter.write_line(f"criterion {key:>2} {status:<4} {title}: {detail}")
