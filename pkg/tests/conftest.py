import sys
import numpy as np
import pytest
from hypothesis import strategies as st

from robsel.model import DiscreteScenarios, Instance, IntervalCosts

WORKED_C = [2, 3, 1, 5]
WORKED_UPPER = [4, 1, 6, 2]


def worked(k=1):
    return Instance(WORKED_C, IntervalCosts([0] * 4, WORKED_UPPER), 2, k)


def i2():
    return Instance([1, 5, 5], DiscreteScenarios([[9, 2, 9], [9, 9, 3]]), 1)


@pytest.fixture
def worked_rec():
    return worked(1)


@pytest.fixture
def worked_ts():
    return worked(None)


@pytest.fixture
def tiny():
    return i2()


@st.composite
def interval_instances(draw, max_n=8, bound=12, recoverable=True):
    n = draw(st.integers(2, max_n))
    p = draw(st.integers(1, n - 1))
    k = draw(st.integers(0, p)) if recoverable else None
    costs = st.lists(st.integers(0, bound), min_size=n, max_size=n)
    C = draw(costs)
    a, b = np.array(draw(costs)), np.array(draw(costs))
    return Instance(C, IntervalCosts(np.minimum(a, b), np.maximum(a, b)), p, k)


@st.composite
def discrete_instances(draw, max_n=7, max_K=3, bound=12, recoverable=False):
    n = draw(st.integers(2, max_n))
    K = draw(st.integers(1, max_K))
    p = draw(st.integers(1, n - 1))
    k = draw(st.integers(0, p)) if recoverable else None
    C = draw(st.lists(st.integers(0, bound), min_size=n, max_size=n))
    S = [draw(st.lists(st.integers(0, bound), min_size=n, max_size=n)) for _ in range(K)]
    return Instance(C, DiscreteScenarios(S), p, k)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "REPORT", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
