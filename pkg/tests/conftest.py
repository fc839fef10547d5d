import itertools

import pytest
from hypothesis import strategies as st

from rainbowtx.collection import GraphCollection


def complete(n):
    return list(itertools.combinations(range(n), 2))


def cycle(order):
    return [(order[i], order[(i + 1) % len(order)]) for i in range(len(order))]


def copies(n, edges, s):
    return GraphCollection.from_edges(n, [edges] * s)


@pytest.fixture
def k5_hamilton():
    return copies(5, complete(5), 5)


@st.composite
def collections(draw, max_n=7, max_s=5, min_n=2):
    n = draw(st.integers(min_n, max_n))
    s = draw(st.integers(1, max_s))
    pairs = complete(n)
    graphs = [draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else [] for _ in range(s)]
    return GraphCollection.from_edges(n, graphs)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
