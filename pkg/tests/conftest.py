import itertools

import numpy as np
import pytest

from sepgraph.graph import MeasureGraph

# vertex order in the fixtures: v, a, b, w


@pytest.fixture
def parallel():
    """v-a-w and v-b-w with mu = (10, 1, 2, 10)."""
    return MeasureGraph.from_edges([10, 1, 2, 10], [(0, 1), (1, 3), (0, 2), (2, 3)], list("vabw"))


@pytest.fixture
def chain4():
    """v-a-b-w with mu(a)=1, mu(b)=5."""
    return MeasureGraph.from_edges([1, 1, 5, 1], [(0, 1), (1, 2), (2, 3)], list("vabw"))


@pytest.fixture
def chain3():
    """v-a-w with mu = (5, 3, 7)."""
    return MeasureGraph.from_edges([5, 3, 7], [(0, 1), (1, 2)], list("vaw"))


def random_graph(rng, n, prob=None, connected=False):
    while True:
        p = rng.uniform(0.25, 0.8) if prob is None else prob
        edges = [e for e in itertools.combinations(range(n), 2) if rng.random() < p]
        g = MeasureGraph.from_edges(rng.uniform(0.1, 10.0, size=n), edges)
        if not connected or _is_connected(g):
            return g


def _is_connected(g):
    from sepgraph.graph import connected_component

    return bool(connected_component(g, 0).all())


def random_mask(rng, n, prob=0.5):
    return rng.random(n) < prob


def pytest_terminal_summary(terminalreporter):
    from . import test_acceptance

    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for num in sorted(test_acceptance.RESULTS):
            terminalreporter.write_line(test_acceptance.RESULTS[num])
