import itertools
import math

import numpy as np
import pytest

from sepgraph.errors import CapExceeded
from sepgraph.graph import MeasureGraph
from sepgraph.oracle import (brute_min_separating_mass, brute_min_sr, brute_modulus, brute_position,
                             brute_width, enumerate_simple_paths, slim_conditions)


def k4():
    return MeasureGraph.from_edges([1, 1, 1, 1], list(itertools.combinations(range(4), 2)))


def test_k4_path_count():
    paths = enumerate_simple_paths(k4(), (0, 3))
    assert len(paths) == 5
    assert paths == sorted(paths)


def test_degenerate_paths():
    g = MeasureGraph.from_edges([1, 1], [])
    assert enumerate_simple_paths(g, (0, 0)) == [(0,)]
    assert enumerate_simple_paths(g, (0, 1)) == []
    assert brute_width(g, (0, 1), [0]) == math.inf
    assert brute_position(g, (0, 1), [0]) == [math.inf, math.inf]


def test_caps():
    g = MeasureGraph.from_edges([1] * 13, [(i, i + 1) for i in range(12)])
    with pytest.raises(CapExceeded):
        enumerate_simple_paths(g, (0, 12))
    with pytest.raises(CapExceeded):
        brute_modulus(MeasureGraph.from_edges([1] * 9, []), (0, 1), 2.0)


def test_parallel_brute(parallel):
    assert brute_width(parallel, (0, 3), [1, 2]) == 1
    best = brute_min_sr(parallel, (0, 3))
    assert best.value == pytest.approx(3.0)
    assert best.width1_witness == frozenset({1, 2})
    assert brute_min_separating_mass(parallel, (0, 3)).witness == frozenset({1, 2})


def test_chain_modulus():
    g = MeasureGraph.from_edges([1, 1, 1], [(0, 1), (1, 2)])
    for p in (1.5, 2.0, 3.0):
        assert brute_modulus(g, (0, 2), p) == pytest.approx(3 * (1 / 3) ** p, rel=1e-7)
    assert brute_modulus(g, (0, 2), 1) == pytest.approx(1.0)


def test_slim_conditions_chain(chain4):
    assert slim_conditions(chain4, (0, 3), [1]).four_way == (True,) * 4
    bad = slim_conditions(chain4, (0, 3), [1, 2])
    assert bad.four_way == (False,) * 4


def test_literal_single_crossing_counterexample():
    # w=1 and a dead end 2 both hang off v=0; A={1,2} is slim, yet no v-w
    # path through the dead end meets A only once
    g = MeasureGraph.from_edges([1, 1, 1], [(0, 1), (0, 2)])
    cond = slim_conditions(g, (0, 1), [1, 2])
    assert cond.four_way == (True,) * 4
    assert cond.single_crossing_path is False


def test_prefix_equivalence_exhaustive_small():
    # every connected graph on <= 5 vertices, every pair, every separating set
    import networkx as nx

    from sepgraph.separation import is_separating, is_slim

    checked = 0
    for G in nx.graph_atlas_g()[2:]:
        n = G.number_of_nodes()
        if n > 5:
            break
        if not nx.is_connected(G):
            continue
        g = MeasureGraph.from_edges(np.ones(n), list(G.edges()))
        for v, w in itertools.combinations(range(n), 2):
            for bits in range(1, 1 << n):
                A = [z for z in range(n) if (bits >> z) & 1]
                if not is_separating(g, (v, w), A):
                    continue
                cond = slim_conditions(g, (v, w), A)
                assert len(set(cond.four_way)) == 1, (list(G.edges()), v, w, A)
                assert cond.first_contact == is_slim(g, (v, w), A).slim
                checked += 1
    assert checked > 1000
