import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sepgraph.errors import ValidationError
from sepgraph.graph import (MeasureGraph, connected_component, graph_to_dict, load_graph,
                            path_intersection_count)
from sepgraph.oracle import enumerate_simple_paths

from .conftest import random_graph


def test_minimal_document():
    g = load_graph({"vertices": [{"id": "v", "mu": 1}, {"id": "w", "mu": 1}], "edges": [["v", "w"]]})
    assert g.n == 2 and g.n_edges == 1


def test_path_document_adjacency():
    doc = {"vertices": [{"id": s, "mu": 1.0} for s in "vaw"], "edges": [["v", "a"], ["a", "w"]]}
    g = load_graph(json.dumps(doc))
    assert [g.labels[z] for z in g.neighbors(g.index("a"))] == ["v", "w"]


@pytest.mark.parametrize("doc, fragment", [
    ({"vertices": [{"id": "a", "mu": 0}], "edges": []}, "non-positive mass"),
    ({"vertices": [{"id": "a", "mu": -1}], "edges": []}, "non-positive mass"),
    ({"vertices": [{"id": "a", "mu": 1}], "edges": [["a", "b"]]}, "dangling edge endpoint 'b'"),
    ({"vertices": [{"id": "a", "mu": 1}, {"id": "a", "mu": 2}], "edges": []}, "duplicate vertex id 'a'"),
    ({"vertices": [{"id": "a", "mu": 1}, {"id": "b", "mu": 2}], "edges": [["a", "b"], ["b", "a"]]},
     "duplicate edge"),
    ({"vertices": [{"id": "a", "mu": 1}], "edges": [["a", "a"]]}, "self-loop"),
])
def test_invalid_documents(doc, fragment):
    with pytest.raises(ValidationError, match=fragment):
        load_graph(doc)


def test_load_from_file(tmp_path, parallel):
    path = tmp_path / "g.json"
    path.write_text(json.dumps(graph_to_dict(parallel)))
    g = load_graph(str(path))
    assert g.labels == parallel.labels and np.array_equal(g.mu, parallel.mu)


def test_round_trip():
    doc = {"vertices": [{"id": "v", "mu": 1.5}, {"id": "x", "mu": 2.0}, {"id": "w", "mu": 0.25}],
           "edges": [["w", "x"], ["v", "x"]]}
    back = graph_to_dict(load_graph(doc))
    assert back["vertices"] == doc["vertices"]
    assert {frozenset(e) for e in back["edges"]} == {frozenset(e) for e in doc["edges"]}


def test_graph_is_read_only(parallel):
    with pytest.raises(ValueError):
        parallel.mu[0] = 3.0


def test_component_small():
    g = MeasureGraph.from_edges([1, 1, 1], [(0, 1), (1, 2)])
    assert connected_component(g, 0).tolist() == [True, True, True]
    iso = MeasureGraph.from_edges([1, 1], [])
    assert connected_component(iso, 0).tolist() == [True, False]


@pytest.mark.parametrize("seed", range(20))
def test_component_matches_path_existence(seed):
    rng = np.random.default_rng(seed)
    g = random_graph(rng, 5, prob=0.3)
    for v in range(5):
        comp = connected_component(g, v)
        for w in range(5):
            assert comp[w] == bool(enumerate_simple_paths(g, (v, w)))


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 40), st.integers(0, 2**32 - 1))
def test_component_is_partition(n, seed):
    g = random_graph(np.random.default_rng(seed), n, prob=min(1.0, 1.5 / n))
    comps = [connected_component(g, v) for v in range(n)]
    for u in range(n):
        assert comps[u][u]
        for w in range(n):
            assert comps[u][w] == comps[w][u]
            if comps[u][w]:
                assert np.array_equal(comps[u], comps[w])


@pytest.mark.parametrize("path, A, expected", [
    ((0, 1, 2), {1}, 1),
    ((0, 1, 0, 1, 2), {1}, 1),
    ((0, 1, 3, 2), {1, 3, 2}, 3),
])
def test_path_intersection_count(path, A, expected):
    assert path_intersection_count(path, A) == expected
    mask = np.zeros(4, dtype=bool)
    mask[list(A)] = True
    assert path_intersection_count(path, mask) == expected


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(0, 7), min_size=1, max_size=12), st.sets(st.integers(0, 7)))
def test_intersection_count_bound(path, A):
    assert path_intersection_count(path, A) <= min(len(A), len(set(path)))
