"""Randomised cross-check of the fast routines against the exhaustive oracle."""
import itertools
import math

import numpy as np

from . import oracle
from .graph import MeasureGraph, graph_to_dict
from .mincut import min_vertex_cut, pencil_from_flow
from .separation import disc_sr, disc_width, fibrate, is_separating, slimify

REL = 1e-9


def random_graph(rng, n, edge_prob=None, mu_range=(0.1, 10.0)):
    if edge_prob is None:
        edge_prob = rng.uniform(0.2, 0.8)
    edges = [e for e in itertools.combinations(range(n), 2) if rng.random() < edge_prob]
    mu = rng.uniform(*mu_range, size=n)
    return MeasureGraph.from_edges(mu, edges)


def random_subset(rng, n, prob=0.5):
    return rng.random(n) < prob


def _close(a, b, rel=REL):
    if math.isinf(a) or math.isinf(b):
        return a == b
    return abs(a - b) <= rel * max(1.0, abs(a), abs(b))


def check_instance(g, t, rng):
    """Return a list of failed check names for one graph and terminal pair."""
    failed = []
    cut = min_vertex_cut(g, t)
    brute = oracle.brute_min_sr(g, t)
    if not _close(cut.value, brute.value) or not _close(cut.value, cut.flow_value):
        failed.append("cut_vs_ratio")
    if not is_separating(g, t, cut.cut):
        failed.append("cut_separating")
    A = random_subset(rng, g.n)
    if disc_width(g, t, A) != oracle.brute_width(g, t, A):
        failed.append("width")
    connected = disc_width(g, t, np.zeros(g.n, dtype=bool)) != math.inf
    if connected and is_separating(g, t, A):
        try:
            fib = fibrate(g, t, A)
        except AssertionError:
            failed.append("fibration")
        else:
            if g.mass(fib.chosen_set) > disc_sr(g, t, A).value * (1 + REL):
                failed.append("fibration")
        if brute.width1_witness is not None:
            slim = slimify(g, t, sorted(brute.width1_witness))
            if not _close(g.mass(slim), cut.value):
                failed.append("slim_optimum")
    if connected and cut.flow_value > 0:
        pencil = pencil_from_flow(g, t)
        if pencil.crossing(A) > g.mass(A) / pencil.flow_value + 1e-9:
            failed.append("pencil")
    return failed


def run_verify(max_vertices=7, seed=42, count=200):
    rng = np.random.default_rng(seed)
    totals = {}
    counterexample = None
    for _ in range(count):
        n = int(rng.integers(2, max_vertices + 1))
        g = random_graph(rng, n)
        v, w = (int(x) for x in rng.integers(0, n, size=2))
        failed = check_instance(g, (v, w), rng)
        for name in failed:
            totals[name] = totals.get(name, 0) + 1
        if failed and counterexample is None:
            counterexample = {"graph": graph_to_dict(g), "v": g.labels[v], "w": g.labels[w], "failed": failed}
    return {
        "seed": seed,
        "max_vertices": max_vertices,
        "instances": count,
        "counterexamples": sum(totals.values()),
        "failures_by_check": dict(sorted(totals.items())),
        "first_counterexample": counterexample,
    }
