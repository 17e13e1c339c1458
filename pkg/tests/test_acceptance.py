"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run ``pytest -m acceptance -s`` to see the lines inline; they are also
collected into the terminal summary.  ``python3 tests/test_acceptance.py``
runs the same checks without pytest.
"""
import itertools
import math
import subprocess
import sys
import time

import networkx as nx
import numpy as np
import pytest

from sepgraph.discretize import estimate_doubling, grid_cloud, net_experiment, riesz_weights
from sepgraph.graph import MeasureGraph, connected_component
from sepgraph.mincut import min_vertex_cut, pencil_from_flow
from sepgraph.modulus import modulus_p, shortest_rho_path
from sepgraph.oracle import brute_min_sr, brute_modulus, slim_conditions
from sepgraph.separation import disc_width, fibrate, is_separating, slimify
from sepgraph.verify import random_graph, random_subset

pytestmark = pytest.mark.acceptance

RESULTS = {}


def report(num, ok, detail):
    line = f"criterion {num:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
    RESULTS[num] = line
    print(line)
    return ok


def rel_err(a, b):
    return abs(a - b) / max(abs(a), abs(b), 1e-300) if a != b else 0.0


def atlas(max_nodes=6):
    """Connected graphs on 2..max_nodes vertices, one per isomorphism class."""
    return [G for G in nx.graph_atlas_g()[1:]
            if 2 <= G.number_of_nodes() <= max_nodes and nx.is_connected(G)]


def catalog():
    """Criterion-1 instances: atlas graphs with random masses, then random graphs."""
    rng = np.random.default_rng(2024)
    for G in atlas():
        n = G.number_of_nodes()
        g = MeasureGraph.from_edges(rng.uniform(0.1, 10.0, size=n), list(G.edges()))
        for v, w in itertools.combinations_with_replacement(range(n), 2):
            yield g, (v, w)
    for _ in range(1000):
        n = int(rng.integers(2, 9))
        g = random_graph(rng, n)
        yield g, tuple(int(x) for x in rng.integers(0, n, size=2))


_CATALOG = None


def cached_catalog():
    global _CATALOG
    if _CATALOG is None:
        _CATALOG = [(g, t, brute_min_sr(g, t), min_vertex_cut(g, t)) for g, t in catalog()]
    return _CATALOG


def criterion_1():
    start = time.perf_counter()
    cases = cached_catalog()
    bad = sum(rel_err(cut.value, brute.value) > 1e-9 for _, _, brute, cut in cases)
    elapsed = time.perf_counter() - start
    return report(1, bad == 0 and elapsed < 60,
                  f"min cut vs brute inf SR: {len(cases)} instances, {bad} counterexamples, {elapsed:.1f}s")


def criterion_2():
    rng = np.random.default_rng(7)
    done = bad = 0
    while done < 500:
        n = int(rng.integers(2, 11))
        g = random_graph(rng, n)
        t = tuple(int(x) for x in rng.integers(0, n, size=2))
        A = random_subset(rng, n, 0.6)
        if not (connected_component(g, t[0])[t[1]] and is_separating(g, t, A)):
            continue
        done += 1
        fib = fibrate(g, t, A)
        union = np.zeros(n, dtype=int)
        ok = len(fib.levels) == disc_width(g, t, A)
        for L in fib.levels:
            ok &= is_separating(g, t, L) and disc_width(g, t, L) == 1
            union += L
        ok &= union.max() <= 1 and not np.any(union.astype(bool) & ~A)
        ok &= g.mass(fib.chosen_set) <= g.mass(A) / fib.width * (1 + 1e-12)
        bad += not ok
    return report(2, bad == 0, f"fibrations: {done} instances, {bad} failures")


def criterion_3():
    checked = literal = prefix = 0
    first = None
    for G in atlas():
        n = G.number_of_nodes()
        g = MeasureGraph.from_edges(np.ones(n), list(G.edges()))
        for v, w in itertools.combinations(range(n), 2):
            for bits in range(1, 1 << n):
                A = np.array([(bits >> z) & 1 for z in range(n)], dtype=bool)
                if not is_separating(g, (v, w), A):
                    continue
                checked += 1
                cond = slim_conditions(g, (v, w), A)
                if len(set(cond.four_way_literal)) > 1:
                    literal += 1
                    if first is None:
                        first = (list(G.edges()), v, w, np.flatnonzero(A).tolist())
                prefix += len(set(cond.four_way)) > 1
    detail = (f"four slim characterisations, whole-path crossing: {checked} instances, {literal} disagreements"
              f" (prefix crossing: {prefix}); first: edges={first[0]} v={first[1]} w={first[2]}"
              f" A={first[3]}" if first else f"{checked} instances, 0 disagreements")
    return report(3, literal == 0, detail)


def criterion_4():
    bad = checked = 0
    for g, t, brute, cut in cached_catalog():
        if brute.width1_witness is None:
            continue
        checked += 1
        slim = slimify(g, t, sorted(brute.width1_witness))
        bad += abs(g.mass(slim) - cut.value) > 1e-9 * max(1.0, cut.value)
    return report(4, bad == 0, f"slimified width-1 optimum vs cut: {checked} instances, {bad} failures")


def criterion_5():
    bad = checked = 0
    for g, t, _, cut in cached_catalog():
        if not connected_component(g, t[0])[t[1]]:
            continue
        checked += 1
        res = modulus_p(g, t, 1)
        ok = rel_err(res.value, cut.value) <= 1e-6
        # primal: the cut indicator is admissible; dual: the flow pencil certifies the value
        _, length = shortest_rho_path(g, t, res.rho)
        ok &= length >= 1 - 1e-9 and rel_err(float(np.sum(res.lambdas)), res.value) <= 1e-6
        bad += not ok
    return report(5, bad == 0, f"Mod_1 vs cut with primal/dual certificates: {checked} instances, {bad} failures")


def criterion_6():
    start = time.perf_counter()
    rng = np.random.default_rng(11)
    worst, count = 0.0, 0
    for G in atlas():
        n = G.number_of_nodes()
        g = MeasureGraph.from_edges(rng.uniform(0.1, 10.0, size=n), list(G.edges()))
        t = (0, n - 1)
        for p in (1.5, 2.0, 3.0):
            worst = max(worst, rel_err(modulus_p(g, t, p, tol=1e-8).value, brute_modulus(g, t, p)))
            count += 1
    chain = MeasureGraph.from_edges(np.ones(3), [(0, 1), (1, 2)])
    chain_err = max(rel_err(modulus_p(chain, (0, 2), p, tol=1e-10).value, 3 * (1 / 3) ** p)
                    for p in (1.5, 2.0, 3.0))
    elapsed = time.perf_counter() - start
    ok = worst <= 1e-5 and chain_err <= 1e-8 and elapsed < 30
    return report(6, ok, f"Mod_p vs convex oracle: {count} solves, worst rel {worst:.1e}; "
                         f"chain rel {chain_err:.1e}; {elapsed:.1f}s")


def criterion_7():
    rng = np.random.default_rng(5)
    worst, graphs = -math.inf, 0
    while graphs < 100:
        n = int(rng.integers(2, 13))
        g = random_graph(rng, n)
        t = tuple(int(x) for x in rng.integers(0, n, size=2))
        if min_vertex_cut(g, t).flow_value <= 0:
            continue
        graphs += 1
        pencil = pencil_from_flow(g, t)
        for _ in range(200):
            A = random_subset(rng, n)
            worst = max(worst, pencil.crossing(A) - g.mass(A) / pencil.flow_value)
    return report(7, worst <= 1e-9, f"pencil crossing bound: {graphs} graphs x 200 sets, max violation {worst:.2e}")


def criterion_8():
    start = time.perf_counter()
    cloud = grid_cloud(200, 100, 1.0, 0.5)
    P = cloud.points
    x = int(np.argmin(((P - [0.05, 0.25]) ** 2).sum(axis=1)))
    y = int(np.argmin(((P - [0.95, 0.25]) ** 2).sum(axis=1)))
    rect = np.abs(P[:, 0] - 0.5) <= 0.05
    dumbbell = rect | ((np.abs(P[:, 0] - 0.5) <= 0.15) & ((P[:, 1] <= 0.1) | (P[:, 1] >= 0.4)))
    schedule = [0.05, 0.03, 0.02, 0.012]
    a = net_experiment(cloud, x, y, rect, schedule).rows
    b = net_experiment(cloud, x, y, dumbbell, schedule).rows
    cuts = [row["cut_over_r"] / 2 for row in a]
    in_band = all(0.5 / 4 <= c <= 0.5 * 4 for c in cuts)
    ordered = all(rb["sr_over_r"] > ra["sr_over_r"] for ra, rb in zip(a, b))
    elapsed = time.perf_counter() - start
    series = ", ".join(f"{c:.3f}" for c in cuts)
    return report(8, in_band and ordered and elapsed < 120,
                  f"cut/(2r) = [{series}] vs 0.5 (x4 band); dumbbell SR > rectangle SR at all r: {ordered}; "
                  f"{elapsed:.1f}s")


def criterion_9():
    k = 100
    xs = (np.arange(k) + 0.5) / k
    X, Y = np.meshgrid(xs, xs, indexing="ij")
    from sepgraph.discretize import PointCloud

    cloud = PointCloud.from_points(np.column_stack([X.ravel(), Y.ravel()]))
    x = int(np.argmin(((cloud.points - [0.1, 0.5]) ** 2).sum(axis=1)))
    y = int(np.argmin(((cloud.points - [0.9, 0.5]) ** 2).sum(axis=1)))
    cd = estimate_doubling(cloud, samples=200, seed=0)
    d = float(cloud.distances_from(x)[y])
    parts, ok = [], True
    for L in (1.0, 2.0):
        total = riesz_weights(cloud, x, y, L).total
        bound = 8 * cd * L * d * 1.25
        ok &= total <= bound
        parts.append(f"L={L:g}: {total:.2f} <= {bound:.2f}")
    return report(9, ok, f"Riesz total mass (C_D est {cd:.2f}): " + "; ".join(parts))


def criterion_10():
    cmd = [sys.executable, "-m", "sepgraph.cli", "verify", "--seed", "42"]
    first = subprocess.run(cmd, capture_output=True, check=False).stdout
    second = subprocess.run(cmd, capture_output=True, check=False).stdout
    return report(10, first == second and len(first) > 0,
                  f"verify output identical across runs: {first == second} ({len(first)} bytes)")


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9, criterion_10]


@pytest.mark.parametrize("criterion", CRITERIA, ids=[f"criterion_{i}" for i in range(1, 11)])
def test_criterion(criterion):
    assert criterion()


if __name__ == "__main__":
    results = [c() for c in CRITERIA]
    sys.exit(0 if all(results) else 1)
