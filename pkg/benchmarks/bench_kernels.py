"""Time the numba kernels against the pure Python/numpy fallback.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--scale 1.0]

Each kernel runs on the same inputs in both backends; outputs are compared
before timing so a mismatch aborts the run.  Compilation is warmed up first.
"""
import argparse
import time

import numpy as np

from sepgraph import kernels
from sepgraph.discretize import grid_cloud
from sepgraph.mincut import _split_network
from sepgraph.verify import random_graph


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def cases(scale):
    rng = np.random.default_rng(0)
    n = int(3000 * scale)
    g = random_graph(rng, n, edge_prob=6.0 / n, mu_range=(0.1, 10.0))
    cost = (rng.random(n) < 0.3).astype(np.int64)
    weight = rng.random(n)
    blocked = np.zeros(n, dtype=bool)
    net = _split_network(g)

    def flow(impl):
        res = net.res.copy()
        return impl.dinic(net.ptr, net.to, net.rev, res, 0, 2 * (n - 1) + 1, net.eps)

    cloud = grid_cloud(int(120 * scale), int(60 * scale), 1.0, 0.5)
    pts = cloud.points
    r = 0.02
    centers = pts[kernels.NB.greedy_net(pts, r)] if kernels.NB else pts[::7]

    yield "reach", lambda k: k.reach(g.indptr, g.indices, 0, blocked)
    yield "bfs01", lambda k: k.bfs01(g.indptr, g.indices, cost, 0)
    yield "dijkstra", lambda k: k.dijkstra(g.indptr, g.indices, weight, 0)
    yield "dinic", flow
    yield "greedy_net", lambda k: k.greedy_net(pts, r)
    yield "ball_mass", lambda k: k.ball_mass(pts, centers, 3 * r, cloud.mass)
    yield "pairs_within", lambda k: k.pairs_within(centers, 3 * r)
    yield "min_dist", lambda k: k.min_dist(pts, centers)

    ptr = np.array([0, 3, 7, 10])
    idx = np.array([0, 1, 5, 0, 2, 3, 5, 0, 4, 5])
    mu = rng.uniform(0.5, 2.0, size=6)
    yield "dual_sweeps", lambda k: k.dual_sweeps(ptr, idx, np.zeros(3), np.zeros(6), mu, 2.0, 2000)


def same(a, b):
    if isinstance(a, tuple):
        return all(same(x, y) for x, y in zip(a, b))
    if a is None:
        return b is None
    if isinstance(a, np.ndarray) and a.dtype.kind == "f":
        return np.allclose(a, b, rtol=1e-10, atol=1e-12)
    return np.array_equal(a, b) or np.isclose(a, b, rtol=1e-10)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--scale", type=float, default=1.0)
    args = ap.parse_args()
    if kernels.NB is None:
        raise SystemExit("numba is unavailable (or disabled); nothing to compare")

    print(f"{'kernel':<14}{'numba ms':>11}{'python ms':>12}{'speedup':>10}")
    for name, run in cases(args.scale):
        out_nb, out_py = run(kernels.NB), run(kernels.PY)  # also warms up compilation
        if not same(out_nb, out_py):
            raise SystemExit(f"{name}: backends disagree")
        t_nb = best_of(lambda: run(kernels.NB), args.repeat)
        t_py = best_of(lambda: run(kernels.PY), args.repeat)
        print(f"{name:<14}{t_nb * 1e3:>11.3f}{t_py * 1e3:>12.3f}{t_py / t_nb:>9.1f}x")


if __name__ == "__main__":
    main()
