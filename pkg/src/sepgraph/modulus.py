"""Discrete p-modulus of the family of paths joining two vertices.

Densities live on vertices and a path's length is the sum of the density over
its vertices, endpoints included.  For ``p > 1`` the program

    minimise  sum_z mu(z) rho(z)**p   s.t.  rho-length(c) >= 1  for all paths c

is solved by constraint generation: the restricted master over the active
paths is solved in the dual by cyclic coordinate ascent, with the closed-form
primal map ``rho = (s / (p mu))**(1/(p-1))`` where ``s(z)`` sums the
multipliers of active paths through ``z``; a vertex-weighted Dijkstra finds the
most violated path.  ``p == 1`` is the min vertex cut (Fulkerson duality).
"""
import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import DegenerateDuals, NoPath, NonConvergence, ValidationError
from .mincut import PathPencil, min_vertex_cut, pencil_from_flow

SWEEP_BLOCK = 25
MAX_SWEEPS = 400_000


@dataclass(frozen=True)
class ModulusResult:
    p: float
    value: float
    rho: np.ndarray
    active_paths: list
    lambdas: np.ndarray
    gap: float
    iterations: int

    def kkt_residual(self, mu):
        """Largest relative gap between ``rho`` and the primal map of the duals."""
        if self.p == 1:
            return 0.0
        s = np.zeros_like(self.rho)
        for path, lam in zip(self.active_paths, self.lambdas):
            s[list(path)] += lam
        target = (s / (self.p * mu)) ** (1.0 / (self.p - 1.0))
        support = target > 0
        return float(np.max(np.abs(self.rho[support] - target[support]) / target[support], initial=0.0))


def shortest_rho_path(g, t, rho):
    """Least rho-length ``v -> w`` path; returns ``(path, length)``."""
    v, w = (g.check_vertex(x) for x in t)
    rho = np.asarray(rho, dtype=np.float64)
    if np.any(rho < 0):
        raise ValidationError("densities must be nonnegative")
    dist, pred = kernels.dijkstra(g.indptr, g.indices, rho, v)
    if not np.isfinite(dist[w]):
        raise NoPath(f"no path between {v} and {w}")
    path = [w]
    while path[-1] != v:
        path.append(int(pred[path[-1]]))
    return tuple(reversed(path)), float(dist[w])


def _pack(paths):
    ptr = np.zeros(len(paths) + 1, dtype=np.int64)
    ptr[1:] = np.cumsum([len(c) for c in paths])
    idx = np.fromiter((z for c in paths for z in c), dtype=np.int64, count=int(ptr[-1]))
    return ptr, idx


def _modulus_one(g, t):
    cut = min_vertex_cut(g, t)
    if cut.flow_value > 0:
        pencil = pencil_from_flow(g, t)
        paths, lambdas = pencil.paths, pencil.alpha * pencil.flow_value
    else:
        paths, lambdas = [], np.zeros(0)
    gap = abs(cut.value - cut.flow_value) / cut.value if cut.value > 0 else 0.0
    return ModulusResult(1.0, cut.value, cut.cut.astype(np.float64), paths, lambdas, gap, 0)


def modulus_p(g, t, p=2.0, tol=1e-6, max_iter=None):
    p = float(p)
    if not p >= 1:
        raise ValidationError(f"p must be >= 1, got {p}")
    v, w = (g.check_vertex(x) for x in t)
    if p == 1:
        if not _connected(g, v, w):
            raise NoPath(f"no path between {v} and {w}")
        return _modulus_one(g, (v, w))
    max_iter = 10 * g.n * g.n if max_iter is None else max_iter

    q = 1.0 / (p - 1.0)
    mu = np.ascontiguousarray(g.mu, dtype=np.float64)
    hop_path, _ = shortest_rho_path(g, (v, w), np.ones(g.n))
    active = [hop_path]
    known = {hop_path}
    lam = np.zeros(1)
    s = np.zeros(g.n)
    ptr, idx = _pack(active)

    sweeps = 0
    added = 0
    dual_prev = -math.inf
    while True:
        kernels.dual_sweeps(ptr, idx, lam, s, mu, p, SWEEP_BLOCK)
        sweeps += SWEEP_BLOCK
        rho = (s / (p * mu)) ** q
        dual = float(lam.sum() - (p - 1.0) * np.dot(mu, rho**p))
        path, length = shortest_rho_path(g, (v, w), rho)
        settled = dual - dual_prev <= (tol / 10) * abs(dual)
        dual_prev = dual
        if length > 0:
            primal = float(np.dot(mu, (rho / length) ** p))
            gap = (primal - dual) / primal
            if gap <= tol:
                return ModulusResult(p, primal, rho / length, list(active), lam.copy(), max(gap, 0.0),
                                     added)
        if path not in known and (settled or length < 1 - tol):
            added += 1
            if added > max_iter:
                raise NonConvergence(f"more than {max_iter} cutting-plane rounds")
            active.append(path)
            known.add(path)
            lam = np.append(lam, 0.0)
            ptr, idx = _pack(active)
            dual_prev = -math.inf
        if sweeps > MAX_SWEEPS:
            raise NonConvergence(f"restricted master not solved after {sweeps} sweeps")


def _connected(g, v, w):
    from .graph import connected_component

    return bool(connected_component(g, v)[w])


def pencil_from_duals(res, mu, n_samples=100, seed=0):
    """Normalise the dual multipliers into a path pencil.

    Returns the pencil together with the empirical constant
    ``max_g (sum_c alpha(c) sum_{z in c} g(z))**p / sum_z g(z)**p mu(z)`` over
    ``n_samples`` random densities; Hoelder at the optimum bounds it by
    ``1 / Mod_p``.
    """
    lam = np.asarray(res.lambdas, dtype=np.float64)
    total = lam.sum()
    if not total > 0:
        raise DegenerateDuals("all multipliers vanish")
    keep = lam > 0
    paths = [c for c, k in zip(res.active_paths, keep) if k]
    alpha = lam[keep] / total
    rng = np.random.default_rng(seed)
    mu = np.asarray(mu, dtype=np.float64)
    worst = 0.0
    for _ in range(n_samples):
        gvals = rng.random(mu.shape[0])
        lhs = sum(a * gvals[list(c)].sum() for c, a in zip(paths, alpha)) ** res.p
        worst = max(worst, lhs / float(np.dot(gvals**res.p, mu)))
    return PathPencil(paths, alpha, res.value), worst
