"""Exhaustive reference implementations for small graphs.

Nothing here touches :mod:`sepgraph.kernels` or the production modules: paths
are enumerated by plain DFS and sets by subset scans, so agreement with the
fast routines is meaningful.  Sets and paths are handled as Python int
bitmasks internally.
"""
import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import CapExceeded, NonConvergence

PATH_CAP = 12
SUBSET_CAP = 16
MODULUS_CAP = 8


def _adj(g):
    return [sorted(int(z) for z in g.neighbors(u)) for u in range(g.n)]


def _bits(A, n):
    if isinstance(A, int):
        return A
    if isinstance(A, np.ndarray) and A.dtype == bool:
        return sum(1 << int(z) for z in np.flatnonzero(A))
    return sum(1 << int(z) for z in set(A))


def _popcount(x):
    return bin(x).count("1")


def _check(g, cap):
    if g.n > cap:
        raise CapExceeded(f"{g.n} vertices exceed the cap of {cap}")


def enumerate_simple_paths(g, t, cap=PATH_CAP):
    """All simple ``v -> w`` paths in lexicographic order."""
    _check(g, cap)
    v, w = t
    if v == w:
        return [(v,)]
    adj = _adj(g)
    out = []
    path = [v]
    on = [False] * g.n
    on[v] = True

    def dfs(u):
        for z in adj[u]:
            if on[z]:
                continue
            path.append(z)
            if z == w:
                out.append(tuple(path))
            else:
                on[z] = True
                dfs(z)
                on[z] = False
            path.pop()

    dfs(v)
    return out


def _path_masks(g, t, cap):
    return [_bits(p, g.n) for p in enumerate_simple_paths(g, t, cap)]


def brute_width(g, t, A, cap=PATH_CAP):
    masks = _path_masks(g, t, cap)
    if not masks:
        return math.inf
    a = _bits(A, g.n)
    return min(_popcount(m & a) for m in masks)


def brute_position(g, t, A, cap=PATH_CAP):
    """Position function by minimising over every simple path out of ``v``.

    A walk's prefix up to ``z`` can be loop-erased without gaining
    ``A``-vertices, and any prefix extends to ``w`` inside the component, so
    simple prefixes suffice.
    """
    _check(g, cap)
    v, w = t
    a = _bits(A, g.n)
    best = [math.inf] * g.n
    adj = _adj(g)
    on = [False] * g.n

    def dfs(u, count):
        if count < best[u]:
            best[u] = count
        for z in adj[u]:
            if not on[z]:
                on[z] = True
                dfs(z, count + ((a >> z) & 1))
                on[z] = False

    on[v] = True
    dfs(v, (a >> v) & 1)
    if best[w] == math.inf:
        return [math.inf] * g.n
    return best


@dataclass(frozen=True)
class BruteOptimum:
    value: float
    witness: frozenset
    width1_witness: frozenset | None = None


def _mass(g, bits):
    return float(sum(g.mu[z] for z in range(g.n) if (bits >> z) & 1))


def _lex_key(bits, n):
    return tuple(z for z in range(n) if (bits >> z) & 1)


def _to_set(bits, n):
    return frozenset(_lex_key(bits, n))


def _all_subsets(n):
    return range(1 << n)


def brute_min_separating_mass(g, t, cap=SUBSET_CAP):
    _check(g, cap)
    masks = _path_masks(g, t, cap)
    if not masks:
        return BruteOptimum(0.0, frozenset())
    best, best_bits = math.inf, None
    for A in _all_subsets(g.n):
        if all(m & A for m in masks):
            mass = _mass(g, A)
            if mass < best or (mass == best and _lex_key(A, g.n) < _lex_key(best_bits, g.n)):
                best, best_bits = mass, A
    return BruteOptimum(best, _to_set(best_bits, g.n))


def brute_min_sr(g, t, cap=SUBSET_CAP):
    """Infimum of the separating ratio over all ``2**n`` subsets.

    Also reports the lexicographically least width-1 subset attaining the
    infimum (``None`` when no path joins the terminals).
    """
    _check(g, cap)
    masks = _path_masks(g, t, cap)
    if not masks:
        return BruteOptimum(0.0, frozenset(), None)
    rows = []
    for A in _all_subsets(g.n):
        width = min(_popcount(m & A) for m in masks)
        if width == 0:
            continue
        rows.append((_mass(g, A) / width, width, A))
    best = min(r[0] for r in rows)
    tie = best * (1 + 1e-12)
    witness = min((r[2] for r in rows if r[0] <= tie), key=lambda b: _lex_key(b, g.n))
    w1 = [r[2] for r in rows if r[0] <= tie and r[1] == 1]
    w1_witness = _to_set(min(w1, key=lambda b: _lex_key(b, g.n)), g.n) if w1 else None
    return BruteOptimum(best, _to_set(witness, g.n), w1_witness)


def brute_modulus(g, t, p, cap=MODULUS_CAP):
    """Discrete p-modulus with every simple-path constraint written out.

    ``p == 1`` scans supports of 0/1 densities (the path/vertex-cut LP is
    integral); ``p > 1`` hands the convex program to cvxpy's Clarabel.
    """
    _check(g, cap)
    paths = enumerate_simple_paths(g, t, cap)
    if not paths:
        return 0.0
    if p == 1:
        masks = [_bits(c, g.n) for c in paths]
        return min(_mass(g, A) for A in _all_subsets(g.n) if all(m & A for m in masks))
    import cvxpy as cp

    M = np.zeros((len(paths), g.n))
    for i, c in enumerate(paths):
        M[i, list(c)] = 1.0
    rho = cp.Variable(g.n, nonneg=True)
    prob = cp.Problem(cp.Minimize(g.mu @ cp.power(rho, p)), [M @ rho >= 1])
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", UserWarning)
        prob.solve(solver=cp.CLARABEL, tol_gap_abs=1e-9, tol_gap_rel=1e-9, tol_feas=1e-9)
    # power cones with p=3 often stop at "optimal_inaccurate" a few ulps short of
    # the 1e-9 target; those values still agree to ~1e-11
    if prob.status not in (cp.OPTIMAL, cp.OPTIMAL_INACCURATE):
        raise NonConvergence(f"convex oracle ended with status {prob.status}")
    return float(prob.value)


# -- conditions of the slim-set equivalence ---------------------------------


def _component(adj, start, blocked):
    if (blocked >> start) & 1:
        return 0
    seen = 1 << start
    stack = [start]
    while stack:
        u = stack.pop()
        for z in adj[u]:
            if not (seen >> z) & 1 and not (blocked >> z) & 1:
                seen |= 1 << z
                stack.append(z)
    return seen


@dataclass(frozen=True)
class SlimConditions:
    first_contact: bool  # every z in A is the first A-vertex of some v-w path
    position_one_on_A: bool
    position_in_01inf: bool
    single_crossing_prefix: bool  # each component point reached with <= 1 A-vertex so far
    single_crossing_path: bool  # each component point on a v-w path with <= 1 A-vertex overall

    @property
    def four_way(self):
        """The four conditions with the prefix reading of the last one."""
        return (self.first_contact, self.position_one_on_A, self.position_in_01inf,
                self.single_crossing_prefix)

    @property
    def four_way_literal(self):
        return (self.first_contact, self.position_one_on_A, self.position_in_01inf,
                self.single_crossing_path)


def slim_conditions(g, t, A, cap=PATH_CAP):
    """Evaluate each characterisation of slimness by its own method.

    ``A`` is intersected with the terminals' component first.  Requires a path
    between the terminals.
    """
    v, w = t
    adj = _adj(g)
    comp = _component(adj, v, 0)
    a = _bits(A, g.n) & comp
    members = [z for z in range(g.n) if (a >> z) & 1]
    in_comp = [z for z in range(g.n) if (comp >> z) & 1]

    # first contact: walks from v that avoid A until they step onto z
    free = _component(adj, v, a)
    first = []
    for z in members:
        if z == v:
            first.append(True)
        else:
            first.append(any((free >> u) & 1 for u in adj[z]))
    cond_i = all(first)

    pos = brute_position(g, t, a, cap)
    cond_ii = all(pos[z] == 1 for z in members)
    cond_iii = all(val in (0, 1, math.inf) for val in pos)

    # prefix / whole-path single crossing: allow one vertex of A to be passable
    allowances = [0] + [1 << z for z in members]
    prefix_ok, path_ok = [], []
    for z in in_comp:
        reach_prefix = False
        reach_path = False
        for keep in allowances:
            blocked = a & ~keep
            cc = _component(adj, v, blocked)
            if (cc >> z) & 1:
                reach_prefix = True
                if (cc >> w) & 1:
                    reach_path = True
        prefix_ok.append(reach_prefix)
        path_ok.append(reach_path)
    return SlimConditions(cond_i, cond_ii, cond_iii, all(prefix_ok), all(path_ok))
