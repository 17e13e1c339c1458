"""Minimum-mass separating sets via vertex-split max flow, and 1-pencils.

Every vertex ``z`` becomes an arc ``z_in -> z_out`` of capacity ``mu(z)``
(terminals included, since a separating set may contain them) and every edge
``{u, z}`` the two uncapacitated arcs ``u_out -> z_in`` and ``z_out -> u_in``.
Flow goes from ``v_in`` to ``w_out``.
"""
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import ZeroFlow

REL_TOL = 1e-12


@dataclass(frozen=True)
class CutResult:
    value: float
    cut: np.ndarray
    flow_value: float


@dataclass(frozen=True)
class PathPencil:
    paths: list  # list of vertex-index tuples
    alpha: np.ndarray
    flow_value: float

    @property
    def capacity_bound(self):
        return 1.0 / self.flow_value

    def load(self, n):
        """Per-vertex load ``sum_{c ni z} alpha(c)``."""
        out = np.zeros(n)
        for path, a in zip(self.paths, self.alpha):
            out[list(set(path))] += a
        return out

    def crossing(self, A):
        """``sum_c alpha(c) * #(c cap A)`` for a bool mask ``A``."""
        return float(sum(a * len({z for z in path if A[z]}) for path, a in zip(self.paths, self.alpha)))


@dataclass
class _Network:
    ptr: np.ndarray
    to: np.ndarray
    rev: np.ndarray
    cap: np.ndarray
    res: np.ndarray
    eps: float


def _split_network(g):
    n = g.n
    z = np.arange(n, dtype=np.int64)
    edges = np.asarray(g.edges(), dtype=np.int64).reshape(-1, 2)
    u, w = edges[:, 0], edges[:, 1]
    tails = np.concatenate([2 * z, 2 * u + 1, 2 * w + 1])
    heads = np.concatenate([2 * z + 1, 2 * w, 2 * u])
    caps = np.concatenate([g.mu, np.full(2 * len(u), np.inf)])
    m = tails.shape[0]
    all_t = np.concatenate([tails, heads])
    all_h = np.concatenate([heads, tails])
    all_c = np.concatenate([caps, np.zeros(m)])
    partner = np.concatenate([np.arange(m, 2 * m), np.arange(m)])
    order = np.lexsort((all_h, all_t))
    pos = np.empty_like(order)
    pos[order] = np.arange(order.shape[0])
    ptr = np.zeros(2 * n + 1, dtype=np.int64)
    np.add.at(ptr, all_t + 1, 1)
    np.cumsum(ptr, out=ptr)
    cap = all_c[order]
    eps = REL_TOL * float(g.mu.max()) if n else 0.0
    return _Network(
        ptr=ptr,
        to=np.ascontiguousarray(all_h[order]),
        rev=np.ascontiguousarray(pos[partner[order]]),
        cap=cap,
        res=cap.copy(),
        eps=eps,
    )


def _max_flow(g, v, w):
    net = _split_network(g)
    value = kernels.dinic(net.ptr, net.to, net.rev, net.res, 2 * v, 2 * w + 1, net.eps)
    return float(value), net


def min_vertex_cut(g, t):
    v, w = (g.check_vertex(x) for x in t)
    value, net = _max_flow(g, v, w)
    reach = kernels.residual_reach(net.ptr, net.to, net.res, 2 * v, net.eps)
    cut = reach[0::2] & ~reach[1::2]
    return CutResult(value=g.mass(cut), cut=cut, flow_value=value)


def _vertex_flows(g, net):
    """Flow through each vertex and along each directed vertex edge."""
    n = g.n
    through = np.zeros(n)
    edge_flow = {}
    for node in range(2 * n):
        for a in range(net.ptr[node], net.ptr[node + 1]):
            if net.cap[a] <= 0:
                continue
            f = net.res[net.rev[a]]  # reverse arcs start empty
            if f <= net.eps:
                continue
            head = int(net.to[a])
            if node % 2 == 0:
                through[node // 2] = f
            else:
                edge_flow[(node // 2, head // 2)] = f
    return through, edge_flow


def pencil_from_flow(g, t):
    """Decompose a maximum flow into weighted ``v -> w`` paths.

    Repeatedly follows the lowest-index successor carrying flow; cycles met
    on the way are cancelled, completed paths lose their bottleneck.  The
    weights are normalised to a probability vector.
    """
    v, w = (g.check_vertex(x) for x in t)
    F, net = _max_flow(g, v, w)
    if F <= net.eps:
        raise ZeroFlow(f"no flow between {v} and {w}")
    through, edge_flow = _vertex_flows(g, net)
    if v == w:
        return PathPencil([(v,)], np.array([1.0]), F)

    eps = net.eps
    succ = {}
    for (a, b), f in sorted(edge_flow.items()):
        succ.setdefault(a, []).append(b)

    def next_hop(u):
        for b in succ.get(u, ()):
            if edge_flow.get((u, b), 0.0) > eps:
                return b
        return None

    def drain(nodes, closed):
        arcs = list(zip(nodes, nodes[1:]))
        amount = min([through[z] for z in (nodes[:-1] if closed else nodes)] + [edge_flow[e] for e in arcs])
        for z in nodes[:-1] if closed else nodes:
            through[z] -= amount
        for e in arcs:
            edge_flow[e] -= amount
        return amount

    paths, weights = [], []
    while through[v] > eps:
        path = [v]
        where = {v: 0}
        while path[-1] != w:
            nxt = next_hop(path[-1])
            if nxt is None:
                # numerical residue with no outlet; drop it
                through[path[-1]] = 0.0
                break
            if nxt in where:
                k = where[nxt]
                drain(path[k:] + [nxt], closed=True)
                for z in path[k + 1:]:
                    del where[z]
                del path[k + 1:]
                continue
            where[nxt] = len(path)
            path.append(nxt)
        else:
            amount = drain(path, closed=False)
            paths.append(tuple(path))
            weights.append(amount)
    weights = np.asarray(weights)
    return PathPencil(paths, weights / weights.sum(), F)
