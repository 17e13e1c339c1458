"""Hot inner loops.

Every kernel exists twice: a loop-style version written for ``numba.njit``
(suffix ``_loop``) and a plain Python / vectorised numpy version (suffix
``_py``).  The module-level names bind to the compiled loop version when numba
is usable and to the ``_py`` version otherwise; see :mod:`sepgraph._accel`.

Both versions of a kernel must return identical results.  ``PY`` and ``NB``
expose the two sets explicitly for tests and benchmarks (``NB`` is ``None``
without numba).

Graphs reach the kernels in CSR form (``indptr``, ``indices``), flow networks
as an arc-CSR (``ptr``, ``to``, ``rev``, ``res``) where ``rev[a]`` is the
paired reverse arc.
"""
import heapq
import math
from collections import deque
from types import SimpleNamespace

import numpy as np

from ._accel import NUMBA_AVAILABLE, njit

INF_COUNT = np.int64(2**62)

# rows per block in the vectorised distance kernels
_CHUNK = 512


# --------------------------------------------------------------------------
# graph traversal


def _reach_loop(indptr, indices, source, blocked):
    n = indptr.shape[0] - 1
    seen = np.zeros(n, dtype=np.bool_)
    if blocked[source]:
        return seen
    queue = np.empty(n, dtype=np.int64)
    head = 0
    tail = 1
    queue[0] = source
    seen[source] = True
    while head < tail:
        u = queue[head]
        head += 1
        for k in range(indptr[u], indptr[u + 1]):
            z = indices[k]
            if not seen[z] and not blocked[z]:
                seen[z] = True
                queue[tail] = z
                tail += 1
    return seen


def _reach_py(indptr, indices, source, blocked):
    n = len(indptr) - 1
    seen = np.zeros(n, dtype=bool)
    if blocked[source]:
        return seen
    ptr = indptr.tolist()
    idx = indices.tolist()
    block = blocked.tolist()
    flag = [False] * n
    flag[source] = True
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for z in idx[ptr[u]:ptr[u + 1]]:
            if not flag[z] and not block[z]:
                flag[z] = True
                queue.append(z)
    seen[:] = flag
    return seen


def _bfs01_loop(indptr, indices, cost, source):
    # vertex-weighted 0/1 shortest distances, the source's own cost included
    n = indptr.shape[0] - 1
    nnz = indices.shape[0]
    dist = np.full(n, INF_COUNT, dtype=np.int64)
    cap = 2 * (nnz + 2)
    buf = np.empty(cap, dtype=np.int64)
    head = nnz + 2
    tail = head
    dist[source] = cost[source]
    buf[tail] = source
    tail += 1
    while head < tail:
        u = buf[head]
        head += 1
        du = dist[u]
        for k in range(indptr[u], indptr[u + 1]):
            z = indices[k]
            nd = du + cost[z]
            if nd < dist[z]:
                dist[z] = nd
                if cost[z] == 0:
                    head -= 1
                    buf[head] = z
                else:
                    buf[tail] = z
                    tail += 1
    return dist


def _bfs01_py(indptr, indices, cost, source):
    n = len(indptr) - 1
    ptr = indptr.tolist()
    idx = indices.tolist()
    c = cost.tolist()
    big = int(INF_COUNT)
    dist = [big] * n
    dist[source] = c[source]
    dq = deque([source])
    while dq:
        u = dq.popleft()
        du = dist[u]
        for z in idx[ptr[u]:ptr[u + 1]]:
            nd = du + c[z]
            if nd < dist[z]:
                dist[z] = nd
                if c[z] == 0:
                    dq.appendleft(z)
                else:
                    dq.append(z)
    return np.asarray(dist, dtype=np.int64)


def _dijkstra_loop(indptr, indices, weight, source):
    # vertex-weighted Dijkstra; ties resolved by vertex index via the heap order
    n = indptr.shape[0] - 1
    dist = np.full(n, np.inf)
    pred = np.full(n, -1, dtype=np.int64)
    done = np.zeros(n, dtype=np.bool_)
    dist[source] = weight[source]
    heap = [(dist[source], source)]
    while len(heap) > 0:
        d, u = heapq.heappop(heap)
        if done[u]:
            continue
        done[u] = True
        for k in range(indptr[u], indptr[u + 1]):
            z = indices[k]
            if done[z]:
                continue
            nd = d + weight[z]
            if nd < dist[z]:
                dist[z] = nd
                pred[z] = u
                heapq.heappush(heap, (nd, z))
    return dist, pred


def _dijkstra_py(indptr, indices, weight, source):
    n = len(indptr) - 1
    ptr = indptr.tolist()
    idx = indices.tolist()
    wt = weight.tolist()
    dist = [math.inf] * n
    pred = [-1] * n
    done = [False] * n
    dist[source] = wt[source]
    heap = [(dist[source], source)]
    while heap:
        d, u = heapq.heappop(heap)
        if done[u]:
            continue
        done[u] = True
        for z in idx[ptr[u]:ptr[u + 1]]:
            if done[z]:
                continue
            nd = d + wt[z]
            if nd < dist[z]:
                dist[z] = nd
                pred[z] = u
                heapq.heappush(heap, (nd, z))
    return np.asarray(dist, dtype=np.float64), np.asarray(pred, dtype=np.int64)


# --------------------------------------------------------------------------
# max flow


def _dinic_loop(ptr, to, rev, res, s, t, eps):
    """Dinic blocking-flow max flow; ``res`` is updated in place."""
    n = ptr.shape[0] - 1
    level = np.empty(n, dtype=np.int64)
    it = np.empty(n, dtype=np.int64)
    queue = np.empty(n, dtype=np.int64)
    path = np.empty(n, dtype=np.int64)
    total = 0.0
    while True:
        level[:] = -1
        level[s] = 0
        head = 0
        tail = 1
        queue[0] = s
        while head < tail:
            u = queue[head]
            head += 1
            for a in range(ptr[u], ptr[u + 1]):
                z = to[a]
                if res[a] > eps and level[z] < 0:
                    level[z] = level[u] + 1
                    queue[tail] = z
                    tail += 1
        if level[t] < 0:
            break
        for u in range(n):
            it[u] = ptr[u]
        depth = 0
        u = s
        while True:
            if u == t:
                f = np.inf
                for k in range(depth):
                    if res[path[k]] < f:
                        f = res[path[k]]
                first = -1
                for k in range(depth):
                    a = path[k]
                    res[a] -= f
                    res[rev[a]] += f
                    if first < 0 and res[a] <= eps:
                        first = k
                total += f
                if first < 0:
                    first = depth - 1
                depth = first
                u = s if depth == 0 else to[path[depth - 1]]
                continue
            moved = False
            while it[u] < ptr[u + 1]:
                a = it[u]
                z = to[a]
                if res[a] > eps and level[z] == level[u] + 1:
                    path[depth] = a
                    depth += 1
                    u = z
                    moved = True
                    break
                it[u] += 1
            if not moved:
                if u == s:
                    break
                level[u] = -1
                depth -= 1
                u = to[rev[path[depth]]]
                it[u] += 1
    return total


def _dinic_py(ptr, to, rev, res, s, t, eps):
    n = len(ptr) - 1
    P = ptr.tolist()
    T = to.tolist()
    R = rev.tolist()
    r = res.tolist()
    total = 0.0
    while True:
        level = [-1] * n
        level[s] = 0
        dq = deque([s])
        while dq:
            u = dq.popleft()
            for a in range(P[u], P[u + 1]):
                z = T[a]
                if r[a] > eps and level[z] < 0:
                    level[z] = level[u] + 1
                    dq.append(z)
        if level[t] < 0:
            break
        it = P[:-1]
        path = []
        u = s
        while True:
            if u == t:
                f = min(r[a] for a in path)
                first = -1
                for k, a in enumerate(path):
                    r[a] -= f
                    r[R[a]] += f
                    if first < 0 and r[a] <= eps:
                        first = k
                total += f
                if first < 0:
                    first = len(path) - 1
                del path[first:]
                u = T[path[-1]] if path else s
                continue
            moved = False
            end = P[u + 1]
            while it[u] < end:
                a = it[u]
                z = T[a]
                if r[a] > eps and level[z] == level[u] + 1:
                    path.append(a)
                    u = z
                    moved = True
                    break
                it[u] += 1
            if not moved:
                if u == s:
                    break
                level[u] = -1
                a = path.pop()
                u = T[R[a]]
                it[u] += 1
    res[:] = r
    return total


def _residual_reach_loop(ptr, to, res, s, eps):
    n = ptr.shape[0] - 1
    seen = np.zeros(n, dtype=np.bool_)
    queue = np.empty(n, dtype=np.int64)
    seen[s] = True
    queue[0] = s
    head = 0
    tail = 1
    while head < tail:
        u = queue[head]
        head += 1
        for a in range(ptr[u], ptr[u + 1]):
            z = to[a]
            if res[a] > eps and not seen[z]:
                seen[z] = True
                queue[tail] = z
                tail += 1
    return seen


def _residual_reach_py(ptr, to, res, s, eps):
    n = len(ptr) - 1
    P = ptr.tolist()
    T = to.tolist()
    r = res.tolist()
    seen = [False] * n
    seen[s] = True
    dq = deque([s])
    while dq:
        u = dq.popleft()
        for a in range(P[u], P[u + 1]):
            if r[a] > eps and not seen[T[a]]:
                seen[T[a]] = True
                dq.append(T[a])
    return np.asarray(seen, dtype=bool)


# --------------------------------------------------------------------------
# modulus restricted master: dual coordinate ascent


def _line_solve(path_idx, lo_k, hi_k, base, mu, p, q):
    """Smallest lam >= 0 with sum_z ((base_z + lam) / (p mu_z))**q >= 1."""
    g0 = 0.0
    for k in range(lo_k, hi_k):
        z = path_idx[k]
        g0 += (base[z] / (p * mu[z])) ** q
    if g0 >= 1.0:
        return 0.0
    lo = 0.0
    hi = 1.0
    while True:
        g = 0.0
        for k in range(lo_k, hi_k):
            z = path_idx[k]
            g += ((base[z] + hi) / (p * mu[z])) ** q
        if g >= 1.0:
            break
        lo = hi
        hi *= 2.0
    lam = 0.5 * (lo + hi)
    for _ in range(200):
        g = -1.0
        dg = 0.0
        for k in range(lo_k, hi_k):
            z = path_idx[k]
            x = (base[z] + lam) / (p * mu[z])
            g += x ** q
            if x > 0.0:
                dg += q * x ** (q - 1.0) / (p * mu[z])
        if g > 0.0:
            hi = lam
        else:
            lo = lam
        if abs(g) <= 1e-15 or hi - lo <= 1e-16 * max(1.0, hi):
            break
        if dg > 0.0:
            nxt = lam - g / dg
        else:
            nxt = 0.5 * (lo + hi)
        if not (lo < nxt < hi):
            nxt = 0.5 * (lo + hi)
        lam = nxt
    return lam


def _dual_sweeps_loop(path_ptr, path_idx, lam, s, mu, p, sweeps):
    """In-place cyclic coordinate ascent on the path multipliers ``lam``.

    ``s[z]`` must equal the sum of ``lam`` over active paths through ``z`` on
    entry and is kept consistent.
    """
    q = 1.0 / (p - 1.0)
    m = path_ptr.shape[0] - 1
    base = np.empty_like(s)
    for _ in range(sweeps):
        for c in range(m):
            lo_k = path_ptr[c]
            hi_k = path_ptr[c + 1]
            base[:] = s
            for k in range(lo_k, hi_k):
                base[path_idx[k]] -= lam[c]
            for k in range(lo_k, hi_k):
                if base[path_idx[k]] < 0.0:
                    base[path_idx[k]] = 0.0
            new = _line_solve_nb(path_idx, lo_k, hi_k, base, mu, p, q)
            delta = new - lam[c]
            lam[c] = new
            for k in range(lo_k, hi_k):
                z = path_idx[k]
                s[z] += delta
                if s[z] < 0.0:
                    s[z] = 0.0


def _dual_sweeps_py(path_ptr, path_idx, lam, s, mu, p, sweeps):
    q = 1.0 / (p - 1.0)
    ptr = path_ptr.tolist()
    idx = path_idx.tolist()
    m = len(ptr) - 1
    for _ in range(sweeps):
        for c in range(m):
            zs = idx[ptr[c]:ptr[c + 1]]
            b = np.maximum(s[zs] - lam[c], 0.0)
            scale = p * mu[zs]
            new = _line_solve_vec(b, scale, q)
            delta = new - lam[c]
            lam[c] = new
            s[zs] = np.maximum(s[zs] + delta, 0.0)


def _line_solve_vec(b, scale, q):
    if np.sum((b / scale) ** q) >= 1.0:
        return 0.0
    lo, hi = 0.0, 1.0
    while np.sum(((b + hi) / scale) ** q) < 1.0:
        lo, hi = hi, hi * 2.0
    lam = 0.5 * (lo + hi)
    for _ in range(200):
        x = (b + lam) / scale
        g = np.sum(x**q) - 1.0
        pos = x > 0.0
        dg = float(np.sum(q * x[pos] ** (q - 1.0) / scale[pos]))
        if g > 0.0:
            hi = lam
        else:
            lo = lam
        if abs(g) <= 1e-15 or hi - lo <= 1e-16 * max(1.0, hi):
            break
        nxt = lam - g / dg if dg > 0.0 else 0.5 * (lo + hi)
        if not (lo < nxt < hi):
            nxt = 0.5 * (lo + hi)
        lam = nxt
    return lam


# --------------------------------------------------------------------------
# point-cloud geometry (Euclidean coordinates)


def _greedy_net_loop(points, r):
    n, d = points.shape
    mind = np.full(n, np.inf)
    out = np.empty(n, dtype=np.int64)
    k = 0
    for i in range(n):
        if mind[i] >= r:
            out[k] = i
            k += 1
            for j in range(i + 1, n):
                acc = 0.0
                for c in range(d):
                    diff = points[i, c] - points[j, c]
                    acc += diff * diff
                dist = math.sqrt(acc)
                if dist < mind[j]:
                    mind[j] = dist
    return out[:k]


def _greedy_net_py(points, r):
    n = points.shape[0]
    mind = np.full(n, np.inf)
    out = []
    for i in range(n):
        if mind[i] >= r:
            out.append(i)
            tail = points[i + 1:]
            dist = np.sqrt(((tail - points[i]) ** 2).sum(axis=1))
            np.minimum(mind[i + 1:], dist, out=mind[i + 1:])
    return np.asarray(out, dtype=np.int64)


def _ball_mass_loop(points, centers, radius, masses):
    n, d = points.shape
    m = centers.shape[0]
    out = np.zeros(m)
    for i in range(m):
        tot = 0.0
        for j in range(n):
            acc = 0.0
            for c in range(d):
                diff = centers[i, c] - points[j, c]
                acc += diff * diff
            if math.sqrt(acc) <= radius:
                tot += masses[j]
        out[i] = tot
    return out


def _ball_mass_py(points, centers, radius, masses):
    out = np.zeros(centers.shape[0])
    for lo in range(0, centers.shape[0], _CHUNK):
        block = centers[lo:lo + _CHUNK]
        dist = np.sqrt(((block[:, None, :] - points[None, :, :]) ** 2).sum(axis=2))
        out[lo:lo + _CHUNK] = np.where(dist <= radius, masses[None, :], 0.0).sum(axis=1)
    return out


def _pairs_within_loop(points, radius):
    n, d = points.shape
    count = 0
    for i in range(n):
        for j in range(i + 1, n):
            acc = 0.0
            for c in range(d):
                diff = points[i, c] - points[j, c]
                acc += diff * diff
            if math.sqrt(acc) <= radius:
                count += 1
    ii = np.empty(count, dtype=np.int64)
    jj = np.empty(count, dtype=np.int64)
    k = 0
    for i in range(n):
        for j in range(i + 1, n):
            acc = 0.0
            for c in range(d):
                diff = points[i, c] - points[j, c]
                acc += diff * diff
            if math.sqrt(acc) <= radius:
                ii[k] = i
                jj[k] = j
                k += 1
    return ii, jj


def _pairs_within_py(points, radius):
    n = points.shape[0]
    ii, jj = [], []
    for lo in range(0, n, _CHUNK):
        block = points[lo:lo + _CHUNK]
        dist = np.sqrt(((block[:, None, :] - points[None, :, :]) ** 2).sum(axis=2))
        rows, cols = np.nonzero(dist <= radius)
        rows = rows + lo
        keep = cols > rows
        ii.append(rows[keep])
        jj.append(cols[keep])
    if not ii:
        return np.empty(0, np.int64), np.empty(0, np.int64)
    return np.concatenate(ii).astype(np.int64), np.concatenate(jj).astype(np.int64)


def _min_dist_loop(a, b):
    m, d = a.shape
    k = b.shape[0]
    out = np.full(m, np.inf)
    for i in range(m):
        best = np.inf
        for j in range(k):
            acc = 0.0
            for c in range(d):
                diff = a[i, c] - b[j, c]
                acc += diff * diff
            if acc < best:
                best = acc
        out[i] = math.sqrt(best)
    return out


def _min_dist_py(a, b):
    out = np.full(a.shape[0], np.inf)
    if b.shape[0] == 0:
        return out
    for lo in range(0, a.shape[0], _CHUNK):
        block = a[lo:lo + _CHUNK]
        d2 = ((block[:, None, :] - b[None, :, :]) ** 2).sum(axis=2)
        out[lo:lo + _CHUNK] = np.sqrt(d2.min(axis=1))
    return out


# --------------------------------------------------------------------------
# dispatch

_line_solve_nb = njit(_line_solve) if NUMBA_AVAILABLE else _line_solve

PY = SimpleNamespace(
    reach=_reach_py,
    bfs01=_bfs01_py,
    dijkstra=_dijkstra_py,
    dinic=_dinic_py,
    residual_reach=_residual_reach_py,
    dual_sweeps=_dual_sweeps_py,
    greedy_net=_greedy_net_py,
    ball_mass=_ball_mass_py,
    pairs_within=_pairs_within_py,
    min_dist=_min_dist_py,
)

if NUMBA_AVAILABLE:
    NB = SimpleNamespace(
        reach=njit(_reach_loop),
        bfs01=njit(_bfs01_loop),
        dijkstra=njit(_dijkstra_loop),
        dinic=njit(_dinic_loop),
        residual_reach=njit(_residual_reach_loop),
        dual_sweeps=njit(_dual_sweeps_loop),
        greedy_net=njit(_greedy_net_loop),
        ball_mass=njit(_ball_mass_loop),
        pairs_within=njit(_pairs_within_loop),
        min_dist=njit(_min_dist_loop),
    )
    ACTIVE = NB
else:  # pragma: no cover
    NB = None
    ACTIVE = PY

reach = ACTIVE.reach
bfs01 = ACTIVE.bfs01
dijkstra = ACTIVE.dijkstra
dinic = ACTIVE.dinic
residual_reach = ACTIVE.residual_reach
dual_sweeps = ACTIVE.dual_sweeps
greedy_net = ACTIVE.greedy_net
ball_mass = ACTIVE.ball_mass
pairs_within = ACTIVE.pairs_within
min_dist = ACTIVE.min_dist
