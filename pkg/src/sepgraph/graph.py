"""Measure graphs: undirected graphs with a strictly positive mass per vertex."""
import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import kernels
from .errors import ValidationError


@dataclass(frozen=True, eq=False)
class MeasureGraph:
    """Immutable vertex-weighted graph stored in CSR form.

    Vertices are dense indices ``0..n-1``; ``labels`` holds the external ids.
    Neighbour lists are sorted by index, which is what makes every traversal in
    the package deterministic.
    """

    labels: tuple
    indptr: np.ndarray
    indices: np.ndarray
    mu: np.ndarray
    _index: dict = field(repr=False, compare=False)

    @classmethod
    def from_edges(cls, mu, edges, labels=None):
        mu = np.asarray(mu, dtype=np.float64).copy()
        n = mu.shape[0]
        if labels is None:
            labels = list(range(n))
        labels = tuple(labels)
        if len(labels) != n:
            raise ValidationError("labels and masses differ in length")
        index = {}
        for i, lab in enumerate(labels):
            if lab in index:
                raise ValidationError(f"duplicate vertex id {lab!r}")
            index[lab] = i
        for i, m in enumerate(mu):
            if not (np.isfinite(m) and m > 0):
                raise ValidationError(f"non-positive mass at vertex {labels[i]!r}: {m}")
        seen = set()
        for u, w in edges:
            u, w = int(u), int(w)
            if not (0 <= u < n and 0 <= w < n):
                raise ValidationError(f"dangling edge endpoint in ({u}, {w})")
            if u == w:
                raise ValidationError(f"self-loop at vertex {labels[u]!r}")
            key = (min(u, w), max(u, w))
            if key in seen:
                raise ValidationError(f"duplicate edge {labels[key[0]]!r}-{labels[key[1]]!r}")
            seen.add(key)
        pairs = sorted(seen)
        if pairs:
            arr = np.asarray(pairs, dtype=np.int64)
            src = np.concatenate([arr[:, 0], arr[:, 1]])
            dst = np.concatenate([arr[:, 1], arr[:, 0]])
        else:
            src = dst = np.empty(0, dtype=np.int64)
        order = np.lexsort((dst, src))
        src, dst = src[order], dst[order]
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.add.at(indptr, src + 1, 1)
        np.cumsum(indptr, out=indptr)
        mu.setflags(write=False)
        indptr.setflags(write=False)
        dst = np.ascontiguousarray(dst)
        dst.setflags(write=False)
        return cls(labels, indptr, dst, mu, index)

    @property
    def n(self):
        return self.mu.shape[0]

    @property
    def n_edges(self):
        return self.indices.shape[0] // 2

    def neighbors(self, v):
        return self.indices[self.indptr[v]:self.indptr[v + 1]]

    def edges(self):
        """Edges as ``(u, w)`` with ``u < w``, sorted."""
        out = []
        for u in range(self.n):
            for w in self.neighbors(u):
                if u < w:
                    out.append((u, int(w)))
        return out

    def adjacent(self, u, w):
        nb = self.neighbors(u)
        k = np.searchsorted(nb, w)
        return bool(k < nb.shape[0] and nb[k] == w)

    def index(self, label):
        try:
            return self._index[label]
        except KeyError:
            raise ValidationError(f"unknown vertex id {label!r}") from None

    def mask(self, A):
        """Coerce a vertex set (bool mask or iterable of indices) to a bool mask."""
        if isinstance(A, np.ndarray) and A.dtype == bool:
            if A.shape != (self.n,):
                raise ValidationError("vertex mask has wrong length")
            return A
        out = np.zeros(self.n, dtype=bool)
        for z in A:
            z = int(z)
            if not 0 <= z < self.n:
                raise ValidationError(f"vertex index {z} out of range")
            out[z] = True
        return out

    def mass(self, A):
        return float(self.mu[self.mask(A)].sum())

    def with_mu(self, mu):
        return MeasureGraph.from_edges(mu, self.edges(), self.labels)

    def check_vertex(self, v):
        if not 0 <= int(v) < self.n:
            raise ValidationError(f"vertex index {v} out of range")
        return int(v)


def is_path(g, path):
    return len(path) > 0 and all(g.adjacent(a, b) for a, b in zip(path, path[1:]))


def connected_component(g, v):
    """Bool mask of the vertices joined to ``v`` by some path (``v`` included)."""
    v = g.check_vertex(v)
    return kernels.reach(g.indptr, g.indices, v, np.zeros(g.n, dtype=bool))


def path_intersection_count(path, A):
    """Number of distinct vertices of ``path`` lying in ``A`` (a bool mask or set)."""
    if isinstance(A, np.ndarray):
        return len({z for z in path if A[z]})
    A = set(A)
    return len({z for z in path if z in A})


# -- JSON boundary ----------------------------------------------------------


def graph_from_dict(doc):
    try:
        vertices = doc["vertices"]
        edge_list = doc["edges"]
    except (KeyError, TypeError):
        raise ValidationError("graph document needs 'vertices' and 'edges'") from None
    labels, mu = [], []
    for vert in vertices:
        vid = vert["id"]
        m = vert["mu"]
        if not isinstance(m, (int, float)) or isinstance(m, bool) or not m > 0:
            raise ValidationError(f"non-positive mass at vertex {vid!r}")
        labels.append(vid)
        mu.append(float(m))
    index = {}
    for i, lab in enumerate(labels):
        if lab in index:
            raise ValidationError(f"duplicate vertex id {lab!r}")
        index[lab] = i
    edges = []
    for e in edge_list:
        if len(e) != 2:
            raise ValidationError(f"malformed edge {e!r}")
        a, b = e
        for end in (a, b):
            if end not in index:
                raise ValidationError(f"dangling edge endpoint {end!r}")
        edges.append((index[a], index[b]))
    return MeasureGraph.from_edges(mu, edges, labels)


def load_graph(source):
    """Build a :class:`MeasureGraph` from a dict, a JSON string or a file path."""
    if isinstance(source, dict):
        return graph_from_dict(source)
    if isinstance(source, Path) or (isinstance(source, str) and not source.lstrip().startswith("{")):
        source = Path(source).read_text()
    try:
        doc = json.loads(source)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"invalid graph JSON: {exc}") from None
    return graph_from_dict(doc)


def graph_to_dict(g):
    return {
        "vertices": [{"id": lab, "mu": float(m)} for lab, m in zip(g.labels, g.mu)],
        "edges": [[g.labels[u], g.labels[w]] for u, w in g.edges()],
    }


def ids(g, A):
    """External ids of a vertex set, in index order."""
    return [g.labels[z] for z in np.flatnonzero(g.mask(A))]
