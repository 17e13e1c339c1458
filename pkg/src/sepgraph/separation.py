"""Discrete width, separating ratio, position function, fibration and slim sets.

Intersections of a path with a set are counted on distinct vertices, endpoints
included.  Under that convention the least number of ``A``-vertices met by any
``v``-path up to its first visit of ``z`` is a vertex-weighted shortest distance
with 0/1 weights ``chi_A``, so every quantity here reduces to one 0/1-BFS.

When no path joins the terminals the width is ``inf`` and the ratio 0.
"""
import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import NoPath, NotSeparating
from .graph import connected_component


@dataclass(frozen=True)
class PositionField:
    v: int
    w: int
    A: np.ndarray
    values: np.ndarray  # float64, integral or inf

    @property
    def connected(self):
        return bool(np.isfinite(self.values[self.w]))

    @property
    def width(self):
        val = self.values[self.w]
        return int(val) if np.isfinite(val) else math.inf

    def level(self, i):
        """Vertices of ``A`` at position exactly ``i``."""
        return self.A & (self.values == i)


@dataclass(frozen=True)
class RatioValue:
    value: float
    width: float
    mass: float


@dataclass(frozen=True)
class Fibration:
    levels: list
    chosen: int  # 0-based index into ``levels``
    width: int
    mass: float

    @property
    def chosen_set(self):
        return self.levels[self.chosen]


def _terminals(g, t):
    v, w = t
    return g.check_vertex(v), g.check_vertex(w)


def position_field(g, t, A):
    v, w = _terminals(g, t)
    A = g.mask(A)
    dist = kernels.bfs01(g.indptr, g.indices, A.astype(np.int64), v)
    values = dist.astype(np.float64)
    values[dist >= kernels.INF_COUNT] = np.inf
    if not np.isfinite(values[w]):
        values[:] = np.inf
    return PositionField(v, w, A, values)


def disc_width(g, t, A):
    return position_field(g, t, A).width


def is_separating(g, t, A):
    return disc_width(g, t, A) >= 1


def disc_sr(g, t, A):
    A = g.mask(A)
    width = disc_width(g, t, A)
    mass = g.mass(A)
    if width == math.inf:
        value = 0.0
    elif width == 0:
        value = math.inf
    else:
        value = mass / width
    return RatioValue(value, width, mass)


def _require_separating(pf):
    if not pf.connected:
        raise NoPath(f"no path between {pf.v} and {pf.w}")
    if pf.width == 0:
        raise NotSeparating("set has width 0")


def fibrate(g, t, A):
    """Split a separating set into its position level sets ``A_1..A_k``.

    ``k`` is the width of ``A``.  Each level is checked to be separating with
    width exactly 1, the levels to be disjoint, and the lightest level (lowest
    index on ties) to weigh at most ``mass(A) / k``; an ``AssertionError``
    here would mean the construction itself is broken.
    """
    pf = position_field(g, t, A)
    _require_separating(pf)
    k = pf.width
    levels = [pf.level(i) for i in range(1, k + 1)]
    masses = [g.mass(L) for L in levels]
    chosen = int(np.argmin(masses))
    total = g.mass(pf.A)

    union = np.zeros(g.n, dtype=int)
    for L in levels:
        assert disc_width(g, t, L) == 1
        union += L
    assert union.max(initial=0) <= 1 and not np.any(union.astype(bool) & ~pf.A)
    assert masses[chosen] <= total / k * (1 + 1e-12)
    return Fibration(levels, chosen, k, total)


def slimify(g, t, A):
    """``A`` restricted to its first-contact points (position 1)."""
    pf = position_field(g, t, A)
    _require_separating(pf)
    return pf.level(1)


@dataclass(frozen=True)
class SlimCheck:
    slim: bool
    witness: int | None  # vertex of A (inside the terminal component) with position != 1


def is_slim(g, t, A):
    v, w = _terminals(g, t)
    comp = connected_component(g, v)
    if not comp[w]:
        raise NoPath(f"no path between {v} and {w}")
    A = g.mask(A) & comp
    pf = position_field(g, (v, w), A)
    if pf.width == 0:
        raise NotSeparating("set has width 0")
    bad = np.flatnonzero(A & (pf.values != 1))
    if bad.size:
        return SlimCheck(False, int(bad[0]))
    return SlimCheck(True, None)
