"""Measure graphs from sampled metric measure spaces.

A cloud carries an empirical measure (one positive mass per sample point) and
either Euclidean coordinates or an explicit distance matrix.  All balls are
closed.  At scale ``r`` the graph has a maximal ``r``-separated subset as
vertices (greedy scan in input order), edges between net points at distance
``<= 3r`` and vertex masses equal to the cloud mass of the ``3r``-ball.
"""
import csv
import io
import json
import math
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .errors import CoincidentPoles, TerminalsMerged, ValidationError
from .graph import MeasureGraph
from .mincut import min_vertex_cut
from .separation import disc_sr, disc_width


@dataclass(frozen=True, eq=False)
class PointCloud:
    mass: np.ndarray
    points: np.ndarray | None = None
    dist: np.ndarray | None = None

    def __post_init__(self):
        mass = np.asarray(self.mass, dtype=np.float64)
        object.__setattr__(self, "mass", mass)
        if (self.points is None) == (self.dist is None):
            raise ValidationError("give exactly one of points or dist")
        if self.points is not None:
            pts = np.ascontiguousarray(np.asarray(self.points, dtype=np.float64))
            if pts.ndim == 1:
                pts = pts[:, None]
            object.__setattr__(self, "points", pts)
            n = pts.shape[0]
        else:
            D = np.asarray(self.dist, dtype=np.float64)
            if D.ndim != 2 or D.shape[0] != D.shape[1]:
                raise ValidationError("distance matrix must be square")
            if not np.allclose(D, D.T) or np.any(np.diag(D) != 0) or np.any(D < 0):
                raise ValidationError("distance matrix must be symmetric, nonnegative, zero diagonal")
            object.__setattr__(self, "dist", D)
            n = D.shape[0]
        if mass.shape != (n,):
            raise ValidationError("one mass per point required")
        if n == 0:
            raise ValidationError("empty cloud")
        if np.any(~(mass > 0)):
            raise ValidationError("masses must be positive")

    @classmethod
    def from_points(cls, points, mass=None):
        points = np.asarray(points, dtype=np.float64)
        if mass is None:
            mass = np.ones(points.shape[0])
        return cls(mass=mass, points=points)

    @classmethod
    def from_distances(cls, dist, mass=None):
        dist = np.asarray(dist, dtype=np.float64)
        if mass is None:
            mass = np.ones(dist.shape[0])
        return cls(mass=mass, dist=dist)

    @property
    def n(self):
        return self.mass.shape[0]

    @property
    def euclidean(self):
        return self.points is not None

    def distances_from(self, i):
        if self.euclidean:
            return np.sqrt(((self.points - self.points[i]) ** 2).sum(axis=1))
        return self.dist[i]

    def check_triangle(self, samples=200, seed=0, slack=1e-9):
        """Spot-check the triangle inequality on random triples of a matrix cloud."""
        if self.euclidean:
            return True
        rng = np.random.default_rng(seed)
        i, j, k = rng.integers(0, self.n, size=(3, samples))
        D = self.dist
        return bool(np.all(D[i, k] <= D[i, j] + D[j, k] + slack))

    def greedy_net(self, r):
        if self.euclidean:
            return kernels.greedy_net(self.points, float(r))
        mind = np.full(self.n, np.inf)
        out = []
        for i in range(self.n):
            if mind[i] >= r:
                out.append(i)
                np.minimum(mind, self.dist[i], out=mind)
        return np.asarray(out, dtype=np.int64)

    def ball_masses(self, centers, radius, weights=None):
        weights = self.mass if weights is None else np.asarray(weights, dtype=np.float64)
        centers = np.asarray(centers, dtype=np.int64)
        if self.euclidean:
            return kernels.ball_mass(self.points, self.points[centers], float(radius), weights)
        return np.where(self.dist[centers] <= radius, weights[None, :], 0.0).sum(axis=1)

    def pairs_within(self, idx, radius):
        idx = np.asarray(idx, dtype=np.int64)
        if self.euclidean:
            return kernels.pairs_within(np.ascontiguousarray(self.points[idx]), float(radius))
        sub = self.dist[np.ix_(idx, idx)]
        ii, jj = np.nonzero(np.triu(sub <= radius, k=1))
        return ii.astype(np.int64), jj.astype(np.int64)

    def min_dist(self, idx, targets):
        idx = np.asarray(idx, dtype=np.int64)
        targets = np.asarray(targets, dtype=np.int64)
        if targets.size == 0:
            return np.full(idx.shape[0], np.inf)
        if self.euclidean:
            return kernels.min_dist(np.ascontiguousarray(self.points[idx]),
                                    np.ascontiguousarray(self.points[targets]))
        return self.dist[np.ix_(idx, targets)].min(axis=1)

    def nearest(self, idx, i):
        """Position within ``idx`` of the point closest to cloud point ``i``; ties to lowest."""
        d = self.distances_from(i)[np.asarray(idx)]
        return int(np.argmin(d))

    def min_pairwise_distance(self):
        if self.n < 2:
            return 0.0
        if self.euclidean:
            from scipy.spatial import cKDTree

            d, _ = cKDTree(self.points).query(self.points, k=2)
            return float(d[:, 1].min())
        D = self.dist + np.diag(np.full(self.n, np.inf))
        return float(D.min())

    def diameter(self):
        if self.n < 2:
            return 0.0
        if not self.euclidean:
            return float(self.dist.max())
        pts = self.points
        if pts.shape[1] == 1:
            return float(pts.max() - pts.min())
        try:
            from scipy.spatial import ConvexHull

            pts = pts[ConvexHull(pts).vertices]
        except Exception:  # degenerate hull (collinear points): fall back to all points
            pass
        best = 0.0
        for i in range(pts.shape[0]):
            best = max(best, float(np.sqrt(((pts[i + 1:] - pts[i]) ** 2).sum(axis=1)).max(initial=0.0)))
        return best


@dataclass(frozen=True, eq=False)
class NetGraph:
    graph: MeasureGraph
    net_indices: np.ndarray
    r: float
    cloud: PointCloud = field(repr=False)

    def vertex_of(self, i):
        """Net vertex nearest to cloud point ``i`` (ties to the lowest index)."""
        return self.cloud.nearest(self.net_indices, i)


def build_net(cloud, r, weights=None):
    """Net graph at scale ``r``.

    ``weights`` replaces the cloud masses when computing vertex masses (used
    for Riesz-weighted nets); net vertices whose ``3r``-ball then weighs 0 are
    dropped because a measure graph needs positive masses.
    """
    if not r > 0:
        raise ValidationError("r must be positive")
    net = cloud.greedy_net(r)
    mu = cloud.ball_masses(net, 3 * r, weights)
    keep = mu > 0
    if not np.all(keep):
        net, mu = net[keep], mu[keep]
    ii, jj = cloud.pairs_within(net, 3 * r)
    g = MeasureGraph.from_edges(mu, zip(ii.tolist(), jj.tolist()), [int(i) for i in net])
    return NetGraph(g, net, float(r), cloud)


def transfer_set(net, indicator):
    """Net vertices at distance ``< 2r`` from the indicated cloud points."""
    indicator = np.asarray(indicator, dtype=bool)
    if indicator.shape != (net.cloud.n,):
        raise ValidationError("indicator must cover every cloud point")
    targets = np.flatnonzero(indicator)
    return net.cloud.min_dist(net.net_indices, targets) < 2 * net.r


@dataclass(frozen=True)
class RieszWeights:
    x: int
    y: int
    L: float
    potential: np.ndarray
    weights: np.ndarray

    @property
    def total(self):
        return float(self.weights.sum())


def _ball_mass_at(cloud, center, radii):
    d = cloud.distances_from(center)
    order = np.argsort(d, kind="stable")
    cum = np.cumsum(cloud.mass[order])
    k = np.searchsorted(d[order], radii, side="right")
    return cum[k - 1]


def riesz_weights(cloud, x, y, L=1.0):
    """Truncated two-pole Riesz potential and the induced per-point masses."""
    if L < 1:
        raise ValidationError("L must be >= 1")
    dx = cloud.distances_from(x)
    dy = cloud.distances_from(y)
    dxy = float(dx[y])
    if x == y or dxy == 0:
        raise CoincidentPoles("poles coincide")
    pot = dx / _ball_mass_at(cloud, x, dx) + dy / _ball_mass_at(cloud, y, dy)
    inside = (dx < 2 * L * dxy) | (dy < 2 * L * dxy)
    pot = np.where(inside, pot, 0.0)
    pot[[x, y]] = 0.0
    return RieszWeights(int(x), int(y), float(L), pot, pot * cloud.mass)


def doubling_ratios(cloud, centers, radii):
    """``m(B_2rho(c)) / m(B_rho(c))`` for every center and radius."""
    radii = np.asarray(radii, dtype=np.float64)
    out = np.empty((len(centers), radii.shape[0]))
    for k, c in enumerate(centers):
        out[k] = _ball_mass_at(cloud, c, 2 * radii) / _ball_mass_at(cloud, c, radii)
    return out


def estimate_doubling(cloud, samples=200, seed=0, radii=None, centers=None):
    """Empirical lower estimate of the doubling constant.

    Maximum of the ball-mass ratio over ``samples`` random (center, radius)
    pairs, radii drawn log-uniformly between the smallest pairwise distance and
    half the diameter unless given.
    """
    if cloud.n < 2:
        return 1.0
    rng = np.random.default_rng(seed)
    if radii is None:
        lo = cloud.min_pairwise_distance()
        hi = cloud.diameter() / 2
        if not (lo > 0 and hi > lo):
            return 1.0
        radii = np.exp(np.linspace(np.log(lo), np.log(hi), 32))
    radii = np.asarray(radii, dtype=np.float64)
    if centers is None:
        centers = np.arange(cloud.n)
    centers = np.asarray(centers)
    picks_c = rng.integers(0, centers.shape[0], size=samples)
    picks_r = rng.integers(0, radii.shape[0], size=samples)
    best = 1.0
    for c in np.unique(picks_c):
        rs = radii[np.unique(picks_r[picks_c == c])]
        best = max(best, float(doubling_ratios(cloud, [centers[c]], rs).max()))
    return best


@dataclass
class ExperimentReport:
    rows: list
    metadata: dict

    COLUMNS = ("r", "width", "sr_over_r", "cut_over_r")

    def to_csv(self):
        buf = io.StringIO()
        buf.write("# " + json.dumps(self.metadata, sort_keys=True) + "\n")
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(self.COLUMNS)
        for row in self.rows:
            writer.writerow([_fmt(row[c]) for c in self.COLUMNS])
        return buf.getvalue()


def _fmt(x):
    if isinstance(x, float) and math.isinf(x):
        return "inf"
    return repr(x)


def net_experiment(cloud, x, y, indicator, r_schedule, weighting="plain", L=1.0, reference=None):
    """Discrete width, ratio and cut along a decreasing schedule of scales.

    ``weighting`` is ``"plain"`` (cloud masses) or ``"riesz"`` (masses
    replaced by the ``L``-truncated Riesz measure with poles ``x``, ``y``).
    ``reference`` holds caller-supplied continuous values and is copied into
    the metadata untouched.
    """
    r_schedule = [float(r) for r in r_schedule]
    if any(a <= b for a, b in zip(r_schedule, r_schedule[1:])):
        raise ValidationError("r schedule must be strictly decreasing")
    if weighting == "plain":
        weights = None
    elif weighting == "riesz":
        weights = riesz_weights(cloud, x, y, L).weights
    else:
        raise ValidationError(f"unknown weighting {weighting!r}")
    indicator = np.asarray(indicator, dtype=bool)
    rows, series = [], []
    for r in r_schedule:
        net = build_net(cloud, r, weights)
        v, w = net.vertex_of(x), net.vertex_of(y)
        if v == w:
            raise TerminalsMerged(f"terminals share net vertex {v} at r={r}")
        A = transfer_set(net, indicator)
        ratio = disc_sr(net.graph, (v, w), A)
        cut = min_vertex_cut(net.graph, (v, w))
        width = disc_width(net.graph, (v, w), A)
        rows.append({
            "r": r,
            "width": width if width == math.inf else int(width),
            "sr_over_r": ratio.value / r,
            "cut_over_r": cut.value / r,
        })
        series.append({
            "r": r,
            "vertices": net.graph.n,
            "edges": net.graph.n_edges,
            "set_vertices": int(A.sum()),
            "set_mass": ratio.mass,
            "terminals": [int(net.net_indices[v]), int(net.net_indices[w])],
        })
    metadata = {
        "weighting": weighting,
        "L": L if weighting == "riesz" else None,
        "poles": [int(x), int(y)],
        "cloud_points": int(cloud.n),
        "reference": reference or {},
        "series": series,
    }
    return ExperimentReport(rows, metadata)


# -- file formats -------------------------------------------------------------


def load_cloud_csv(path):
    """Rows ``x1,...,xd,mass``; a header row is skipped when non-numeric."""
    rows = _read_numeric_csv(path)
    if rows.shape[1] < 2:
        raise ValidationError("cloud CSV needs at least one coordinate and a mass column")
    return PointCloud.from_points(rows[:, :-1], rows[:, -1])


def load_distance_csv(path, masses_path):
    D = _read_numeric_csv(path)
    masses = _read_numeric_csv(masses_path).ravel()
    cloud = PointCloud.from_distances(D, masses)
    if not cloud.check_triangle():
        raise ValidationError("distance matrix violates the triangle inequality")
    return cloud


def _read_numeric_csv(path):
    with open(path, newline="") as fh:
        rows = [r for r in csv.reader(fh) if r and not r[0].startswith("#")]
    try:
        float(rows[0][0])
    except (ValueError, IndexError):
        rows = rows[1:]
    try:
        return np.asarray([[float(c) for c in r] for r in rows], dtype=np.float64)
    except ValueError as exc:
        raise ValidationError(f"non-numeric CSV entry in {path}: {exc}") from None


def grid_cloud(nx, ny, width, height):
    """Cell-centred ``nx x ny`` grid on ``[0,width] x [0,height]`` with Lebesgue cell masses."""
    hx, hy = width / nx, height / ny
    ys, xs = np.meshgrid((np.arange(ny) + 0.5) * hy, (np.arange(nx) + 0.5) * hx, indexing="ij")
    pts = np.column_stack([xs.ravel(), ys.ravel()])
    return PointCloud.from_points(pts, np.full(pts.shape[0], hx * hy))
