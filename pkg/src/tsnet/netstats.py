"""Topological statistics of visibility graphs.

Degree distribution and power-law tail fit, local clustering,
degree assortativity, exact all-pairs average shortest path, and the
growing-window small-world curve L(N) vs ln N.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy.sparse import csgraph, csr_matrix

from ._fit import linear_fit, log_spaced_ints
from .errors import (
    DegenerateFit,
    DisconnectedGraph,
    InsufficientTailPoints,
    InvalidParam,
    ZeroDegreeVariance,
)
from .visibility import VisibilityGraph, build_fast, _series_values

_BATCH = 256  # BFS sources per scipy call; bounds the distance-matrix slab

# Slope magnitudes below this are reported as flat (complete-graph regime,
# where L is constant and the log fit carries no information).
FLAT_SLOPE_EPS = 1e-12


@dataclass(frozen=True)
class DegreeDistribution:
    """Empirical degree pdf on its support (degrees with nonzero count)."""

    support: np.ndarray
    pdf: np.ndarray
    n_nodes: int

    def __post_init__(self):
        if self.support.size != self.pdf.size or self.support.size == 0:
            raise ValueError("support and pdf must be non-empty and aligned")

    @property
    def k_min(self) -> int:
        return int(self.support[0])

    @property
    def k_max(self) -> int:
        return int(self.support[-1])

    def mean_degree(self) -> float:
        return float(np.sum(self.support * self.pdf))


@dataclass(frozen=True)
class DegreeTailFit:
    """Least-squares line through (ln k, ln p(k)) over the fitted range."""

    gamma: float
    r2: float
    k_range: tuple[int, int]
    n_points: int


@dataclass(frozen=True)
class ClusteringReport:
    average: float
    c_max: float
    c_min: float
    per_node: np.ndarray


@dataclass(frozen=True)
class SmallWorldCurve:
    """Average path length on growing prefixes, with the ln N fit.

    Fit fields are None when fewer than two prefix sizes were evaluated.
    """

    sizes: np.ndarray
    lengths: np.ndarray
    slope: float | None
    intercept: float | None
    r2: float | None

    @property
    def flat(self) -> bool:
        """True when the fitted slope is indistinguishable from zero."""
        return self.slope is not None and abs(self.slope) < FLAT_SLOPE_EPS


def degree_distribution(g: VisibilityGraph) -> DegreeDistribution:
    counts = np.bincount(g.degrees())
    support = np.flatnonzero(counts)
    pdf = counts[support] / float(g.n)
    return DegreeDistribution(support=support.astype(np.int64), pdf=pdf, n_nodes=g.n)


def fit_powerlaw_tail(
    dist: DegreeDistribution,
    k_range: tuple[int | None, int | None] | None = None,
) -> DegreeTailFit:
    """Fit ln p(k) = -gamma ln k + c over [k_lo, k_hi] on the raw pdf.

    The default range starts at ceil(mean degree), where visibility-graph
    degree pdfs typically enter their power-law regime, and runs to the
    maximum degree.  Either bound of ``k_range`` may be None to keep its
    default.  Requires at least three distinct degrees in range.
    """
    lo_given, hi_given = k_range if k_range is not None else (None, None)
    k_lo = int(lo_given) if lo_given is not None else int(math.ceil(dist.mean_degree()))
    k_hi = int(hi_given) if hi_given is not None else dist.k_max
    if k_lo < 1 or k_hi < k_lo:
        raise InvalidParam(f"bad tail range [{k_lo}, {k_hi}]")
    sel = (dist.support >= k_lo) & (dist.support <= k_hi)
    ks = dist.support[sel]
    if ks.size < 3:
        raise InsufficientTailPoints(
            f"{ks.size} distinct degrees in [{k_lo}, {k_hi}], need 3"
        )
    ps = dist.pdf[sel]
    fit = linear_fit(np.log(ks.astype(np.float64)), np.log(ps))
    return DegreeTailFit(
        gamma=-fit.slope, r2=fit.r2, k_range=(k_lo, k_hi), n_points=int(ks.size)
    )


def clustering(g: VisibilityGraph) -> ClusteringReport:
    """Local clustering per node, averaged over all nodes.

    C_i = 2 E_i / (k_i (k_i - 1)) with E_i the edge count among i's
    neighbors; nodes of degree < 2 contribute C_i = 0 to the average.
    c_max / c_min are taken over nodes of degree >= 2 only.
    """
    deg = g.degrees()
    tri2 = np.zeros(g.n, dtype=np.int64)  # 2x triangle count per node
    indptr, indices = g.indptr, g.indices
    for u, v in g.edge_array():
        nu = indices[indptr[u] : indptr[u + 1]]
        nv = indices[indptr[v] : indptr[v + 1]]
        common = np.intersect1d(nu, nv, assume_unique=True)
        # each common neighbor w gains one closed pair (u, v)
        tri2[common] += 1
    per_node = np.zeros(g.n, dtype=np.float64)
    eligible = deg >= 2
    d = deg[eligible].astype(np.float64)
    per_node[eligible] = 2.0 * tri2[eligible] / (d * (d - 1.0))
    if not eligible.any():
        raise ZeroDegreeVariance("no node has degree >= 2")
    return ClusteringReport(
        average=float(per_node.mean()),
        c_max=float(per_node[eligible].max()),
        c_min=float(per_node[eligible].min()),
        per_node=per_node,
    )


def assortativity(g: VisibilityGraph) -> float:
    """Pearson correlation of degrees across edges.

    Computed from exact integer sums over the edge list:
        r = (4 M A - B^2) / (2 M C - B^2)
    with A = sum jk, B = sum (j + k), C = sum (j^2 + k^2) over edges
    whose endpoint degrees are j, k.  Exact up to the final division.
    """
    edges = g.edge_array()
    deg = g.degrees().astype(np.int64)
    j = deg[edges[:, 0]]
    k = deg[edges[:, 1]]
    a = int(np.sum(j * k))
    b = int(np.sum(j + k))
    c = int(np.sum(j * j + k * k))
    m = g.m
    num = 4 * m * a - b * b
    den = 2 * m * c - b * b
    if den == 0:
        raise ZeroDegreeVariance("all edge-endpoint degrees equal")
    r = num / den
    return min(1.0, max(-1.0, r))


def _thread_count() -> int:
    raw = os.environ.get("TSNET_THREADS", "")
    if not raw:
        return 1
    try:
        value = int(raw)
    except ValueError:
        raise InvalidParam(f"TSNET_THREADS={raw!r} is not an integer") from None
    if value < 1:
        raise InvalidParam("TSNET_THREADS must be >= 1")
    return value


def all_pairs_average_path(g: VisibilityGraph) -> float:
    """Exact mean shortest-path length over all unordered node pairs.

    Runs breadth-first searches from every node in batches and sums
    integer distances, so the result is identical at any thread count.
    """
    n = g.n
    if n < 2:
        raise InvalidParam("average path length needs at least 2 nodes")
    adj = csr_matrix(
        (np.ones(g.indices.size, dtype=np.float64), g.indices, g.indptr),
        shape=(n, n),
    )

    def batch_sum(start: int) -> int:
        idx = np.arange(start, min(start + _BATCH, n))
        dist = csgraph.dijkstra(adj, directed=False, unweighted=True, indices=idx)
        if np.isinf(dist).any():
            raise DisconnectedGraph("graph has unreachable node pairs")
        return int(dist.sum())

    starts = range(0, n, _BATCH)
    threads = _thread_count()
    if threads == 1:
        total = sum(batch_sum(s) for s in starts)
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            total = sum(pool.map(batch_sum, starts))
    # total counts ordered pairs; each unordered pair appears twice
    return total / (n * (n - 1))


def default_prefix_sizes(n: int, count: int = 30, start: int = 64) -> list[int]:
    """Log-spaced prefix lengths from min(start, n) up to n."""
    if n < 2:
        raise InvalidParam("need at least 2 observations")
    lo = max(2, min(start, n))
    return [int(v) for v in log_spaced_ints(lo, n, count)]


def small_world_curve(ts, sizes: list[int] | None = None) -> SmallWorldCurve:
    """L(N) on growing prefixes of the series, fit against ln N."""
    y = _series_values(ts)
    n = y.size
    if sizes is None:
        sizes = default_prefix_sizes(n)
    else:
        sizes = [int(s) for s in sizes]
        if any(s < 2 or s > n for s in sizes):
            raise InvalidParam(f"prefix sizes must lie in [2, {n}]")
        if any(b <= a for a, b in zip(sizes, sizes[1:])):
            raise InvalidParam("prefix sizes must be strictly increasing")
    lengths = np.array(
        [all_pairs_average_path(build_fast(y[:k])) for k in sizes], dtype=np.float64
    )
    size_arr = np.asarray(sizes, dtype=np.int64)
    slope = intercept = r2 = None
    if size_arr.size >= 2:
        fit = linear_fit(np.log(size_arr.astype(np.float64)), lengths)
        slope, intercept, r2 = fit.slope, fit.intercept, fit.r2
    return SmallWorldCurve(
        sizes=size_arr, lengths=lengths, slope=slope, intercept=intercept, r2=r2
    )


def small_world_verdict(
    curve: SmallWorldCurve,
    average_clustering: float,
    *,
    r2_min: float = 0.95,
    clustering_min: float = 0.5,
) -> bool:
    """True when L grows logarithmically (good fit) and clustering is high."""
    if curve.r2 is None:
        raise DegenerateFit("small-world curve has no fit (fewer than 2 sizes)")
    return bool(curve.r2 >= r2_min and average_clustering >= clustering_min)
