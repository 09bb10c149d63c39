"""Natural visibility graph construction.

Samples ``(i, y_i)`` and ``(j, y_j)``, ``i < j``, are linked iff every
intermediate sample lies strictly below the straight chord between them;
a point exactly on the chord blocks (collinear samples are not linked).
In slope form, anchored at one endpoint: the chord slope must strictly
beat the slope to every intermediate sample.  Consecutive samples are
always mutually visible, so the graph is connected.

Two builders:

* :func:`build_naive` evaluates the criterion pair by pair via running
  extreme slopes anchored at each left endpoint.  O(N^2); the reference.
* :func:`build_fast` divides and conquers on the segment maximum: a chord
  spanning a segment's maximum cannot clear it, so every edge inside a
  segment is incident to the maximum or confined to one side.  Near
  O(N log N) on typical data; identical edge set to the naive builder.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import SeriesTooShort
from .series import TimeSeries

# Below this segment length the scalar sweep beats numpy call overhead.
# Scalar and vector sweeps apply identical float comparisons, so the
# threshold cannot change the edge set.
_SMALL_SEGMENT = 48


@dataclass(frozen=True)
class VisibilityGraph:
    """Undirected simple graph in compressed sparse adjacency form.

    ``indices[indptr[i]:indptr[i+1]]`` is the ascending neighbor list of
    node ``i``.  ``m`` counts undirected edges, so ``len(indices) == 2*m``.
    """

    n: int
    indptr: np.ndarray
    indices: np.ndarray
    m: int

    def __post_init__(self):
        indptr = np.ascontiguousarray(self.indptr, dtype=np.int64)
        indices = np.ascontiguousarray(self.indices, dtype=np.int64)
        if indptr.shape != (self.n + 1,) or indptr[0] != 0 or indptr[-1] != indices.size:
            raise ValueError("malformed CSR index pointer")
        if indices.size != 2 * self.m:
            raise ValueError(f"{indices.size} directed entries for m={self.m} edges")
        if indices.size:
            if indices.min() < 0 or indices.max() >= self.n:
                raise ValueError("neighbor index out of range")
            rows = np.repeat(np.arange(self.n, dtype=np.int64), np.diff(indptr))
            if np.any(indices == rows):
                raise ValueError("self-loop in adjacency")
            same_row = rows[1:] == rows[:-1]
            if np.any(np.diff(indices)[same_row] <= 0):
                raise ValueError("neighbor lists must be strictly ascending")
        indptr.flags.writeable = False
        indices.flags.writeable = False
        object.__setattr__(self, "indptr", indptr)
        object.__setattr__(self, "indices", indices)

    def neighbors(self, i: int) -> np.ndarray:
        """Sorted neighbor list of node ``i`` (read-only view)."""
        return self.indices[self.indptr[i] : self.indptr[i + 1]]

    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    def edge_array(self) -> np.ndarray:
        """All edges as an (m, 2) array with i < j, lexicographically sorted."""
        rows = np.repeat(np.arange(self.n, dtype=np.int64), self.degrees())
        keep = self.indices > rows
        return np.column_stack([rows[keep], self.indices[keep]])

    def edge_list_text(self) -> str:
        """One ``i j`` pair per line, i < j, lexicographic order."""
        edges = self.edge_array()
        return "".join(f"{i} {j}\n" for i, j in edges)

    def edge_set(self) -> set[tuple[int, int]]:
        return {(int(i), int(j)) for i, j in self.edge_array()}


def _series_values(ts) -> np.ndarray:
    """Accept a TimeSeries or any 1-d array of finite floats."""
    if isinstance(ts, TimeSeries):
        return ts.values
    values = np.asarray(ts, dtype=np.float64)
    if values.ndim != 1:
        raise ValueError(f"expected 1-d series, got shape {values.shape}")
    if not np.all(np.isfinite(values)):
        raise ValueError("series values must be finite")
    return values


def _graph_from_edges(n: int, u: np.ndarray, v: np.ndarray) -> VisibilityGraph:
    src = np.concatenate([u, v])
    dst = np.concatenate([v, u])
    order = np.lexsort((dst, src))
    counts = np.bincount(src, minlength=n)
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(counts, out=indptr[1:])
    return VisibilityGraph(n=n, indptr=indptr, indices=dst[order], m=int(u.size))


def build_naive(ts) -> VisibilityGraph:
    """Direct per-pair evaluation of the visibility criterion.

    For each left endpoint ``i`` the slopes to all later samples are
    compared against their running maximum: ``j`` is visible from ``i``
    iff its slope strictly exceeds the slope to every sample in between.
    O(N^2); intended as the oracle for :func:`build_fast` up to N ~ 2000.
    """
    y = _series_values(ts)
    n = y.size
    if n < 2:
        raise SeriesTooShort(f"need at least 2 observations, got {n}")
    u_parts = []
    v_parts = []
    for i in range(n - 1):
        s = (y[i + 1 :] - y[i]) / np.arange(1, n - i, dtype=np.float64)
        vis = np.empty(s.size, dtype=bool)
        vis[0] = True  # immediate neighbor: nothing in between
        if s.size > 1:
            run_max = np.maximum.accumulate(s)
            vis[1:] = s[1:] > run_max[:-1]
        js = i + 1 + np.flatnonzero(vis)
        u_parts.append(np.full(js.size, i, dtype=np.int64))
        v_parts.append(js)
    return _graph_from_edges(n, np.concatenate(u_parts), np.concatenate(v_parts))


def build_fast(ts) -> VisibilityGraph:
    """Divide-and-conquer visibility graph builder.

    Processes a segment by sweeping outward from its (leftmost) maximum,
    keeping the running extreme slope, then recurses on the two sides.
    Any pair spanning the maximum is blocked by it, so no edge is missed.
    Edge set is identical to :func:`build_naive`.
    """
    y = _series_values(ts)
    n = y.size
    if n < 2:
        raise SeriesTooShort(f"need at least 2 observations, got {n}")

    u_chunks: list[np.ndarray] = []
    v_chunks: list[np.ndarray] = []
    scalar_u: list[int] = []
    scalar_v: list[int] = []

    stack = [(0, n - 1)]
    while stack:
        lo, hi = stack.pop()
        p = lo + int(np.argmax(y[lo : hi + 1]))  # leftmost maximum on ties

        if p > lo:
            seg = p - lo
            if seg < _SMALL_SEGMENT:
                run_min = math.inf
                for x in range(p - 1, lo - 1, -1):
                    g = (y[x] - y[p]) / (x - p)
                    if g < run_min:
                        scalar_u.append(x)
                        scalar_v.append(p)
                        run_min = g
            else:
                g = (y[lo:p] - y[p]) / np.arange(lo - p, 0, dtype=np.float64)
                g = g[::-1]  # nearest-to-farthest from the pivot
                vis = np.empty(seg, dtype=bool)
                vis[0] = True
                run_min = np.minimum.accumulate(g)
                vis[1:] = g[1:] < run_min[:-1]
                xs = p - 1 - np.flatnonzero(vis)
                u_chunks.append(xs)
                v_chunks.append(np.full(xs.size, p, dtype=np.int64))
            if p - 1 > lo:
                stack.append((lo, p - 1))

        if p < hi:
            seg = hi - p
            if seg < _SMALL_SEGMENT:
                run_max = -math.inf
                for x in range(p + 1, hi + 1):
                    s = (y[x] - y[p]) / (x - p)
                    if s > run_max:
                        scalar_u.append(p)
                        scalar_v.append(x)
                        run_max = s
            else:
                s = (y[p + 1 : hi + 1] - y[p]) / np.arange(1, seg + 1, dtype=np.float64)
                vis = np.empty(seg, dtype=bool)
                vis[0] = True
                run_max = np.maximum.accumulate(s)
                vis[1:] = s[1:] > run_max[:-1]
                xs = p + 1 + np.flatnonzero(vis)
                u_chunks.append(np.full(xs.size, p, dtype=np.int64))
                v_chunks.append(xs)
            if hi > p + 1:
                stack.append((p + 1, hi))

    if scalar_u:
        u_chunks.append(np.asarray(scalar_u, dtype=np.int64))
        v_chunks.append(np.asarray(scalar_v, dtype=np.int64))
    return _graph_from_edges(n, np.concatenate(u_chunks), np.concatenate(v_chunks))


def degree_sequence(g: VisibilityGraph) -> np.ndarray:
    """Per-node degrees; sums to 2m."""
    return g.degrees()
