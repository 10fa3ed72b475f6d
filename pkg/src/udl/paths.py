"""Irredundant path enumeration on unit-distance graphs.

A k-edge path is irredundant when no nonempty subset of its displacement
vectors sums to zero (which also rules out repeated vertices).  The DFS
prunes with the running set of all nonempty prefix-subset sums: a
continuation z is admissible exactly when -z is absent from that set.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import chain

from .gaussian import GaussInt
from .udgraph import UnitDistanceGraph, build_graph

MAX_PATH_LENGTH = 20
DEFAULT_STEP_BUDGET = 10**9


class StepBudgetExceeded(RuntimeError):
    def __init__(self, projected: int, budget: int):
        super().__init__(
            f"projected {projected} DFS steps exceed the budget of {budget}; "
            f"raise --step-budget or UDL_STEP_BUDGET to force the run"
        )
        self.projected = projected
        self.budget = budget


def effective_step_budget(value: int | None = None) -> int:
    if value is not None:
        return int(value)
    env = os.environ.get("UDL_STEP_BUDGET")
    return int(env) if env else DEFAULT_STEP_BUDGET


def _check_budget(projected: int, budget: int | None) -> None:
    limit = effective_step_budget(budget)
    if projected > limit:
        raise StepBudgetExceeded(projected, limit)


@dataclass(frozen=True)
class PathRecord:
    """Vertex sequence p_0 .. p_k plus the k displacement vectors."""

    vertices: tuple[tuple[int, int], ...]
    vectors: tuple[GaussInt, ...]

    @classmethod
    def from_vertices(cls, vertices) -> "PathRecord":
        verts = tuple((int(x), int(y)) for x, y in vertices)
        if not verts:
            raise ValueError("a path needs at least one vertex")
        vecs = tuple(GaussInt(b[0] - a[0], b[1] - a[1]) for a, b in zip(verts, verts[1:]))
        return cls(vertices=verts, vectors=vecs)


def _vector_list(path) -> list[tuple[int, int]]:
    vecs = getattr(path, "vectors", path)
    return [(v.a, v.b) if isinstance(v, GaussInt) else (int(v[0]), int(v[1])) for v in vecs]


def is_irredundant(path) -> bool:
    """Exhaustive subset-sum check over the path's displacement vectors.

    Accepts a PathRecord or a plain vector sequence.  2^k - 1 subsets, so k
    is capped at MAX_PATH_LENGTH.
    """
    vecs = _vector_list(path)
    k = len(vecs)
    if k > MAX_PATH_LENGTH:
        raise ValueError(f"subset check needs k <= {MAX_PATH_LENGTH}, got {k}")
    sums: list[complex] = [0j] * (1 << k)
    zs = [complex(a, b) for a, b in vecs]
    for mask in range(1, 1 << k):
        low = mask & -mask
        s = sums[mask ^ low] + zs[low.bit_length() - 1]
        if s == 0:
            return False
        sums[mask] = s
    return True


def _adjvec(g: UnitDistanceGraph):
    """Per-vertex tuples (neighbor index, u - w as complex), cached on g."""
    cached = getattr(g, "_adjvec", None)
    if cached is None:
        pts = g.points
        cached = []
        for i, row in enumerate(g.adj):
            x, y = pts[i]
            cached.append(tuple((j, complex(x - pts[j][0], y - pts[j][1])) for j in row))
        g._adjvec = cached
        g._negsets = [frozenset(nz for _, nz in row) for row in cached]
    return cached, g._negsets


def _resolve_start(g: UnitDistanceGraph, start) -> int:
    key = (int(start[0]), int(start[1]))
    i = g.index.get(key)
    if i is None:
        raise ValueError(f"start vertex {key} is not in the graph")
    return i


def _validate_k(k: int) -> None:
    if not 1 <= k <= MAX_PATH_LENGTH:
        raise ValueError(f"k must be in [1, {MAX_PATH_LENGTH}], got {k}")


def count_irredundant_from(
    g: UnitDistanceGraph, start, k: int, *, step_budget: int | None = None
) -> int:
    """Number of irredundant k-edge paths leaving `start`."""
    _validate_k(k)
    _check_budget(max(len(g.vectors), 1) ** k, step_budget)
    i = _resolve_start(g, start)
    adjvec, negsets = _adjvec(g)
    return _count_from(adjvec, negsets, i, k)


def _count_from(adjvec, negsets, i: int, k: int) -> int:
    if k == 1:
        return len(adjvec[i])
    S: set[complex] = set()

    def rec(u: int, remaining: int) -> int:
        if remaining == 1:
            # a neighbor w is blocked exactly when u - w is a prefix-subset sum
            c = len(adjvec[u])
            negs = negsets[u]
            for s in S:
                if s in negs:
                    c -= 1
            return c
        total = 0
        for w, nz in adjvec[u]:
            if nz in S:
                continue
            z = -nz
            added = [x for x in chain((z,), (s + z for s in S)) if x not in S]
            S.update(added)
            total += rec(w, remaining - 1)
            S.difference_update(added)
        return total

    return rec(i, k)


def enumerate_irredundant_from(g: UnitDistanceGraph, start, k: int, *, step_budget: int | None = None):
    """Yield the PathRecords themselves; same pruning as the counter."""
    _validate_k(k)
    _check_budget(max(len(g.vectors), 1) ** k, step_budget)
    i = _resolve_start(g, start)
    adjvec, _ = _adjvec(g)
    pts = g.points
    S: set[complex] = set()
    trail = [i]

    def rec(u: int, remaining: int):
        for w, nz in adjvec[u]:
            if nz in S:
                continue
            trail.append(w)
            if remaining == 1:
                yield PathRecord.from_vertices([pts[t] for t in trail])
            else:
                z = -nz
                added = [x for x in chain((z,), (s + z for s in S)) if x not in S]
                S.update(added)
                yield from rec(w, remaining - 1)
                S.difference_update(added)
            trail.pop()

    yield from rec(i, k)


def count_irredundant_many(
    g: UnitDistanceGraph, starts, k: int, *, workers: int = 1, step_budget: int | None = None
) -> dict[tuple[int, int], int]:
    """Counts for several start vertices; parallelizes over starts."""
    _validate_k(k)
    starts = [(int(s[0]), int(s[1])) for s in starts]
    _check_budget(len(starts) * max(len(g.vectors), 1) ** k, step_budget)
    for s in starts:
        _resolve_start(g, s)
    if workers <= 1 or len(starts) < 2:
        adjvec, negsets = _adjvec(g)
        return {s: _count_from(adjvec, negsets, g.index[s], k) for s in starts}
    chunks = [starts[i::workers] for i in range(workers)]
    out: dict[tuple[int, int], int] = {}
    with ProcessPoolExecutor(
        max_workers=workers, initializer=_pool_init, initargs=(g.points, g.m)
    ) as pool:
        for part in pool.map(_pool_count_chunk, [(c, k) for c in chunks if c]):
            out.update(part)
    return {s: out[s] for s in starts}


_POOL_GRAPH: UnitDistanceGraph | None = None


def _pool_init(points, m) -> None:
    global _POOL_GRAPH
    _POOL_GRAPH = build_graph(points, m)


def _pool_count_chunk(job):
    starts, k = job
    g = _POOL_GRAPH
    adjvec, negsets = _adjvec(g)
    return {s: _count_from(adjvec, negsets, g.index[s], k) for s in starts}


def _pool_pairs_chunk(job):
    starts, k = job
    g = _POOL_GRAPH
    adjvec, _ = _adjvec(g)
    out: dict = {}
    for s in starts:
        _pairs_from(g, adjvec, g.index[s], k, out)
    return out


def _pairs_from(g: UnitDistanceGraph, adjvec, i: int, k: int, out: dict) -> None:
    pts = g.points
    start = pts[i]
    S: set[complex] = set()

    def rec(u: int, remaining: int):
        if remaining == 1:
            for w, nz in adjvec[u]:
                if nz not in S:
                    key = (start, pts[w])
                    out[key] = out.get(key, 0) + 1
            return
        for w, nz in adjvec[u]:
            if nz in S:
                continue
            z = -nz
            added = [x for x in chain((z,), (s + z for s in S)) if x not in S]
            S.update(added)
            rec(w, remaining - 1)
            S.difference_update(added)

    rec(i, k)


def per_pair_counts(
    g: UnitDistanceGraph,
    k: int,
    starts=None,
    *,
    workers: int = 1,
    step_budget: int | None = None,
) -> dict[tuple[tuple[int, int], tuple[int, int]], int]:
    """Ordered-pair path counts |P_vw| for every start v.

    Pairs are ordered: (v, w) and (w, v) are counted separately (reversal is
    a bijection between the two path families, so the counts agree).
    """
    _validate_k(k)
    if starts is None:
        starts = list(g.points)
    else:
        starts = [(int(s[0]), int(s[1])) for s in starts]
        for s in starts:
            _resolve_start(g, s)
    _check_budget(len(starts) * max(len(g.vectors), 1) ** k, step_budget)
    out: dict = {}
    if workers <= 1 or len(starts) < 2:
        adjvec, _ = _adjvec(g)
        for s in starts:
            _pairs_from(g, adjvec, g.index[s], k, out)
        return out
    chunks = [starts[i::workers] for i in range(workers)]
    with ProcessPoolExecutor(
        max_workers=workers, initializer=_pool_init, initargs=(g.points, g.m)
    ) as pool:
        for part in pool.map(_pool_pairs_chunk, [(c, k) for c in chunks if c]):
            for key, val in part.items():
                out[key] = out.get(key, 0) + val
    return out


def path_count_lower_bound(delta: int, k: int) -> int:
    """prod_{l=0}^{k-1} max(delta - 2^l + 1, 0)."""
    if delta < 0 or k < 1:
        raise ValueError(f"need delta >= 0 and k >= 1, got delta={delta}, k={k}")
    out = 1
    for level in range(k):
        out *= max(delta - (1 << level) + 1, 0)
    return out


def _grid_dims(points) -> tuple[int, int, int, int] | None:
    """(x0, y0, width, height) when the sorted point list is a full grid."""
    if not points:
        return None
    x0, y0 = points[0]
    x1, y1 = points[-1]
    w, h = x1 - x0 + 1, y1 - y0 + 1
    if w > 0 and h > 0 and w * h == len(points):
        return (x0, y0, w, h)
    return None


def _tuple_stats(vectors, k: int):
    """Stats for every irredundant k-tuple of displacement vectors.

    Returns parallel lists (sum_x, sum_y, min/max prefix x, min/max prefix y),
    extremes taken over all prefix sums including the empty one.
    """
    cols = ([], [], [], [], [], [])
    sx_l, sy_l, mnx_l, mxx_l, mny_l, mxy_l = cols
    vecs = [(dx, dy, complex(dx, dy)) for dx, dy in vectors]
    S: set[complex] = set()

    def rec(remaining, sx, sy, mnx, mxx, mny, mxy):
        for dx, dy, z in vecs:
            if -z in S:
                continue
            nsx, nsy = sx + dx, sy + dy
            a = nsx if nsx < mnx else mnx
            b = nsx if nsx > mxx else mxx
            c = nsy if nsy < mny else mny
            d = nsy if nsy > mxy else mxy
            if remaining == 1:
                sx_l.append(nsx)
                sy_l.append(nsy)
                mnx_l.append(a)
                mxx_l.append(b)
                mny_l.append(c)
                mxy_l.append(d)
            else:
                added = [x for x in chain((z,), (s + z for s in S)) if x not in S]
                S.update(added)
                rec(remaining - 1, nsx, nsy, a, b, c, d)
                S.difference_update(added)

    rec(k, 0, 0, 0, 0, 0, 0)
    return cols


def _grid_effort(r: int, k: int) -> int:
    return sum(max(r, 1) ** i for i in range(1, k + 1))


def total_irredundant_paths(
    g: UnitDistanceGraph, k: int, *, workers: int = 1, step_budget: int | None = None
) -> int:
    """Total irredundant k-edge paths over all start vertices."""
    _validate_k(k)
    dims = _grid_dims(g.points)
    if dims is not None:
        _check_budget(_grid_effort(len(g.vectors), k), step_budget)
        _, _, w, h = dims
        sx, sy, mnx, mxx, mny, mxy = _tuple_stats(g.vectors, k)
        total = 0
        for i in range(len(sx)):
            total += max(w - (mxx[i] - mnx[i]), 0) * max(h - (mxy[i] - mny[i]), 0)
        return total
    counts = count_irredundant_many(g, list(g.points), k, workers=workers, step_budget=step_budget)
    return sum(counts.values())


def max_pair_count(
    g: UnitDistanceGraph, k: int, *, workers: int = 1, step_budget: int | None = None
) -> tuple[tuple[int, int] | None, tuple[int, int] | None, int]:
    """The ordered pair (v, w) maximizing the irredundant path count |P_vw|.

    Ties break toward the lexicographically smallest (v, w).  Full-grid point
    sets take a translation-invariant route: each irredundant vector tuple
    admits a rectangle of valid starts, accumulated per total displacement
    with 2D difference arrays.  Anything else falls back to per-start DFS.
    """
    _validate_k(k)
    dims = _grid_dims(g.points)
    if dims is not None and len(g.points) > 1:
        _check_budget(_grid_effort(len(g.vectors), k), step_budget)
        return _max_pair_grid(g, k, dims)
    pairs = per_pair_counts(g, k, workers=workers, step_budget=step_budget)
    best = (None, None, 0)
    for (v, w), count in pairs.items():
        if count > best[2] or (count == best[2] and best[0] is not None and (v, w) < (best[0], best[1])):
            best = (v, w, count)
    return best


def _max_pair_grid(g: UnitDistanceGraph, k: int, dims):
    import numpy as np

    x0, y0, w, h = dims
    sx, sy, mnx, mxx, mny, mxy = (np.array(col, dtype=np.int64) for col in _tuple_stats(g.vectors, k))
    if len(sx) == 0:
        return (None, None, 0)
    # valid start offsets (vx - x0) form [ax, bx] x [ay, by]
    ax = -mnx
    bx = w - 1 - mxx
    ay = -mny
    by = h - 1 - mxy
    keep = (ax <= bx) & (ay <= by)
    if not bool(keep.any()):
        return (None, None, 0)
    sx, sy, ax, bx, ay, by = (col[keep] for col in (sx, sy, ax, bx, ay, by))
    order = np.lexsort((sy, sx))
    sx, sy, ax, bx, ay, by = (col[order] for col in (sx, sy, ax, bx, ay, by))
    # group boundaries by (sx, sy)
    breaks = np.flatnonzero((np.diff(sx) != 0) | (np.diff(sy) != 0)) + 1
    bounds = [0, *breaks.tolist(), len(sx)]
    best_count = 0
    best_vw = None
    diff = np.zeros((w + 1, h + 1), dtype=np.int64)
    for lo, hi in zip(bounds, bounds[1:]):
        diff[:] = 0
        np.add.at(diff, (ax[lo:hi], ay[lo:hi]), 1)
        np.add.at(diff, (bx[lo:hi] + 1, ay[lo:hi]), -1)
        np.add.at(diff, (ax[lo:hi], by[lo:hi] + 1), -1)
        np.add.at(diff, (bx[lo:hi] + 1, by[lo:hi] + 1), 1)
        counts = diff.cumsum(axis=0).cumsum(axis=1)[:w, :h]
        peak = int(counts.max())
        if peak < best_count or peak == 0:
            continue
        ix, iy = np.argwhere(counts == peak)[0]
        v = (x0 + int(ix), y0 + int(iy))
        wpt = (v[0] + int(sx[lo]), v[1] + int(sy[lo]))
        if peak > best_count or (best_vw is not None and (v, wpt) < best_vw):
            best_count = peak
            best_vw = (v, wpt)
    if best_vw is None:
        return (None, None, 0)
    return (best_vw[0], best_vw[1], best_count)
