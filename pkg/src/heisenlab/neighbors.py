"""Spatial hashing for gauge-metric proximity queries.

A gauge ball of radius eps around (z, t) constrains the horizontal offset
by |dz| <= eps and the twisted vertical offset by |dt - 2 omega(z, z')|
<= eps^2, hence |dt| <= eps^2 + 2 zmax eps over a cloud whose horizontal
parts are bounded by zmax.  Bucketing z in cubes of edge eps and t in
slabs of that stretched height therefore confines every pair within eps
to equal-or-adjacent buckets, so candidate pairs come from 3^(2n+1) cell
offsets instead of a quadratic scan.

Everything here is deterministic: candidate enumeration is sorted, and
all reductions (min over candidates) are order independent, so the
thread cap from HEISENLAB_THREADS changes speed only.
"""

from __future__ import annotations

import itertools
import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .core import check_point, koranyi_dist

_CHUNK = 1 << 19


def thread_count() -> int:
    """Worker cap from HEISENLAB_THREADS, else a small machine default."""
    raw = os.environ.get("HEISENLAB_THREADS", "")
    try:
        v = int(raw)
    except ValueError:
        v = 0
    if v >= 1:
        return v
    return min(8, os.cpu_count() or 1)


def _chunked_dist(points, i, j) -> np.ndarray:
    """koranyi_dist(points[i], points[j]) evaluated in bounded slices."""
    m = i.shape[0]
    if m == 0:
        return np.zeros(0)
    starts = range(0, m, _CHUNK)
    if len(starts) > 1 and thread_count() > 1:
        out = np.empty(m)

        def work(s):
            sl = slice(s, min(s + _CHUNK, m))
            out[sl] = koranyi_dist(points[i[sl]], points[j[sl]])

        with ThreadPoolExecutor(max_workers=thread_count()) as pool:
            list(pool.map(work, starts))
        return out
    return np.concatenate(
        [koranyi_dist(points[i[s:s + _CHUNK]], points[j[s:s + _CHUNK]])
         for s in starts])


def _cell_keys(points: np.ndarray, eps: float) -> np.ndarray:
    z = points[:, :-1]
    t = points[:, -1]
    zmax = float(np.max(np.linalg.norm(z, axis=-1), initial=0.0))
    tcell = eps * eps + 2.0 * zmax * eps
    keys = np.empty((points.shape[0], points.shape[1]), dtype=np.int64)
    keys[:, :-1] = np.floor(z / eps)
    keys[:, -1] = np.floor(t / tcell)
    return keys


def _as_void(rows: np.ndarray) -> np.ndarray:
    # bytewise row view: any consistent total order works for joins
    rows = np.ascontiguousarray(rows)
    return rows.view(np.dtype((np.void, rows.dtype.itemsize * rows.shape[1]))).ravel()


class _Cells:
    """Occupied cells of a keyed cloud, with vectorized row joins."""

    def __init__(self, keys: np.ndarray):
        self.keys, inv = np.unique(keys, axis=0, return_inverse=True)
        inv = inv.ravel()
        self.order = np.argsort(inv, kind="stable")
        self.counts = np.bincount(inv, minlength=self.keys.shape[0])
        self.starts = np.concatenate([[0], np.cumsum(self.counts)])
        v = _as_void(self.keys)
        self.vperm = np.argsort(v)
        self.vsorted = v[self.vperm]

    def find(self, query_keys: np.ndarray) -> np.ndarray:
        """Cell index per query row, -1 where the cell is unoccupied."""
        qv = _as_void(query_keys)
        pos = np.searchsorted(self.vsorted, qv)
        pos = np.minimum(pos, self.vsorted.shape[0] - 1)
        hit = self.vsorted[pos] == qv
        out = np.full(qv.shape[0], -1, dtype=np.int64)
        out[hit] = self.vperm[pos[hit]]
        return out

    def members(self, cell: int) -> np.ndarray:
        return self.order[self.starts[cell]:self.starts[cell + 1]]


def _expand(cells: _Cells, a: np.ndarray, b: np.ndarray):
    """Point-index pairs for the cartesian products members(a) x members(b)."""
    na = cells.counts[a]
    nb = cells.counts[b]
    tot = na * nb
    base = np.concatenate([[0], np.cumsum(tot)])
    rep = np.repeat(np.arange(a.shape[0]), tot)
    local = np.arange(base[-1], dtype=np.int64) - base[rep]
    ia = local // nb[rep]
    ib = local - ia * nb[rep]
    i = cells.order[cells.starts[a[rep]] + ia]
    j = cells.order[cells.starts[b[rep]] + ib]
    return i, j


def _half_offsets(dim: int):
    # one representative per unordered cell pair: strictly positive
    # lexicographic direction
    out = []
    for off in itertools.product((-1, 0, 1), repeat=dim):
        for c in off:
            if c > 0:
                out.append(np.array(off, dtype=np.int64))
                break
            if c < 0:
                break
    return out


def pairs_within(points, eps: float) -> np.ndarray:
    """All index pairs (i < j) with gauge distance <= eps.

    Returns an (m, 2) int array sorted lexicographically.  eps must be
    positive; exact-duplicate queries are cheaper through np.unique on
    the rows themselves.
    """
    pts = check_point(points)
    if pts.ndim != 2:
        raise ValueError("pairs_within expects a 2-d point array")
    if not eps > 0.0:
        raise ValueError(f"eps must be positive, got {eps}")
    cells = _Cells(_cell_keys(pts, eps))
    ii, jj = [], []
    multi = np.flatnonzero(cells.counts > 1)
    for c in multi:
        idx = np.sort(cells.members(c))
        a, b = np.triu_indices(idx.shape[0], k=1)
        ii.append(idx[a])
        jj.append(idx[b])
    for off in _half_offsets(pts.shape[1]):
        hit = cells.find(cells.keys + off)
        src = np.flatnonzero(hit >= 0)
        if src.shape[0] == 0:
            continue
        i, j = _expand(cells, src, hit[src])
        ii.append(np.minimum(i, j))
        jj.append(np.maximum(i, j))
    if not ii:
        return np.zeros((0, 2), dtype=np.int64)
    i = np.concatenate(ii)
    j = np.concatenate(jj)
    keep = _chunked_dist(pts, i, j) <= eps
    i, j = i[keep], j[keep]
    order = np.lexsort((j, i))
    return np.stack([i[order], j[order]], axis=1)


def nn_distances(points) -> np.ndarray:
    """Gauge distance from each point to its nearest other point.

    A pilot scan on a subsample picks the starting radius; the hash
    radius then grows geometrically until every point has a neighbor.
    A radius-r pass is exhaustive below r, so any reported minimum <= r
    is the true nearest-neighbor distance.
    """
    pts = check_point(points)
    if pts.ndim != 2:
        raise ValueError("nn_distances expects a 2-d point array")
    m = pts.shape[0]
    if m < 2:
        raise ValueError("nearest-neighbor distances need at least 2 points")
    sub = pts[:: max(1, (m + 2047) // 2048)]
    dsub = koranyi_dist(sub[:, None, :], sub[None, :, :])
    np.fill_diagonal(dsub, np.inf)
    pilot = float(np.median(np.min(dsub, axis=1)))
    diam = max(float(np.max(dsub[np.isfinite(dsub)], initial=0.0)), 1e-300)
    r = max(pilot / 8.0, diam * 1e-12, 1e-300)
    out = np.full(m, np.inf)
    pending = np.arange(m)
    for _ in range(64):
        best = _pending_min(pts, pending, r)
        found = best <= r
        out[pending[found]] = best[found]
        pending = pending[~found]
        if pending.shape[0] == 0:
            return out
        if r > 2.0 * diam:
            out[pending] = best[~found]
            return out
        r *= 4.0
    raise RuntimeError("nearest-neighbor search failed to terminate")


def _pending_min(pts: np.ndarray, pending: np.ndarray, r: float) -> np.ndarray:
    keys = _cell_keys(pts, r)
    cells = _Cells(keys)
    qkeys, qinv = np.unique(keys[pending], axis=0, return_inverse=True)
    qinv = qinv.ravel()
    qorder = np.argsort(qinv, kind="stable")
    qcounts = np.bincount(qinv, minlength=qkeys.shape[0])
    qstarts = np.concatenate([[0], np.cumsum(qcounts)])
    best = np.full(pending.shape[0], np.inf)
    for off in itertools.product((-1, 0, 1), repeat=pts.shape[1]):
        hit = cells.find(qkeys + np.array(off, dtype=np.int64))
        src = np.flatnonzero(hit >= 0)
        if src.shape[0] == 0:
            continue
        tot = qcounts[src] * cells.counts[hit[src]]
        bounds = np.concatenate([[0], np.cumsum(tot)])
        step = max(1, _CHUNK)
        lo = 0
        while lo < src.shape[0]:
            hi = int(np.searchsorted(bounds, bounds[lo] + step, side="left"))
            hi = max(hi, lo + 1)
            qq, pp = _expand_mixed(cells, qorder, qstarts, qcounts,
                                   src[lo:hi], hit[src[lo:hi]])
            keep = pending[qq] != pp
            qq, pp = qq[keep], pp[keep]
            d = _chunked_dist(pts, pending[qq], pp)
            np.minimum.at(best, qq, d)
            lo = hi
    return best


def _expand_mixed(cells: _Cells, qorder, qstarts, qcounts, qa, cb):
    """Pairs (pending-list position, point index) for query cells qa
    crossed with cloud cells cb."""
    na = qcounts[qa]
    nb = cells.counts[cb]
    tot = na * nb
    base = np.concatenate([[0], np.cumsum(tot)])
    rep = np.repeat(np.arange(qa.shape[0]), tot)
    local = np.arange(base[-1], dtype=np.int64) - base[rep]
    ia = local // nb[rep]
    ib = local - ia * nb[rep]
    q = qorder[qstarts[qa[rep]] + ia]
    p = cells.order[cells.starts[cb[rep]] + ib]
    return q, p
