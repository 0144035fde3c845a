"""Lipschitz extension of partial curve data over an interval or a circle.

Between consecutive knots the extension runs along a constant-speed
geodesic bridge, so the Lipschitz constant of the result is governed by
the knot data: bridge speed = bridge length / parameter gap <= L(1+eps).
Outside the knot range (interval case) the curve is constant.

On the circle the domain metric is chordal (Euclidean distance between
points of the circle in R^2).  Each gap's angle interval is mapped to
the bridge through the clamped orthogonal projection onto the chord
spanned by its endpoints, which is 1-Lipschitz from the chordal metric
to the chord parameter; chaining across gaps then costs at most the
arc/chord ratio, so the extension is (pi/2) L-Lipschitz overall.

The emitted samples are the bridge polylines' own vertices (with their
parameters recovered through the chord projection), never interpolants
between them: short-cutting corners of a bridge would break per-segment
horizontality at the 1e-5 level, while bridge vertices keep it at the
rounding floor.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import check_point, koranyi_dist
from .curves import (
    HorizontalPolyline,
    cc_distance_batch,
    cc_length,
    geodesic,
)

__all__ = [
    "CircleDomain",
    "IntervalDomain",
    "PartialCurveData",
    "extend_circle",
    "extend_interval",
    "lipschitz_constant",
]

# bridges are refined until their length exceeds the true distance by at
# most this factor, which keeps measured speeds within L(1+1e-6)
_BRIDGE_EXCESS = 1.25e-7


@dataclass(frozen=True)
class IntervalDomain:
    """The parameter interval [a, b]."""

    a: float
    b: float

    def __post_init__(self):
        if not (np.isfinite(self.a) and np.isfinite(self.b) and self.a < self.b):
            raise ValueError(f"need a < b, got [{self.a}, {self.b}]")

    @property
    def size(self) -> float:
        return self.b - self.a


@dataclass(frozen=True)
class CircleDomain:
    """A circle in R^2; knots are keyed by angle, distances are chordal."""

    center: tuple[float, float]
    radius: float

    def __post_init__(self):
        c = np.asarray(self.center, dtype=float)
        if c.shape != (2,) or not np.all(np.isfinite(c)):
            raise ValueError("circle center must be a finite point of R^2")
        if not (np.isfinite(self.radius) and self.radius > 0):
            raise ValueError(f"circle radius must be positive, got {self.radius}")
        object.__setattr__(self, "center", (float(c[0]), float(c[1])))

    def embed(self, angles) -> np.ndarray:
        """Points of the circle at the given angles."""
        a = np.asarray(angles, dtype=float)
        return np.stack([self.center[0] + self.radius * np.cos(a),
                         self.center[1] + self.radius * np.sin(a)], axis=-1)

    def chord(self, a, b) -> np.ndarray:
        """Chordal (Euclidean R^2) distance between angles a and b."""
        d = np.abs(np.asarray(a, dtype=float) - np.asarray(b, dtype=float))
        d = np.minimum(d % (2 * np.pi), 2 * np.pi - d % (2 * np.pi))
        return 2.0 * self.radius * np.sin(0.5 * d)


@dataclass(frozen=True)
class PartialCurveData:
    """Knots of a prospective L-Lipschitz horizontal curve.

    params holds the knot parameters, strictly increasing: positions in
    [a, b] for an interval domain, angles in [0, 2pi) for a circle.
    points holds one group point per knot.
    """

    domain: IntervalDomain | CircleDomain
    params: np.ndarray
    points: np.ndarray
    L: float

    def __post_init__(self):
        prm = np.asarray(self.params, dtype=float)
        pts = check_point(np.asarray(self.points, dtype=float))
        if prm.ndim != 1 or pts.ndim != 2 or prm.shape[0] != pts.shape[0]:
            raise ValueError("params and points must align, one parameter per knot")
        if prm.shape[0] < 1:
            raise ValueError("need at least one knot")
        if not (np.all(np.isfinite(prm)) and np.all(np.isfinite(pts))):
            raise ValueError("knot data has non-finite entries")
        if np.any(np.diff(prm) <= 0):
            k = int(np.argmax(np.diff(prm) <= 0))
            raise ValueError(
                f"knot parameters must be strictly increasing; knots {k} and "
                f"{k + 1} are at {prm[k]} and {prm[k + 1]}")
        if isinstance(self.domain, IntervalDomain):
            if prm[0] < self.domain.a or prm[-1] > self.domain.b:
                raise ValueError("knot parameters leave the interval domain")
        elif isinstance(self.domain, CircleDomain):
            if prm[0] < 0.0 or prm[-1] >= 2 * np.pi:
                raise ValueError("circle knots are keyed by angles in [0, 2pi)")
        else:
            raise ValueError(f"unsupported domain {self.domain!r}")
        if not (np.isfinite(self.L) and self.L > 0):
            raise ValueError(f"need a positive Lipschitz bound, got {self.L}")
        object.__setattr__(self, "params", prm)
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "L", float(self.L))

    @property
    def n(self) -> int:
        return (self.points.shape[1] - 1) // 2

    def domain_distances(self) -> np.ndarray:
        """Pairwise domain distances between knots (m, m)."""
        if isinstance(self.domain, IntervalDomain):
            return np.abs(self.params[:, None] - self.params[None, :])
        return self.domain.chord(self.params[:, None], self.params[None, :])


def _check_knot_lipschitz(data: PartialCurveData, slack: float = 1e-9) -> None:
    dd = data.domain_distances()
    m = data.params.shape[0]
    dcc = cc_distance_batch(data.points[:, None, :], data.points[None, :, :])
    excess = dcc - data.L * dd
    np.fill_diagonal(excess, -np.inf)
    worst = np.unravel_index(int(np.argmax(excess)), excess.shape)
    if excess[worst] > slack:
        i, j = worst
        raise ValueError(
            f"knots {min(i, j)} and {max(i, j)} violate the Lipschitz bound: "
            f"d_cc = {dcc[i, j]:.6g} > L * {dd[i, j]:.6g} = "
            f"{data.L * dd[i, j]:.6g}")
    # diagonal of dd is zero, so exact duplicates would show up above;
    # distinct knots at chordal distance zero only occur via equal params,
    # which the constructor already rejects


def _bridge(p, q, min_points: int) -> HorizontalPolyline:
    """A geodesic whose polyline length is within _BRIDGE_EXCESS of d_cc."""
    geo = geodesic(p, q, tol=1e-6)
    if geo.samples.shape[0] < min_points:
        geo = geodesic(p, q, tol=1e-6, samples=min_points)
    ref = cc_distance_batch(p, q)
    if ref == 0.0:
        return geo
    excess = cc_length(geo) / ref - 1.0
    if excess > _BRIDGE_EXCESS:
        # the length defect scales like 1/samples^2: jump straight to a
        # count that lands under the target, with margin
        m = int(np.ceil(geo.samples.shape[0]
                        * np.sqrt(excess / _BRIDGE_EXCESS) * 1.2))
        geo = geodesic(p, q, tol=1e-6, samples=m)
        while cc_length(geo) > ref * (1.0 + _BRIDGE_EXCESS):
            geo = geodesic(p, q, tol=1e-6, samples=4 * geo.samples.shape[0])
    return geo


def _flat_piece(pt: np.ndarray, lo: float, hi: float, count: int):
    prm = np.linspace(lo, hi, max(2, count))
    return np.tile(pt, (prm.shape[0], 1)), prm


def extend_interval(data: PartialCurveData, step: float | None = None
                    ) -> HorizontalPolyline:
    """Extend interval knot data to an L-Lipschitz horizontal curve on [a, b].

    Constant before the first knot and after the last; constant-speed
    geodesic between consecutive knots.  Every emitted sample agrees with
    the ideal extension; knots are hit exactly.  step controls sampling
    density (default: domain size / 256, with at least 64 samples per
    piece).
    """
    if not isinstance(data.domain, IntervalDomain):
        raise ValueError("extend_interval needs an interval domain")
    _check_knot_lipschitz(data)
    dom = data.domain
    if step is None:
        step = dom.size / 256.0
    if step <= 0:
        raise ValueError(f"sampling step must be positive, got {step}")

    pieces: list[tuple[np.ndarray, np.ndarray]] = []
    if data.params[0] > dom.a:
        count = _piece_count(data.params[0] - dom.a, step)
        pieces.append(_flat_piece(data.points[0], dom.a, data.params[0], count))
    for i in range(data.params.shape[0] - 1):
        s0, s1 = data.params[i], data.params[i + 1]
        gap = s1 - s0
        need = _piece_count(gap, step)
        bridge = _bridge(data.points[i], data.points[i + 1], need)
        verts = bridge.samples.copy()
        verts[-1] = data.points[i + 1]  # land on the knot exactly
        seg = np.linalg.norm(np.diff(verts[:, :-1], axis=0), axis=1)
        pos = np.concatenate([[0.0], np.cumsum(seg)])
        total = pos[-1]
        if total == 0.0:
            prm = np.linspace(s0, s1, verts.shape[0])
        else:
            prm = s0 + (pos / total) * gap
            prm[-1] = s1
        pieces.append((verts, prm))
    if data.params[-1] < dom.b:
        count = _piece_count(dom.b - data.params[-1], step)
        pieces.append(_flat_piece(data.points[-1], data.params[-1], dom.b, count))
    samples, params = _glue(pieces)
    return HorizontalPolyline(samples=samples, closed=False, params=params)


def _piece_count(gap: float, step: float) -> int:
    return max(64, int(np.ceil(gap / step)) + 1)


def _glue(pieces):
    samples = [pieces[0][0]]
    params = [pieces[0][1]]
    for verts, prm in pieces[1:]:
        samples.append(verts[1:])
        params.append(prm[1:])
    return np.vstack(samples), np.concatenate(params)


def extend_circle(data: PartialCurveData, step: float | None = None
                  ) -> HorizontalPolyline:
    """Extend circle knot data to a closed (pi/2) L-Lipschitz horizontal curve.

    Each angular gap maps onto its chord by clamped orthogonal projection
    and follows the constant-speed geodesic bridge between the knot
    points; on gaps wider than pi the projection saturates, so the curve
    holds the knot value on the saturated sub-arcs.  A single knot yields
    the constant closed curve.
    """
    if not isinstance(data.domain, CircleDomain):
        raise ValueError("extend_circle needs a circle domain")
    _check_knot_lipschitz(data)
    dom = data.domain
    if step is None:
        step = 2 * np.pi * dom.radius / 256.0
    if step <= 0:
        raise ValueError(f"sampling step must be positive, got {step}")

    m = data.params.shape[0]
    pieces = []
    for i in range(m):
        nxt = (i + 1) % m
        phi0 = data.params[i]
        dphi = (data.params[nxt] if nxt > i else data.params[0] + 2 * np.pi) - phi0
        pieces.extend(_circle_gap(data.points[i], data.points[nxt], phi0, dphi,
                                  dom.radius, step))
    samples, params = _glue(pieces)
    samples[-1] = samples[0]  # exact reclosure; everything upstream is
    params[-1] = data.params[0] + 2 * np.pi  # within the rounding floor
    return HorizontalPolyline(samples=samples, closed=True, params=params)


def _circle_gap(pa, pb, phi0, dphi, radius, step):
    """Sample pieces covering the angle interval [phi0, phi0 + dphi]."""
    arc = radius * dphi
    chord = 2.0 * radius * np.sin(0.5 * dphi)
    if chord <= 1e-15 * radius:
        # a full wrap back to the same knot: the projection collapses
        return [_flat_piece(pa, phi0, phi0 + dphi, _piece_count(arc, step))]
    # the chord projection rises from 0 to the full chord on the angle
    # sub-interval [lo, hi]; outside it (gaps wider than pi) it saturates
    lo = max(0.0, dphi - np.pi)
    hi = min(np.pi, dphi)
    pieces = []
    if lo > 0.0:
        pieces.append(_flat_piece(pa, phi0, phi0 + lo,
                                  _piece_count(radius * lo, step)))
    need = _piece_count(radius * (hi - lo), step)
    bridge = _bridge(pa, pb, need)
    verts = bridge.samples.copy()
    verts[-1] = pb
    seg = np.linalg.norm(np.diff(verts[:, :-1], axis=0), axis=1)
    pos = np.concatenate([[0.0], np.cumsum(seg)])
    if pos[-1] == 0.0:
        delta = np.linspace(lo, hi, verts.shape[0])
    else:
        x = (pos / pos[-1]) * chord
        arg = np.clip(x / radius - np.sin(0.5 * dphi), -1.0, 1.0)
        delta = 0.5 * dphi + np.arcsin(arg)
        delta[0], delta[-1] = lo, hi
    pieces.append((verts, phi0 + delta))
    if hi < dphi:
        pieces.append(_flat_piece(pb, phi0 + hi, phi0 + dphi,
                                  _piece_count(radius * (dphi - hi), step)))
    return pieces


def lipschitz_constant(dom_points, points, metric: str = "koranyi",
                       pairs: np.ndarray | None = None) -> float:
    """Largest ratio d(points_i, points_j) / |dom_i - dom_j| over sample pairs.

    dom_points may be scalars (interval parameters) or R^d rows (for
    instance embedded circle points, making the ratio chordal).  metric
    selects the codomain distance: "koranyi" or "cc".  pairs, when given
    as an (m, 2) index array, restricts the measurement to those pairs;
    the default takes all of them.  Coincident domain points are
    rejected: the ratio is not defined there.
    """
    dom = np.asarray(dom_points, dtype=float)
    pts = check_point(np.asarray(points, dtype=float))
    if dom.ndim == 1:
        dom = dom[:, None]
    if dom.shape[0] != pts.shape[0]:
        raise ValueError("domain samples and points must align")
    if metric not in ("koranyi", "cc"):
        raise ValueError(f"unknown metric {metric!r}; use 'koranyi' or 'cc'")
    if pairs is None:
        i, j = np.triu_indices(pts.shape[0], k=1)
    else:
        pairs = np.asarray(pairs, dtype=int)
        i, j = pairs[:, 0], pairs[:, 1]
    best = 0.0
    dist = koranyi_dist if metric == "koranyi" else cc_distance_batch
    for lo in range(0, i.shape[0], 500_000):
        sl = slice(lo, lo + 500_000)
        dd = np.linalg.norm(dom[i[sl]] - dom[j[sl]], axis=1)
        if np.any(dd == 0.0):
            k = int(np.argmax(dd == 0.0))
            raise ValueError(
                f"samples {i[sl][k]} and {j[sl][k]} share a domain point; "
                "the Lipschitz ratio is undefined there")
        best = max(best, float(np.max(dist(pts[i[sl]], pts[j[sl]]) / dd)))
    return best
