"""Horizontal polylines: exact lifts, cc-length, signed areas, geodesics.

The single engineering fact this module leans on: along a straight
planar segment a -> b the contact integrand integrates in closed form,

    int_seg (x_j dy_j - y_j dx_j) = a^x_j b^y_j - a^y_j b^x_j,

because the parameter-dependent cross terms cancel.  Per edge the lift
increment is therefore

    t_{i+1} - t_i = -2 sum_j (x_{j,i} y_{j,i+1} - y_{j,i} x_{j,i+1})
                  = -2 omega(z_i, z_{i+1}),

an exact evaluation rather than a quadrature, so closure and area
identities hold at machine precision.  Two consequences used elsewhere:

  * linear interpolation between consecutive lift samples stays on the
    lifted segment (the increment -2 omega(a, m) is linear in m along
    the segment), so resampling a lift is lossless;
  * left translation maps exact polyline lifts to exact polyline lifts:
    the increment changes by -2 omega(g_z, b - a), which matches the
    translated t samples term by term.

Geodesics: after left-translating the endpoints to (0, g), minimizers
project to circular arcs inside the plane span{g_z, J g_z} (a full
circle in an arbitrary such plane when g_z = 0, a straight segment when
g_t = 0).  The sweep angle theta in (0, 2pi) is the single free
parameter; we solve for it against the discrete polygon area of the
returned sample set, which parks the lift's endpoint error at the
floating-point noise floor instead of the O(1/N^2) discretization gap.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core import check_point, check_same_group, group_inv, group_mul, koranyi_dist, point
from .symplectic import complex_structure

__all__ = [
    "HorizontalPolyline",
    "NonConvergenceError",
    "PlanarPolyline",
    "cc_distance",
    "cc_distance_batch",
    "cc_length",
    "geodesic",
    "horizontal_lift",
    "left_translate",
    "lift_increments",
    "point_at_length",
    "projected_signed_areas",
    "segment_lift_residual",
]


class NonConvergenceError(RuntimeError):
    """Raised when the geodesic root finder cannot meet its target."""


# ---------------------------------------------------------------------------
# polyline containers
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PlanarPolyline:
    """An ordered list of samples in R^{2n}, optionally closed.

    For closed curves the closing edge back to the first sample is
    implicit; repeating the first sample at the end is also accepted
    (the duplicate edge contributes nothing anywhere).
    """

    samples: np.ndarray
    closed: bool = False

    def __post_init__(self):
        s = np.asarray(self.samples, dtype=float)
        if s.ndim != 2 or s.shape[0] < 2 or s.shape[1] % 2 != 0 or s.shape[1] == 0:
            raise ValueError(
                f"planar polyline needs >= 2 samples of even width, got {s.shape}")
        if not np.all(np.isfinite(s)):
            raise ValueError("planar polyline has non-finite components")
        object.__setattr__(self, "samples", s)

    @property
    def n(self) -> int:
        return self.samples.shape[1] // 2


@dataclass(frozen=True)
class HorizontalPolyline:
    """Samples of a horizontal curve in H^n.

    The t column is expected to follow the exact per-segment lift of the
    projection; constructors in this package guarantee it (lifts exactly,
    derived curves to within 1e-9 per segment, see segment_lift_residual).
    Closed curves carry the return-to-start sample explicitly and must
    reclose within 1e-9 in gauge distance.  params, when present, holds
    the domain parameter of each sample (used by the extension module).
    """

    samples: np.ndarray
    closed: bool = False
    params: np.ndarray | None = None

    def __post_init__(self):
        s = check_point(np.asarray(self.samples, dtype=float))
        if s.ndim != 2 or s.shape[0] < 2:
            raise ValueError(f"horizontal polyline needs >= 2 samples, got {s.shape}")
        if not np.all(np.isfinite(s)):
            raise ValueError("horizontal polyline has non-finite components")
        object.__setattr__(self, "samples", s)
        if self.params is not None:
            prm = np.asarray(self.params, dtype=float)
            if prm.shape != (s.shape[0],):
                raise ValueError("params must align with samples")
            object.__setattr__(self, "params", prm)
        if self.closed and koranyi_dist(s[0], s[-1]) > 1e-9:
            raise ValueError("closed horizontal polyline does not reclose "
                             f"(gauge gap {koranyi_dist(s[0], s[-1]):.3e})")

    @property
    def n(self) -> int:
        return (self.samples.shape[1] - 1) // 2

    @property
    def projection(self) -> np.ndarray:
        return self.samples[:, :-1]


def _edge_cross_sum(za: np.ndarray, zb: np.ndarray) -> np.ndarray:
    # sum_j (x_j(a) y_j(b) - y_j(a) x_j(b)) = omega(a, b) per edge
    return np.sum(za[..., 0::2] * zb[..., 1::2] - za[..., 1::2] * zb[..., 0::2],
                  axis=-1)


def lift_increments(z: np.ndarray) -> np.ndarray:
    """Exact per-edge t-increments -2 omega(z_i, z_{i+1}) of a vertex array."""
    z = np.asarray(z, dtype=float)
    return -2.0 * _edge_cross_sum(z[:-1], z[1:])


def _lift_t(z: np.ndarray, t0: float) -> np.ndarray:
    t = np.empty(z.shape[0])
    t[0] = t0
    np.cumsum(lift_increments(z), out=t[1:])
    t[1:] += t0
    return t


def horizontal_lift(c: PlanarPolyline, t0: float) -> HorizontalPolyline:
    """The horizontal lift of a planar polyline starting at (c_0, t0).

    Per-segment increments use the closed form, so the projection of the
    output is the input exactly and re-integration reproduces the t
    column bit for bit.  For closed inputs the traversal includes the
    closing edge; the lift is flagged closed only when it actually
    recloses (within 1e-9 in gauge distance), which by the area identity
    means the total projected signed area vanishes.
    """
    z = c.samples
    if c.closed and not np.array_equal(z[0], z[-1]):
        z = np.vstack([z, z[0]])
    t = _lift_t(z, float(t0))
    samples = np.hstack([z, t[:, None]])
    closed = bool(c.closed and koranyi_dist(samples[0], samples[-1]) <= 1e-9)
    return HorizontalPolyline(samples=samples, closed=closed)


def segment_lift_residual(h: HorizontalPolyline) -> float:
    """Max deviation of the t-increments from the exact segment lift."""
    z = h.projection
    dt = np.diff(h.samples[:, -1])
    return float(np.max(np.abs(dt - lift_increments(z)), initial=0.0))


def left_translate(g, h: HorizontalPolyline) -> HorizontalPolyline:
    """Left-translate a horizontal polyline by the group element g."""
    g = check_point(g)
    return HorizontalPolyline(samples=group_mul(g, h.samples),
                              closed=h.closed, params=h.params)


def cc_length(h: HorizontalPolyline) -> float:
    """Length of a horizontal polyline: Euclidean length of its projection."""
    dz = np.diff(h.projection, axis=0)
    return float(np.sum(np.sqrt(np.sum(dz * dz, axis=1))))


def projected_signed_areas(c: PlanarPolyline):
    """Shoelace areas of the n coordinate-plane projections of a closed curve.

    Returns (areas, total) with area_j = half the shoelace sum of the
    (x_j, y_j) projection.  The lift endpoint gap of the same curve is
    -4 * total, which is the quantitative form of the closure identity.
    """
    if not c.closed:
        raise ValueError("signed areas are defined for closed polylines only")
    z = c.samples
    za, zb = z, np.roll(z, -1, axis=0)
    cross = za[:, 0::2] * zb[:, 1::2] - za[:, 1::2] * zb[:, 0::2]
    areas = 0.5 * np.sum(cross, axis=0)
    return areas, float(np.sum(areas))


# ---------------------------------------------------------------------------
# geodesics
# ---------------------------------------------------------------------------

def _segment_area(r2, theta):
    # area between a chord of squared length r2 and the arc sweeping theta
    s = np.sin(0.5 * theta)
    return r2 * (theta - np.sin(theta)) / (8.0 * s * s)


def _segment_area_slope(r2, theta):
    s = np.sin(0.5 * theta)
    return (r2 / 8.0) * (2.0 - (theta - np.sin(theta)) * np.cos(0.5 * theta) / s**3)


_THETA_LO = 1e-12
_THETA_HI = 2.0 * np.pi - 1e-12


def _solve_theta_analytic(r2, target, iters: int = 90):
    """Bisection for segment_area(r2, theta) = target on (0, 2pi), vectorized."""
    r2, target = np.atleast_1d(np.asarray(r2, dtype=float),
                               np.asarray(target, dtype=float))
    shape = np.broadcast(r2, target).shape
    lo = np.full(shape, _THETA_LO)
    hi = np.full(shape, _THETA_HI)
    bad = np.broadcast_to(_segment_area(r2, hi) < target, shape)
    if np.any(bad):
        raise NonConvergenceError(
            "arc-angle bisection bracket exhausted: target area "
            f"{np.max(np.broadcast_to(target, shape)[bad]):.3e} unreachable "
            f"at chord^2 {np.min(np.broadcast_to(r2, shape)[bad]):.3e}")
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        below = _segment_area(r2, mid) < target
        lo = np.where(below, mid, lo)
        hi = np.where(below, hi, mid)
    return 0.5 * (lo + hi)


def _arc_uv(r: float, theta: float, m: int) -> np.ndarray:
    """Vertices of the inscribed arc polygon from (0,0) to (r,0), CCW sweep.

    Stable closed form: with tau = i/m,

        P(tau) = r * sin(tau theta / 2) / sin(theta / 2)
                   * (cos((tau - 1) theta / 2), sin((tau - 1) theta / 2)),

    which avoids the center-plus-radius cancellation for shallow arcs.
    """
    tau = np.linspace(0.0, 1.0, m + 1)
    rho = r * np.sin(0.5 * tau * theta) / np.sin(0.5 * theta)
    ang = 0.5 * (tau - 1.0) * theta
    return np.stack([rho * np.cos(ang), rho * np.sin(ang)], axis=1)


def _poly_area_uv(P: np.ndarray) -> float:
    # signed area of the loop P[0] -> ... -> P[-1] -> P[0]; the closing
    # chord passes through the origin, so only consecutive crosses count
    return float(0.5 * np.sum(P[:-1, 0] * P[1:, 1] - P[1:, 0] * P[:-1, 1]))


def _solve_theta_discrete(r: float, target: float, m: int, theta0: float) -> float:
    """Refine theta so the inscribed m-gon hits the target area exactly.

    Newton polish from the analytic solution with the analytic slope (the
    discrete area differs by O(1/m^2), well inside Newton's basin); falls
    back to plain bisection if the polish stalls.
    """
    theta = theta0
    tol = max(1e-15, 1e-15 * target)
    for _ in range(4):
        resid = _poly_area_uv(_arc_uv(r, theta, m)) - target
        if abs(resid) <= tol:
            return theta
        theta = min(max(theta - resid / _segment_area_slope(r * r, theta),
                        _THETA_LO), _THETA_HI)
    lo, hi = _THETA_LO, _THETA_HI
    if _poly_area_uv(_arc_uv(r, hi, m)) < target:
        raise NonConvergenceError(
            f"discrete arc-area bisection bracket exhausted (target {target:.3e})")
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if _poly_area_uv(_arc_uv(r, mid, m)) < target:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 1e-15:
            break
    return 0.5 * (lo + hi)


def _plane_basis(z: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    n = z.shape[0] // 2
    J = complex_structure(n)
    if np.all(z == 0.0):
        e1 = np.zeros(2 * n)
        e1[0] = 1.0
    else:
        e1 = z / np.linalg.norm(z)
    return e1, J @ e1


def _arc_samples(theta: float, tol: float) -> int:
    # enough segments that the polygon length sits within (1+tol) of the
    # arc length: relative shortfall ~ (theta/m)^2 / 24 per segment
    return max(8, int(np.ceil(256.0 * theta / (2.0 * np.pi))),
               int(np.ceil(theta / np.sqrt(8.0 * tol))))


def geodesic(p, q, tol: float = 1e-6, samples: int | None = None) -> HorizontalPolyline:
    """A length-minimizing horizontal polyline from p to q.

    Left-translates q to the origin frame, solves for the arc sweep angle
    whose lifted circular arc (straight segment when the t-gap vanishes,
    full circle when the horizontal gap vanishes) hits the target, and
    translates back.  The first and last samples equal p and q exactly
    and the length is within (1+tol) of the family infimum; the number of
    sample points adapts to tol unless given explicitly (>= 2).

    Raises NonConvergenceError with residual diagnostics if the root
    finder cannot reach the target t, or if the built curve misses q by
    more than accumulated rounding allows.
    """
    p, q = check_same_group(p, q)
    if p.ndim != 1 or q.ndim != 1:
        raise ValueError("geodesic expects single points")
    if tol <= 0.0:
        raise ValueError(f"tol must be positive, got {tol}")
    if samples is not None and samples < 2:
        raise ValueError("a polyline needs at least 2 samples")
    g = group_mul(group_inv(p), q)
    z, t = g[:-1], float(g[-1])
    r = float(np.linalg.norm(z))

    if t == 0.0:
        m = 1 if samples is None else samples - 1
        tau = np.linspace(0.0, 1.0, m + 1)
        verts = tau[:, None] * z[None, :]
    else:
        e1, e2 = _plane_basis(z)
        sigma = -np.sign(t)
        target = 0.25 * abs(t)
        if r == 0.0:
            # full circle with one vertex at the origin; the inscribed
            # m-gon radius is corrected in closed form so the enclosed
            # area, hence the lift gap, is exact
            m = samples - 1 if samples is not None else max(
                256, int(np.ceil(np.pi / np.sqrt(3.0 * tol))))
            m = max(3, m)
            R = np.sqrt(2.0 * target / (m * np.sin(2.0 * np.pi / m)))
            ang = 2.0 * np.pi * np.linspace(0.0, 1.0, m + 1)
            uv = np.stack([R * (1.0 - np.cos(ang)), -R * np.sin(ang)], axis=1)
        else:
            theta0 = _solve_theta_analytic(r * r, target)[0]
            m = samples - 1 if samples is not None else _arc_samples(theta0, tol)
            m = max(2, m)
            theta = _solve_theta_discrete(r, target, m, theta0)
            uv = _arc_uv(r, theta, m)
        uv[:, 1] *= sigma
        verts = uv[:, 0:1] * e1[None, :] + uv[:, 1:2] * e2[None, :]
        verts[-1] = z  # exact endpoint; the snap is far below one sample spacing

    tcol = _lift_t(verts, 0.0)
    out = group_mul(p, point(verts, tcol))
    out[0] = p
    # the sweep angle is solved to machine precision, so any endpoint
    # residual is accumulated rounding: z at ulp level, t at cumsum level.
    # Check both at their own scales, then snap; the snap moves the last
    # edge's lift balance by far less than the 1e-9 horizontality budget.
    zgap = float(np.linalg.norm(out[-1][:-1] - q[:-1]))
    tgap = abs(float(out[-1][-1] - q[-1]))
    zscale = 1.0 + float(np.linalg.norm(q[:-1]))
    tscale = 1.0 + float(np.max(np.abs(out[:, -1])))
    if zgap > 1e-9 * zscale or tgap > 1e-9 * tscale:
        raise NonConvergenceError(
            f"geodesic endpoint off target: |dz| = {zgap:.3e}, "
            f"|dt| = {tgap:.3e} at scale {tscale:.3e}")
    out[-1] = q
    return HorizontalPolyline(samples=out, closed=False)


def cc_distance(p, q, tol: float = 1e-6) -> float:
    """Carnot-Caratheodory distance, as the length of the solved geodesic."""
    return cc_length(geodesic(p, q, tol))


def cc_distance_batch(p, q) -> np.ndarray:
    """Vectorized cc distance via the arc family's exact length.

    Solves the analytic arc-angle equation per pair and evaluates

        length = r theta / (2 sin(theta / 2)),

    the limit of cc_length(geodesic(p, q, tol)) as tol -> 0.  Used where
    pairwise distances dominate the cost (Lipschitz measurement, brackets).
    """
    p, q = check_same_group(p, q)
    g = group_mul(group_inv(p), q)
    z, t = g[..., :-1], g[..., -1]
    scalar = t.ndim == 0
    shape = t.shape
    t = np.atleast_1d(np.asarray(t, dtype=float)).ravel()
    r = np.sqrt(np.sum(np.atleast_2d(z.reshape(t.shape + (-1,))) ** 2, axis=-1))
    out = r.copy()
    vertical = (r == 0.0) & (t != 0.0)
    out[vertical] = np.sqrt(np.pi * np.abs(t[vertical]))
    mask = (r > 0.0) & (t != 0.0)
    if np.any(mask):
        rm, tm = r[mask], t[mask]
        theta = _solve_theta_analytic(rm * rm, 0.25 * np.abs(tm))
        out[mask] = rm * theta / (2.0 * np.sin(0.5 * theta))
    return float(out[0]) if scalar else out.reshape(shape)


# ---------------------------------------------------------------------------
# arc-length positions along a polyline
# ---------------------------------------------------------------------------

def point_at_length(h: HorizontalPolyline, s) -> np.ndarray:
    """Points of h at the prescribed cc arc-length positions.

    s may be a scalar or an array; values are clamped to [0, cc_length].
    Linear interpolation in all 2n+1 coordinates is exact on lifted
    segments, so the result stays on the curve.
    """
    seg = np.sqrt(np.sum(np.diff(h.projection, axis=0) ** 2, axis=1))
    cum = np.concatenate([[0.0], np.cumsum(seg)])
    s = np.clip(np.asarray(s, dtype=float), 0.0, cum[-1])
    out = np.empty(s.shape + (h.samples.shape[1],))
    for c in range(h.samples.shape[1]):
        out[..., c] = np.interp(s, cum, h.samples[:, c])
    return out
