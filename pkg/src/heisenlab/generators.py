"""Reference map families with known contact, rank, and scaling behavior.

Three constructions cover the analysis suites:

* fixed-frame maps u = sum_i phi_i(p) v_i over an isotropic frame {v_i}
  with constant t.  Both the symplectic pairing of difference columns
  and the contact residual cancel structurally, not just in the limit,
  so these maps certify the rank and isotropy gates at grid precision.
  With the standard frame (x-slots only) the cancellation is exact in
  floating point; with a rotated frame it holds to rounding.

* quadratic normal-form maps g with g^(x_i)(p) = p_i for i <= j,
  y = Q p' + c on the first j coordinates (Q symmetric), and the closed
  form t = 2 c . p' that makes them horizontal.  All components are
  affine, central differences are exact, the rank equals j exactly, and
  the first-j-coordinates structure is what the covering estimator
  expects.

* staircase line lifts: sample a planar map on the grid and integrate t
  edge by edge, axis by axis (axis a runs with all later axes pinned at
  their first node).  Grid segments are lifted exactly, so the contact
  defect is pure cross-line discretization; with piecewise-smooth
  planar fields whose second derivative jumps on hyperplanes, the
  residual scales linearly in h, which is the calibration the
  refinement tests pin down.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator

import numpy as np

from . import symplectic as sp
from .contact import SampledMap

GRID_CAP = 1_000_000


def _omega(z, w) -> np.ndarray:
    return np.sum(z[..., 0::2] * w[..., 1::2] - z[..., 1::2] * w[..., 0::2],
                  axis=-1)


def suite_shape(k: int, target: int = 65, cap: int = GRID_CAP) -> tuple:
    """Largest odd per-axis size <= target whose k-grid stays under cap."""
    size = target
    while size > 5 and size ** k > cap:
        size -= 2
    return (size,) * k


@dataclass(frozen=True)
class SuiteEntry:
    name: str
    smap: SampledMap
    expected_rank: int
    kind: str


def standard_isotropic_frame(n: int, j: int) -> np.ndarray:
    """Rows e_{x_1}, ..., e_{x_j}: the reference isotropic frame."""
    if not 0 <= j <= n:
        raise ValueError(f"need 0 <= j <= n, got j={j}, n={n}")
    frame = np.zeros((j, 2 * n))
    for i in range(j):
        frame[i, 2 * i] = 1.0
    return frame


def _smooth_fields(k: int, j: int, rng) -> Callable:
    """j scalar fields with independent gradients: p_i plus a small wave."""
    waves = rng.uniform(-1.0, 1.0, size=(j, k))
    phases = rng.uniform(0.0, 2.0 * np.pi, size=j)
    amps = rng.uniform(0.15, 0.35, size=j)

    def fields(pts):
        args = np.tensordot(pts, waves.T, axes=1) + phases
        return pts[..., :j] + amps * np.sin(args)

    return fields


def _linear_fields(k: int, j: int, rng) -> Callable:
    mix = 0.2 * rng.uniform(-1.0, 1.0, size=(j, k))
    for i in range(j):
        mix[i, i] += 1.0

    def fields(pts):
        return np.tensordot(pts, mix.T, axes=1)

    return fields


def fixed_frame_map(k: int, n: int, j: int, seed: int = 0,
                    rotated: bool = False,
                    linear: bool = False) -> Callable:
    """Contact map through an isotropic frame; t is constant.

    Returns a vectorized callable (..., k) -> (..., 2n+1) of rank j on
    generic grids.
    """
    rng = np.random.default_rng(seed)
    if rotated:
        frame = sp.random_isotropic_subspace(n, j, rng).basis
    else:
        frame = standard_isotropic_frame(n, j)
    fields = _linear_fields(k, j, rng) if linear else _smooth_fields(k, j, rng)
    t0 = float(rng.uniform(-0.5, 0.5))

    def fn(pts):
        pts = np.asarray(pts, dtype=float)
        phi = np.atleast_1d(fields(pts))
        z = np.tensordot(phi, frame, axes=1)
        out = np.zeros(pts.shape[:-1] + (2 * n + 1,))
        out[..., :-1] = z
        out[..., -1] = t0
        return out

    return fn


def sard_normal_map(k: int, n: int, j: int, seed: int = 0) -> Callable:
    """Rank-j normal form: x_i = p_i for i <= j, y = Q p' + c, t = 2 c . p'.

    Q is a seeded symmetric matrix, p' the first j coordinates.  The t
    component is the closed-form horizontal potential of the affine
    planar part, so the map is contact to rounding, and its derivative
    vanishes in the trailing k - j directions.
    """
    if not 0 <= j <= min(n, k):
        raise ValueError(f"need 0 <= j <= min(n, k), got j={j}")
    rng = np.random.default_rng(seed)
    B = rng.uniform(-0.6, 0.6, size=(j, j))
    Q = 0.5 * (B + B.T)
    c = rng.uniform(-0.5, 0.5, size=j)

    def fn(pts):
        pts = np.asarray(pts, dtype=float)
        p = pts[..., :j]
        out = np.zeros(pts.shape[:-1] + (2 * n + 1,))
        out[..., 0:2 * j:2] = p
        out[..., 1:2 * j:2] = np.tensordot(p, Q.T, axes=1) + c
        out[..., -1] = 2.0 * np.tensordot(p, c, axes=1)
        return out

    return fn


def pure_t_map(k: int, n: int, scale: float = 1.0) -> Callable:
    """f(p) = (0, ..., 0, scale p_1): motion along the center only."""

    def fn(pts):
        pts = np.asarray(pts, dtype=float)
        out = np.zeros(pts.shape[:-1] + (2 * n + 1,))
        out[..., -1] = scale * pts[..., 0]
        return out

    return fn


def isotropic_embedding(k: int, n: int, j: int | None = None) -> Callable:
    """p maps linearly into the first min(j, k) x-slots; t = 0."""
    j = min(n, k) if j is None else j

    def fn(pts):
        pts = np.asarray(pts, dtype=float)
        out = np.zeros(pts.shape[:-1] + (2 * n + 1,))
        for i in range(j):
            out[..., 2 * i] = pts[..., i % k]
        return out

    return fn


def control_map(k: int, n: int, seed: int = 0,
                axes: tuple = (0, 1), linear: bool = False):
    """Non-contact plane map for the circulation detector.

    Sends (p_a, p_b) into the (x_1, y_1) slots with t = 0; the image
    directions pair symplectically, so the map fails the contact gate.
    Returns (fn, c_fn) where c_fn gives the pullback coefficient on the
    (a, b) plane, the value the loop detector should integrate to.
    """
    a, b = axes
    rng = np.random.default_rng(seed)
    beta = 0.0 if linear else float(rng.uniform(0.2, 0.4))

    def fn(pts):
        pts = np.asarray(pts, dtype=float)
        out = np.zeros(pts.shape[:-1] + (2 * n + 1,))
        out[..., 0] = pts[..., a]
        out[..., 1] = pts[..., b] * (1.0 + beta * pts[..., a])
        return out

    def c_fn(pts):
        pts = np.asarray(pts, dtype=float)
        return 1.0 + beta * pts[..., a]

    return fn, c_fn


def ramp_scalar_field(k: int, seed: int = 0, kinks: int = 24,
                      amp: float = 0.6) -> Callable:
    """Scalar field with a Lipschitz gradient that kinks on hyperplanes.

    eta(p) = w . p + sum_m c_m ramp(u_m . p - b_m) with ramp(s) = s|s|/2,
    whose second derivative jumps across each hyperplane.  On a grid of
    spacing h the nodes straddling a kink see an O(h) central-difference
    defect, which is what makes staircase-lifted maps built from these
    fields shrink their contact residual linearly in h.
    """
    rng = np.random.default_rng(seed)
    w = rng.uniform(-1.0, 1.0, size=k)
    dirs = rng.normal(size=(kinks, k))
    dirs /= np.linalg.norm(dirs, axis=1, keepdims=True)
    offs = rng.uniform(-0.8, 0.8, size=kinks)
    coef = amp * rng.uniform(0.5, 1.0, size=kinks) * rng.choice(
        [-1.0, 1.0], size=kinks)

    def eta(pts):
        pts = np.asarray(pts, dtype=float)
        s = np.tensordot(pts, dirs.T, axes=1) - offs
        return np.tensordot(pts, w, axes=1) + np.sum(
            coef * 0.5 * s * np.abs(s), axis=-1)

    return eta


def curved_planar_map(k: int, n: int, seed: int = 0,
                      field: Callable | None = None) -> Callable:
    """Rank-1 planar map u(p) = gamma(eta(p)) along a smooth curve.

    Any single-curve image has isotropic differential, while gamma's
    curvature keeps the staircase lift's t genuinely varying.
    """
    rng = np.random.default_rng(seed)
    freqs = rng.uniform(0.6, 1.4, size=2 * n)
    phases = rng.uniform(0.0, 2.0 * np.pi, size=2 * n)
    amps = rng.uniform(0.4, 0.9, size=2 * n)
    eta = ramp_scalar_field(k, seed=seed + 1) if field is None else field

    def fn(pts):
        s = eta(pts)[..., None]
        return amps * np.sin(freqs * s + phases)

    return fn


def corner_curve_map(k: int, n: int, seed: int = 0,
                     corners: int = 5) -> Callable:
    """Lipschitz horizontal map whose residual shrinks linearly in h.

    The planar part traces a polyline gamma(eta(p)) with eta linear, so
    away from the corners every central difference stays parallel to a
    single edge direction and the contact residual vanishes outright.
    Consecutive edge directions are chosen to pair symplectically, so a
    node whose stencil straddles a corner picks up a residual of order
    h that horizontality cannot cancel: at signed corner offset s0 the
    residual is s0 (delta - s0) / h times the pairing, delta = |grad
    eta . e_a| h.  Keeping eta linear makes delta constant along each
    corner hyperplane, and the straddle offsets equidistribute across
    grid columns, so the grid max sits at the analytic peak on every
    refinement level and halves when h does.  t comes from the exact
    piecewise-linear potential of the polyline, so the map is
    horizontal in the continuum.
    """
    rng = np.random.default_rng(seed)
    # knots spaced wider than any coarse-grid stencil so straddles are
    # single-corner, and consecutive pairings pinned at 0.8 so every
    # corner has the same residual peak and the grid max is sampled by
    # all of them at once
    knots = -0.6 + 1.2 * (np.arange(corners)
                          + rng.uniform(0.15, 0.85, size=corners)) / corners
    pair = 0.8
    v = rng.normal(size=2 * n)
    v /= np.linalg.norm(v)
    dirs = [v]
    for _ in range(corners):
        jv = np.empty(2 * n)
        jv[0::2] = -dirs[-1][1::2]
        jv[1::2] = dirs[-1][0::2]
        y = rng.normal(size=2 * n)
        y -= np.dot(y, jv) * jv
        y /= np.linalg.norm(y)
        s = float(rng.choice([-1.0, 1.0]))
        dirs.append(s * pair * jv + np.sqrt(1.0 - pair ** 2) * y)
    dirs = np.array(dirs)
    g_pts = np.zeros((corners, 2 * n))
    tau_pts = np.zeros(corners)
    g_pts[0] = rng.uniform(-0.5, 0.5, size=2 * n)
    for m in range(1, corners):
        step = knots[m] - knots[m - 1]
        g_pts[m] = g_pts[m - 1] + dirs[m] * step
        tau_pts[m] = tau_pts[m - 1] - 2.0 * _omega(g_pts[m - 1],
                                                   dirs[m]) * step
    # piece i covers eta in (knots[i-1], knots[i]]; anchor row i holds
    # the knot the piece starts from (piece 0 is anchored at knots[0])
    a_s = knots[np.maximum(np.arange(corners + 1) - 1, 0)]
    a_g = g_pts[np.maximum(np.arange(corners + 1) - 1, 0)]
    a_tau = tau_pts[np.maximum(np.arange(corners + 1) - 1, 0)]
    slopes = -2.0 * _omega(a_g, dirs)
    # quadratic-irrational component ratios keep the straddle offsets
    # equidistributed along each corner hyperplane at every grid level;
    # near-rational ratios would cluster them and make the observed
    # max flutter between refinements
    roots = np.sqrt(np.array([2.0, 3.0, 5.0, 7.0, 11.0, 13.0])[:k])
    w = roots[rng.permutation(k)] * rng.choice([-1.0, 1.0], size=k)
    w *= 0.5 * float(rng.uniform(0.85, 1.0)) / np.abs(w).max()

    def fn(pts):
        pts = np.asarray(pts, dtype=float)
        s = np.tensordot(pts, w, axes=1)
        i = np.searchsorted(knots, s, side="right")
        ds = s - a_s[i]
        out = np.empty(pts.shape[:-1] + (2 * n + 1,))
        out[..., :-1] = a_g[i] + dirs[i] * ds[..., None]
        out[..., -1] = a_tau[i] + slopes[i] * ds
        return out

    return fn


def line_lifted_map(u_fn: Callable, box, shape, t0: float = 0.0) -> SampledMap:
    """Sample a planar map and build t by exact staircase segment lifts.

    The t value at a node accumulates the lift increment -2 omega(z, z')
    over a staircase path from the first corner: axis 0 first with all
    later axes pinned at their first node, then axis 1, and so on.
    Along the last axis the grid lines are lifted exactly; across lines
    the defect is whatever the planar map's discretization leaves.
    """
    box = np.asarray(box, dtype=float)
    k = box.shape[0]
    axes = [np.linspace(box[a, 0], box[a, 1], shape[a]) for a in range(k)]
    pts = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1)
    u = np.asarray(u_fn(pts), dtype=float)
    if u.shape[:-1] != tuple(shape) or u.shape[-1] % 2 != 0:
        raise ValueError(
            f"planar map must return (*shape, 2n), got {u.shape}")
    t = np.full(shape, float(t0))
    for a in range(k):
        slab = u[tuple(slice(None) if i <= a else slice(0, 1)
                       for i in range(k))]
        w = np.moveaxis(slab, a, -2)
        inc = -2.0 * _omega(w[..., :-1, :], w[..., 1:, :])
        csum = np.concatenate(
            [np.zeros(inc.shape[:-1] + (1,)), np.cumsum(inc, axis=-1)],
            axis=-1)
        t += np.moveaxis(csum, -1, a)
    return SampledMap(box=box, values=np.concatenate([u, t[..., None]],
                                                     axis=-1))


def _sample(fn, k, shape=None, box=None, lo=0.0, hi=1.0) -> SampledMap:
    if box is None:
        box = np.array([[lo, hi]] * k)
    if shape is None:
        shape = suite_shape(k)
    return SampledMap.from_function(fn, box, shape)


def contact_suite() -> Iterator[SuiteEntry]:
    """The 20-map contact suite across (k, n) in {(2,1),(3,1),(3,2),(4,2)}.

    Every entry passes the contact gate with rank <= n and isotropy
    defect at rounding level; grids are 65 per axis capped at 10^6 nodes
    (31 per axis for k = 4).  Yields entries lazily since the large maps
    are memory-heavy.
    """
    specs = [
        ("h1-k2-frame-j1", 2, 1, 1, "frame",
         dict(seed=11, rotated=False)),
        ("h1-k2-frame-rot-j1", 2, 1, 1, "frame", dict(seed=12, rotated=True)),
        ("h1-k2-normal-j1", 2, 1, 1, "normal", dict(seed=13)),
        ("h1-k2-embed-j1", 2, 1, 1, "embed", {}),
        ("h1-k2-normal-j0", 2, 1, 0, "normal", dict(seed=14)),
        ("h1-k2-frame-j1-alt", 2, 1, 1, "frame",
         dict(seed=15, rotated=False)),
        ("h1-k3-frame-j1", 3, 1, 1, "frame", dict(seed=21, rotated=False)),
        ("h1-k3-frame-rot-j1", 3, 1, 1, "frame", dict(seed=22, rotated=True)),
        ("h1-k3-normal-j1", 3, 1, 1, "normal", dict(seed=23)),
        ("h1-k3-embed-j1", 3, 1, 1, "embed", {}),
        ("h2-k3-frame-j1", 3, 2, 1, "frame", dict(seed=31, rotated=False)),
        ("h2-k3-frame-j2", 3, 2, 2, "frame", dict(seed=32, rotated=False)),
        ("h2-k3-frame-rot-j2", 3, 2, 2, "frame", dict(seed=33, rotated=True)),
        ("h2-k3-normal-j1", 3, 2, 1, "normal", dict(seed=34)),
        ("h2-k3-normal-j2", 3, 2, 2, "normal", dict(seed=35)),
        ("h2-k3-embed-j2", 3, 2, 2, "embed", {}),
        ("h2-k4-frame-j2", 4, 2, 2, "frame", dict(seed=41, rotated=False)),
        ("h2-k4-frame-rot-j2", 4, 2, 2, "frame", dict(seed=42, rotated=True)),
        ("h2-k4-normal-j2", 4, 2, 2, "normal", dict(seed=43)),
        ("h2-k4-normal-j1", 4, 2, 1, "normal", dict(seed=44)),
    ]
    for name, k, n, j, kind, kw in specs:
        if kind == "frame":
            fn = fixed_frame_map(k, n, j, **kw)
        elif kind == "normal":
            fn = sard_normal_map(k, n, j, **kw)
        else:
            fn = isotropic_embedding(k, n, j)
        yield SuiteEntry(name=name, smap=_sample(fn, k),
                         expected_rank=j, kind=kind)


def collision_suite() -> Iterator[SuiteEntry]:
    """Contact Lipschitz maps with k > n on grids sized for pair search."""
    specs = [
        ("collide-h1-k2", 2, 1, 1, (65, 65),
         fixed_frame_map(2, 1, 1, seed=81)),
        ("collide-h1-k3", 3, 1, 1, (33, 33, 33),
         sard_normal_map(3, 1, 1, seed=82)),
        ("collide-h2-k3", 3, 2, 2, (33, 33, 33),
         fixed_frame_map(3, 2, 2, seed=83)),
        ("collide-h2-k4", 4, 2, 2, (15, 15, 15, 15),
         sard_normal_map(4, 2, 2, seed=84)),
    ]
    for name, k, n, j, shape, fn in specs:
        yield SuiteEntry(name=name, smap=_sample(fn, k, shape=shape),
                         expected_rank=j, kind="collision")
