"""Finite-difference contact analysis of grid-sampled maps into H^n.

A map R^k -> H^n sampled on a rectangular grid is probed through central
differences at interior nodes.  The contact form evaluated on those
difference columns measures how far the discrete differential sticks out
of the horizontal distribution; the symplectic pairing of the projected
columns measures how far its image is from isotropic; singular values
give a numeric rank.  Pointwise statements about typical points are made
grid-native here: they quantify over all interior nodes whose contact
residual passes the gate, and boundaries are excluded rather than
handled with one-sided differences.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.interpolate import RegularGridInterpolator

from .core import check_point, contact_form, koranyi_dist
from .neighbors import pairs_within

LOOP_SAMPLES = 512


class DegenerateMapError(Exception):
    """The requested estimate is undefined for this map (e.g. constant)."""


@dataclass(frozen=True)
class SampledMap:
    """Values of a map R^k -> R^(2n+1) on a rectangular grid.

    box is (k, 2) with each row an axis interval; values has one axis per
    domain axis plus a trailing component axis of odd width 2n+1.  Every
    grid axis needs at least 5 nodes so central differences leave a
    usable interior.
    """

    box: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        box = np.asarray(self.box, dtype=float)
        values = np.asarray(self.values, dtype=float)
        if box.ndim != 2 or box.shape[1] != 2:
            raise ValueError(f"box must be (k, 2), got {box.shape}")
        k = box.shape[0]
        if values.ndim != k + 1:
            raise ValueError(
                f"values must have {k} grid axes plus a component axis, "
                f"got shape {values.shape}")
        check_point(values)
        if any(s < 5 for s in values.shape[:-1]):
            raise ValueError(
                f"every grid axis needs at least 5 nodes, got "
                f"{values.shape[:-1]}")
        if not np.all(box[:, 1] > box[:, 0]):
            raise ValueError("box intervals must have positive length")
        if not np.all(np.isfinite(values)):
            raise ValueError("values must be finite")
        object.__setattr__(self, "box", box)
        object.__setattr__(self, "values", values)

    @property
    def k(self) -> int:
        return self.box.shape[0]

    @property
    def n(self) -> int:
        return (self.values.shape[-1] - 1) // 2

    @property
    def shape(self) -> tuple:
        return self.values.shape[:-1]

    @property
    def h(self) -> np.ndarray:
        sizes = np.array(self.shape, dtype=float)
        return (self.box[:, 1] - self.box[:, 0]) / (sizes - 1.0)

    def axis_coords(self, a: int) -> np.ndarray:
        return np.linspace(self.box[a, 0], self.box[a, 1], self.shape[a])

    def grid_points(self) -> np.ndarray:
        """Domain coordinates of every node, shape (*shape, k)."""
        axes = [self.axis_coords(a) for a in range(self.k)]
        return np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1)

    @classmethod
    def from_function(cls, fn, box, shape) -> "SampledMap":
        """Sample a vectorized callable on the grid of the given shape."""
        box = np.asarray(box, dtype=float)
        axes = [np.linspace(box[a, 0], box[a, 1], shape[a])
                for a in range(box.shape[0])]
        pts = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1)
        return cls(box=box, values=np.asarray(fn(pts), dtype=float))


@dataclass(frozen=True)
class JacobianSample:
    """Central-difference columns D (2n+1, k) at one interior node."""

    at: tuple
    D: np.ndarray


@dataclass(frozen=True)
class ReportFlag:
    """One contact-gate violation: kind is 'rank' or 'isotropy'."""

    at: tuple
    kind: str
    value: float


@dataclass(frozen=True)
class ContactReport:
    """Interior-node contact diagnostics.

    residuals has one entry per interior node (grid shape minus 2 per
    axis); ranks / isotropy_defects / contact_mask are filled by
    rank_report and stay None after contact_residual alone.  Flag
    positions are full-grid multi-indices.
    """

    residuals: np.ndarray
    quantiles: dict
    contact_tol: float | None = None
    ranks: np.ndarray | None = None
    isotropy_defects: np.ndarray | None = None
    contact_mask: np.ndarray | None = None
    flags: tuple = field(default_factory=tuple)


def _interior(shape) -> tuple:
    return tuple(slice(1, s - 1) for s in shape)


def _interior_jacobians(m: SampledMap) -> np.ndarray:
    """Central differences at all interior nodes, shape (*inner, 2n+1, k)."""
    v = m.values
    h = m.h
    inner = _interior(m.shape)
    cols = []
    for a in range(m.k):
        up = tuple(slice(2, None) if i == a else inner[i] for i in range(m.k))
        dn = tuple(slice(0, -2) if i == a else inner[i] for i in range(m.k))
        cols.append((v[up] - v[dn]) / (2.0 * h[a]))
    return np.stack(cols, axis=-1)


def _check_interior(m: SampledMap, idx) -> tuple:
    idx = tuple(int(i) for i in np.atleast_1d(np.asarray(idx, dtype=int)))
    if len(idx) != m.k:
        raise ValueError(f"index must have {m.k} entries, got {len(idx)}")
    for i, s in zip(idx, m.shape):
        if not 1 <= i <= s - 2:
            raise ValueError(
                f"index {idx} is not interior to grid shape {m.shape}")
    return idx


def finite_diff_jacobian(m: SampledMap, idx) -> JacobianSample:
    """Central-difference columns at one interior node; O(h^2) for C^2 maps."""
    idx = _check_interior(m, idx)
    h = m.h
    cols = []
    for a in range(m.k):
        up = tuple(i + 1 if b == a else i for b, i in enumerate(idx))
        dn = tuple(i - 1 if b == a else i for b, i in enumerate(idx))
        cols.append((m.values[up] - m.values[dn]) / (2.0 * h[a]))
    return JacobianSample(at=idx, D=np.stack(cols, axis=-1))


def _residual_field(m: SampledMap, D: np.ndarray) -> np.ndarray:
    base = m.values[_interior(m.shape)]
    vt = np.moveaxis(D, -1, -2)                      # (*inner, k, 2n+1)
    alpha = contact_form(base[..., None, :], vt)      # (*inner, k)
    norms = np.linalg.norm(D, axis=-2)
    return np.max(np.abs(alpha) / (1.0 + norms), axis=-1)


def _quantiles(residuals: np.ndarray) -> dict:
    flat = residuals.ravel()
    return {
        "p50": float(np.quantile(flat, 0.5)),
        "p90": float(np.quantile(flat, 0.9)),
        "max": float(np.max(flat)),
    }


def contact_residual(m: SampledMap) -> ContactReport:
    """Normalized contact-form residual at every interior node.

    The residual at a node is max_i |alpha(f(x))(D_i)| / (1 + |D_i|)
    over the k difference columns D_i; it vanishes exactly when the
    discrete differential is horizontal at f(x).
    """
    D = _interior_jacobians(m)
    res = _residual_field(m, D)
    return ContactReport(residuals=res, quantiles=_quantiles(res))


def pullback_symplectic(m: SampledMap, idx) -> np.ndarray:
    """Symplectic pairing of the projected difference columns at idx.

    Returns the k x k matrix M with M[a, b] = omega(pi(D_a), pi(D_b)),
    pi the projection onto the horizontal components.  Antisymmetry is
    exact by construction: M = A - A^T.
    """
    D = finite_diff_jacobian(m, idx).D
    Dx = D[0:-1:2, :]
    Dy = D[1:-1:2, :]
    A = Dx.T @ Dy
    return A - A.T


def _interior_pullbacks(D: np.ndarray) -> np.ndarray:
    Dx = D[..., 0:-1:2, :]
    Dy = D[..., 1:-1:2, :]
    A = np.einsum("...ia,...ib->...ab", Dx, Dy)
    return A - np.swapaxes(A, -1, -2)


def rank_report(m: SampledMap, contact_tol: float | None = None,
                rank_tol: float = 1e-8,
                defect_tol: float = 1e-6) -> ContactReport:
    """Ranks and isotropy defects at interior nodes passing the contact gate.

    contact_tol defaults to 10 max(h).  The numeric rank counts singular
    values above rank_tol times the largest one; the isotropy defect is
    the largest entry of the pullback pairing.  Nodes passing the gate
    with rank above n or defect above defect_tol are flagged.
    """
    if contact_tol is None:
        contact_tol = 10.0 * float(np.max(m.h))
    D = _interior_jacobians(m)
    res = _residual_field(m, D)
    inner_shape = res.shape
    flat = D.reshape(-1, m.values.shape[-1], m.k)
    sv = np.linalg.svd(flat, compute_uv=False)
    ranks = np.sum(sv > rank_tol * sv[:, :1], axis=1).reshape(inner_shape)
    defects = np.max(np.abs(_interior_pullbacks(D)), axis=(-1, -2))
    mask = res <= contact_tol
    flags = []
    bad_rank = mask & (ranks > m.n)
    bad_iso = mask & (defects > defect_tol)
    for where, kind, data in ((bad_rank, "rank", ranks),
                              (bad_iso, "isotropy", defects)):
        for at in np.argwhere(where):
            full = tuple(int(i) + 1 for i in at)
            flags.append(ReportFlag(at=full, kind=kind,
                                    value=float(data[tuple(at)])))
    return ContactReport(residuals=res, quantiles=_quantiles(res),
                         contact_tol=float(contact_tol), ranks=ranks,
                         isotropy_defects=defects, contact_mask=mask,
                         flags=tuple(flags))


def loop_integral_residual(m: SampledMap, idx, r: float, axes=(0, 1)) -> float:
    """Circulation detector for non-isotropy around one grid node.

    Interpolates the map on the circle of radius r in the (axes[0],
    axes[1]) coordinate plane through idx and returns

        1/2 sum_i loop-integral (g_xi - g_xi(x0)) dg_yi
                                 - (g_yi - g_yi(x0)) dg_xi,

    which for a C^1 map approaches c(x0) pi r^2 with c the pullback
    coefficient on that plane; it collapses to discretization error when
    the image directions are isotropic.
    """
    idx = _check_interior(m, idx)
    a, b = (int(axes[0]), int(axes[1]))
    if a == b or not (0 <= a < m.k and 0 <= b < m.k):
        raise ValueError(f"axes must be two distinct domain axes, got {axes}")
    if not r > 0.0:
        raise ValueError(f"radius must be positive, got {r}")
    center = np.array([m.axis_coords(i)[idx[i]] for i in range(m.k)])
    for ax in (a, b):
        if (center[ax] - r < m.box[ax, 0] - 1e-12
                or center[ax] + r > m.box[ax, 1] + 1e-12):
            raise ValueError(
                f"circle of radius {r} around {tuple(center)} exits the box "
                f"on axis {ax}")
    theta = 2.0 * np.pi * np.arange(LOOP_SAMPLES + 1) / LOOP_SAMPLES
    pts = np.tile(center, (LOOP_SAMPLES + 1, 1))
    pts[:, a] = np.clip(center[a] + r * np.cos(theta),
                        m.box[a, 0], m.box[a, 1])
    pts[:, b] = np.clip(center[b] + r * np.sin(theta),
                        m.box[b, 0], m.box[b, 1])
    interp = RegularGridInterpolator(
        [m.axis_coords(i) for i in range(m.k)], m.values, method="linear")
    g = interp(pts)
    g0 = m.values[idx]
    X = g[:, 0:-1:2] - g0[0:-1:2]
    Y = g[:, 1:-1:2] - g0[1:-1:2]
    dX = np.diff(X, axis=0)
    dY = np.diff(Y, axis=0)
    Xm = 0.5 * (X[1:] + X[:-1])
    Ym = 0.5 * (Y[1:] + Y[:-1])
    return 0.5 * float(np.sum(Xm * dY - Ym * dX))


def holder_exponent_estimate(m: SampledMap):
    """Scaling exponent of gauge displacement against domain separation.

    Probes axis-aligned node pairs at dyadic lags, regresses log of the
    per-scale maximum gauge distance on log separation, and reports the
    fitted slope together with a per-scale profile (separation, max
    distance, ratio to separation**slope).  Raises DegenerateMapError
    when every probed pair coincides in the image.
    """
    per_sep: dict[float, float] = {}
    for a in range(m.k):
        lag = 1
        while lag <= m.shape[a] - 1:
            head = tuple(slice(0, m.shape[i] - (lag if i == a else 0))
                         for i in range(m.k))
            tail = tuple(slice(lag if i == a else 0, m.shape[i])
                         for i in range(m.k))
            d = float(np.max(koranyi_dist(m.values[head], m.values[tail])))
            sep = float(lag * m.h[a])
            per_sep[sep] = max(per_sep.get(sep, 0.0), d)
            lag *= 2
    rows = sorted((s, d) for s, d in per_sep.items() if d > 0.0)
    if not rows:
        raise DegenerateMapError(
            "the map is constant at every probed scale; the exponent "
            "is undefined")
    if len(rows) < 3:
        raise ValueError(
            f"need at least 3 separation scales with movement, got "
            f"{len(rows)}")
    seps = np.array([r[0] for r in rows])
    dists = np.array([r[1] for r in rows])
    alpha_hat = float(np.polyfit(np.log(seps), np.log(dists), 1)[0])
    beta = dists / seps ** alpha_hat
    profile = np.zeros(len(rows), dtype=[("separation", float),
                                         ("max_dist", float),
                                         ("beta", float)])
    profile["separation"] = seps
    profile["max_dist"] = dists
    profile["beta"] = beta
    return alpha_hat, profile


def injectivity_collision_search(m: SampledMap, eps: float, delta: float,
                                 max_pairs: int | None = None) -> list:
    """Grid pairs far apart in the domain but eps-close in the image.

    Returns [(idx_a, idx_b), ...] of full-grid multi-indices with
    Euclidean domain separation >= delta and gauge image distance <=
    eps, sorted lexicographically.  eps = 0 matches exactly identical
    image points.  A dense collision structure can produce quadratically
    many pairs; max_pairs truncates the sorted list.
    """
    if eps < 0.0 or delta < 0.0:
        raise ValueError("eps and delta must be nonnegative")
    vals = m.values.reshape(-1, m.values.shape[-1])
    if eps == 0.0:
        _, inverse, counts = np.unique(vals, axis=0, return_inverse=True,
                                       return_counts=True)
        inverse = inverse.ravel()
        ii, jj = [], []
        order = np.argsort(inverse, kind="stable")
        bounds = np.concatenate([[0], np.cumsum(counts)])
        for g in np.flatnonzero(counts > 1):
            idx = np.sort(order[bounds[g]:bounds[g + 1]])
            a, b = np.triu_indices(idx.shape[0], k=1)
            ii.append(idx[a])
            jj.append(idx[b])
        if ii:
            i = np.concatenate(ii)
            j = np.concatenate(jj)
        else:
            i = j = np.zeros(0, dtype=np.int64)
    else:
        pairs = pairs_within(vals, eps)
        i, j = pairs[:, 0], pairs[:, 1]
    grid = m.grid_points().reshape(-1, m.k)
    far = np.linalg.norm(grid[i] - grid[j], axis=-1) >= delta
    i, j = i[far], j[far]
    order = np.lexsort((j, i))
    i, j = i[order], j[order]
    if max_pairs is not None:
        i, j = i[:max_pairs], j[:max_pairs]
    shape = m.shape
    out = []
    for a, b in zip(i, j):
        out.append((tuple(int(v) for v in np.unravel_index(a, shape)),
                    tuple(int(v) for v in np.unravel_index(b, shape))))
    return out
