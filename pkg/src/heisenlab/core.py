"""Group arithmetic and metric structure of the Heisenberg group H^n.

A point of H^n is an ndarray whose last axis has odd length 2n+1 and
carries the interleaved coordinates (x1, y1, ..., xn, yn, t).  The first
2n entries are the horizontal slot z, the last entry is the center
coordinate t.  Every function here broadcasts over leading axes, so a
batch of points is just an array of shape (..., 2n+1).

The group law in these coordinates is

    (z, t) * (z', t') = (z + z', t + t' - 2 omega(z, z'))

with omega(z, z') = sum_j (x_j y'_j - y_j x'_j).  The gauge (Koranyi)
norm is ||(z, t)|| = (|z|^4 + t^2)^(1/4) and the left-invariant gauge
distance has the closed form

    d(p, q) = (|z - z'|^4 + (t - t' - 2 omega(z, z'))^2)^(1/4).

Nothing in this module iterates or approximates; these are exact formula
evaluations in double precision.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "HFrame",
    "ETangent",
    "check_point",
    "check_same_group",
    "contact_form",
    "dilate",
    "dim_n",
    "from_blocks",
    "group_inv",
    "group_mul",
    "horizontal_frame",
    "identity",
    "koranyi_dist",
    "koranyi_norm",
    "point",
    "to_blocks",
    "tpart",
    "zpart",
]


# ---------------------------------------------------------------------------
# point layout helpers
# ---------------------------------------------------------------------------

def check_point(p) -> np.ndarray:
    """Validate the coordinate layout and return p as a float ndarray."""
    p = np.asarray(p, dtype=float)
    if p.ndim == 0 or p.shape[-1] < 3 or p.shape[-1] % 2 == 0:
        raise ValueError(
            f"a point of H^n needs an odd last axis of length 2n+1 >= 3, "
            f"got shape {p.shape}")
    return p


def dim_n(p) -> int:
    """The n of the group a point (or batch of points) lives in."""
    p = check_point(p)
    return (p.shape[-1] - 1) // 2


def check_same_group(p, q):
    """Return (p, q) validated, raising if they live in different H^n."""
    p, q = check_point(p), check_point(q)
    if p.shape[-1] != q.shape[-1]:
        raise ValueError(
            f"incompatible groups: H^{(p.shape[-1] - 1) // 2} vs "
            f"H^{(q.shape[-1] - 1) // 2}")
    return p, q


def point(z, t) -> np.ndarray:
    """Assemble points from a horizontal slot z (..., 2n) and scalar t."""
    z = np.asarray(z, dtype=float)
    if z.shape[-1] % 2 != 0 or z.shape[-1] == 0:
        raise ValueError(f"z must have even last axis length 2n, got {z.shape}")
    t = np.asarray(t, dtype=float)
    t, z_lead = np.broadcast_arrays(t, z[..., 0])
    out = np.empty(t.shape + (z.shape[-1] + 1,))
    out[..., :-1] = z
    out[..., -1] = t
    return out


def zpart(p) -> np.ndarray:
    return check_point(p)[..., :-1]


def tpart(p) -> np.ndarray:
    return check_point(p)[..., -1]


def to_blocks(p):
    """Split points into (x-block, y-block, t).

    The interleaved layout (x1, y1, ..., xn, yn, t) maps to x = p[0::2 of z],
    y = p[1::2 of z]; this is the documented bridge to block conventions.
    """
    p = check_point(p)
    z = p[..., :-1]
    return z[..., 0::2], z[..., 1::2], p[..., -1]


def from_blocks(x, y, t) -> np.ndarray:
    """Inverse of to_blocks: interleave an x-block and y-block."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape:
        raise ValueError(f"x and y blocks must match, got {x.shape} vs {y.shape}")
    z = np.empty(x.shape[:-1] + (2 * x.shape[-1],))
    z[..., 0::2] = x
    z[..., 1::2] = y
    return point(z, t)


def _symp(z, w) -> np.ndarray:
    # omega(z, w) = sum_j x_j w^y_j - y_j w^x_j on the horizontal slot
    return np.sum(z[..., 0::2] * w[..., 1::2] - z[..., 1::2] * w[..., 0::2],
                  axis=-1)


# ---------------------------------------------------------------------------
# group operations
# ---------------------------------------------------------------------------

def identity(n: int) -> np.ndarray:
    """The group identity (0, 0) of H^n."""
    if n < 1:
        raise ValueError(f"n must be a positive integer, got {n}")
    return np.zeros(2 * n + 1)


def group_mul(p, q) -> np.ndarray:
    """Group product p * q, broadcasting over leading axes."""
    p, q = check_same_group(p, q)
    zp, zq = p[..., :-1], q[..., :-1]
    t = p[..., -1] + q[..., -1] - 2.0 * _symp(zp, zq)
    return point(zp + zq, t)


def group_inv(p) -> np.ndarray:
    """Group inverse (-z, -t)."""
    return -check_point(p)


def dilate(p, r) -> np.ndarray:
    """The anisotropic dilation (z, t) -> (r z, r^2 t)."""
    p = check_point(p)
    r = np.asarray(r, dtype=float)
    return point(p[..., :-1] * r[..., None], p[..., -1] * r * r)


# ---------------------------------------------------------------------------
# gauge metric
# ---------------------------------------------------------------------------

def koranyi_norm(p) -> np.ndarray:
    """Gauge norm (|z|^4 + t^2)^(1/4); homogeneous of degree 1 under dilate."""
    p = check_point(p)
    z2 = np.sum(p[..., :-1] ** 2, axis=-1)
    return (z2 * z2 + p[..., -1] ** 2) ** 0.25


def koranyi_dist(p, q) -> np.ndarray:
    """Left-invariant gauge distance d(p, q) = ||q^{-1} * p||.

    Evaluated by the closed form rather than by composing group_inv and
    group_mul, which keeps batch evaluation to a handful of vector ops.
    On a common isotropic subspace (t = t', omega(z, z') = 0) this equals
    the Euclidean distance |z - z'|.
    """
    p, q = check_same_group(p, q)
    zp, zq = p[..., :-1], q[..., :-1]
    dz2 = np.sum((zp - zq) ** 2, axis=-1)
    tw = p[..., -1] - q[..., -1] - 2.0 * _symp(zp, zq)
    return (dz2 * dz2 + tw * tw) ** 0.25


# ---------------------------------------------------------------------------
# contact structure
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ETangent:
    """A Euclidean tangent vector v in R^(2n+1) anchored at a base point."""

    base: np.ndarray
    v: np.ndarray

    def __post_init__(self):
        base = check_point(self.base)
        v = np.asarray(self.v, dtype=float)
        if v.shape[-1] != base.shape[-1]:
            raise ValueError(
                f"tangent length {v.shape[-1]} does not match base "
                f"length {base.shape[-1]}")
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "v", v)


@dataclass(frozen=True)
class HFrame:
    """The left-invariant frame X_1..X_n, Y_1..Y_n, T evaluated at a point.

    Rows of X and Y are coordinate vectors of the frame fields

        X_j = d/dx_j + 2 y_j d/dt,   Y_j = d/dy_j - 2 x_j d/dt,

    which span the kernel of the contact form at the base point.
    """

    base: np.ndarray
    X: np.ndarray
    Y: np.ndarray
    T: np.ndarray


def contact_form(p, v) -> np.ndarray:
    """Evaluate alpha = dt + 2 sum_j (x_j dy_j - y_j dx_j) at p on v.

    Args:
        p: base point(s), shape (..., 2n+1).
        v: tangent vector(s) of matching width, or an ETangent whose base
           must coincide with p.

    Horizontal vectors are exactly the zeros of this functional.
    """
    p = check_point(p)
    if isinstance(v, ETangent):
        if v.base.shape != p.shape or not np.array_equal(v.base, p):
            raise ValueError("tangent vector is anchored at a different base point")
        v = v.v
    v = np.asarray(v, dtype=float)
    if v.shape[-1] != p.shape[-1]:
        raise ValueError(
            f"tangent length {v.shape[-1]} does not match point length "
            f"{p.shape[-1]}")
    x, y, _ = to_blocks(p)
    return v[..., -1] + 2.0 * np.sum(
        x * v[..., 1:-1:2] - y * v[..., 0:-1:2], axis=-1)


def horizontal_frame(p) -> HFrame:
    """The frame (X_j, Y_j, T) at a single point p."""
    p = check_point(p)
    if p.ndim != 1:
        raise ValueError("horizontal_frame expects a single point")
    n = dim_n(p)
    x, y, _ = to_blocks(p)
    X = np.zeros((n, 2 * n + 1))
    Y = np.zeros((n, 2 * n + 1))
    for j in range(n):
        X[j, 2 * j] = 1.0
        X[j, -1] = 2.0 * y[j]
        Y[j, 2 * j + 1] = 1.0
        Y[j, -1] = -2.0 * x[j]
    T = np.zeros(2 * n + 1)
    T[-1] = 1.0
    return HFrame(base=p, X=X, Y=Y, T=T)
