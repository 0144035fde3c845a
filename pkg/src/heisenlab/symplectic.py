"""Symplectic linear algebra on the horizontal slot R^{2n}.

The standard symplectic form in interleaved coordinates is

    omega(v, w) = sum_j (v^{x_j} w^{y_j} - v^{y_j} w^{x_j})

and the compatible complex structure J sends e_{x_j} -> e_{y_j},
e_{y_j} -> -e_{x_j}, so omega(v, w) = -<v, J w>.  Subspaces are stored
with orthonormal row bases; isotropic subspaces (omega restricted to the
subspace vanishes) have dimension at most n and extend to Lagrangians by
greedily adjoining vectors from the symplectic complement.  Pairs of
isotropic subspaces of equal dimension are exchanged by an orthogonal
symplectic matrix, which acts on the group as the gauge-distance
preserving map (z, t) -> (phi z, t).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import check_point, point

__all__ = [
    "HIsometry",
    "Subspace",
    "complex_structure",
    "is_isotropic",
    "isometry_between_isotropic",
    "lagrangian_extension",
    "random_isotropic_subspace",
    "symp_form",
    "symp_complement",
]


def symp_form(v, w) -> np.ndarray:
    """omega(v, w) for vectors (or batches) in R^{2n}."""
    v = np.asarray(v, dtype=float)
    w = np.asarray(w, dtype=float)
    if v.shape[-1] != w.shape[-1] or v.shape[-1] % 2 != 0 or v.shape[-1] == 0:
        raise ValueError(
            f"omega needs two vectors of equal even length, got "
            f"{v.shape} and {w.shape}")
    return np.sum(v[..., 0::2] * w[..., 1::2] - v[..., 1::2] * w[..., 0::2],
                  axis=-1)


def complex_structure(n: int) -> np.ndarray:
    """The 2n x 2n matrix of J, block diagonal in the (x_j, y_j) pairs."""
    if n < 1:
        raise ValueError(f"n must be a positive integer, got {n}")
    J = np.zeros((2 * n, 2 * n))
    for j in range(n):
        J[2 * j + 1, 2 * j] = 1.0   # J e_x = e_y
        J[2 * j, 2 * j + 1] = -1.0  # J e_y = -e_x
    return J


def _orthonormal_rows(vectors, n: int) -> np.ndarray:
    """Modified Gram-Schmidt with one re-orthogonalization pass."""
    V = np.asarray(vectors, dtype=float)
    V = V.reshape((0, 2 * n)) if V.size == 0 else np.atleast_2d(V)
    if V.shape[-1] != 2 * n:
        raise ValueError(f"basis vectors must have length 2n={2 * n}, "
                         f"got shape {V.shape}")
    if V.shape[0] > 2 * n:
        raise ValueError("more basis vectors than the ambient dimension")
    scale = np.max(np.linalg.norm(V, axis=1), initial=0.0)
    rows: list[np.ndarray] = []
    for v in V:
        w = v.astype(float).copy()
        for _ in range(2):
            for u in rows:
                w -= (u @ w) * u
        nw = np.linalg.norm(w)
        if nw <= 1e-12 * max(scale, 1e-300):
            raise ValueError("rank-deficient basis: a vector is (numerically) "
                             "in the span of the previous ones")
        rows.append(w / nw)
    return np.array(rows) if rows else np.zeros((0, 2 * n))


@dataclass(frozen=True)
class Subspace:
    """A linear subspace of R^{2n} held as an orthonormal row basis.

    The input basis is orthonormalized on construction; the row order is
    preserved, which the greedy constructions below rely on.  A dimension
    zero subspace (empty basis) is allowed.
    """

    n: int
    basis: np.ndarray

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"n must be a positive integer, got {self.n}")
        object.__setattr__(self, "basis", _orthonormal_rows(self.basis, self.n))

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def project(self, v) -> np.ndarray:
        """Orthogonal projection of v (or a batch) onto the subspace."""
        v = np.asarray(v, dtype=float)
        return (v @ self.basis.T) @ self.basis

    def contains(self, v, tol: float = 1e-10) -> bool:
        v = np.asarray(v, dtype=float)
        return bool(np.all(np.linalg.norm(v - self.project(v), axis=-1)
                           <= tol * max(1.0, float(np.max(np.linalg.norm(
                               np.atleast_2d(v), axis=-1))))))


def is_isotropic(V: Subspace, tol: float = 1e-10) -> bool:
    """Whether omega vanishes on V, i.e. max_ij |omega(b_i, b_j)| <= tol."""
    B = V.basis
    if B.shape[0] == 0:
        return True
    Bx, By = B[:, 0::2], B[:, 1::2]
    M = Bx @ By.T - By @ Bx.T
    return bool(np.max(np.abs(M)) <= tol)


def symp_complement(V: Subspace) -> Subspace:
    """The symplectic complement V^omega = {w : omega(v, w) = 0 for v in V}.

    Since omega(v, w) = -<v, J w>, the complement is J applied to the
    Euclidean orthogonal complement, so its dimension is exactly
    2n - dim V.
    """
    n = V.n
    if V.dim == 0:
        return Subspace(n, np.eye(2 * n))
    _, _, vh = np.linalg.svd(V.basis, full_matrices=True)
    perp = vh[V.dim:]
    J = complex_structure(n)
    return Subspace(n, perp @ J.T)


def lagrangian_extension(V: Subspace, tol: float = 1e-10) -> Subspace:
    """Extend an isotropic V to a Lagrangian (dimension n) containing it.

    Greedy: at each step take the basis vector of the current symplectic
    complement with the largest residual after projecting out the current
    subspace, normalize, adjoin.  Deterministic given the basis order;
    idempotent on Lagrangians (the original rows come first).
    """
    if not is_isotropic(V, tol=tol):
        raise ValueError("subspace is not isotropic, cannot extend to Lagrangian")
    n = V.n
    B = V.basis.copy()
    while B.shape[0] < n:
        current = Subspace(n, B)
        cand = symp_complement(current).basis
        resid = cand - (cand @ B.T) @ B if B.shape[0] else cand
        norms = np.linalg.norm(resid, axis=1)
        k = int(np.argmax(norms))
        if norms[k] <= 1e-10:
            raise ValueError("greedy extension stalled; basis is degenerate")
        B = np.vstack([B, resid[k] / norms[k]])
    return Subspace(n, B)


@dataclass(frozen=True)
class HIsometry:
    """A gauge-distance preserving map (z, t) -> (phi z, t).

    phi is orthogonal and symplectic; both properties together make the
    Koranyi distance invariant, since |phi dz| = |dz| and the twist term
    omega(z, z') is preserved.
    """

    n: int
    phi: np.ndarray

    def __post_init__(self):
        phi = np.asarray(self.phi, dtype=float)
        if phi.shape != (2 * self.n, 2 * self.n):
            raise ValueError(f"phi must be {2 * self.n} x {2 * self.n}, "
                             f"got {phi.shape}")
        object.__setattr__(self, "phi", phi)

    def apply(self, p) -> np.ndarray:
        """Apply to a point or batch of points of H^n."""
        p = check_point(p)
        if p.shape[-1] != 2 * self.n + 1:
            raise ValueError(
                f"isometry of H^{self.n} applied to a point of "
                f"H^{(p.shape[-1] - 1) // 2}")
        return point(p[..., :-1] @ self.phi.T, p[..., -1])

    def apply_vec(self, v) -> np.ndarray:
        """Apply the linear part to horizontal vectors in R^{2n}."""
        v = np.asarray(v, dtype=float)
        return v @ self.phi.T


def isometry_between_isotropic(V: Subspace, W: Subspace,
                               tol: float = 1e-10) -> HIsometry:
    """An HIsometry whose linear part maps V onto W.

    Both subspaces are extended to Lagrangians V', W'; the orthonormal
    rows of V' together with their J images form an orthonormal
    symplectic basis, likewise for W', and phi is the change of basis
    sending one to the other.  For dimension zero inputs this returns the
    identity map on the nose.
    """
    if V.n != W.n:
        raise ValueError(f"subspaces live in different groups: n={V.n} vs {W.n}")
    if V.dim != W.dim:
        raise ValueError(f"isotropic subspaces of different dimensions "
                         f"({V.dim} vs {W.dim}) are not exchangeable")
    if not is_isotropic(V, tol=tol) or not is_isotropic(W, tol=tol):
        raise ValueError("both subspaces must be isotropic")
    n = V.n
    if V.dim == 0 and n >= 1:
        # nothing to match: the identity already does the job
        return HIsometry(n=n, phi=np.eye(2 * n))
    J = complex_structure(n)
    BV = lagrangian_extension(V, tol=tol).basis
    BW = lagrangian_extension(W, tol=tol).basis
    FV = np.vstack([BV, BV @ J.T])   # rows: v_1..v_n, J v_1..J v_n
    FW = np.vstack([BW, BW @ J.T])
    return HIsometry(n=n, phi=FW.T @ FV)


def random_isotropic_subspace(n: int, j: int, rng) -> Subspace:
    """A uniformly scrambled isotropic subspace of dimension j in R^{2n}.

    Picks unit vectors one at a time, each orthogonal to the span of the
    previous picks and their J images, which forces omega to vanish on
    the result.
    """
    if not 0 <= j <= n:
        raise ValueError(f"need 0 <= j <= n, got j={j}, n={n}")
    J = complex_structure(n)
    blocked = np.zeros((0, 2 * n))
    rows = []
    for _ in range(j):
        while True:
            v = rng.standard_normal(2 * n)
            v -= blocked.T @ (blocked @ v)
            nv = np.linalg.norm(v)
            if nv > 1e-6:
                break
        v /= nv
        rows.append(v)
        blocked = np.vstack([blocked, v[None, :], (J @ v)[None, :]])
    return Subspace(n, np.array(rows) if rows else np.zeros((0, 2 * n)))
