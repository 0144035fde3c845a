"""Isotropic subspaces and the gauge isometries that move them around.

The horizontal layer R^(2n) carries the standard symplectic form; a
subspace is isotropic when the form vanishes on it, which caps its
dimension at n.  Orthogonal maps commuting with the complex structure
extend to gauge isometries of the whole group, and any isotropic
subspace can be carried onto any other of the same dimension.
"""

import numpy as np

from heisenlab import (is_isotropic, isometry_between_isotropic,
                       koranyi_dist, lagrangian_extension,
                       random_isotropic_subspace, symp_complement, symp_form)

rng = np.random.default_rng(21)
n = 3

V = random_isotropic_subspace(n, 2, rng)
print(f"V: dim {V.dim} isotropic subspace of R^{2 * n}, "
      f"isotropic? {is_isotropic(V)}")
gram = symp_form(V.basis[:, None, :], V.basis[None, :, :])
print("symplectic Gram matrix of the basis:\n", np.round(gram, 14))

W = symp_complement(V)
print(f"\nsymplectic complement has dim {W.dim} (= 2n - dim V)")
L = lagrangian_extension(V)
print(f"Lagrangian extension has dim {L.dim} (= n), isotropic? "
      f"{is_isotropic(L)}, contains V? {L.contains(V.basis)}")

# move one isotropic subspace onto another by a gauge isometry
A = random_isotropic_subspace(n, 2, rng)
B = random_isotropic_subspace(n, 2, rng)
iso = isometry_between_isotropic(A, B)
img = iso.apply_vec(A.basis)
print("\nimage of A lands in B:", B.contains(img))

pts = rng.uniform(-1, 1, size=(2, 5, 2 * n + 1))
before = koranyi_dist(pts[0], pts[1])
after = koranyi_dist(iso.apply(pts[0]), iso.apply(pts[1]))
print("gauge distances before:", np.round(before, 10))
print("gauge distances after: ", np.round(after, 10))
print("max distortion:", f"{np.max(np.abs(after - before)):.2e}")

# dimension n+1 is impossible: the form cannot vanish there
try:
    random_isotropic_subspace(n, n + 1, rng)
except ValueError as e:
    print(f"\nrequesting dim {n + 1}: ValueError: {e}")
