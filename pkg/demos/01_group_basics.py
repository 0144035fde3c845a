"""Group arithmetic and the gauge metric, checked numerically.

Points of H^n live in R^(2n+1) with coordinates (x_1, y_1, ..., x_n,
y_n, t).  The script multiplies a few random points, verifies the group
axioms at rounding level, and shows the two features that make the
geometry non-Euclidean: left invariance of the gauge distance and the
anisotropic dilation scaling (z scales like r, t like r^2).
"""

import numpy as np

from heisenlab import (contact_form, dilate, group_inv, group_mul,
                       horizontal_frame, identity, koranyi_dist, point)

rng = np.random.default_rng(7)
n = 2

p, q, r = rng.uniform(-1, 1, size=(3, 2 * n + 1))
print("p            ", np.round(p, 4))
print("q            ", np.round(q, 4))
print("p * q        ", np.round(group_mul(p, q), 4))
print("q * p        ", np.round(group_mul(q, p), 4))
print("commutator differs in the t slot only:",
      np.round(group_mul(p, q) - group_mul(q, p), 4))

assoc = np.abs(group_mul(group_mul(p, q), r) - group_mul(p, group_mul(q, r)))
print(f"\nassociativity defect: {assoc.max():.2e}")
print("p * p^-1    ", np.round(group_mul(p, group_inv(p)), 17),
      "== identity", identity(n))

# left translations are isometries; right translations are not
a = rng.uniform(-1, 1, size=2 * n + 1)
d0 = koranyi_dist(p, q)
print(f"\nd(p, q)               = {d0:.6f}")
print(f"d(a*p, a*q)           = {koranyi_dist(group_mul(a, p), group_mul(a, q)):.6f}")
print(f"d(p*a, q*a)           = {koranyi_dist(group_mul(p, a), group_mul(q, a)):.6f}"
      "   <- right translation distorts")

for s in (0.5, 2.0, 10.0):
    print(f"d(dilate(p,{s:4}), dilate(q,{s:4})) / d(p,q) = "
          f"{koranyi_dist(dilate(p, s), dilate(q, s)) / d0:.6f}")

# the contact form picks out the horizontal directions: it annihilates
# every X_j, Y_j of the left-invariant frame but not the vertical T
base = point(rng.uniform(-1, 1, 2 * n), 0.3)
frame = horizontal_frame(base)
vals = [contact_form(base, v) for v in (*frame.X, *frame.Y, frame.T)]
print("\ncontact form on the frame (X_1..X_n, Y_1..Y_n, T):")
print(" ", np.round(vals, 14))
