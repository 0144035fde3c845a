"""Horizontal lifts of planar polylines and the area bookkeeping.

A horizontal curve is one whose velocity stays in the contact planes;
its t coordinate is then determined by the planar shadow.  Traversing a
closed planar loop lifts to a curve whose height drops by 4 times the
signed area enclosed, so a loop lifts to a closed curve exactly when it
encloses nothing.
"""

import numpy as np

from heisenlab import (PlanarPolyline, cc_length, horizontal_lift,
                       left_translate, projected_signed_areas,
                       segment_lift_residual)

square = PlanarPolyline(np.array([[0.0, 0.0], [1.0, 0.0], [1.0, 1.0],
                                  [0.0, 1.0], [0.0, 0.0]]), closed=True)
lift = horizontal_lift(square, t0=0.0)
print("unit square, counterclockwise:")
for row in lift.samples:
    print("  ", np.round(row, 6))
print("final height = -4 * area =", lift.samples[-1, -1])
print("lift closed as a space curve?", lift.closed)

# an out-and-back path encloses nothing, so the lift does close up
zig = np.array([[0.0, 0.0], [0.7, 0.2], [1.1, 0.9]])
loop = PlanarPolyline(np.vstack([zig, zig[-2::-1]]), closed=True)
lift2 = horizontal_lift(loop, t0=0.0)
print("\nout-and-back path: t gap =",
      lift2.samples[-1, -1] - lift2.samples[0, -1],
      "| closed?", lift2.closed)

# in H^2 the drop adds up the shadows on both symplectic planes
rng = np.random.default_rng(3)
z4 = rng.uniform(-1, 1, size=(6, 4))
loop4 = PlanarPolyline(np.vstack([z4, z4[:1]]), closed=True)
areas, total = projected_signed_areas(loop4)
lift4 = horizontal_lift(loop4, t0=0.0)
print("\nrandom loop in R^4: per-plane signed areas =", np.round(areas, 6))
print("t gap =", lift4.samples[-1, -1], " -4*total =", -4 * total)

# left translation preserves horizontality and length
g = np.array([0.4, -0.2, 1.5])
sq1 = PlanarPolyline(square.samples, closed=True)
l1 = horizontal_lift(sq1, t0=0.0)
moved = left_translate(g, l1)
print("\nlengths before/after left translation:",
      f"{cc_length(l1):.12f}", f"{cc_length(moved):.12f}")
print("horizontality residual of the translate:",
      f"{segment_lift_residual(moved):.2e}")
