"""Sampled-map diagnostics: contact residuals, ranks, and the loop test.

A Lipschitz map from R^k into the group that respects the horizontal
structure has differentials of rank at most n, never the ambient 2n,
and its image directions must be isotropic for the symplectic form.
rank_report measures both on a grid; the loop detector integrates the
contact form around small circles and reads off the area coefficient
when a map cheats.
"""

import numpy as np

from heisenlab.contact import (SampledMap, loop_integral_residual,
                               rank_report)
from heisenlab.generators import control_map, fixed_frame_map

# an honest contact map: frame construction, rank 1 into H^2 from R^2
m = SampledMap.from_function(fixed_frame_map(2, 2, 1, seed=9),
                             [[-1, 1], [-1, 1]], (65, 65))
rep = rank_report(m)
print("contact map, grid 65x65:")
print("  residual quantiles:",
      {k: f"{v:.2e}" for k, v in rep.quantiles.items()})
print("  rank range:", int(rep.ranks.min()), "-", int(rep.ranks.max()),
      " (bound n = 2)")
print("  worst isotropy defect:", f"{rep.isotropy_defects.max():.2e}")
print("  flags:", len(rep.flags))

# a control that maps a 2-plane onto a symplectic pair of directions:
# full rank 2, non-isotropic image, flagged loudly
fn, c_fn = control_map(2, 1, seed=1)
ctrl = SampledMap.from_function(fn, [[-1, 1], [-1, 1]], (65, 65))
crep = rank_report(ctrl)
print("\ncontrol map (symplectic image plane):")
print("  rank range:", int(crep.ranks.min()), "-", int(crep.ranks.max()),
      " (bound n = 1)")
print("  flags raised:", len(crep.flags),
      " first few:", [f.kind for f in crep.flags[:4]])

# circulation around a radius-r loop integrates the pullback area form:
# approx c(x0) * pi r^2 for the control, discretization dust for the
# honest map
r = 8 * float(ctrl.h.max())
for idx in ((22, 40), (32, 32)):
    x0 = ctrl.grid_points()[idx]
    got = loop_integral_residual(ctrl, idx, r)
    want = float(c_fn(x0)) * np.pi * r * r
    print(f"  loop at {idx}: residual {got:.6e}  c(x0) pi r^2 {want:.6e}")
print("honest map, same loop:",
      f"{loop_integral_residual(m, (32, 32), r):.2e}")
