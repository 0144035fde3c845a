"""Ball coverings, Hausdorff content, and the image-size experiment.

Greedy coverings give computable upper bounds on Hausdorff content in
the gauge metric.  Covering the image of a rank-j normal-form map by
balls centered on a subdivided grid makes the s = j content of the
image shrink like mdiv^(j - k): the measured log-log slope against the
subdivision count recovers that exponent.
"""

import numpy as np

from heisenlab import (DecayConfig, PointCloud, content_decay_experiment,
                       greedy_ball_covering, hausdorff_content)
from heisenlab.curves import geodesic

# a geodesic segment: 1-content ~ its length, stable as balls shrink
seg = geodesic(np.zeros(3), np.array([1.0, 0.0, 0.0]), samples=400)
cloud = PointCloud(seg.samples)
for r in (0.2, 0.1, 0.05):
    cov = greedy_ball_covering(cloud, r_max=r)
    print(f"r_max {r:4}: {len(cov.radii):3d} balls, "
          f"1-content bound {hausdorff_content(cloud, 1.0, r):.4f}")

# the vertical axis is 1-dimensional to the eye but 2-dimensional to
# the gauge: its 2-content stays bounded while the 1-content blows up.
# consecutive samples sit sqrt(1/3999) ~ 0.016 apart in the gauge, so
# the radii stay above the sampling scale
axis = np.zeros((4000, 3))
axis[:, 2] = np.linspace(0.0, 1.0, 4000)
vcloud = PointCloud(axis)
for r in (0.2, 0.1, 0.05):
    c1 = hausdorff_content(vcloud, 1.0, r)
    c2 = hausdorff_content(vcloud, 2.0, r)
    print(f"vertical axis, r_max {r:4}: 1-content {c1:7.3f}   "
          f"2-content {c2:.4f}")

# decay of the covering content for a rank-1 map of the plane
res = content_decay_experiment(DecayConfig(k=2, n=1, j=1))
print("\nrank-1 normal-form map of R^2, content vs subdivisions:")
for row in res.rows:
    print(f"  mdiv {int(row['mdiv']):3d}: balls {int(row['balls']):6d}  "
          f"max radius {row['max_radius']:.5f}  "
          f"content {row['content']:.6f}")
print(f"fitted slope {res.slope:.4f}  (j - k = -1)")
print(f"covering constant {res.c_constant:.4f}, "
      f"map constant L = {res.lipschitz:.4f}")
