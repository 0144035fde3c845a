"""Scaling exponents of sampled maps and the collision search.

Euclidean-smooth maps into the group are gauge-Holder: motion along the
center costs exponent 1/2, motion inside an isotropic subspace keeps
exponent 1.  When the domain dimension exceeds n, a contact map cannot
be injective at scale; the collision search hunts for grid pairs that
are far apart in the domain yet land on (almost) the same image point.
"""

import numpy as np

from heisenlab import koranyi_dist
from heisenlab.contact import (SampledMap, holder_exponent_estimate,
                               injectivity_collision_search)
from heisenlab.generators import pure_t_map, isotropic_embedding, \
    sard_normal_map
from heisenlab.neighbors import nn_distances

box = [[-1, 1], [-1, 1]]

m = SampledMap.from_function(pure_t_map(2, 1), box, (33, 33))
alpha, profile = holder_exponent_estimate(m)
print(f"pure center motion: fitted exponent {alpha:.4f}  (expect 1/2)")
for row in profile[:4]:
    print(f"  sep {row['separation']:.4f}  max gauge move "
          f"{row['max_dist']:.4f}  beta {row['beta']:.4f}")

m = SampledMap.from_function(isotropic_embedding(2, 2, 2), box, (33, 33))
alpha, _ = holder_exponent_estimate(m)
print(f"isotropic embedding: fitted exponent {alpha:.4f}  (expect 1)")

# k = 3 > n = 1: dimensions force near-collisions somewhere
m = SampledMap.from_function(sard_normal_map(3, 1, 1, seed=82),
                             [[0, 1]] * 3, (33, 33, 33))
img = m.values.reshape(-1, 3)
eps = float(np.percentile(nn_distances(img), 1.0))
delta = 10.0 * float(m.h.max())
pairs = injectivity_collision_search(m, eps=eps, delta=delta, max_pairs=5)
print(f"\ncollision search on a rank-1 map of the cube "
      f"(eps {eps:.3e}, delta {delta:.3e}):")
grid = m.grid_points()
for a, b in pairs:
    print(f"  nodes {a} and {b}: domain gap "
          f"{np.linalg.norm(grid[a] - grid[b]):.4f}, image gap "
          f"{koranyi_dist(m.values[a], m.values[b]):.3e}")
