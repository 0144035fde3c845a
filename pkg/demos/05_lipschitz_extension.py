"""Extending finitely many curve values to whole Lipschitz curves.

Given knots on an interval with group values that are L-Lipschitz for
the path metric, the gaps can be filled with geodesic bridges without
raising the constant.  On a circle (with chordal distances in the
domain) the filled curve stays within pi/2 * L, and that factor is the
honest price of closing up.
"""

import numpy as np

from heisenlab import (CircleDomain, IntervalDomain, PartialCurveData,
                       cc_distance_batch, extend_circle, extend_interval,
                       koranyi_dist, lipschitz_constant)

rng = np.random.default_rng(5)

params = np.array([0.0, 0.3, 0.55, 1.0])
pts = np.array([[0.0, 0.0, 0.0], [0.4, 0.1, 0.2], [0.1, 0.5, -0.1],
                [-0.3, 0.2, 0.4]])
L = lipschitz_constant(params, pts, metric="cc")
print(f"4 knots on [0, 1], tight constant L = {L:.6f}")

ext = extend_interval(PartialCurveData(IntervalDomain(0.0, 1.0), params,
                                       pts, L), step=0.01)
got = lipschitz_constant(ext.params, ext.samples, metric="cc")
print(f"extension: {len(ext.params)} samples, measured constant "
      f"{got:.6f} <= L")
hits = [koranyi_dist(ext.samples[np.argmin(np.abs(ext.params - s))], p)
        for s, p in zip(params, pts)]
print("knot interpolation gaps:", np.round(hits, 14))

# circle data: knots keyed by angle, domain distances are chord lengths
dom = CircleDomain((0.0, 0.0), 1.0)
ang = np.array([0.0, 1.2, 2.8, 4.4])
cpts = np.array([[0.2, 0.0, 0.0], [0.0, 0.4, 0.1], [-0.3, 0.1, -0.2],
                 [0.1, -0.2, 0.15]])
chord = dom.chord(ang[:, None], ang[None, :])
np.fill_diagonal(chord, 1.0)
dcc = cc_distance_batch(cpts[:, None, :], cpts[None, :, :])
np.fill_diagonal(dcc, 0.0)
Lc = float(np.max(dcc / chord))
print(f"\n4 knots on the unit circle, chordal constant L = {Lc:.6f}")

cext = extend_circle(PartialCurveData(dom, ang, cpts, Lc), step=0.01)
emb = dom.embed(cext.params[:-1])
gotc = lipschitz_constant(emb, cext.samples[:-1], metric="cc")
print(f"closed extension: {len(cext.params)} samples, measured "
      f"{gotc:.6f} <= (pi/2) L = {np.pi / 2 * Lc:.6f}")
print("closes up:", bool(koranyi_dist(cext.samples[0],
                                      cext.samples[-1]) < 1e-12))
