"""Claim traceability: every core guarantee as a runnable one-liner.

Each anchor pairs a mathematical claim with a fast self-contained check
and the pytest node that exercises it in depth.  ``run_trace`` executes
all checks (seconds, not minutes) and reports pass/fail per claim, so a
reader can see at a glance which guarantees currently hold in this
build and where the thorough evidence lives.

Checks are intentionally small instances of the real computations, not
re-implementations; a failing anchor means the library itself broke.
"""

from __future__ import annotations

import io
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import generators
from .contact import (SampledMap, contact_residual, finite_diff_jacobian,
                      holder_exponent_estimate, injectivity_collision_search,
                      loop_integral_residual, pullback_symplectic,
                      rank_report)
from .core import (contact_form, dim_n, group_inv, group_mul, horizontal_frame,
                   identity, koranyi_dist, koranyi_norm, point)
from .covering import (DecayConfig, PointCloud, box_counting_dimension,
                       content_decay_experiment, greedy_ball_covering,
                       sard_covering)
from .curves import (PlanarPolyline, cc_distance, cc_distance_batch,
                     cc_length, geodesic, horizontal_lift)
from .extension import (CircleDomain, IntervalDomain, PartialCurveData,
                        extend_circle, extend_interval, lipschitz_constant)
from .serialize import _writer
from .symplectic import (is_isotropic, isometry_between_isotropic,
                         lagrangian_extension, random_isotropic_subspace,
                         symp_complement, symp_form)


@dataclass(frozen=True)
class TraceAnchor:
    """One claim, its quick check, and the test that proves it properly."""

    slug: str
    claim: str
    test: str
    check: Callable[[], bool]


@dataclass(frozen=True)
class TraceRow:
    slug: str
    claim: str
    test: str
    status: str          # "pass" or "fail"


def _rand_points(n: int, m: int, seed: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    return rng.uniform(-1.0, 1.0, size=(m, 2 * n + 1))


def _check_group_law() -> bool:
    p, q, r = _rand_points(2, 3, 0)
    lhs = group_mul(group_mul(p, q), r)
    rhs = group_mul(p, group_mul(q, r))
    e = identity(2)
    return (np.allclose(lhs, rhs, atol=1e-12)
            and np.allclose(group_mul(p, group_inv(p)), e, atol=1e-12))


def _check_gauge_metric() -> bool:
    p, q, a = _rand_points(1, 3, 1)
    direct = koranyi_dist(p, q)
    route = koranyi_norm(group_mul(group_inv(p), q))
    invariant = koranyi_dist(group_mul(a, p), group_mul(a, q))
    return (abs(direct - route) < 1e-12
            and abs(direct - invariant) < 1e-10
            and abs(koranyi_dist(p, q) - koranyi_dist(q, p)) < 1e-12)


def _check_euclidean_comparison() -> bool:
    pts = _rand_points(2, 200, 2)
    p, q = pts[:100], pts[100:]
    euc = np.linalg.norm(p - q, axis=1)
    kor = koranyi_dist(p, q)
    return bool(np.all(kor <= 3.05 * np.sqrt(euc) + 1e-12)
                and np.all(euc <= 3.05 * kor + 1e-12))


def _check_contact_frame() -> bool:
    p = point([0.3, -0.2, 0.1, 0.7], 0.4)
    frame = horizontal_frame(p)
    vals = [contact_form(p, v) for v in np.vstack([frame.X, frame.Y])]
    return max(abs(float(v)) for v in vals) < 1e-14 and \
        abs(float(contact_form(p, frame.T)) - 1.0) < 1e-14


def _check_lift_area() -> bool:
    sq = PlanarPolyline(np.array([[0.0, 0.0], [1.0, 0.0], [1.0, 1.0],
                                  [0.0, 1.0], [0.0, 0.0]]), closed=True)
    lift = horizontal_lift(sq, t0=0.0)
    return abs(lift.samples[-1, -1] - (-4.0)) < 1e-12


def _check_cc_projection() -> bool:
    p = point([0.0, 0.0], 0.0)
    q = point([0.8, -0.3], 0.0)
    d = cc_distance(p, q, tol=1e-8)
    gap = np.linalg.norm(q[:2] - p[:2])
    qt = point([0.2, 0.1], 0.5)
    return abs(d - gap) < 1e-6 and cc_distance(p, qt) >= \
        np.linalg.norm(qt[:2] - p[:2]) - 1e-9


def _check_cc_gauge_equivalence() -> bool:
    pts = _rand_points(1, 10, 3)
    for i in range(5):
        p, q = pts[i], pts[i + 5]
        dcc = cc_distance(p, q, tol=1e-6)
        dk = koranyi_dist(p, q)
        if not (dk - 1e-9 <= dcc <= 1.80 * dk + 1e-9):
            return False
    return True


def _check_geodesic() -> bool:
    p = point([0.1, 0.2], -0.1)
    q = point([-0.4, 0.5], 0.3)
    g = geodesic(p, q, tol=1e-6)
    ends = (np.linalg.norm(g.samples[0] - p) < 1e-8
            and np.linalg.norm(g.samples[-1] - q) < 1e-6)
    return ends and abs(cc_length(g) - cc_distance(p, q, tol=1e-6)) < 1e-4


def _interval_data(seed: int, n: int, knots: int) -> PartialCurveData:
    rng = np.random.default_rng(seed)
    params = np.sort(rng.uniform(0.0, 1.0, knots))
    pts = 0.5 * rng.standard_normal((knots, 2 * n + 1))
    L = lipschitz_constant(params, pts, metric="cc")
    return PartialCurveData(IntervalDomain(0.0, 1.0), params, pts, L)


def _stride(arr: np.ndarray, cap: int = 120) -> np.ndarray:
    step = max(1, len(arr) // cap)
    return arr[::step]


def _check_interval_extension() -> bool:
    data = _interval_data(4, 1, 5)
    ext = extend_interval(data)
    got = lipschitz_constant(_stride(ext.params), _stride(ext.samples),
                             metric="cc")
    return got <= data.L * (1.0 + 1e-6)


def _check_circle_extension() -> bool:
    rng = np.random.default_rng(6)
    ang = np.sort(rng.uniform(0.0, 2 * np.pi, 6))
    pts = 0.6 * rng.standard_normal((6, 3))
    dom = CircleDomain((0.0, 0.0), 1.0)
    chord = dom.chord(ang[:, None], ang[None, :])
    np.fill_diagonal(chord, 1.0)
    dcc = cc_distance_batch(pts[:, None, :], pts[None, :, :])
    np.fill_diagonal(dcc, 0.0)
    L = float(np.max(dcc / chord))
    ext = extend_circle(PartialCurveData(dom, ang, pts, L))
    emb = dom.embed(ext.params[:-1])
    got = lipschitz_constant(_stride(emb), _stride(ext.samples[:-1]),
                             metric="cc")
    return ext.closed and got <= (np.pi / 2.0) * L * (1.0 + 1e-6)


def _check_extension_interpolates() -> bool:
    data = _interval_data(8, 2, 4)
    ext = extend_interval(data)
    for s, p in zip(data.params, data.points):
        i = int(np.argmin(np.abs(ext.params - s)))
        if koranyi_dist(ext.samples[i], p) > 1e-8:
            return False
    return True


def _check_symp_complement() -> bool:
    rng = np.random.default_rng(10)
    V = random_isotropic_subspace(3, 2, rng)
    W = symp_complement(V)
    contained = np.linalg.matrix_rank(
        np.vstack([W.basis, V.basis]), tol=1e-10) == W.basis.shape[0]
    return W.basis.shape[0] == 2 * 3 - 2 and contained


def _check_isotropic_dim_bound() -> bool:
    rng = np.random.default_rng(11)
    for n in (1, 2, 3):
        V = random_isotropic_subspace(n, n, rng)
        G = np.array([[float(symp_form(a, b)) for b in V.basis]
                      for a in V.basis])
        if not (is_isotropic(V) and np.abs(G).max() < 1e-10):
            return False
        try:
            random_isotropic_subspace(n, n + 1, rng)
            return False
        except ValueError:
            pass
    return True


def _check_lagrangian_extension() -> bool:
    rng = np.random.default_rng(12)
    V = random_isotropic_subspace(3, 1, rng)
    W = lagrangian_extension(V)
    joint = np.vstack([V.basis, W.basis])
    return (W.basis.shape[0] == 3 and is_isotropic(W)
            and np.linalg.matrix_rank(joint, tol=1e-10) == 3)


def _check_isotropic_isometry() -> bool:
    rng = np.random.default_rng(13)
    V = random_isotropic_subspace(2, 1, rng)
    W = random_isotropic_subspace(2, 1, rng)
    iso = isometry_between_isotropic(V, W)
    pts = _rand_points(2, 6, 14)
    a, b = pts[:3], pts[3:]
    before = koranyi_dist(a, b)
    after = koranyi_dist(iso.apply(a), iso.apply(b))
    img = iso.apply_vec(V.basis[0])
    in_w = np.linalg.matrix_rank(
        np.vstack([W.basis, img[None, :]]), tol=1e-8) == 1
    return bool(np.all(np.abs(before - after) < 1e-9) and in_w)


def _check_rank_bound() -> bool:
    m = generators.fixed_frame_map(3, 2, 2, seed=3)
    smap = SampledMap.from_function(m, [[-1, 1]] * 3, (9, 9, 9))
    rep = rank_report(smap)
    inner = rep.ranks[rep.contact_mask]
    return inner.size > 0 and inner.max() == 2 and len(rep.flags) == 0


def _check_isotropic_pullback() -> bool:
    m = generators.fixed_frame_map(2, 2, 2, seed=4, rotated=True)
    smap = SampledMap.from_function(m, [[-1, 1]] * 2, (9, 9))
    rep = rank_report(smap)
    return float(rep.isotropy_defects[rep.contact_mask].max()) < 1e-12


def _check_residual_rate() -> bool:
    fn = generators.corner_curve_map(2, 1, seed=0)
    vals = []
    for g in (17, 33, 65):
        smap = SampledMap.from_function(fn, [[-1, 1]] * 2, (g, g))
        vals.append(contact_residual(smap).quantiles["max"])
    ratio = vals[1] / vals[2]
    return 1.7 <= ratio <= 2.3


def _check_t_derivative_formula() -> bool:
    fn = generators.sard_normal_map(3, 2, 2, seed=5)
    smap = SampledMap.from_function(fn, [[0, 1]] * 3, (9, 9, 9))
    idx = (4, 4, 4)
    D = finite_diff_jacobian(smap, idx).D
    u = smap.values[idx]
    x, y = u[0:4:2], u[1:4:2]
    Dx, Dy = D[0:4:2], D[1:4:2]
    pred = 2.0 * (y @ Dx - x @ Dy)
    return float(np.abs(D[-1] - pred).max()) < 1e-10


def _check_gauge_lipschitz() -> bool:
    rng = np.random.default_rng(15)
    fn = generators.corner_curve_map(2, 1, seed=2)
    smap = SampledMap.from_function(fn, [[-1, 1]] * 2, (33, 33))
    pts = smap.grid_points().reshape(-1, 2)
    vals = smap.values.reshape(-1, 3)
    i = rng.integers(0, len(pts), 2000)
    j = rng.integers(0, len(pts), 2000)
    keep = i != j
    i, j = i[keep], j[keep]
    gap = np.linalg.norm(pts[i] - pts[j], axis=1)
    l_euc = (np.linalg.norm(vals[i] - vals[j], axis=1) / gap).max()
    l_kor = (koranyi_dist(vals[i], vals[j]) / gap).max()
    return l_kor <= 2.0 * l_euc


def _check_normal_form() -> bool:
    fn = generators.sard_normal_map(2, 2, 1, seed=16)
    smap = SampledMap.from_function(fn, [[0, 1]] * 2, (9, 9))
    grid = smap.grid_points()
    slots = np.abs(smap.values[..., 0] - grid[..., 0]).max()
    res = contact_residual(smap).quantiles["max"]
    return slots < 1e-12 and res < 1e-12


def _check_cube_covering() -> bool:
    fn = generators.sard_normal_map(2, 1, 1, seed=0)
    smap = SampledMap.from_function(fn, [[0, 1]] * 2, (33, 33))
    radii = []
    for mdiv in (2, 4):
        cov = sard_covering(smap, 1, mdiv, L=3.0)
        cloud = PointCloud(smap.values.reshape(-1, 3))
        if not cov.covers(cloud):
            return False
        radii.append(cov.radii.max())
    return 1.6 <= radii[0] / radii[1] <= 2.4


def _check_content_decay() -> bool:
    res = content_decay_experiment(DecayConfig(k=2, n=1, j=1,
                                               mdiv_ladder=(2, 4, 8)))
    return abs(res.slope - (-1.0)) <= 0.3


def _check_greedy_content() -> bool:
    pts = np.zeros((201, 3))
    pts[:, 0] = np.linspace(0.0, 1.0, 201)
    cov = greedy_ball_covering(PointCloud(pts), r_max=0.25, s=1.0)
    return abs(cov.content() - 0.5) <= 0.02 and \
        cov.covers(PointCloud(pts))


def _check_vertical_dimension() -> bool:
    pts = np.zeros((20001, 3))
    pts[:, 2] = np.linspace(0.0, 1.0, 20001)
    scales = [0.3, 0.212, 0.15, 0.106, 0.075]
    d = box_counting_dimension(PointCloud(pts), scales)
    return abs(d - 2.0) <= 0.2


def _check_holder_exponent() -> bool:
    smap = SampledMap.from_function(generators.pure_t_map(2, 1),
                                    [[-1, 1]] * 2, (33, 33))
    alpha, _ = holder_exponent_estimate(smap)
    return abs(alpha - 0.5) <= 0.02


def _check_collision_search() -> bool:
    entry = next(iter(generators.collision_suite()))
    smap = entry.smap
    h = float(smap.h.max())
    img = smap.values.reshape(-1, 2 * smap.n + 1)
    from .neighbors import nn_distances
    stride = max(1, len(img) // 2000)
    eps = float(np.percentile(nn_distances(img[::stride]), 1.0))
    pairs = injectivity_collision_search(smap, eps=eps, delta=10 * h,
                                         max_pairs=4)
    return len(pairs) > 0


def _check_loop_detector() -> bool:
    fn, c_fn = generators.control_map(2, 1, seed=17)
    smap = SampledMap.from_function(fn, [[-1, 1]] * 2, (65, 65))
    idx = (32, 32)
    r = 8 * float(smap.h.max())
    got = loop_integral_residual(smap, idx, r)
    want = float(c_fn(smap.grid_points()[idx])) * np.pi * r * r
    return abs(got - want) <= 0.05 * abs(want)


_ANCHORS = [
    TraceAnchor(
        "group-law",
        "the twisted product is associative with explicit inverses",
        "tests/test_core.py::test_associativity",
        _check_group_law),
    TraceAnchor(
        "gauge-metric",
        "the gauge distance is symmetric, left invariant, and equals the "
        "gauge norm of the group difference",
        "tests/test_core.py::test_left_invariance_of_gauge_distance",
        _check_gauge_metric),
    TraceAnchor(
        "euclidean-comparison",
        "on the unit box the gauge and Euclidean distances pinch each "
        "other up to a square root",
        "tests/test_core.py::test_euclidean_comparison_on_unit_box",
        _check_euclidean_comparison),
    TraceAnchor(
        "contact-frame",
        "the contact form annihilates the horizontal frame and pays one "
        "on the vertical direction",
        "tests/test_core.py::test_contact_form_and_frame",
        _check_contact_frame),
    TraceAnchor(
        "lift-area",
        "lifting a closed planar loop drops the height by four times its "
        "signed area",
        "tests/test_curves.py::"
        "test_lift_gap_equals_minus_four_area_shapely_oracle",
        _check_lift_area),
    TraceAnchor(
        "cc-projection",
        "horizontal path length is the planar length of the projection, "
        "so straight horizontal moves realize the planar gap",
        "tests/test_curves.py::test_cc_length_is_projected_euclidean_length",
        _check_cc_projection),
    TraceAnchor(
        "cc-gauge-equivalence",
        "the path metric and the gauge metric are equivalent with a "
        "small frozen factor",
        "tests/test_curves.py::"
        "test_cc_distance_comparable_to_gauge_frozen_bracket",
        _check_cc_gauge_equivalence),
    TraceAnchor(
        "geodesic-space",
        "any two points are joined by a horizontal path whose length "
        "matches their path distance",
        "tests/test_curves.py::test_geodesic_endpoints_and_horizontality",
        _check_geodesic),
    TraceAnchor(
        "interval-extension",
        "partial data on an interval extends to a horizontal curve with "
        "the same Lipschitz constant",
        "tests/test_extension.py::test_interval_extension_meets_lipschitz_bound",
        _check_interval_extension),
    TraceAnchor(
        "circle-extension",
        "partial data on a circle extends to a closed horizontal loop "
        "paying at most pi over two times the constant",
        "tests/test_extension.py::test_circle_extension_meets_pi_half_bound",
        _check_circle_extension),
    TraceAnchor(
        "extension-interpolates",
        "extensions pass through every prescribed sample",
        "tests/test_extension.py::test_interval_extension_basic_contract",
        _check_extension_interpolates),
    TraceAnchor(
        "symplectic-complement",
        "the symplectic complement of a j-plane has dimension 2n minus j "
        "and contains the plane when it is isotropic",
        "tests/test_symplectic.py::"
        "test_symp_complement_dimension_and_containment",
        _check_symp_complement),
    TraceAnchor(
        "isotropic-dimension-bound",
        "isotropic subspaces exist up to dimension n and no further",
        "tests/test_symplectic.py::test_isotropic_dimension_bound",
        _check_isotropic_dim_bound),
    TraceAnchor(
        "lagrangian-extension",
        "every isotropic subspace sits inside a Lagrangian one",
        "tests/test_symplectic.py::test_lagrangian_extension",
        _check_lagrangian_extension),
    TraceAnchor(
        "isotropic-isometry",
        "any two isotropic planes of equal dimension are exchanged by a "
        "gauge isometry fixing the origin",
        "tests/test_symplectic.py::test_isometry_between_isotropic_subspaces",
        _check_isotropic_isometry),
    TraceAnchor(
        "rank-bound",
        "a sampled map with vanishing contact residual has horizontal "
        "differentials of rank at most n",
        "tests/test_contact.py::TestRankReport::"
        "test_contact_map_passes_all_gates",
        _check_rank_bound),
    TraceAnchor(
        "isotropic-pullback",
        "where the residual vanishes the pulled back symplectic form "
        "vanishes too",
        "tests/test_generators.py::test_fixed_frame_rotated_is_contact_to_rounding",
        _check_isotropic_pullback),
    TraceAnchor(
        "residual-rate",
        "for horizontal polyline images the discrete residual decays "
        "linearly in the grid step",
        "tests/test_generators.py::TestCornerMaps::"
        "test_residual_halves_under_refinement",
        _check_residual_rate),
    TraceAnchor(
        "height-derivative",
        "horizontality pins the height differential to a bilinear "
        "expression in the planar components",
        "tests/test_generators.py::test_normal_form_structure",
        _check_t_derivative_formula),
    TraceAnchor(
        "gauge-lipschitz",
        "horizontal sampled maps are gauge Lipschitz with constant "
        "comparable to the Euclidean one",
        "tests/test_generators.py::test_horizontal_maps_are_gauge_lipschitz",
        _check_gauge_lipschitz),
    TraceAnchor(
        "normal-form",
        "after a left translation and an isotropic isometry a rank j "
        "contact map reproduces the first j coordinates",
        "tests/test_generators.py::test_normal_form_structure",
        _check_normal_form),
    TraceAnchor(
        "cube-covering",
        "splitting the domain into mdiv cubes covers the image by balls "
        "whose radii shrink like one over mdiv",
        "tests/test_covering.py::TestSardCovering::test_radius_halves_with_mdiv",
        _check_cube_covering),
    TraceAnchor(
        "content-decay",
        "ball content of a rank j image at exponent k decays with "
        "log-log slope j minus k",
        "tests/test_covering.py::TestDecayExperiment::"
        "test_slope_certifies_collapse",
        _check_content_decay),
    TraceAnchor(
        "greedy-content",
        "greedy coverings certify the expected content of a unit "
        "horizontal segment",
        "tests/test_covering.py::TestGreedyCovering::"
        "test_segment_one_ball_per_half",
        _check_greedy_content),
    TraceAnchor(
        "vertical-dimension",
        "the center axis has gauge box dimension two",
        "tests/test_covering.py::TestBoxCounting::"
        "test_center_axis_dimension_two",
        _check_vertical_dimension),
    TraceAnchor(
        "holder-exponent",
        "maps onto the center scale like the square root of the step, "
        "never Lipschitz",
        "tests/test_contact.py::TestHolderExponent::"
        "test_center_line_scales_like_square_root",
        _check_holder_exponent),
    TraceAnchor(
        "collision-search",
        "overdimensioned sampled maps exhibit near collisions at "
        "separated domain points",
        "tests/test_contact.py::TestCollisionSearch::"
        "test_exact_collisions_along_collapsed_axis",
        _check_collision_search),
    TraceAnchor(
        "loop-detector",
        "circulation of the height form around a small loop recovers the "
        "local area coefficient of a non horizontal map",
        "tests/test_contact.py::TestLoopIntegral::"
        "test_sheared_plane_matches_local_coefficient",
        _check_loop_detector),
]


def anchors() -> list:
    """All registered anchors in fixed order."""
    return list(_ANCHORS)


def run_trace() -> list:
    """Execute every quick check; exceptions count as failures."""
    rows = []
    for a in _ANCHORS:
        try:
            ok = bool(a.check())
        except Exception:
            ok = False
        rows.append(TraceRow(a.slug, a.claim, a.test,
                             "pass" if ok else "fail"))
    return rows


def trace_to_csv(rows) -> str:
    buf = io.StringIO()
    w = _writer(buf)
    w.writerow(["anchor", "claim", "test", "status"])
    for r in rows:
        w.writerow([r.slug, r.claim, r.test, r.status])
    return buf.getvalue()
