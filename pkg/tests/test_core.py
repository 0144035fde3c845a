"""Group algebra, gauge metric, and contact form basics."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from heisenlab import core

# Empirical comparison constants on the box [-1, 1]^(2n+1), frozen from a
# 10^6-pair scan (seed 0): the observed maxima were
#   n=1:  |p-q| / d_K <= 2.7198,   d_K / |p-q|^(1/2) <= 1.6932
#   n=2:  |p-q| / d_K <= 2.9922,   d_K / |p-q|^(1/2) <= 1.8715
# The asserted constants add headroom; they are regression guards, not
# sharp values.
EUCLID_COMPARISON_C = {1: 2.80, 2: 3.05}


def rand_points(rng, n, m, scale=1.0):
    return scale * rng.standard_normal((m, 2 * n + 1))


def test_identity_and_inverse():
    rng = np.random.default_rng(2)
    for n in (1, 2, 3):
        p = rand_points(rng, n, 40)
        e = core.identity(n)
        assert np.array_equal(core.group_mul(e, p), p)
        assert np.array_equal(core.group_mul(p, e), p)
        back = core.group_mul(p, core.group_inv(p))
        assert np.max(np.abs(back)) < 1e-12


def test_associativity():
    rng = np.random.default_rng(3)
    for n in (1, 3):
        p, q, r = (rand_points(rng, n, 200) for _ in range(3))
        lhs = core.group_mul(core.group_mul(p, q), r)
        rhs = core.group_mul(p, core.group_mul(q, r))
        assert np.max(np.abs(lhs - rhs)) < 1e-12


def test_group_mul_is_noncommutative():
    p = core.point(np.array([1.0, 0.0]), 0.0)
    q = core.point(np.array([0.0, 1.0]), 0.0)
    pq = core.group_mul(p, q)
    qp = core.group_mul(q, p)
    assert pq[-1] == -2.0 and qp[-1] == 2.0


def test_point_block_roundtrip():
    rng = np.random.default_rng(4)
    p = rand_points(rng, 3, 10)
    x, y, t = core.to_blocks(p)
    assert np.array_equal(core.from_blocks(x, y, t), p)
    assert np.array_equal(core.zpart(p), p[:, :-1])
    assert np.array_equal(core.tpart(p), p[:, -1])
    # interleaving: x_j sits at column 2j, y_j at 2j+1
    assert np.array_equal(x, p[:, 0:-1:2])
    assert np.array_equal(y, p[:, 1:-1:2])


def test_incompatible_groups_raise():
    p = core.identity(1)
    q = core.identity(2)
    with pytest.raises(ValueError, match="incompatible"):
        core.group_mul(p, q)
    with pytest.raises(ValueError):
        core.check_point(np.zeros(4))  # even length is not a group point


def test_dilation_is_automorphism_and_homogeneous():
    rng = np.random.default_rng(5)
    for n in (1, 2):
        p = rand_points(rng, n, 100)
        q = rand_points(rng, n, 100)
        for r in (0.5, 2.0, 3.7):
            lhs = core.dilate(core.group_mul(p, q), r)
            rhs = core.group_mul(core.dilate(p, r), core.dilate(q, r))
            assert np.max(np.abs(lhs - rhs)) < 1e-10
            d = core.koranyi_dist(p, q)
            dr = core.koranyi_dist(core.dilate(p, r), core.dilate(q, r))
            assert np.max(np.abs(dr - r * d)) < 1e-10 * r * np.max(d)


def test_gauge_distance_closed_form_matches_group_route():
    rng = np.random.default_rng(6)
    for n in (1, 2):
        p = rand_points(rng, n, 300)
        q = rand_points(rng, n, 300)
        direct = core.koranyi_dist(p, q)
        routed = core.koranyi_norm(core.group_mul(core.group_inv(p), q))
        assert np.max(np.abs(direct - routed)) < 1e-12
        assert np.max(np.abs(direct - core.koranyi_dist(q, p))) == 0.0


def test_left_invariance_of_gauge_distance():
    rng = np.random.default_rng(7)
    for n in (1, 2, 4):
        p = rand_points(rng, n, 200)
        q = rand_points(rng, n, 200)
        g = rand_points(rng, n, 1)[0]
        d0 = core.koranyi_dist(p, q)
        d1 = core.koranyi_dist(core.group_mul(g, p), core.group_mul(g, q))
        assert np.max(np.abs(d1 - d0) / d0) < 1e-12


def test_gauge_norm_vanishes_only_at_identity():
    assert core.koranyi_norm(core.identity(2)) == 0.0
    p = core.point(np.array([1e-3, 0.0]), 0.0)
    assert core.koranyi_norm(p) > 0.0


def test_euclidean_comparison_on_unit_box():
    # d_K and the Euclidean metric are equivalent up to a square root on
    # bounded sets; the frozen constants bound both directions
    rng = np.random.default_rng(0)
    for n, cbound in EUCLID_COMPARISON_C.items():
        p = rng.uniform(-1, 1, size=(20000, 2 * n + 1))
        q = rng.uniform(-1, 1, size=(20000, 2 * n + 1))
        de = np.linalg.norm(p - q, axis=1)
        dk = core.koranyi_dist(p, q)
        assert np.max(de / dk) <= cbound
        assert np.max(dk / np.sqrt(de)) <= cbound
        # the bound is doing real work: the ratio genuinely exceeds 1
        assert np.max(de / dk) > 1.5


def test_euclidean_matches_gauge_on_isotropic_directions():
    # restricted to a horizontal isotropic direction through a point the
    # gauge distance is exactly Euclidean: the t-correction vanishes
    rng = np.random.default_rng(8)
    n = 2
    base = rand_points(rng, n, 1)[0]
    v = np.zeros(2 * n)
    v[0], v[2] = 0.3, -1.1  # span{e_x1, e_x2} is isotropic
    s = rng.uniform(-2, 2, size=20)
    line = core.group_mul(base, core.point(s[:, None] * v[None, :], np.zeros(20)))
    d = core.koranyi_dist(line[:1], line)
    assert np.max(np.abs(d - np.abs(s - s[0]) * np.linalg.norm(v))) < 1e-12


def test_contact_form_and_frame():
    rng = np.random.default_rng(9)
    n = 3
    p = rand_points(rng, n, 1)[0]
    fr = core.horizontal_frame(p)
    # frame vectors are horizontal: alpha kills them
    for row in np.vstack([fr.X, fr.Y]):
        assert abs(core.contact_form(p, row)) < 1e-14
    assert core.contact_form(p, fr.T) == 1.0
    # alpha(v) recovers the vertical component after removing the drift
    v = rng.standard_normal(2 * n + 1)
    x, y, _ = core.to_blocks(p)
    expected = v[-1] + 2 * np.sum(x * v[1:-1:2] - y * v[0:-1:2])
    assert abs(core.contact_form(p, v) - expected) < 1e-14


def test_tangent_base_mismatch_raises():
    n = 1
    p = core.identity(n)
    other = core.point(np.array([1.0, 0.0]), 0.0)
    tv = core.ETangent(base=other, v=np.array([1.0, 0.0, 0.0]))
    with pytest.raises(ValueError, match="base"):
        core.contact_form(p, tv)


@given(st.integers(1, 4), st.integers(0, 2**32 - 1))
@settings(max_examples=25, deadline=None)
def test_inverse_is_involution(n, seed):
    rng = np.random.default_rng(seed)
    p = rng.standard_normal(2 * n + 1)
    assert np.array_equal(core.group_inv(core.group_inv(p)), p)


@given(st.integers(1, 3), st.integers(0, 2**32 - 1))
@settings(max_examples=25, deadline=None)
def test_norm_symmetric_under_inverse(n, seed):
    rng = np.random.default_rng(seed)
    p = rng.standard_normal(2 * n + 1)
    assert core.koranyi_norm(core.group_inv(p)) == core.koranyi_norm(p)
