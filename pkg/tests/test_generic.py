import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from cassinian import ball, generic
from cassinian.geometry import DomainError, unit_ball
from conftest import random_ball_pairs


@pytest.fixture(scope="module")
def disk():
    return generic.circle_domain(300)


@pytest.fixture(scope="module")
def small_disk():
    return generic.circle_domain(300, radius=0.8)


def test_refined_circle_matches_ball(disk, rng):
    X, Y = random_ball_pairs(rng, 10, rmax=0.9)
    for x, y in zip(X, Y):
        assert generic.cassinian_generic(disk, x, y, refine=True).value == pytest.approx(
            ball.cassinian_ball(x, y).value, rel=1e-12)
        assert generic.s_generic(disk, x, y, refine=True).value == pytest.approx(
            ball.s_ball(x, y).value, rel=1e-12)


def test_sampled_values_bracket_exact(disk, rng):
    # a finite cloud sees a smaller supremum; refinement only moves it up
    X, Y = random_ball_pairs(rng, 10, rmax=0.9)
    for x, y in zip(X, Y):
        raw = generic.cassinian_generic(disk, x, y).value
        ref = generic.cassinian_generic(disk, x, y, refine=True).value
        exact = ball.cassinian_ball(x, y).value
        assert raw <= ref <= exact * (1 + 1e-12)
        assert raw == pytest.approx(exact, rel=1e-2)


def test_dense_circle_matches_ball():
    dom = generic.circle_domain(100000)
    x, y = np.array([0.5, 0.1]), np.array([-0.2, 0.6])
    assert generic.cassinian_generic(dom, x, y).value == pytest.approx(ball.cassinian_ball(x, y).value, rel=1e-8)
    assert generic.s_generic(dom, x, y).value == pytest.approx(ball.s_ball(x, y).value, rel=1e-8)


def test_unit_ball_delegates():
    B = unit_ball(3)
    x, y = [0.1, 0.2, 0.3], [-0.4, 0.1, 0.2]
    assert generic.cassinian_generic(B, x, y).value == ball.cassinian_ball(x, y).value
    assert generic.s_generic(B, x, y).value == ball.s_ball(x, y).value
    assert generic.j_generic(B, x, y) == pytest.approx(ball.j_ball(x, y), rel=1e-15)


def test_domain_monotonicity(disk, small_disk, rng):
    X, Y = random_ball_pairs(rng, 200, rmax=0.75)
    assert np.all(generic.cassinian_generic_many(small_disk, X, Y) >= generic.cassinian_generic_many(disk, X, Y))
    assert np.all(generic.s_generic_many(small_disk, X, Y) >= generic.s_generic_many(disk, X, Y))
    assert np.all(generic.j_generic_many(small_disk, X, Y) >= generic.j_generic_many(disk, X, Y))


def test_many_matches_scalar(small_disk, rng):
    X, Y = random_ball_pairs(rng, 50, rmax=0.75)
    c = generic.cassinian_generic_many(small_disk, X, Y)
    s = generic.s_generic_many(small_disk, X, Y)
    for i in range(50):
        assert c[i] == pytest.approx(generic.cassinian_generic(small_disk, X[i], Y[i]).value, rel=1e-15)
        assert s[i] == pytest.approx(generic.s_generic(small_disk, X[i], Y[i]).value, rel=1e-15)


def test_square_distance_ratio():
    sq = generic.square_domain(4000)
    assert generic.j_generic(sq, [0, 0], [0.5, 0]) == pytest.approx(math.log(2), rel=1e-12)


def test_annulus_sees_inner_boundary():
    ann = generic.annulus_domain(4000, 0.25)
    x, y = np.array([0.4, 0.0]), np.array([0.0, 0.5])
    d = min(0.15, 0.25)
    assert generic.j_generic(ann, x, y) == pytest.approx(math.log1p(np.linalg.norm(x - y) / d), rel=1e-6)
    with pytest.raises(DomainError):
        generic.j_generic(ann, [0.1, 0.0], y)


def test_ellipse_symmetric_pairs():
    ell = generic.ellipse_domain(4096, 0.85, 0.6)
    for x in ([0.3, 0.1], [0.0, 0.5], [0.7, 0.0]):
        x = np.array(x)
        assert generic.s_generic(ell, x, -x).value >= np.linalg.norm(x)


def test_sphere_refinement_matches_plane_reduction():
    sph = generic.sphere_domain(20000)
    x, y = np.array([0.1, 0.2, 0.3]), np.array([-0.4, 0.1, 0.2])
    assert generic.cassinian_generic(sph, x, y, refine=True).value == pytest.approx(
        ball.cassinian_ball(x, y).value, rel=1e-10)
    assert generic.s_generic(sph, x, y, refine=True).value == pytest.approx(ball.s_ball(x, y).value, rel=1e-10)


def test_jung_bound():
    assert generic.jung_ratio_bound(unit_ball(2)) == pytest.approx(math.sqrt(3), rel=1e-15)
    assert generic.jung_ratio_bound(generic.sphere_domain(2000, radius=0.5)) == pytest.approx(
        2 / (math.sqrt(3 / 8) * 1.0), rel=1e-15)


def test_sampled_rejects_outside_points(small_disk):
    with pytest.raises(DomainError):
        generic.cassinian_generic(small_disk, [0.85, 0.0], [0.0, 0.0])
    with pytest.raises(DomainError):
        generic.s_generic(small_disk, [0.1, 0.0, 0.0], [0.0, 0.0, 0.0])


@given(st.floats(0.01, 0.7), st.floats(0, 2 * math.pi), st.floats(0.01, 0.7), st.floats(0, 2 * math.pi))
def test_two_s_le_c_on_square(r1, t1, r2, t2):
    sq = _square()
    x = r1 * np.array([math.cos(t1), math.sin(t1)])
    y = r2 * np.array([math.cos(t2), math.sin(t2)])
    c = generic.cassinian_generic(sq, x, y).value
    s = generic.s_generic(sq, x, y).value
    assert 2 * s <= c * (1 + 1e-12) + 1e-15


_SQ = []


def _square():
    if not _SQ:
        _SQ.append(generic.square_domain(2000))
    return _SQ[0]
