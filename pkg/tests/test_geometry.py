import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from cassinian.geometry import (
    DomainError,
    angle_between,
    as_point,
    boundary_distance,
    boundary_distances,
    load_boundary_csv,
    plane_frames,
    polygon_contains,
    reduce_to_plane,
    sampled_domain,
    unit_ball,
    write_boundary_csv,
)

coord = st.floats(-0.7, 0.7, allow_nan=False)


def points(n):
    return st.lists(coord, min_size=n, max_size=n).map(np.array)


@pytest.mark.parametrize("bad", [[1.0], [[0.1, 0.2]], [0.1, float("nan")], [0.1, float("inf")]])
def test_as_point_rejects(bad):
    with pytest.raises(DomainError):
        as_point(bad)


def test_as_point_dimension_check():
    with pytest.raises(DomainError):
        as_point([0.1, 0.2], dim=3)


def test_unit_ball_membership():
    B = unit_ball(3)
    assert B.is_ball and B.dim == 3 and B.diameter == 2.0
    assert B.contains([0.5, 0.5, 0.5])
    assert not B.contains([1.0, 0.0, 0.0])
    assert not B.contains([0.1, 0.1])
    with pytest.raises(DomainError):
        unit_ball(1)


def test_angle_between_values():
    assert angle_between([1, 0], [0, 2]) == pytest.approx(math.pi / 2, abs=1e-15)
    assert angle_between([1, 0], [-3, 0]) == pytest.approx(math.pi, abs=1e-15)
    assert angle_between([1, 0], [1, 0]) == 0.0
    # arccos would lose this angle entirely
    assert angle_between([1, 0], [1, 1e-12]) == pytest.approx(1e-12, rel=1e-9)
    with pytest.raises(DomainError):
        angle_between([0, 0], [1, 0])


@given(points(4), points(4))
def test_plane_reduction_preserves_norms_and_distance(x, y):
    pp = reduce_to_plane(x, y)
    assert np.linalg.norm(pp.x2) == pytest.approx(np.linalg.norm(x), abs=1e-14)
    assert np.linalg.norm(pp.y2) == pytest.approx(np.linalg.norm(y), abs=1e-14)
    assert np.linalg.norm(pp.x2 - pp.y2) == pytest.approx(np.linalg.norm(x - y), abs=1e-13)
    assert 0.0 <= pp.omega <= math.pi
    assert pp.y2[1] >= 0.0


@given(points(3), points(3))
def test_plane_frames_orthonormal_and_reconstruct(x, y):
    r1, r2, w, E1, E2 = plane_frames(x[None], y[None])
    assert abs(np.dot(E1[0], E1[0]) - 1) < 1e-14
    assert abs(np.dot(E2[0], E2[0]) - 1) < 1e-14
    assert abs(np.dot(E1[0], E2[0])) < 1e-14
    if r1[0] > 0:
        assert np.allclose(r1[0] * E1[0], x, atol=1e-14)
        yy = r2[0] * (math.cos(w[0]) * E1[0] + math.sin(w[0]) * E2[0])
        assert np.allclose(yy, y, atol=1e-14)


def test_plane_reduction_degenerate_cases():
    assert reduce_to_plane([0, 0, 0], [0, 0, 0]).degenerate
    pp = reduce_to_plane([0, 0, 0], [0, 0.5, 0])
    assert pp.omega == 0.0 and np.allclose(pp.y2, [0.5, 0])
    pp = reduce_to_plane([0.2, 0, 0], [-0.4, 0, 0])
    assert pp.omega == pytest.approx(math.pi)


def test_ball_boundary_distance():
    B = unit_ball(2)
    assert boundary_distance(B, [0.6, 0.0]) == pytest.approx(0.4)
    assert np.allclose(boundary_distances(B, np.array([[0, 0], [0, 0.25]])), [1.0, 0.75])
    with pytest.raises(DomainError):
        boundary_distance(B, [1.2, 0.0])


def _square(m=400):
    t = np.linspace(0, 4, m, endpoint=False)
    side, u = np.floor(t), t - np.floor(t)
    P = np.zeros((m, 2))
    for k, (a, b) in enumerate([((1, -1), (1, 1)), ((1, 1), (-1, 1)), ((-1, 1), (-1, -1)), ((-1, -1), (1, -1))]):
        sel = side == k
        P[sel] = np.array(a) + u[sel, None] * (np.array(b) - np.array(a))
    return P


def test_polygon_square_domain():
    P = _square()
    dom = sampled_domain(P, polygon_contains(P))
    assert dom.contains([0.0, 0.0]) and dom.contains([0.99, -0.99])
    assert not dom.contains([1.01, 0.0])
    assert dom.diameter == pytest.approx(2 * math.sqrt(2))
    assert boundary_distance(dom, [0.0, 0.0]) == pytest.approx(1.0)


def test_diameter_hint_checked():
    P = _square()
    with pytest.raises(DomainError):
        sampled_domain(P, polygon_contains(P), diameter_hint=1.0)
    assert sampled_domain(P, polygon_contains(P), diameter_hint=3.0).diameter == 3.0


def test_boundary_csv_roundtrip(tmp_path):
    P = _square(40)
    f = tmp_path / "sq.csv"
    write_boundary_csv(f, P)
    dom = load_boundary_csv(f)
    assert np.array_equal(dom.boundary, P)
    assert dom.contains([0.5, 0.5]) and not dom.contains([2.0, 0.0])


def test_boundary_csv_3d_uses_hull(tmp_path):
    g = np.random.default_rng(1).standard_normal((300, 3))
    g /= np.linalg.norm(g, axis=1, keepdims=True)
    f = tmp_path / "s.csv"
    write_boundary_csv(f, g)
    dom = load_boundary_csv(f)
    assert dom.dim == 3 and dom.contains([0.1, 0.1, 0.1]) and not dom.contains([1.1, 0, 0])


@pytest.mark.parametrize("text", ["", "a,b\n1,2\n", "x1,x2\n1,zz\n", "x1,x2\n1\n"])
def test_boundary_csv_errors(tmp_path, text):
    f = tmp_path / "bad.csv"
    f.write_text(text)
    with pytest.raises(DomainError):
        load_boundary_csv(f)
