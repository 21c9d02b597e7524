import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from cassinian import ball
from cassinian.geometry import DomainError
from conftest import random_ball_pairs

# Suprema computed independently: 10^6-point circle scan refined with a
# bounded scalar minimiser (planar), or a 1500 x 3000 spherical grid refined
# with Nelder-Mead (3-D).
FROZEN = [
    ("c", (0.3, 0.4), (0.3, -0.4), 1.3333333333333333),
    ("s", (0.3, 0.4), (0.3, -0.4), 0.49613893835683387),
    ("s", (0.5, 0.0), (0.2, 0.1), 0.24325685776957717),
    ("c", (0.5, 0.0), (0.2, 0.1), 0.7885840468134436),
    ("c", (0.9, 0.1), (-0.2, 0.7), 9.97009474808471),
    ("s", (0.9, 0.1), (-0.2, 0.7), 0.889533764994547),
    ("c", (0.1, 0.2, 0.3), (-0.4, 0.1, 0.2), 1.0321603731439501),
    ("s", (0.1, 0.2, 0.3), (-0.4, 0.1, 0.2), 0.3619423214459625),
]

METRIC = {"c": ball.cassinian_ball, "s": ball.s_ball}


def _in_ball(n, rmax=0.95):
    v = st.lists(st.floats(-1, 1, allow_nan=False), min_size=n, max_size=n).map(np.array)
    return v.filter(lambda p: np.linalg.norm(p) < rmax)


def _random_rotation(n, seed):
    q, r = np.linalg.qr(np.random.default_rng(seed).standard_normal((n, n)))
    return q * np.sign(np.diag(r))


@pytest.mark.parametrize("kind,x,y,expected", FROZEN)
def test_frozen_suprema(kind, x, y, expected):
    mv = METRIC[kind](x, y)
    assert mv.value == pytest.approx(expected, rel=1e-12)


@pytest.mark.parametrize("kind,x,y,expected", FROZEN)
def test_witness_attains_value(kind, x, y, expected):
    mv = METRIC[kind](x, y)
    z = mv.witness
    assert abs(np.linalg.norm(z) - 1) < 1e-14
    x, y = np.array(x), np.array(y)
    a, b = np.linalg.norm(x - z), np.linalg.norm(z - y)
    den = a * b if kind == "c" else a + b
    assert np.linalg.norm(x - y) / den == pytest.approx(mv.value, rel=1e-12)


@pytest.mark.parametrize("r", [0.1, 0.5, 0.9, 0.999])
def test_closed_forms_on_diameters(r):
    x = np.array([r, 0.0])
    zero = np.zeros(2)
    assert ball.cassinian_ball(x, -x).value == pytest.approx(2 * r / ((1 - r) * (1 + r)), rel=1e-14)
    assert ball.cassinian_ball(x, zero).value == pytest.approx(r / (1 - r), rel=1e-14)
    assert ball.s_ball(x, -x).value == pytest.approx(r, rel=1e-14)
    assert ball.s_ball(x, zero).value == pytest.approx(r / (2 - r), rel=1e-14)
    assert ball.rho_ball(x, zero) == pytest.approx(math.log((1 + r) / (1 - r)), rel=1e-13)
    assert ball.rho_ball(x, -x) == pytest.approx(2 * math.log((1 + r) / (1 - r)), rel=1e-13)
    assert ball.j_ball(x, zero) == pytest.approx(-math.log1p(-r), rel=1e-13)
    assert ball.sh_half_rho(x, -x) == pytest.approx(ball.cassinian_ball(x, -x).value, rel=1e-13)


def test_antipodal_witness():
    mv = ball.cassinian_ball([0.5, 0.0], [-0.5, 0.0])
    assert mv.value == pytest.approx(4 / 3, rel=1e-15)
    assert np.allclose(mv.witness, [1.0, 0.0]) and mv.method == ball.CLOSED_FORM


def test_hat_c_uses_nearest_boundary_point():
    x, y = np.array([0.5, 0.0]), np.array([0.0, 0.25])
    z = np.array([1.0, 0.0])
    expected = np.linalg.norm(x - y) / (np.linalg.norm(x - z) * np.linalg.norm(z - y))
    mv = ball.hat_c_ball(x, y)
    assert mv.value == pytest.approx(expected, rel=1e-14)
    assert np.allclose(mv.witness, z)


def test_same_point_is_zero():
    x = [0.3, -0.2, 0.1]
    for f in (ball.cassinian_ball, ball.s_ball, ball.hat_c_ball):
        assert f(x, x).value == 0.0
    assert ball.rho_ball(x, x) == 0.0 and ball.j_ball(x, x) == 0.0


@pytest.mark.parametrize("bad", [([1.0, 0.0], [0.0, 0.0]), ([0.5, 0.0], [0.0, 0.0, 0.0]), ([2.0, 0.0], [0.1, 0.1])])
def test_rejects_points_outside(bad):
    for f in (ball.cassinian_ball, ball.s_ball, ball.hat_c_ball, ball.rho_ball, ball.j_ball):
        with pytest.raises(DomainError):
            f(*bad)


@given(_in_ball(3), _in_ball(3))
def test_symmetry_and_ranges(x, y):
    c1, c2 = ball.cassinian_ball(x, y).value, ball.cassinian_ball(y, x).value
    s1, s2 = ball.s_ball(x, y).value, ball.s_ball(y, x).value
    assert c1 == pytest.approx(c2, rel=1e-11, abs=1e-15)
    assert s1 == pytest.approx(s2, rel=1e-11, abs=1e-15)
    assert 0.0 <= s1 <= 1.0 and c1 >= 0.0


@given(_in_ball(3), _in_ball(3), st.integers(0, 1000))
def test_rotation_invariance(x, y, seed):
    Q = _random_rotation(3, seed)
    for f in (ball.cassinian_ball, ball.s_ball):
        assert f(Q @ x, Q @ y).value == pytest.approx(f(x, y).value, rel=1e-10, abs=1e-14)
    assert ball.rho_ball(Q @ x, Q @ y) == pytest.approx(ball.rho_ball(x, y), rel=1e-10, abs=1e-14)


@given(_in_ball(2), _in_ball(2), _in_ball(2))
def test_triangle_inequality(x, y, z):
    for f in (ball.cassinian_ball, ball.s_ball):
        assert f(x, z).value <= f(x, y).value + f(y, z).value + 1e-10
    assert ball.rho_ball(x, z) <= ball.rho_ball(x, y) + ball.rho_ball(y, z) + 1e-10


def test_batch_matches_scalar(rng):
    X, Y = random_ball_pairs(rng, 300, n=3)
    c = ball.cassinian_many(X, Y)
    s = ball.s_many(X, Y)
    ch = ball.hat_c_many(X, Y)
    for i in range(300):
        assert c[i] == pytest.approx(ball.cassinian_ball(X[i], Y[i]).value, rel=1e-11)
        assert s[i] == pytest.approx(ball.s_ball(X[i], Y[i]).value, rel=1e-11, abs=1e-15)
        assert ch[i] == pytest.approx(ball.hat_c_ball(X[i], Y[i]).value, rel=1e-13)
    assert np.allclose(ball.rho_many(X, Y), [ball.rho_ball(a, b) for a, b in zip(X, Y)], rtol=1e-14)
    assert np.allclose(ball.j_many(X, Y), [ball.j_ball(a, b) for a, b in zip(X, Y)], rtol=1e-14)


def test_rho_accuracy_near_boundary():
    # 1 - |x|^2 is exact here, so the reference is exact up to rounding
    x, y = np.array([1 - 1e-12, 0.0]), np.array([1 - 2e-12, 0.0])
    expected = math.log((1 + x[0]) * (1 - y[0]) / ((1 - x[0]) * (1 + y[0])))
    assert ball.rho_ball(x, y) == pytest.approx(expected, rel=1e-3)


@pytest.mark.parametrize("r", [0.2, 0.5, 0.8, 0.95])
@pytest.mark.parametrize("omega", [0.1, 1.0, 2.0, 2.9, math.pi])
def test_equal_modulus_closed_form_and_angles(r, omega):
    x = np.array([r, 0.0])
    y = r * np.array([math.cos(omega), math.sin(omega)])
    v = ball.s_closed_form(r, omega)
    assert ball.s_ball(x, y).value == pytest.approx(v, rel=1e-14)
    d = np.linalg.norm(x - y)
    for th in ball.s_extremal_angle(r, omega):
        z = np.array([math.cos(th), math.sin(th)])
        assert d / (np.linalg.norm(x - z) + np.linalg.norm(z - y)) == pytest.approx(v, rel=1e-12)


def test_equal_modulus_branches():
    assert ball.s_extremal_angle(0.3, 1.0) == (0.5,)
    lo, hi = ball.s_extremal_angle(0.9, 2.5)
    assert lo < 1.25 < hi and lo + hi == pytest.approx(2.5)
    assert ball.s_closed_form(0.9, 2.5) == pytest.approx(0.9)
    with pytest.raises(DomainError):
        ball.s_extremal_angle(0.0, 1.0)
    with pytest.raises(DomainError):
        ball.s_extremal_angle(0.5, 0.0)
    with pytest.raises(DomainError):
        ball.s_closed_form(1.0, 1.0)


@pytest.mark.parametrize("r,omega", [(0.6, 2.5), (0.75, 2.0), (0.9, 1.0), (0.99, 0.3)])
def test_tangency_certificate_second_branch(r, omega):
    x = np.array([r, 0.0])
    y = r * np.array([math.cos(omega), math.sin(omega)])
    for th in ball.s_extremal_angle(r, omega):
        cert = ball.tangency_certificate(x, y, [math.cos(th), math.sin(th)])
        assert abs(cert.cos_residual) <= 1e-12 and abs(cert.ptolemy_residual) <= 1e-12


def test_tangency_certificate_fails_off_tangency():
    cert = ball.tangency_certificate([0.6, 0.0], [-0.6, 0.0], [0.0, 1.0])
    assert abs(cert.ptolemy_residual) > 0.1


def test_tangency_certificate_input_checks():
    with pytest.raises(DomainError):
        ball.tangency_certificate([0.5, 0], [0.4, 0], [1, 0])
    with pytest.raises(DomainError):
        ball.tangency_certificate([0.5, 0], [0, 0.5], [0.9, 0])
    with pytest.raises(DomainError):
        ball.tangency_certificate([0.5, 0], [0.5, 0], [1, 0])


def test_metric_value_serialises():
    d = ball.cassinian_ball([0.5, 0], [-0.5, 0]).to_dict()
    assert list(d) == ["value", "witness", "method"]
    assert ball.MetricValue(1.0).to_dict()["witness"] is None


def test_batch_results_independent_of_batch(rng):
    X, Y = random_ball_pairs(rng, 500, n=3)
    full_c, full_s = ball.cassinian_many(X, Y), ball.s_many(X, Y)
    for sl in (slice(0, 1), slice(3, 40), slice(250, 500)):
        assert np.array_equal(ball.cassinian_many(X[sl], Y[sl]), full_c[sl])
        assert np.array_equal(ball.s_many(X[sl], Y[sl]), full_s[sl])
