import numpy as np
import pytest

from cassinian import ball
from cassinian.analysis.probes import PROBES, lambda_counterexample, probe_ratio, sharpness_probe
from cassinian.geometry import DomainError


def test_two_sc_limit():
    t = 1e-4
    assert probe_ratio("two_sc", t) - 1 == pytest.approx(t * t / (1 - t * t), rel=1e-6)
    vals = [r for _, r in sharpness_probe("two_sc", 15)]
    assert all(a > b for a, b in zip(vals, vals[1:])) and vals[-1] >= 1.0


@pytest.mark.parametrize("name", ["lambda_j_chat", "lambda_j_c"])
def test_lambda_probes_tend_to_one(name):
    for t, r in sharpness_probe(name, 12):
        assert r == pytest.approx(np.log1p(t / (1 - t)) * (1 - t) / t, rel=1e-12)
    assert probe_ratio(name, 0.01) == pytest.approx(0.995, abs=5e-4)


def test_imsz_equality(rng):
    assert all(abs(r - 1) < 1e-12 for _, r in sharpness_probe("imsz_equality", 30))
    for x in rng.uniform(-0.7, 0.7, size=(100, 2)):
        assert abs(ball.sh_half_rho(x, -x) / ball.cassinian_ball(x, -x).value - 1) < 1e-12


@pytest.mark.parametrize("lam", [0.9, 0.99])
@pytest.mark.parametrize("against", ["chat", "c"])
def test_lambda_counterexamples(lam, against):
    ce = lambda_counterexample(lam, against)
    x, y = np.array(ce.x), np.array(ce.y)
    other = ball.hat_c_ball(x, y) if against == "chat" else ball.cassinian_ball(x, y)
    assert ball.j_ball(x, y) > lam * other.value
    assert ce.j > ce.rhs


def test_probe_errors():
    with pytest.raises(DomainError):
        sharpness_probe("nope", 3)
    with pytest.raises(DomainError):
        probe_ratio("two_sc", 1.0)
    with pytest.raises(DomainError):
        lambda_counterexample(1.0)
    assert set(PROBES) == {"two_sc", "lambda_j_chat", "lambda_j_c", "imsz_equality"}
