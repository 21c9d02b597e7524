"""Probes along the extremal families that show the constants are sharp.

``two_sc`` follows ``c(x,-x) / (2 s(x,-x))`` for ``x = t e1`` as ``t -> 0``.
``lambda_j_chat`` and ``lambda_j_c`` follow ``j(x,0) / c_hat(x,0)`` and
``j(x,0) / c(x,0)``, which tend to 1, so no factor below 1 works in
``j <= c_hat`` or ``j <= c``.  ``imsz_equality`` follows
``sh(rho(x,-x)/2) / c(x,-x)``, identically 1.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from .. import ball
from ..geometry import DomainError

__all__ = ["PROBES", "LambdaCounterexample", "sharpness_probe", "probe_ratio", "lambda_counterexample"]

PROBES = ("two_sc", "lambda_j_chat", "lambda_j_c", "imsz_equality")


def _e1(t: float, n: int = 2):
    x = np.zeros(n)
    x[0] = t
    return x


def probe_ratio(name: str, t: float) -> float:
    """Ratio of probe ``name`` at parameter ``t`` in (0, 1)."""
    if name not in PROBES:
        raise DomainError(f"unknown probe {name!r}; expected one of {', '.join(PROBES)}")
    t = float(t)
    if not 0.0 < t < 1.0:
        raise DomainError(f"probe parameter must lie in (0, 1), got {t}")
    x = _e1(t)
    zero = np.zeros(2)
    if name == "two_sc":
        return ball.cassinian_ball(x, -x).value / (2.0 * ball.s_ball(x, -x).value)
    if name == "lambda_j_chat":
        return ball.j_ball(x, zero) / ball.hat_c_ball(x, zero).value
    if name == "lambda_j_c":
        return ball.j_ball(x, zero) / ball.cassinian_ball(x, zero).value
    return ball.sh_half_rho(x, -x) / ball.cassinian_ball(x, -x).value


def sharpness_probe(name: str, steps: int = 20) -> list[tuple[float, float]]:
    """``(t, ratio)`` along the extremal family.

    The limiting probes use ``t = 10^-k`` spaced evenly in ``k`` from 0.5
    down to 1e-4; ``imsz_equality`` uses an even grid on [0.05, 0.95].
    """
    if name not in PROBES:
        raise DomainError(f"unknown probe {name!r}; expected one of {', '.join(PROBES)}")
    if steps < 1:
        raise DomainError("steps must be positive")
    if name == "imsz_equality":
        ts = np.linspace(0.05, 0.95, steps)
    else:
        ts = np.geomspace(0.5, 1e-4, steps)
    return [(float(t), probe_ratio(name, t)) for t in ts]


@dataclass(frozen=True)
class LambdaCounterexample:
    lam: float
    against: str
    x: tuple[float, ...]
    y: tuple[float, ...]
    j: float
    rhs: float

    def to_dict(self) -> dict:
        d = asdict(self)
        d["x"], d["y"] = list(self.x), list(self.y)
        return d


def lambda_counterexample(lam: float, against: str = "chat", max_halvings: int = 60) -> LambdaCounterexample:
    """A concrete pair ``(x, 0)`` with ``j(x, 0) > lam * against(x, 0)``.

    ``|x|`` is halved from 1/2 until the inequality ``j <= lam * c_hat`` (or
    ``lam * c``) breaks, which happens for every ``lam < 1``.
    """
    lam = float(lam)
    if not 0.0 < lam < 1.0:
        raise DomainError(f"lambda must lie in (0, 1), got {lam}")
    if against not in ("chat", "c"):
        raise DomainError(f"against must be 'chat' or 'c', got {against!r}")
    zero = np.zeros(2)
    t = 0.5
    for _ in range(max_halvings):
        x = _e1(t)
        j = ball.j_ball(x, zero)
        other = ball.hat_c_ball(x, zero) if against == "chat" else ball.cassinian_ball(x, zero)
        if j > lam * other.value:
            return LambdaCounterexample(lam, against, tuple(x.tolist()), tuple(zero.tolist()), j, lam * other.value)
        t *= 0.5
    raise ArithmeticError(f"no counterexample found for lambda={lam} within {max_halvings} halvings")
