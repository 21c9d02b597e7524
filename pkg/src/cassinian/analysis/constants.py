"""The sharp constant in ``j <= a log(1 + c)`` and the auxiliary
one-variable functions whose monotonicity drives the comparison proofs."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from functools import lru_cache
from typing import Optional

from ..geometry import DomainError
from ..optimize import bisect_secant

__all__ = [
    "SharpConstants",
    "m_function",
    "alpha_equation",
    "solve_alpha",
    "lemma21_eval",
    "log_arth_gap",
]


@dataclass(frozen=True)
class SharpConstants:
    alpha: float
    a: float
    residual: float

    def to_dict(self) -> dict:
        return asdict(self)


def m_function(t: float) -> float:
    """``log((1+t)/(1-t)) / log((1+2t-t^2)/(1-t^2))``.

    Both logs vanish linearly at 0 and the ratio tends to 1 at both ends of
    ``[0, 1]``; the endpoints return that limit.
    """
    t = float(t)
    if not 0.0 <= t <= 1.0:
        raise DomainError(f"m_function needs t in [0, 1], got {t}")
    if t == 0.0 or t == 1.0:
        return 1.0
    num = math.log1p(2.0 * t / (1.0 - t))
    den = math.log1p(2.0 * t / ((1.0 - t) * (1.0 + t)))
    return num / den


def alpha_equation(t: float) -> float:
    """``(1+t^2) log((1+t)/(1-t)) + (t^2-2t-1) log((1+2t-t^2)/(1-t^2))``;
    its root in (0, 1) is the maximiser of :func:`m_function`."""
    t = float(t)
    l1 = math.log1p(2.0 * t / (1.0 - t))
    l2 = math.log1p(2.0 * t / ((1.0 - t) * (1.0 + t)))
    return (1.0 + t * t) * l1 + (t * t - 2.0 * t - 1.0) * l2


@lru_cache(maxsize=1)
def solve_alpha() -> SharpConstants:
    lo, hi = 0.1, 0.9
    if not alpha_equation(lo) * alpha_equation(hi) < 0:
        raise RuntimeError("alpha equation lost its sign change on [0.1, 0.9]")
    alpha = bisect_secant(alpha_equation, lo, hi, xtol=1e-16)
    return SharpConstants(alpha=alpha, a=m_function(alpha), residual=alpha_equation(alpha))


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise DomainError(msg)


def lemma21_eval(which: str, arg: float, aux: Optional[float] = None) -> float:
    """Evaluate one of the four auxiliary functions.

    ``f(x) = log(1+x)/x`` on (0, inf); ``g(x) = log(ax)/(a - 1/x)`` on
    (0, inf) with ``aux = a > 0``; ``h(x) = log((1+x)/(1-x)) /
    (1/(1-x) - 1/(1+x))`` on (0, 1); and ``fb(b) = log(1 + b/(1-x)) /
    log(1 + b/((1-x)(b+1-x)))`` on (0, 2) with ``aux = x`` in (0, 1).
    """
    x = float(arg)
    if which == "f":
        _require(x > 0, f"f needs x > 0, got {x}")
        return math.log1p(x) / x
    if which == "g":
        _require(aux is not None and aux > 0, "g needs aux = a > 0")
        _require(x > 0, f"g needs x > 0, got {x}")
        u = aux * x - 1.0
        # log(ax) / (a - 1/x) = x log1p(u) / u, with limit x at u = 0
        return x if u == 0.0 else x * math.log1p(u) / u
    if which == "h":
        _require(0 < x < 1, f"h needs 0 < x < 1, got {x}")
        return math.log1p(2.0 * x / (1.0 - x)) / (2.0 * x / ((1.0 - x) * (1.0 + x)))
    if which == "fb":
        _require(aux is not None and 0 < aux < 1, "fb needs aux = x in (0, 1)")
        _require(0 < x < 2, f"fb needs b in (0, 2), got {x}")
        q = 1.0 - aux
        return math.log1p(x / q) / math.log1p(x / (q * (x + q)))
    raise DomainError(f"unknown function {which!r}; expected f, g, h or fb")


def log_arth_gap(t: float, a: Optional[float] = None) -> float:
    """``4 arth(t/2) - a log(1+t)``; infinite once ``t >= 2``."""
    if a is None:
        a = solve_alpha().a
    t = float(t)
    if t >= 2.0:
        return math.inf
    return 4.0 * math.atanh(0.5 * t) - a * math.log1p(t)
