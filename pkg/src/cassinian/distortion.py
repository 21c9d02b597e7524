"""Distortion functions for K-quasiregular maps of the unit disk.

The Grötzsch ring modulus

    mu(r) = (pi/2) K(r') / K(r),   r' = sqrt(1 - r^2),

is evaluated with the arithmetic-geometric mean, using
``K(r) = pi / (2 AGM(1, r'))`` so that ``mu(r) = (pi/2) AGM(1, r') / AGM(1, r)``.
Everything else is built on ``mu`` and its inverse:

    phi_K(r) = mu^{-1}(mu(r) / K),
    eta_K(t) = phi_K(s)^2 / (1 - phi_K(s)^2),   s = sqrt(t / (1 + t)),
    c(K)     = 2 arth(phi_K(th 1/2)).

Near ``r = 1`` the complementary modulus ``r'`` carries the information, so
the inverse returns both ``r`` and ``r'``; ``mu(phi_K(r)') = K mu(r')``
keeps ``1 - phi_K^2`` accurate when ``phi_K`` is within rounding of 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .geometry import DomainError
from .optimize import bisect_secant

__all__ = [
    "DistortionParams",
    "SaturationError",
    "agm",
    "mu",
    "mu_inverse",
    "phi_K",
    "phi_K_upper",
    "eta_K",
    "eta_K_upper",
    "c_of_K",
    "c_of_K_upper",
    "casgrow_bound",
    "rho_growth_bound",
    "verify_casgrow_against_eta",
]

HALF_PI = 0.5 * math.pi
QUARTER_PI2 = 0.25 * math.pi * math.pi
_SQRT_HALF = math.sqrt(0.5)
_SERIES_EDGE = 1e-8


class SaturationError(ArithmeticError):
    """phi_K has reached 1 in floating point; the requested value overflows."""


@dataclass(frozen=True)
class DistortionParams:
    K: float
    tol: float = 1e-12

    def __post_init__(self):
        if not (math.isfinite(self.K) and self.K >= 1.0):
            raise DomainError(f"K must be a finite number >= 1, got {self.K}")
        if not (0.0 < self.tol <= 1e-6):
            raise DomainError(f"tol must lie in (0, 1e-6], got {self.tol}")


def _params(p) -> DistortionParams:
    return p if isinstance(p, DistortionParams) else DistortionParams(float(p))


def agm(a: float, b: float) -> float:
    while abs(a - b) > 1e-15 * a:
        a, b = 0.5 * (a + b), math.sqrt(a * b)
    return 0.5 * (a + b)


def _mu_pair(r: float, rc: float) -> float:
    """mu from ``r`` and its complement ``rc = sqrt(1 - r^2)``, both exact."""
    if r < _SERIES_EDGE:
        return math.log(4.0 / r)
    if rc < _SERIES_EDGE:
        return QUARTER_PI2 / math.log(4.0 / rc)
    return HALF_PI * agm(1.0, rc) / agm(1.0, r)


def _complement(r: float) -> float:
    return math.sqrt((1.0 - r) * (1.0 + r))


def mu(r: float) -> float:
    """Modulus of the Grötzsch ring ``B^2 \\ [0, r]``; decreasing on (0, 1)."""
    r = float(r)
    if not 0.0 < r < 1.0:
        raise DomainError(f"mu(r) needs 0 < r < 1, got {r}")
    return _mu_pair(r, _complement(r))


def _mu_inv_lower(m: float, tol: float) -> float:
    # r in (0, 1/sqrt2] with mu(r) = m >= pi/2, solved in log r for relative accuracy
    if m > 745.0:
        return 4.0 * math.exp(-m)
    hi = math.log(_SQRT_HALF)
    lo = min(hi, math.log(4.0) - m) - 1.0
    g = lambda u: _mu_pair(math.exp(u), _complement(math.exp(u))) - m
    while g(lo) < 0.0:
        lo -= 1.0
    return math.exp(bisect_secant(g, lo, hi, xtol=tol))


def mu_inverse(m: float, tol: float = 1e-12) -> tuple[float, float]:
    """``(r, r')`` with ``mu(r) = m``.  Both components are returned to full
    relative accuracy, whichever of them is small."""
    m = float(m)
    if not m > 0.0:
        raise DomainError(f"mu takes values in (0, inf), got {m}")
    if math.isinf(m):
        return 0.0, 1.0
    if m >= HALF_PI:
        r = _mu_inv_lower(m, tol)
        return r, _complement(r)
    rc = _mu_inv_lower(QUARTER_PI2 / m, tol)
    return _complement(rc), rc


def _phi_pair(p: DistortionParams, r: float, rc: float) -> tuple[float, float]:
    if r == 0.0:
        return 0.0, 1.0
    if rc == 0.0:
        return 1.0, 0.0
    if p.K == 1.0:
        return r, rc
    return mu_inverse(_mu_pair(r, rc) / p.K, p.tol)


def phi_K(params, r: float) -> float:
    """Hersch-Pfluger distortion function ``mu^{-1}(mu(r)/K)`` on [0, 1]."""
    p = _params(params)
    r = float(r)
    if not 0.0 <= r <= 1.0:
        raise DomainError(f"phi_K needs 0 <= r <= 1, got {r}")
    return _phi_pair(p, r, _complement(r))[0]


def phi_K_upper(params, r: float) -> float:
    """``4^{1-1/K} r^{1/K}``."""
    p = _params(params)
    return 4.0 ** (1.0 - 1.0 / p.K) * float(r) ** (1.0 / p.K)


def eta_K(params, t: float) -> float:
    p = _params(params)
    t = float(t)
    if not t >= 0.0:
        raise DomainError(f"eta_K needs t >= 0, got {t}")
    if math.isinf(t):
        raise SaturationError("eta_K(inf) is infinite")
    if t == 0.0:
        return 0.0
    if p.K == 1.0:
        return t
    s = math.sqrt(t / (1.0 + t))
    sc = math.sqrt(1.0 / (1.0 + t))
    ph, phc = _phi_pair(p, s, sc)
    if phc == 0.0:
        raise SaturationError(f"phi_K reached 1 for K={p.K}, t={t}")
    value = (ph / phc) ** 2
    if math.isinf(value):
        raise SaturationError(f"eta_K overflows for K={p.K}, t={t}")
    return value


def eta_K_upper(params, t: float) -> float:
    """``e^{pi(K - 1/K)} max(t^{1/K}, t^K)``."""
    p = _params(params)
    t = float(t)
    return math.exp(math.pi * (p.K - 1.0 / p.K)) * max(t ** (1.0 / p.K), t ** p.K)


def c_of_K(params) -> float:
    """``2 arth(phi_K(th 1/2))``; exactly 1 for ``K = 1``."""
    p = _params(params)
    if p.K == 1.0:
        return 1.0
    r = math.tanh(0.5)
    ph, phc = _phi_pair(p, r, _complement(r))
    # arth(ph) = log((1 + ph) / phc) because 1 - ph^2 = phc^2
    return 2.0 * math.log((1.0 + ph) / phc)


def c_of_K_upper(params) -> float:
    p = _params(params)
    return 1.3507 * (p.K - 1.0) + p.K


def casgrow_bound(params, c0x: float) -> float:
    """``e^{pi(K-1/K)} max(t^{1/K}, t)`` for ``t = c(0, x)``."""
    p = _params(params)
    t = float(c0x)
    if not t >= 0.0:
        raise DomainError(f"c(0, x) must be >= 0, got {t}")
    if p.K == 1.0:
        return t
    return math.exp(math.pi * (p.K - 1.0 / p.K)) * max(t ** (1.0 / p.K), t)


def rho_growth_bound(params, rho: float) -> float:
    """``c(K) max(rho, rho^{1/K})``."""
    p = _params(params)
    rho = float(rho)
    if not rho >= 0.0:
        raise DomainError(f"rho must be >= 0, got {rho}")
    return c_of_K(p) * max(rho, rho ** (1.0 / p.K))


def verify_casgrow_against_eta(params, t: float) -> bool:
    """Whether ``eta_K(t) <= casgrow_bound(K, t)``.

    This holds for small and moderate ``t`` only: ``eta_K`` grows like
    ``t^K`` while the right-hand side is linear in ``t``, so for ``K > 1`` it
    fails beyond a finite crossover (about ``t = 5.95`` when ``K = 2``).
    """
    p = _params(params)
    return eta_K(p, t) <= casgrow_bound(p, t) * (1.0 + 1e-12)
