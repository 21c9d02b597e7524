"""Hyperbolic-type metrics of the unit ball B^n.

Scalar functions take two points and validate them; the ``*_many`` variants
take ``(N, n)`` arrays, skip validation and are what the verification
harness runs on large samples.

The suprema defining the Cassinian metric ``c`` and the triangular ratio
metric ``s`` are computed in the plane spanned by the two points.  There the
extremal boundary point always lies on the shorter arc between the two
directions, so the search runs over ``theta`` in ``[0, omega]`` only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from numpy.typing import ArrayLike

from .geometry import Array, DomainError, angle_between, as_point, plane_frames
from .optimize import arc_minimize

__all__ = [
    "MetricValue",
    "TangencyCertificate",
    "EQUAL_MODULUS_TOL",
    "SCAN_POINTS",
    "BATCH_SCAN_POINTS",
    "rho_ball",
    "sh_half_rho",
    "j_ball",
    "cassinian_ball",
    "s_ball",
    "hat_c_ball",
    "s_closed_form",
    "s_extremal_angle",
    "tangency_certificate",
    "rho_many",
    "sh_half_rho_many",
    "j_many",
    "hat_c_many",
    "cassinian_many",
    "s_many",
]

EQUAL_MODULUS_TOL = 1e-12
SCAN_POINTS = 4096
BATCH_SCAN_POINTS = 256
ANGLE_TOL = 1e-12

CLOSED_FORM = "closed-form"
OPTIMIZED = "optimized"
SAMPLED = "sampled"


@dataclass(frozen=True, eq=False)
class MetricValue:
    value: float
    witness: Optional[Array] = None
    method: str = CLOSED_FORM

    def __float__(self) -> float:
        return float(self.value)

    def to_dict(self) -> dict:
        return {
            "value": float(self.value),
            "witness": None if self.witness is None else [float(c) for c in self.witness],
            "method": self.method,
        }


def _pair(x: ArrayLike, y: ArrayLike):
    x = as_point(x)
    y = as_point(y, x.size)
    for name, p in (("x", x), ("y", y)):
        if np.linalg.norm(p) >= 1.0:
            raise DomainError(f"{name} = {p.tolist()} is not in the open unit ball")
    return x, y


def _one_minus_sq(r):
    return (1.0 - r) * (1.0 + r)


def sh_half_rho(x: ArrayLike, y: ArrayLike) -> float:
    """``sinh(rho/2) = |x - y| / sqrt((1 - |x|^2)(1 - |y|^2))``."""
    x, y = _pair(x, y)
    return float(sh_half_rho_many(x[None], y[None])[0])


def rho_ball(x: ArrayLike, y: ArrayLike) -> float:
    """Hyperbolic distance in B^n."""
    x, y = _pair(x, y)
    return float(rho_many(x[None], y[None])[0])


def j_ball(x: ArrayLike, y: ArrayLike) -> float:
    x, y = _pair(x, y)
    return float(j_many(x[None], y[None])[0])


def sh_half_rho_many(X: Array, Y: Array) -> Array:
    d = np.linalg.norm(X - Y, axis=1)
    r1 = np.linalg.norm(X, axis=1)
    r2 = np.linalg.norm(Y, axis=1)
    return d / np.sqrt(_one_minus_sq(r1) * _one_minus_sq(r2))


def rho_many(X: Array, Y: Array) -> Array:
    # 2 arth(|x-y| / sqrt(|x-y|^2 + (1-|x|^2)(1-|y|^2))) == 2 asinh(sh(rho/2));
    # the asinh form stays accurate when the tanh argument approaches 1.
    return 2.0 * np.arcsinh(sh_half_rho_many(X, Y))


def j_many(X: Array, Y: Array) -> Array:
    d = np.linalg.norm(X - Y, axis=1)
    dmin = np.minimum(1.0 - np.linalg.norm(X, axis=1), 1.0 - np.linalg.norm(Y, axis=1))
    return np.log1p(d / dmin)


def hat_c_many(X: Array, Y: Array) -> Array:
    r1 = np.linalg.norm(X, axis=1)
    r2 = np.linalg.norm(Y, axis=1)
    x_first = (1.0 - r1) <= (1.0 - r2)
    P = np.where(x_first[:, None], X, Y)
    Q = np.where(x_first[:, None], Y, X)
    rp = np.where(x_first, r1, r2)
    rq = np.where(x_first, r2, r1)
    Z = np.empty_like(P)
    ok = rp > 0
    Z[ok] = P[ok] / rp[ok, None]
    # p = 0 forces q = 0 as well; any sphere point will do, keep it deterministic
    Z[~ok] = 0.0
    Z[~ok, 0] = 1.0
    qz = np.where(rp > 0, np.linalg.norm(Z - Q, axis=1), 1.0 - rq)
    d = np.linalg.norm(X - Y, axis=1)
    return d / ((1.0 - rp) * qz)


def hat_c_ball(x: ArrayLike, y: ArrayLike) -> MetricValue:
    """Lower substitute for ``c`` built from the boundary point nearest to
    whichever of ``x``, ``y`` is closer to the sphere (``x`` on ties)."""
    x, y = _pair(x, y)
    if np.array_equal(x, y):
        return MetricValue(0.0, None, CLOSED_FORM)
    r1, r2 = np.linalg.norm(x), np.linalg.norm(y)
    p, q = (x, y) if 1.0 - r1 <= 1.0 - r2 else (y, x)
    rp = np.linalg.norm(p)
    z = p / rp if rp > 0 else q / np.linalg.norm(q)
    value = float(np.linalg.norm(x - y) / ((1.0 - rp) * np.linalg.norm(z - q)))
    return MetricValue(value, z, CLOSED_FORM)


# --- boundary extremum in the plane ------------------------------------------

def _sin2_half(t):
    s = np.sin(0.5 * t)
    return s * s


def _dist2_terms(r1, r2, omega, theta):
    # |x - e^{i theta}|^2 and |y - e^{i theta}|^2 in cancellation-free form
    dx2 = (1.0 - r1) ** 2 + 4.0 * r1 * _sin2_half(theta)
    dy2 = (1.0 - r2) ** 2 + 4.0 * r2 * _sin2_half(theta - omega)
    return dx2, dy2


def _objective(kind, r1, r2, omega):
    def f(theta, rows):
        shape = (-1,) + (1,) * (np.ndim(theta) - 1)
        a = r1[rows].reshape(shape)
        b = r2[rows].reshape(shape)
        w = omega[rows].reshape(shape)
        dx2, dy2 = _dist2_terms(a, b, w, theta)
        if kind == "c":
            return dx2 * dy2
        return np.sqrt(dx2) + np.sqrt(dy2)

    return f


def _arc_extremum(kind: str, r1, r2, omega, scan: int):
    """Minimal denominator over the arc; returns ``(theta, denominator)``."""
    theta, f = arc_minimize(_objective(kind, r1, r2, omega), omega, scan=scan, tol=ANGLE_TOL)
    if kind == "c":
        f = np.sqrt(f)
    return theta, f


def _lift(E1, E2, theta) -> Array:
    Z = np.cos(theta)[:, None] * E1 + np.sin(theta)[:, None] * E2
    return Z / np.linalg.norm(Z, axis=1, keepdims=True)


def _extremum_many(kind: str, X: Array, Y: Array, scan: int, witnesses: bool):
    """Shared driver for ``c`` and ``s`` on many pairs.

    Returns ``(values, witnesses or None, closed_mask)``.
    """
    X = np.atleast_2d(np.asarray(X, dtype=float))
    Y = np.atleast_2d(np.asarray(Y, dtype=float))
    N = X.shape[0]
    r1, r2, omega, E1, E2 = plane_frames(X, Y)
    d = np.linalg.norm(X - Y, axis=1)
    values = np.zeros(N)
    theta = np.zeros(N)
    closed = np.zeros(N, dtype=bool)

    same = np.all(X == Y, axis=1)
    closed |= same
    zero_end = ~same & ((r1 == 0) | (r2 == 0))
    # a zero endpoint puts the frame on the other point: omega = 0, theta = 0
    rr = np.maximum(r1, r2)
    if kind == "c":
        values[zero_end] = rr[zero_end] / (1.0 - rr[zero_end])
    else:
        values[zero_end] = rr[zero_end] / (2.0 - rr[zero_end])
    closed |= zero_end

    rest = ~closed
    if kind == "c":
        anti = rest & np.all(X == -Y, axis=1)
        values[anti] = 2.0 * r1[anti] / _one_minus_sq(r1[anti])
        closed |= anti
    else:
        eq = rest & (np.abs(r1 - r2) <= EQUAL_MODULUS_TOL)
        if np.any(eq):
            v, th = _s_equal_modulus(r1[eq], omega[eq])
            values[eq] = v
            theta[eq] = th
            closed |= eq

    opt = ~closed
    if np.any(opt):
        idx = np.flatnonzero(opt)
        th, den = _arc_extremum(kind, r1[idx], r2[idx], omega[idx], scan)
        theta[idx] = th
        values[idx] = d[idx] / den
    if kind == "s":
        values = np.clip(values, 0.0, 1.0)

    W = None
    if witnesses:
        W = _lift(E1, E2, theta)
        W[same] = np.nan
    return values, W, closed


def cassinian_many(X: Array, Y: Array, scan: int = BATCH_SCAN_POINTS) -> Array:
    return _extremum_many("c", X, Y, scan, witnesses=False)[0]


def s_many(X: Array, Y: Array, scan: int = BATCH_SCAN_POINTS) -> Array:
    return _extremum_many("s", X, Y, scan, witnesses=False)[0]


def _scalar_extremum(kind: str, x, y) -> MetricValue:
    values, W, closed = _extremum_many(kind, x[None], y[None], SCAN_POINTS, witnesses=True)
    if np.array_equal(x, y):
        return MetricValue(0.0, None, CLOSED_FORM)
    return MetricValue(float(values[0]), W[0], CLOSED_FORM if closed[0] else OPTIMIZED)


def cassinian_ball(x: ArrayLike, y: ArrayLike) -> MetricValue:
    """Cassinian metric ``sup_{|z|=1} |x-y| / (|x-z| |z-y|)``.

    Closed forms for ``x = 0`` (or ``y = 0``) and ``y = -x``; otherwise a
    4096-point arc scan refined by golden-section search.
    """
    x, y = _pair(x, y)
    return _scalar_extremum("c", x, y)


def s_ball(x: ArrayLike, y: ArrayLike) -> MetricValue:
    """Triangular ratio metric ``sup_{|z|=1} |x-y| / (|x-z| + |z-y|)``.

    Exact when ``|x| = |y|`` or one point is the origin, optimized otherwise.
    """
    x, y = _pair(x, y)
    return _scalar_extremum("s", x, y)


# --- equal-modulus closed form ----------------------------------------------

def _s_equal_modulus(r, omega):
    r = np.asarray(r, dtype=float)
    omega = np.asarray(omega, dtype=float)
    half = 0.5 * omega
    ch = np.cos(half)
    far = ch < r
    denom = np.sqrt((1.0 - r) ** 2 + 4.0 * r * _sin2_half(half))
    value = np.where(far, r, r * np.sin(half) / denom)
    with np.errstate(invalid="ignore"):
        lower = (omega - np.pi) / 2.0 + np.arcsin(np.clip(ch / np.where(r > 0, r, 1.0), -1.0, 1.0))
    theta = np.where(far, lower, half)
    return value, theta


def s_closed_form(r: float, omega: float) -> float:
    """``s(x, y)`` for ``|x| = |y| = r`` and opening angle ``omega``."""
    if not 0.0 <= r < 1.0:
        raise DomainError(f"r = {r} is outside [0, 1)")
    if not 0.0 <= omega <= math.pi:
        raise DomainError(f"omega = {omega} is outside [0, pi]")
    return float(_s_equal_modulus(r, omega)[0])


def s_extremal_angle(r: float, omega: float) -> tuple[float, ...]:
    """Boundary angle(s) ``theta`` where ``z = e^{i theta}`` attains ``s`` for
    ``x = r`` and ``y = r e^{i omega}``.

    Returns ``(omega/2,)`` when ``sin((pi - omega)/2) >= r``.  Otherwise the
    two tangency angles, mirror images about ``omega/2``, smaller first.
    """
    if not 0.0 < r < 1.0:
        raise DomainError(f"r = {r} is outside (0, 1)")
    if not 0.0 < omega <= math.pi:
        raise DomainError(f"omega = {omega} is outside (0, pi]")
    sn = math.sin((math.pi - omega) / 2.0)
    if sn >= r:
        return (omega / 2.0,)
    asn = math.asin(sn / r)
    lower = (omega - math.pi) / 2.0 + asn
    upper = (math.pi + omega) / 2.0 - asn
    return (lower, upper)


@dataclass(frozen=True)
class TangencyCertificate:
    gamma: float
    cos_residual: float
    ptolemy_residual: float

    def to_dict(self) -> dict:
        return {
            "gamma": self.gamma,
            "cos_residual": self.cos_residual,
            "ptolemy_residual": self.ptolemy_residual,
        }


def tangency_certificate(x: ArrayLike, y: ArrayLike, z: ArrayLike) -> TangencyCertificate:
    """Residuals of the two identities that hold at a non-symmetric tangency
    point ``z`` of the ellipse with foci ``x``, ``y`` (``|x| = |y|``):

    * ``cos(gamma) = (|x-z| + |y-z|) / 2`` with ``gamma`` the angle at ``z``
      between ``y`` and the origin;
    * Ptolemy's relation ``|y-z||x| + |y||x-z| = |x-y|`` (``0, x, z, y``
      concyclic).
    """
    x = as_point(x)
    y = as_point(y, x.size)
    z = as_point(z, x.size)
    if abs(np.linalg.norm(z) - 1.0) > 1e-12:
        raise DomainError(f"z must lie on the unit sphere, |z| = {np.linalg.norm(z)}")
    if abs(np.linalg.norm(x) - np.linalg.norm(y)) > 1e-9:
        raise DomainError("tangency certificate needs |x| = |y|")
    if np.array_equal(x, y):
        raise DomainError("tangency certificate needs x != y")
    dxz = float(np.linalg.norm(x - z))
    dyz = float(np.linalg.norm(y - z))
    if dyz == 0.0:
        raise DomainError("y coincides with z")
    gamma = angle_between(y - z, -z)
    cos_res = math.cos(gamma) - (dxz + dyz) / 2.0
    pt_res = dyz * float(np.linalg.norm(x)) + float(np.linalg.norm(y)) * dxz - float(np.linalg.norm(x - y))
    return TangencyCertificate(gamma, cos_res, pt_res)
