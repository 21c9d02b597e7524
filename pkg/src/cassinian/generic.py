"""Distance ratio, Cassinian and triangular ratio metrics of sampled domains.

Boundary infima become minima over the sample cloud, so sampled ``c`` and
``s`` are biased low.  Callers comparing two metrics should evaluate both
on the same cloud; single evaluations can ask for ``refine=True``, which
resamples the boundary ever more densely around the current best sample
(only for domains built by the generators below, which know their own
boundary parametrisation).
"""

from __future__ import annotations

import math
from typing import Callable, Sequence

import numpy as np
from numpy.typing import ArrayLike

from . import ball
from .ball import SAMPLED, MetricValue
from .geometry import Array, DomainError, DomainSpec, as_point, boundary_distances, sampled_domain

__all__ = [
    "j_generic",
    "cassinian_generic",
    "s_generic",
    "jung_ratio_bound",
    "j_generic_many",
    "cassinian_generic_many",
    "s_generic_many",
    "circle_domain",
    "ellipse_domain",
    "square_domain",
    "annulus_domain",
    "sphere_domain",
]

_REFINE_FLOOR = 1e-13


def _members(domain: DomainSpec, *pts) -> list[Array]:
    out = []
    for p in pts:
        p = as_point(p, domain.dim)
        if not domain.contains(p):
            raise DomainError(f"point {p.tolist()} is not in {domain.name}")
        out.append(p)
    return out


def j_generic(domain: DomainSpec, x: ArrayLike, y: ArrayLike) -> float:
    x, y = _members(domain, x, y)
    return float(j_generic_many(domain, x[None], y[None])[0])


def j_generic_many(domain: DomainSpec, X: Array, Y: Array) -> Array:
    d = np.linalg.norm(X - Y, axis=1)
    dmin = np.minimum(boundary_distances(domain, X), boundary_distances(domain, Y))
    return np.log1p(d / dmin)


def _denominators(kind: str, X: Array, Y: Array, B: Array):
    """Row-wise min over boundary samples; returns ``(min, argmin)``."""
    N, m = len(X), len(B)
    best = np.empty(N)
    arg = np.empty(N, dtype=np.intp)
    step = max(1, (1 << 22) // max(m, 1))
    for lo in range(0, N, step):
        sl = slice(lo, lo + step)
        a = np.linalg.norm(X[sl, None, :] - B[None, :, :], axis=-1)
        b = np.linalg.norm(Y[sl, None, :] - B[None, :, :], axis=-1)
        F = a * b if kind == "c" else a + b
        k = np.argmin(F, axis=1)
        arg[sl] = k
        best[sl] = F[np.arange(len(k)), k]
    return best, arg


def cassinian_generic_many(domain: DomainSpec, X: Array, Y: Array) -> Array:
    if domain.is_ball:
        return ball.cassinian_many(X, Y)
    den, _ = _denominators("c", X, Y, domain.boundary)
    return np.linalg.norm(X - Y, axis=1) / den


def s_generic_many(domain: DomainSpec, X: Array, Y: Array) -> Array:
    if domain.is_ball:
        return ball.s_many(X, Y)
    den, _ = _denominators("s", X, Y, domain.boundary)
    return np.clip(np.linalg.norm(X - Y, axis=1) / den, 0.0, 1.0)


def _refine(domain: DomainSpec, f: Callable[[Array], Array], start: Array, f0: float):
    best_p, best_f = start, f0
    hw = domain.spacing
    while hw > _REFINE_FLOOR:
        P = domain.refiner(best_p, hw, 33)
        F = f(P)
        k = int(np.argmin(F))
        if F[k] < best_f:
            best_p, best_f = P[k], float(F[k])
        hw *= 0.25
    return best_p, best_f


def _sampled_extremum(kind: str, domain: DomainSpec, x: Array, y: Array, refine: bool) -> MetricValue:
    if np.array_equal(x, y):
        return MetricValue(0.0, None, SAMPLED)
    den, arg = _denominators(kind, x[None], y[None], domain.boundary)
    z, f = domain.boundary[arg[0]], float(den[0])
    if refine and domain.refiner is not None:
        def objective(P):
            a = np.linalg.norm(P - x, axis=1)
            b = np.linalg.norm(P - y, axis=1)
            return a * b if kind == "c" else a + b

        z, f = _refine(domain, objective, z, f)
    value = float(np.linalg.norm(x - y)) / f
    if kind == "s":
        value = min(max(value, 0.0), 1.0)
    return MetricValue(value, np.array(z, dtype=float), SAMPLED)


def cassinian_generic(domain: DomainSpec, x: ArrayLike, y: ArrayLike, refine: bool = False) -> MetricValue:
    """``|x-y| / min_z |x-z||z-y|`` over the boundary samples.

    The unit ball is delegated to the exact ball evaluation.
    """
    x, y = _members(domain, x, y)
    if domain.is_ball:
        return ball.cassinian_ball(x, y)
    return _sampled_extremum("c", domain, x, y, refine)


def s_generic(domain: DomainSpec, x: ArrayLike, y: ArrayLike, refine: bool = False) -> MetricValue:
    x, y = _members(domain, x, y)
    if domain.is_ball:
        return ball.s_ball(x, y)
    return _sampled_extremum("s", domain, x, y, refine)


def jung_ratio_bound(domain: DomainSpec) -> float:
    """``2 / (sqrt(n/(2n+2)) diam D)``: a domain of that diameter sits in a
    ball of radius ``sqrt(n/(2n+2)) diam D``, so ``c_D >= bound * s_D``."""
    if not domain.is_ball and (domain.boundary is None or len(domain.boundary) == 0):
        raise DomainError("jung_ratio_bound needs boundary samples or a diameter hint")
    diam = domain.diameter
    if not (math.isfinite(diam) and diam > 0):
        raise DomainError(f"domain diameter must be positive and finite, got {diam}")
    n = domain.dim
    return 2.0 / (math.sqrt(n / (2.0 * n + 2.0)) * diam)


# --- generators ---------------------------------------------------------------

def _center(center, dim: int) -> Array:
    return np.zeros(dim) if center is None else as_point(center, dim)


def _window(t0: float, hw: float, count: int) -> Array:
    return t0 + np.linspace(-hw, hw, count)


def circle_domain(m: int, radius: float = 1.0, center: Sequence[float] | None = None) -> DomainSpec:
    c = _center(center, 2)
    R = float(radius)
    t = 2.0 * np.pi * np.arange(m) / m

    def at(s):
        return c + R * np.column_stack([np.cos(s), np.sin(s)])

    def refiner(p, hw, count):
        q = p - c
        return at(_window(math.atan2(q[1], q[0]), hw, count))

    def contains(P):
        return np.linalg.norm(np.atleast_2d(P) - c, axis=1) < R

    return sampled_domain(at(t), contains, diameter_hint=2.0 * R, refiner=refiner,
                          spacing=2.0 * np.pi / m, name=f"circle(r={R:g}, m={m})")


def ellipse_domain(m: int, a: float, b: float, center: Sequence[float] | None = None) -> DomainSpec:
    c = _center(center, 2)
    a, b = float(a), float(b)
    t = 2.0 * np.pi * np.arange(m) / m

    def at(s):
        return c + np.column_stack([a * np.cos(s), b * np.sin(s)])

    def refiner(p, hw, count):
        q = p - c
        return at(_window(math.atan2(q[1] / b, q[0] / a), hw, count))

    def contains(P):
        Q = np.atleast_2d(P) - c
        return (Q[:, 0] / a) ** 2 + (Q[:, 1] / b) ** 2 < 1.0

    return sampled_domain(at(t), contains, diameter_hint=2.0 * max(a, b), refiner=refiner,
                          spacing=2.0 * np.pi / m, name=f"ellipse(a={a:g}, b={b:g}, m={m})")


def square_domain(m: int, half: float = 1.0, center: Sequence[float] | None = None) -> DomainSpec:
    """Boundary of ``[-half, half]^2`` (shifted to ``center``), ``m`` samples
    equally spaced by arc length starting at the corner ``(half, -half)``."""
    c = _center(center, 2)
    h = float(half)
    L = 8.0 * h

    def at(s):
        s = np.mod(s, L)
        edge = np.minimum((s // (2.0 * h)).astype(int), 3)
        u = s - 2.0 * h * edge - h
        P = np.empty((len(s), 2))
        P[edge == 0] = np.column_stack([np.full((edge == 0).sum(), h), u[edge == 0]])
        P[edge == 1] = np.column_stack([-u[edge == 1], np.full((edge == 1).sum(), h)])
        P[edge == 2] = np.column_stack([np.full((edge == 2).sum(), -h), -u[edge == 2]])
        P[edge == 3] = np.column_stack([u[edge == 3], np.full((edge == 3).sum(), -h)])
        return c + P

    def param(p):
        x, y = p - c
        if abs(x - h) <= abs(y - h) and abs(x - h) <= abs(x + h) and abs(x - h) <= abs(y + h):
            return h + y
        if abs(y - h) <= abs(x + h) and abs(y - h) <= abs(y + h):
            return 3.0 * h - x
        if abs(x + h) <= abs(y + h):
            return 5.0 * h - y
        return 7.0 * h + x

    def refiner(p, hw, count):
        return at(_window(param(p), hw, count))

    def contains(P):
        Q = np.abs(np.atleast_2d(P) - c)
        return np.max(Q, axis=1) < h

    return sampled_domain(at(L * np.arange(m) / m), contains, diameter_hint=2.0 * math.sqrt(2.0) * h,
                          refiner=refiner, spacing=L / m, name=f"square(half={h:g}, m={m})")


def annulus_domain(m: int, r_in: float, r_out: float = 1.0, center: Sequence[float] | None = None) -> DomainSpec:
    """``r_in < |p - center| < r_out``; samples split between the two circles
    in proportion to their radii."""
    if not 0.0 < r_in < r_out:
        raise DomainError("annulus needs 0 < r_in < r_out")
    c = _center(center, 2)
    m_in = max(8, int(round(m * r_in / (r_in + r_out))))
    m_out = max(8, m - m_in)

    def ring(R, s):
        return c + R * np.column_stack([np.cos(s), np.sin(s)])

    B = np.vstack([
        ring(r_out, 2.0 * np.pi * np.arange(m_out) / m_out),
        ring(r_in, 2.0 * np.pi * np.arange(m_in) / m_in),
    ])

    def refiner(p, hw, count):
        q = p - c
        R = r_out if abs(np.linalg.norm(q) - r_out) <= abs(np.linalg.norm(q) - r_in) else r_in
        return ring(R, _window(math.atan2(q[1], q[0]), hw, count))

    def contains(P):
        d = np.linalg.norm(np.atleast_2d(P) - c, axis=1)
        return (d > r_in) & (d < r_out)

    return sampled_domain(B, contains, diameter_hint=2.0 * r_out, refiner=refiner,
                          spacing=2.0 * np.pi / min(m_in, m_out),
                          name=f"annulus({r_in:g}, {r_out:g}, m={m})")


def fibonacci_sphere(m: int) -> Array:
    """``m`` quasi-uniform points on the unit sphere in R^3."""
    k = np.arange(m) + 0.5
    z = 1.0 - 2.0 * k / m
    r = np.sqrt(np.maximum(0.0, 1.0 - z * z))
    phi = np.pi * (3.0 - math.sqrt(5.0)) * k
    return np.column_stack([r * np.cos(phi), r * np.sin(phi), z])


def sphere_domain(m: int, radius: float = 1.0, center: Sequence[float] | None = None) -> DomainSpec:
    """Ball in R^3 with a Fibonacci-lattice boundary cloud."""
    c = _center(center, 3)
    R = float(radius)

    def refiner(p, hw, count):
        u = (p - c) / np.linalg.norm(p - c)
        e1 = np.zeros(3)
        e1[int(np.argmin(np.abs(u)))] = 1.0
        e1 -= np.dot(e1, u) * u
        e1 /= np.linalg.norm(e1)
        e2 = np.cross(u, e1)
        k = max(3, int(math.isqrt(count * 8)) | 1)
        g = np.linspace(-hw, hw, k)
        A, Bm = np.meshgrid(g, g)
        D = u + A.reshape(-1, 1) * e1 + Bm.reshape(-1, 1) * e2
        return c + R * D / np.linalg.norm(D, axis=1, keepdims=True)

    def contains(P):
        return np.linalg.norm(np.atleast_2d(P) - c, axis=1) < R

    return sampled_domain(c + R * fibonacci_sphere(m), contains, diameter_hint=2.0 * R,
                          refiner=refiner, spacing=2.0 * math.sqrt(4.0 * math.pi / m),
                          name=f"sphere(r={R:g}, m={m})")
