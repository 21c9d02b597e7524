"""One-dimensional search primitives: golden-section minimisation (scalar and
batched over many independent brackets), scan-then-refine minimisation on an
arc, and bracketing bisection with secant polish for roots."""

from __future__ import annotations

import math
from typing import Callable

import numpy as np

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
INV_PHI2 = 1.0 - INV_PHI


class BracketError(RuntimeError):
    """The supplied interval does not bracket a sign change."""


def golden_section(f: Callable[[float], float], a: float, b: float, tol: float = 1e-12):
    """Minimise a unimodal ``f`` on ``[a, b]``; returns ``(x, f(x))``."""
    a, b = min(a, b), max(a, b)
    c = a + INV_PHI2 * (b - a)
    d = a + INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc <= fd:
            b, d, fd = d, c, fc
            c = a + INV_PHI2 * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + INV_PHI * (b - a)
            fd = f(d)
    return (c, fc) if fc <= fd else (d, fd)


def golden_section_batch(f, a: np.ndarray, b: np.ndarray, tol: float = 1e-12):
    """Run golden-section search on every bracket ``[a[i], b[i]]`` at once.

    ``f`` maps an array of abscissae (one per bracket) to objective values.
    Each lane runs the iteration count its own bracket width needs and then
    stays frozen, so a lane's result does not depend on the other lanes.
    """
    a = np.array(a, dtype=float)
    b = np.array(b, dtype=float)
    width = b - a
    steps = np.zeros(a.shape, dtype=int)
    wide = width > tol
    steps[wide] = np.ceil(np.log(tol / width[wide]) / math.log(INV_PHI)).astype(int) + 1
    if not np.any(wide):
        x = 0.5 * (a + b)
        return x, f(x)
    c = a + INV_PHI2 * width
    d = a + INV_PHI * width
    fc, fd = f(c), f(d)
    for i in range(int(steps.max())):
        active = steps > i
        left = fc <= fd
        # left keeps [a, d], right keeps [c, b]; one fresh evaluation per lane
        na = np.where(left, a, c)
        nb = np.where(left, d, b)
        nc = np.where(left, na + INV_PHI2 * (nb - na), d)
        nd = np.where(left, c, na + INV_PHI * (nb - na))
        fnew = f(np.where(left, nc, nd))
        nfc, nfd = np.where(left, fnew, fd), np.where(left, fc, fnew)
        a, b = np.where(active, na, a), np.where(active, nb, b)
        c, d = np.where(active, nc, c), np.where(active, nd, d)
        fc, fd = np.where(active, nfc, fc), np.where(active, nfd, fd)
    pick = fc <= fd
    x = np.where(wide, np.where(pick, c, d), 0.5 * (a + b))
    fx = np.where(pick, fc, fd)
    if not np.all(wide):
        fx = np.where(wide, fx, f(x))
    return x, fx


def arc_minimize(objective, omega: np.ndarray, scan: int = 4096, tol: float = 1e-12, chunk: int | None = None):
    """Minimise ``objective(theta, rows)`` over ``theta`` in ``[0, omega[i]]``.

    ``objective`` receives angles whose leading axis is aligned with ``rows``
    (an index array into the caller's per-row parameters) and may carry one
    trailing axis.  Each row is scanned at ``scan`` equispaced angles, then the
    best grid well and the best competing grid well are both refined by
    golden-section search; the lower one wins, ties going to the smaller
    angle.  Returns ``(theta, value)``.
    """
    omega = np.asarray(omega, dtype=float)
    N = omega.size
    theta_out = np.zeros(N)
    f_out = np.zeros(N)
    if N == 0:
        return theta_out, f_out
    scan = max(int(scan), 8)
    if chunk is None:
        chunk = max(1, (1 << 21) // scan)
    t = np.linspace(0.0, 1.0, scan)
    k = np.arange(scan)

    for lo in range(0, N, chunk):
        rows = np.arange(lo, min(N, lo + chunk))
        w = omega[rows]
        grid = w[:, None] * t[None, :]
        F = objective(grid, rows)
        k1 = np.argmin(F, axis=1)

        left = np.concatenate([np.full((len(rows), 1), np.inf), F[:, :-1]], axis=1)
        right = np.concatenate([F[:, 1:], np.full((len(rows), 1), np.inf)], axis=1)
        wells = (F <= left) & (F <= right) & (np.abs(k[None, :] - k1[:, None]) >= 2)
        k2 = np.argmin(np.where(wells, F, np.inf), axis=1)
        k2 = np.where(wells[np.arange(len(rows)), k2], k2, k1)

        kk = np.concatenate([k1, k2])
        rr = np.concatenate([rows, rows])
        ww = np.concatenate([w, w])
        step = ww / (scan - 1)
        a = np.maximum(kk - 1, 0) * step
        b = np.minimum(kk + 1, scan - 1) * step
        th, fv = golden_section_batch(lambda s: objective(s, rr), a, b, tol)

        gk = F[np.tile(np.arange(len(rows)), 2), kk]
        better_grid = gk < fv
        th = np.where(better_grid, kk * step, th)
        fv = np.where(better_grid, gk, fv)

        m = len(rows)
        th1, th2, f1, f2 = th[:m], th[m:], fv[:m], fv[m:]
        take2 = (f2 < f1) | ((f2 == f1) & (th2 < th1))
        theta_out[rows] = np.where(take2, th2, th1)
        f_out[rows] = np.where(take2, f2, f1)
    return theta_out, f_out


def bisect_secant(f: Callable[[float], float], a: float, b: float, xtol: float = 1e-15,
                  polish: int = 2, max_iter: int = 200) -> float:
    """Root of ``f`` in ``[a, b]`` by bisection, then ``polish`` secant steps.

    Secant iterates are kept only if they stay inside the final bracket and
    reduce ``|f|``.
    """
    fa, fb = f(a), f(b)
    if fa == 0:
        return a
    if fb == 0:
        return b
    if (fa > 0) == (fb > 0):
        raise BracketError(f"no sign change on [{a}, {b}]: f = {fa}, {fb}")
    for _ in range(max_iter):
        m = 0.5 * (a + b)
        if b - a <= xtol * max(1.0, abs(m)) or m in (a, b):
            break
        fm = f(m)
        if fm == 0:
            return m
        if (fm > 0) == (fa > 0):
            a, fa = m, fm
        else:
            b, fb = m, fm
    best, fbest = (a, fa) if abs(fa) <= abs(fb) else (b, fb)
    x0, f0, x1, f1 = a, fa, b, fb
    for _ in range(polish):
        if f1 == f0:
            break
        x2 = x1 - f1 * (x1 - x0) / (f1 - f0)
        if not (a <= x2 <= b):
            break
        f2 = f(x2)
        if abs(f2) < abs(fbest):
            best, fbest = x2, f2
        x0, f0, x1, f1 = x1, f1, x2, f2
    return best
