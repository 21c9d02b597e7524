"""Independent brute-force evaluation of the boundary suprema.

Nothing here reuses the arc search in :mod:`cassinian.ball`: the oracle
scans the *whole* circle with explicit coordinates, refines the best few grid
cells with its own golden-section loop and maximises the ratio directly.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np
from numpy.typing import ArrayLike

from ..ball import SAMPLED, MetricValue, _pair
from ..geometry import reduce_to_plane

__all__ = ["brute_force_extremum", "circle_denominator_min", "cassinian_product_bound", "ProductBound"]

_G = (math.sqrt(5.0) - 1.0) / 2.0


def _plane(x, y):
    if x.size == 2:
        return x, y, None
    pp = reduce_to_plane(x, y)
    return pp.x2, pp.y2, pp


def _denominator(metric: str, x2, y2):
    def den(phi):
        cx, cy = np.cos(phi), np.sin(phi)
        a = np.hypot(x2[0] - cx, x2[1] - cy)
        b = np.hypot(y2[0] - cx, y2[1] - cy)
        return a * b if metric == "c" else a + b

    return den


def circle_denominator_min(metric: str, x2, y2, grid: int = 1 << 16, refine_iters: int = 80, wells: int = 4):
    """Minimum over the unit circle of ``|x-z||z-y|`` (``c``) or ``|x-z|+|z-y|``
    (``s``) for planar ``x2``, ``y2``.  Returns ``(minimum, angle)``."""
    if grid < 16:
        raise ValueError("grid must be at least 16")
    den = _denominator(metric, np.asarray(x2, float), np.asarray(y2, float))
    h = 2.0 * math.pi / grid
    phi = np.arange(grid) * h
    F = den(phi)
    is_well = (F <= np.roll(F, 1)) & (F <= np.roll(F, -1))
    cand = np.flatnonzero(is_well)
    cand = cand[np.argsort(F[cand], kind="stable")][:wells]
    best_f, best_phi = float(F.min()), float(phi[int(np.argmin(F))])
    for k in cand:
        lo, hi = (k - 1) * h, (k + 1) * h
        c = hi - _G * (hi - lo)
        d = lo + _G * (hi - lo)
        fc, fd = float(den(c)), float(den(d))
        for _ in range(refine_iters):
            if fc < fd:
                hi, d, fd = d, c, fc
                c = hi - _G * (hi - lo)
                fc = float(den(c))
            else:
                lo, c, fc = c, d, fd
                d = lo + _G * (hi - lo)
                fd = float(den(d))
        f, p = (fc, c) if fc < fd else (fd, d)
        if f < best_f:
            best_f, best_phi = f, p
    return best_f, best_phi % (2.0 * math.pi)


def brute_force_extremum(metric: str, x: ArrayLike, y: ArrayLike, grid: int = 1 << 16, refine_iters: int = 80) -> MetricValue:
    """Oracle value of ``c`` or ``s`` on the unit ball.

    Inputs of dimension above two are first reduced to their spanning plane;
    the returned witness is then the planar boundary point.
    """
    if metric not in ("c", "s"):
        raise ValueError(f"unknown metric {metric!r}; expected 'c' or 's'")
    if grid < 16:
        raise ValueError("grid must be at least 16")
    x, y = _pair(x, y)
    d = float(np.linalg.norm(x - y))
    if d == 0.0:
        return MetricValue(0.0, None, SAMPLED)
    x2, y2, _ = _plane(x, y)
    m, phi = circle_denominator_min(metric, x2, y2, grid, refine_iters)
    return MetricValue(d / m, np.array([math.cos(phi), math.sin(phi)]), SAMPLED)


@dataclass(frozen=True)
class ProductBound:
    inf_product: float
    centered_value: float
    bound_holds: bool

    def to_dict(self) -> dict:
        return asdict(self)


def cassinian_product_bound(x: ArrayLike, y: ArrayLike, grid: int = 1 << 16, tol: float = 1e-9) -> ProductBound:
    """Check ``inf_{|w|=1} |x-w||w-y| <= 1`` through the centered pair.

    ``x', y'`` are the translates with ``y' = -x'`` and ``y'-x' = y-x``; the
    infimum for that pair is ``1 - (|x-y|/2)^2``.  ``bound_holds`` reports
    ``inf_product <= centered_value <= 1`` to ``tol``.
    """
    x, y = _pair(x, y)
    x2, y2, _ = _plane(x, y)
    inf_product, _ = circle_denominator_min("c", x2, y2, grid)
    half = float(np.linalg.norm(x - y)) / 2.0
    centered_value = 1.0 - half * half
    holds = inf_product <= centered_value + tol and centered_value <= 1.0 + tol
    return ProductBound(
        inf_product=float(inf_product),
        centered_value=float(centered_value),
        bound_holds=bool(holds),
    )
