"""Flat numeric tables behind the equal-modulus closed form, the tangency
construction, and the Cassinian product along the unit circle."""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np

from .. import ball
from ..geometry import DomainError, as_point

__all__ = ["TABLES", "s_closed_form_table", "tangency_table", "oval_table"]

Table = tuple[list[str], list[list[float]]]


def _polar(r: float, angle: float):
    return np.array([r * math.cos(angle), r * math.sin(angle)])


def s_closed_form_table(radii: Sequence[float] = (0.1, 0.3, 0.5, 0.7, 0.9), steps: int = 12) -> Table:
    """Closed-form ``s`` against the optimized value for ``x = r``,
    ``y = r e^{i omega}``; ``branch`` is 1 when the midpoint direction is
    extremal and 2 when the two tangency points are."""
    header = ["r", "omega", "branch", "theta", "s_closed_form", "s_optimized"]
    rows = []
    for r in radii:
        for omega in np.linspace(math.pi / steps, math.pi, steps):
            thetas = ball.s_extremal_angle(r, omega)
            x, y = _polar(r, 0.0), _polar(r, omega)
            rows.append([float(r), float(omega), float(len(thetas)), thetas[0],
                         ball.s_closed_form(r, omega), ball.s_ball(x, y).value])
    return header, rows


def tangency_table(radii: Sequence[float] = (0.6, 0.75, 0.9), steps: int = 8) -> Table:
    """Certificate residuals at both tangency points, for equal-modulus pairs
    whose extremal point is not the midpoint direction."""
    header = ["r", "omega", "theta", "z1", "z2", "gamma", "cos_residual", "ptolemy_residual"]
    rows = []
    for r in radii:
        # second branch needs cos(omega/2) < r
        start = 2.0 * math.acos(r)
        for omega in np.linspace(start, math.pi, steps + 1)[1:]:
            x, y = _polar(r, 0.0), _polar(r, omega)
            for theta in ball.s_extremal_angle(r, omega):
                z = _polar(1.0, theta)
                cert = ball.tangency_certificate(x, y, z)
                rows.append([float(r), float(omega), theta, float(z[0]), float(z[1]),
                             cert.gamma, cert.cos_residual, cert.ptolemy_residual])
    return header, rows


def oval_table(x=(0.5, 0.0), y=(-0.5, 0.0), steps: int = 72) -> Table:
    """``|x-w||w-y|`` for ``w`` around the unit circle, next to the centered
    value ``1 - (|x-y|/2)^2``."""
    x = as_point(x, 2)
    y = as_point(y, 2)
    if np.linalg.norm(x) >= 1.0 or np.linalg.norm(y) >= 1.0:
        raise DomainError("x and y must lie in the open unit disk")
    if steps < 1:
        raise DomainError("steps must be positive")
    centered = 1.0 - (float(np.linalg.norm(x - y)) / 2.0) ** 2
    header = ["phi", "w1", "w2", "product", "centered_value"]
    rows = []
    for phi in np.linspace(0.0, 2.0 * math.pi, steps, endpoint=False):
        w = _polar(1.0, phi)
        rows.append([float(phi), float(w[0]), float(w[1]),
                     float(np.linalg.norm(x - w) * np.linalg.norm(w - y)), centered])
    return header, rows


TABLES = {
    "s-closed-form": s_closed_form_table,
    "tangency": tangency_table,
    "oval": oval_table,
}
