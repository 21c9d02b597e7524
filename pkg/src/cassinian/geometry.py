"""Points, domains, angles and the reduction of ball problems to the plane.

Points are plain 1-D float arrays.  A :class:`DomainSpec` is either the
exact unit ball or a bounded domain whose boundary is known only through a
finite point cloud.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Callable, Optional

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy.spatial import ConvexHull, Delaunay, cKDTree

__all__ = [
    "DomainError",
    "DomainSpec",
    "PlanePair",
    "as_point",
    "unit_ball",
    "sampled_domain",
    "load_boundary_csv",
    "write_boundary_csv",
    "angle_between",
    "reduce_to_plane",
    "plane_frames",
    "boundary_distance",
    "boundary_distances",
    "polygon_contains",
]

Array = NDArray[np.float64]


class DomainError(ValueError):
    """An argument lies outside the domain of the requested operation."""


def as_point(p: ArrayLike, dim: Optional[int] = None) -> Array:
    x = np.asarray(p, dtype=float)
    if x.ndim != 1:
        raise DomainError(f"a point must be a flat coordinate list, got shape {x.shape}")
    if x.size < 2:
        raise DomainError(f"points need dimension >= 2, got {x.size}")
    if dim is not None and x.size != dim:
        raise DomainError(f"expected a point of dimension {dim}, got {x.size}")
    if not np.all(np.isfinite(x)):
        raise DomainError("point has non-finite coordinates")
    return x


def _as_points(P: ArrayLike) -> Array:
    X = np.asarray(P, dtype=float)
    if X.ndim != 2 or X.shape[1] < 2:
        raise DomainError(f"expected an (m, n) array of points with n >= 2, got shape {X.shape}")
    if not np.all(np.isfinite(X)):
        raise DomainError("point array has non-finite coordinates")
    return X


Refiner = Callable[[Array, float, int], Array]


@dataclass(frozen=True, eq=False)
class DomainSpec:
    """A proper subdomain of R^n.

    ``kind`` is ``"unit_ball"`` or ``"sampled"``.  Sampled domains carry the
    boundary cloud, a vectorised membership predicate (``(m, n) -> bool[m]``),
    an optional diameter hint, and optionally a *refiner* that returns
    ``count`` boundary points within parameter half-width ``scale`` of a given
    boundary point.  The refiner is what lets the sampled metrics tighten a
    witness beyond the cloud spacing.
    """

    kind: str
    dim: int
    boundary: Optional[Array] = None
    contains_many: Optional[Callable[[Array], NDArray[np.bool_]]] = None
    diameter_hint: Optional[float] = None
    refiner: Optional[Refiner] = None
    spacing: Optional[float] = None
    name: str = ""
    meta: dict = field(default_factory=dict)

    @property
    def is_ball(self) -> bool:
        return self.kind == "unit_ball"

    def contains(self, x: ArrayLike) -> bool:
        p = np.asarray(x, dtype=float)
        if p.shape != (self.dim,):
            return False
        if self.is_ball:
            return bool(np.linalg.norm(p) < 1.0)
        return bool(self.contains_many(p[None, :])[0])

    def contains_all(self, X: Array) -> NDArray[np.bool_]:
        if self.is_ball:
            return np.linalg.norm(X, axis=1) < 1.0
        return np.asarray(self.contains_many(X), dtype=bool)

    @cached_property
    def tree(self) -> cKDTree:
        return cKDTree(self.boundary)

    @cached_property
    def diameter(self) -> float:
        if self.diameter_hint is not None:
            return float(self.diameter_hint)
        if self.is_ball:
            return 2.0
        return _cloud_diameter(self.boundary)


def _caliper_diameter(H: Array) -> float:
    # H: convex polygon vertices in counter-clockwise order
    h = len(H)
    if h < 3:
        return float(np.max(np.linalg.norm(H[:, None] - H[None], axis=-1)))

    def area2(i, j, k):
        a, b, c = H[i % h], H[j % h], H[k % h]
        return abs((b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]))

    best = 0.0
    j = 1
    for i in range(h):
        while area2(i, i + 1, j + 1) > area2(i, i + 1, j):
            j += 1
        for k in (j, j + 1):
            for q in (i, i + 1):
                best = max(best, float(np.linalg.norm(H[q % h] - H[k % h])))
    return best


def _cloud_diameter(B: Array) -> float:
    """Exact diameter of a finite point set (attained between hull vertices)."""
    try:
        hull = ConvexHull(B)
    except Exception:
        V = B
    else:
        V = B[hull.vertices]
        if B.shape[1] == 2:
            return _caliper_diameter(V)
    best = 0.0
    for i in range(0, len(V), 512):
        d = np.linalg.norm(V[i:i + 512, None, :] - V[None, :, :], axis=-1)
        best = max(best, float(d.max()))
    return best


def _diameter_lower_bound(B: Array) -> float:
    # double sweep: within a factor 2 of the diameter, O(m)
    far = B[int(np.argmax(np.linalg.norm(B - B[0], axis=1)))]
    return float(np.max(np.linalg.norm(B - far, axis=1)))


def unit_ball(dim: int) -> DomainSpec:
    if dim < 2:
        raise DomainError("the unit ball needs dimension >= 2")
    return DomainSpec(kind="unit_ball", dim=int(dim), diameter_hint=2.0, name=f"B^{dim}")


def sampled_domain(
    boundary: ArrayLike,
    contains_many: Callable[[Array], NDArray[np.bool_]],
    diameter_hint: Optional[float] = None,
    refiner: Optional[Refiner] = None,
    spacing: Optional[float] = None,
    name: str = "sampled",
    **meta,
) -> DomainSpec:
    B = _as_points(boundary)
    if len(B) == 0:
        raise DomainError("a sampled domain needs at least one boundary sample")
    if diameter_hint is not None:
        if not diameter_hint > 0:
            raise DomainError("diameter_hint must be positive")
        # necessary condition only; the exact diameter is O(h^2) beyond the plane
        spread = _diameter_lower_bound(B)
        if diameter_hint < spread * (1 - 1e-12):
            raise DomainError(
                f"diameter_hint {diameter_hint} is below the sample spread {spread}"
            )
    return DomainSpec(
        kind="sampled",
        dim=B.shape[1],
        boundary=B,
        contains_many=contains_many,
        diameter_hint=diameter_hint,
        refiner=refiner,
        spacing=spacing,
        name=name,
        meta=meta,
    )


def polygon_contains(vertices: Array) -> Callable[[Array], NDArray[np.bool_]]:
    """Even-odd ray casting against the closed polygon through ``vertices``."""
    V = np.asarray(vertices, dtype=float)
    a = V
    b = np.roll(V, -1, axis=0)

    def contains(P: Array) -> NDArray[np.bool_]:
        P = np.atleast_2d(P)
        px = P[:, 0:1]
        py = P[:, 1:2]
        ay, by = a[None, :, 1], b[None, :, 1]
        ax, bx = a[None, :, 0], b[None, :, 0]
        crosses = (ay > py) != (by > py)
        with np.errstate(divide="ignore", invalid="ignore"):
            xint = ax + (py - ay) * (bx - ax) / (by - ay)
        hits = crosses & (px < xint)
        return (np.count_nonzero(hits, axis=1) % 2) == 1

    return contains


def _hull_contains(B: Array) -> Callable[[Array], NDArray[np.bool_]]:
    tri = Delaunay(B)

    def contains(P: Array) -> NDArray[np.bool_]:
        return tri.find_simplex(np.atleast_2d(P)) >= 0

    return contains


def load_boundary_csv(path: str | Path, diameter_hint: Optional[float] = None) -> DomainSpec:
    """Read a boundary cloud from CSV with header ``x1,...,xn``.

    In the plane the rows are taken, in order, as the vertices of a closed
    polygon.  In higher dimensions membership is the convex hull of the
    cloud.
    """
    path = Path(path)
    with path.open(newline="") as fh:
        rows = list(csv.reader(fh))
    rows = [r for r in rows if r and any(c.strip() for c in r)]
    if not rows:
        raise DomainError(f"{path}: empty boundary file")
    header = [h.strip() for h in rows[0]]
    n = len(header)
    if header != [f"x{i}" for i in range(1, n + 1)]:
        raise DomainError(f"{path}: header must be x1,...,xn, got {','.join(header)}")
    try:
        B = np.array([[float(c) for c in r] for r in rows[1:]], dtype=float)
    except ValueError as exc:
        raise DomainError(f"{path}: {exc}") from None
    if B.ndim != 2 or B.shape[0] == 0 or B.shape[1] != n:
        raise DomainError(f"{path}: every row needs {n} coordinates")
    contains = polygon_contains(B) if n == 2 else _hull_contains(B)
    return sampled_domain(B, contains, diameter_hint=diameter_hint, name=path.name)


def write_boundary_csv(path: str | Path, boundary: ArrayLike) -> None:
    B = _as_points(boundary)
    with Path(path).open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow([f"x{i}" for i in range(1, B.shape[1] + 1)])
        w.writerows([[repr(float(c)) for c in row] for row in B])


def angle_between(x: ArrayLike, y: ArrayLike) -> float:
    """The angle at the origin between ``x`` and ``y``, in ``[0, pi]``."""
    x = as_point(x)
    y = as_point(y, x.size)
    nx, ny = np.linalg.norm(x), np.linalg.norm(y)
    if nx == 0 or ny == 0:
        raise DomainError("angle_between is undefined for the zero vector")
    cos = float(np.dot(x, y) / (nx * ny))
    # atan2 form keeps full precision near 0 and pi; agrees with the clamped arccos.
    ux, uy = x / nx, y / ny
    sin = float(np.linalg.norm(uy - np.dot(uy, ux) * ux))
    angle = float(np.arctan2(sin, np.clip(cos, -1.0, 1.0)))
    return min(max(angle, 0.0), np.pi)


@dataclass(frozen=True, eq=False)
class PlanePair:
    """2-D configuration with the same norms and opening angle as ``(x, y)``."""

    x2: Array
    y2: Array
    omega: float
    degenerate: bool = False


def _orthonormal_to(e1: Array) -> Array:
    k = int(np.argmin(np.abs(e1)))
    v = np.zeros_like(e1)
    v[k] = 1.0
    v = v - np.dot(v, e1) * e1
    return v / np.linalg.norm(v)


def plane_frames(X: Array, Y: Array):
    """Vectorised plane reduction.

    Returns ``(r1, r2, omega, E1, E2)`` with ``X = r1 * E1`` and
    ``Y = r2 * (cos(omega) E1 + sin(omega) E2)`` row by row.  When ``X`` is
    zero the frame is built on ``Y`` and ``omega`` is 0; when both are zero
    ``E1`` is the first basis vector.
    """
    X = np.atleast_2d(np.asarray(X, dtype=float))
    Y = np.atleast_2d(np.asarray(Y, dtype=float))
    N, n = X.shape
    r1 = np.linalg.norm(X, axis=1)
    r2 = np.linalg.norm(Y, axis=1)

    E1 = np.zeros((N, n))
    E1[:, 0] = 1.0
    use_x = r1 > 0
    use_y = ~use_x & (r2 > 0)
    E1[use_x] = X[use_x] / r1[use_x, None]
    E1[use_y] = Y[use_y] / r2[use_y, None]

    along = np.einsum("ij,ij->i", Y, E1)
    perp = Y - along[:, None] * E1
    # second Gram-Schmidt pass: nearly parallel pairs lose orthogonality in one
    perp -= np.einsum("ij,ij->i", perp, E1)[:, None] * E1
    pn = np.linalg.norm(perp, axis=1)
    omega = np.where(use_x & (r2 > 0), np.arctan2(pn, along), 0.0)

    E2 = np.empty((N, n))
    flat = pn <= 1e-15 * np.maximum(r2, 1e-300)
    ok = ~flat
    E2[ok] = perp[ok] / pn[ok, None]
    for i in np.flatnonzero(flat):
        E2[i] = _orthonormal_to(E1[i])
    return r1, r2, omega, E1, E2


def reduce_to_plane(x: ArrayLike, y: ArrayLike) -> PlanePair:
    x = as_point(x)
    y = as_point(y, x.size)
    r1, r2, omega, _, _ = plane_frames(x[None, :], y[None, :])
    r1, r2, w = float(r1[0]), float(r2[0]), float(omega[0])
    if r1 == 0 and r2 == 0:
        z = np.zeros(2)
        return PlanePair(z, z.copy(), 0.0, degenerate=True)
    return PlanePair(
        np.array([r1, 0.0]),
        np.array([r2 * np.cos(w), r2 * np.sin(w)]),
        w,
    )


def boundary_distance(domain: DomainSpec, x: ArrayLike) -> float:
    x = as_point(x, domain.dim)
    if not domain.contains(x):
        raise DomainError(f"point {x.tolist()} is not in {domain.name}")
    if domain.is_ball:
        return 1.0 - float(np.linalg.norm(x))
    d, _ = domain.tree.query(x)
    return float(d)


def boundary_distances(domain: DomainSpec, X: Array) -> Array:
    """Row-wise boundary distance; membership is the caller's responsibility."""
    X = np.atleast_2d(X)
    if domain.is_ball:
        return 1.0 - np.linalg.norm(X, axis=1)
    d, _ = domain.tree.query(X)
    return np.asarray(d, dtype=float)
