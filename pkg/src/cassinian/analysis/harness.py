"""Seeded randomized verification of the metric inequalities.

Pairs are drawn uniformly from the domain by rejection from its bounding
box.  Sampling is split into fixed-size chunks and chunk ``i`` draws from a
generator seeded with ``(seed, i)``, so a report depends only on its
arguments, never on how chunks are scheduled.

Every inequality is a chain of comparisons ``lhs <= rhs``.  The slack of a
comparison is ``(rhs - lhs) / max(1, |rhs|)``; a pair violates the
inequality when its smallest slack is below ``-tolerance``.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Callable, Iterable, Sequence

import numpy as np

from .. import ball, generic
from ..geometry import Array, DomainSpec, unit_ball
from .constants import solve_alpha
from .oracles import brute_force_extremum

__all__ = [
    "CHUNK",
    "Inequality",
    "InequalityReport",
    "OracleMismatch",
    "REGISTRY",
    "PairSample",
    "sample_domain",
    "ball_inequalities",
    "sample_pairs",
    "verify_inequality",
    "verify_suite",
]

CHUNK = 8192
CLOSED_FORM_TOL = 1e-9
SAMPLED_TOL = 1e-6
ORACLE_TOL = 1e-8
ORACLE_GRID = 1 << 15


class OracleMismatch(RuntimeError):
    """A fast-path metric value disagrees with the brute-force oracle."""


# --- sampling -------------------------------------------------------------------

def _bbox(domain: DomainSpec):
    if domain.is_ball:
        return -np.ones(domain.dim), np.ones(domain.dim)
    return domain.boundary.min(axis=0), domain.boundary.max(axis=0)


def _chunk_rng(seed: int, index: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([int(seed), int(index)]))


def _draw(domain: DomainSpec, rng: np.random.Generator, count: int, lo: Array, hi: Array) -> Array:
    out = []
    have = 0
    while have < count:
        P = rng.uniform(lo, hi, size=(2 * (count - have) + 16, domain.dim))
        P = P[domain.contains_all(P)]
        out.append(P)
        have += len(P)
    return np.vstack(out)[:count]


def sample_domain(domain: DomainSpec, count: int, seed: int, index: int = 0) -> Array:
    """``count`` uniform points of ``domain`` from chunk generator ``(seed, index)``."""
    lo, hi = _bbox(domain)
    return _draw(domain, _chunk_rng(seed, index), count, lo, hi)


def _chunk_pairs(domain: DomainSpec, seed: int, index: int, count: int, pairing: str):
    lo, hi = _bbox(domain)
    rng = _chunk_rng(seed, index)
    if pairing == "antipodal":
        # x and -x both in the domain
        out, have = [], 0
        while have < count:
            P = _draw(domain, rng, count - have, lo, hi)
            P = P[domain.contains_all(-P)]
            out.append(P)
            have += len(P)
        X = np.vstack(out)[:count]
        return X, -X
    X = _draw(domain, rng, count, lo, hi)
    Y = _draw(domain, rng, count, lo, hi)
    return X, Y


def sample_pairs(domain: DomainSpec, count: int, seed: int, pairing: str = "independent"):
    """All pairs a verification run with these arguments would see."""
    Xs, Ys = [], []
    for i, lo in enumerate(range(0, count, CHUNK)):
        X, Y = _chunk_pairs(domain, seed, i, min(CHUNK, count - lo), pairing)
        Xs.append(X)
        Ys.append(Y)
    if not Xs:
        return np.empty((0, domain.dim)), np.empty((0, domain.dim))
    return np.vstack(Xs), np.vstack(Ys)


# --- lazily evaluated metric values on a batch of pairs -----------------------

class PairSample:
    """Metric values on a batch of pairs, computed on first use and shared
    between all inequalities checked against the batch."""

    def __init__(self, domain: DomainSpec, X: Array, Y: Array):
        self.domain, self.X, self.Y = domain, X, Y

    @cached_property
    def norm_x(self) -> Array:
        return np.linalg.norm(self.X, axis=1)

    @cached_property
    def sh(self) -> Array:
        return ball.sh_half_rho_many(self.X, self.Y)

    @cached_property
    def rho(self) -> Array:
        return 2.0 * np.arcsinh(self.sh)

    @cached_property
    def j(self) -> Array:
        if self.domain.is_ball:
            return ball.j_many(self.X, self.Y)
        return generic.j_generic_many(self.domain, self.X, self.Y)

    @cached_property
    def c(self) -> Array:
        return generic.cassinian_generic_many(self.domain, self.X, self.Y)

    @cached_property
    def s(self) -> Array:
        return generic.s_generic_many(self.domain, self.X, self.Y)

    @cached_property
    def chat(self) -> Array:
        return ball.hat_c_many(self.X, self.Y)

    def evaluated(self, name: str) -> bool:
        return name in self.__dict__


Comparisons = list[tuple[Array, Array]]


@dataclass(frozen=True)
class Inequality:
    name: str
    statement: str
    chain: Callable[[PairSample], Comparisons]
    domain: Callable[[int], DomainSpec] = unit_ball
    sampled: bool = False
    pairing: str = "independent"

    @property
    def default_tolerance(self) -> float:
        return SAMPLED_TOL if self.sampled else CLOSED_FORM_TOL


def _four_arth_half(c: Array) -> Array:
    out = np.full_like(c, np.inf)
    ok = c < 2.0
    out[ok] = 4.0 * np.arctanh(0.5 * c[ok])
    return out


@lru_cache(maxsize=None)
def _subdomain(n: int) -> DomainSpec:
    """A fixed proper subdomain of B^n, symmetric about the origin."""
    if n == 2:
        return generic.ellipse_domain(4096, 0.85, 0.6)
    if n == 3:
        return generic.sphere_domain(8000, radius=0.8)
    raise ValueError(f"no built-in subdomain of B^{n}; use n = 2 or 3")


def _registry() -> dict[str, Inequality]:
    a = solve_alpha().a
    items = [
        Inequality("th_rho4_le_s_le_th_rho2", "th(rho/4) <= s <= th(rho/2)",
                   lambda p: [(np.tanh(p.rho / 4), p.s), (p.s, np.tanh(p.rho / 2))]),
        Inequality("sh_rho2_le_c", "sh(rho/2) <= c",
                   lambda p: [(p.sh, p.c)]),
        Inequality("j_le_rho_le_2j", "j <= rho <= 2 j",
                   lambda p: [(p.j, p.rho), (p.rho, 2 * p.j)]),
        Inequality("2s_le_c", "2 s <= c",
                   lambda p: [(2 * p.s, p.c)]),
        Inequality("s_le_c_over_sqrt", "s <= c / sqrt(1 + c^2)",
                   lambda p: [(p.s, p.c / np.sqrt(1 + p.c ** 2))]),
        Inequality("j_le_chat_le_c", "j <= c_hat <= c",
                   lambda p: [(p.j, p.chat), (p.chat, p.c)]),
        Inequality("j_le_a_log1pc", f"j <= a log(1 + c), a = {a:.6f}",
                   lambda p: [(p.j, a * np.log1p(p.c))]),
        Inequality("j_le_4arth_c2", "j <= 4 arth(c/2)",
                   lambda p: [(p.j, _four_arth_half(p.c))]),
        Inequality("2s_le_c_subdomain", "2 s_D <= c_D for a sampled D inside B^n",
                   lambda p: [(2 * p.s, p.c)], domain=_subdomain, sampled=True),
        Inequality("jung", "c_D >= 2 s_D / (sqrt(n/(2n+2)) diam D)",
                   lambda p: [(generic.jung_ratio_bound(p.domain) * p.s, p.c)],
                   domain=_subdomain, sampled=True),
        Inequality("s_sym_ge_norm", "s_D(x, -x) >= |x| for a sampled D inside B^n",
                   lambda p: [(p.norm_x, p.s)], domain=_subdomain, sampled=True,
                   pairing="antipodal"),
    ]
    return {q.name: q for q in items}


REGISTRY: dict[str, Inequality] = _registry()


# --- reports ----------------------------------------------------------------------

@dataclass(frozen=True)
class InequalityReport:
    name: str
    n: int
    samples: int
    seed: int
    tolerance: float
    violations: int
    worst_margin: float
    max_ratio: float
    extremal_pair: tuple[tuple[float, ...], tuple[float, ...]]

    @property
    def passed(self) -> bool:
        return self.violations == 0

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "n": self.n,
            "samples": self.samples,
            "seed": self.seed,
            "tolerance": self.tolerance,
            "violations": self.violations,
            "worst_margin": self.worst_margin,
            "max_ratio": self.max_ratio,
            "extremal_pair": [list(self.extremal_pair[0]), list(self.extremal_pair[1])],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def _slack_ratio(comparisons: Comparisons):
    slack = None
    ratio = None
    for lhs, rhs in comparisons:
        lhs = np.asarray(lhs, dtype=float)
        rhs = np.asarray(rhs, dtype=float)
        with np.errstate(invalid="ignore", divide="ignore"):
            s = np.where(np.isinf(rhs), np.inf, (rhs - lhs) / np.maximum(1.0, np.abs(rhs)))
            r = np.where(rhs > 0, lhs / rhs, np.where(lhs > 0, np.inf, 0.0))
        slack = s if slack is None else np.minimum(slack, s)
        ratio = r if ratio is None else np.maximum(ratio, r)
    return slack, ratio


def _direct_sampled(metric: str, B: Array, x: Array, y: Array) -> float:
    """Sup over every boundary sample, with no spatial indexing or chunking."""
    a = np.hypot.reduce(B - x, axis=1)
    b = np.hypot.reduce(B - y, axis=1)
    den = a * b if metric == "c" else a + b
    return float(np.linalg.norm(x - y) / den.min())


def _cross_check(p: PairSample, k: int) -> None:
    if k <= 0:
        return
    for metric in ("c", "s"):
        if not p.evaluated(metric):
            continue
        fast = getattr(p, metric)
        for i in range(min(k, len(fast))):
            if p.domain.is_ball:
                ref = brute_force_extremum(metric, p.X[i], p.Y[i], grid=ORACLE_GRID).value
            else:
                ref = _direct_sampled(metric, p.domain.boundary, p.X[i], p.Y[i])
            if abs(fast[i] - ref) > ORACLE_TOL * max(1.0, abs(ref)):
                raise OracleMismatch(
                    f"{metric}({p.X[i].tolist()}, {p.Y[i].tolist()}): fast {fast[i]!r} vs oracle {ref!r}"
                )


@dataclass
class _Partial:
    violations: int
    worst: float
    worst_x: Array
    worst_y: Array
    max_ratio: float


def _run_chunk(ineqs: Sequence[Inequality], domain: DomainSpec, seed: int, index: int,
               count: int, tols: Sequence[float], oracle_checks: int) -> list[_Partial]:
    X, Y = _chunk_pairs(domain, seed, index, count, ineqs[0].pairing)
    p = PairSample(domain, X, Y)
    out = []
    for q, tol in zip(ineqs, tols):
        slack, ratio = _slack_ratio(q.chain(p))
        k = int(np.argmin(slack))
        out.append(_Partial(int(np.count_nonzero(slack < -tol)), float(slack[k]),
                            X[k], Y[k], float(np.max(ratio))))
    if index == 0:
        _cross_check(p, oracle_checks)
    return out


def verify_suite(names: Iterable[str], n: int = 2, samples: int = 10000, seed: int = 0,
                 tolerance: float | None = None, oracle_checks: int = 4,
                 workers: int = 1) -> list[InequalityReport]:
    """Verify several inequalities on one shared sample.

    Inequalities must agree on domain and pairing; metric values are
    computed once per chunk and reused.  The first ``oracle_checks`` pairs
    of every ball metric that was evaluated are re-derived by brute force
    and must agree to 1e-8 before any report is produced.
    """
    names = list(names)
    if not names:
        return []
    try:
        ineqs = [REGISTRY[nm] for nm in names]
    except KeyError as exc:
        raise KeyError(f"unknown inequality {exc.args[0]!r}; known: {', '.join(REGISTRY)}") from None
    if n < 2:
        raise ValueError("dimension must be >= 2")
    if samples < 1:
        raise ValueError("samples must be positive")
    keys = {(q.domain, q.pairing) for q in ineqs}
    if len(keys) != 1:
        raise ValueError("inequalities in one suite must share domain and pairing")
    domain = ineqs[0].domain(n)
    tols = [q.default_tolerance if tolerance is None else float(tolerance) for q in ineqs]

    jobs = [(i, min(CHUNK, samples - lo)) for i, lo in enumerate(range(0, samples, CHUNK))]
    run = lambda job: _run_chunk(ineqs, domain, seed, job[0], job[1], tols, oracle_checks)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            partials = list(ex.map(run, jobs))
    else:
        partials = [run(job) for job in jobs]

    reports = []
    for qi, (q, tol) in enumerate(zip(ineqs, tols)):
        parts = [chunk[qi] for chunk in partials]
        # strict < keeps the lowest chunk on ties
        best = parts[0]
        for part in parts[1:]:
            if part.worst < best.worst:
                best = part
        reports.append(InequalityReport(
            name=q.name, n=n, samples=samples, seed=seed, tolerance=tol,
            violations=sum(part.violations for part in parts),
            worst_margin=best.worst,
            max_ratio=max(part.max_ratio for part in parts),
            extremal_pair=(tuple(float(v) for v in best.worst_x), tuple(float(v) for v in best.worst_y)),
        ))
    return reports


def verify_inequality(name: str, n: int = 2, samples: int = 10000, seed: int = 0,
                      tolerance: float | None = None, oracle_checks: int = 4,
                      workers: int = 1) -> InequalityReport:
    return verify_suite([name], n, samples, seed, tolerance, oracle_checks, workers)[0]


def ball_inequalities() -> list[str]:
    return [q.name for q in REGISTRY.values() if not q.sampled]
