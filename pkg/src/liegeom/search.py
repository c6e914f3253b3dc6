"""Floating-point search for metrics with divergence-free ``S``.

The residual is the closed trace formula for ``2 g(div S, X_k)``, evaluated
in doubles.  Each seed is driven to a root by a damped minimum-norm
Levenberg step, then polished in extended precision (``gmpy2.mpfr``): roots
of this system are often double roots (for ``simple3`` the first component is
``tr(S^2)``), where Newton in doubles stalls around ``1e-8`` in parameter
space.  Hits are rounded to nearby rationals and re-checked exactly.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import gmpy2
import numpy as np
from scipy.stats import qmc

from .algebra import LieAlgebra, ad, basis_vector
from .exact import exact_array, inverse, is_zero, mpq, rational
from .geometry import InvariantMetric, NotPositiveDefinite, divergence_closed_form

__all__ = [
    "MetricParametrization",
    "SearchResult",
    "Solution",
    "SeedFailure",
    "divergence_residual",
    "find_div_free_family",
    "halton_seeds",
]

EIG_FLOOR = 1e-8
DEDUP_DISTANCE = 1e-6
MAX_DENOMINATOR = 10**6
POLISH_BITS = 256
POLISH_TOL = 1e-50


@dataclass(frozen=True)
class MetricParametrization:
    """Symmetric matrices with some entries free and the rest fixed.

    ``free`` lists 1-based ``(i, j)`` positions with ``i <= j``; ``fixed``
    maps further positions to rationals; anything not mentioned is zero.
    """

    dim: int
    free: tuple
    fixed: dict = field(default_factory=dict)
    bounds: tuple = ()

    def __post_init__(self):
        free = tuple(tuple(sorted((int(i), int(j)))) for i, j in self.free)
        fixed = {tuple(sorted((int(i), int(j)))): rational(v) for (i, j), v in dict(self.fixed).items()}
        for i, j in list(free) + list(fixed):
            if not (1 <= i <= self.dim and 1 <= j <= self.dim):
                raise ValueError(f"position ({i},{j}) outside 1..{self.dim}")
        if len(set(free)) != len(free) or set(free) & set(fixed):
            raise ValueError("free positions must be distinct and not fixed")
        bounds = tuple(tuple(float(x) for x in b) for b in self.bounds)
        if not bounds:
            bounds = tuple((0.5, 2.0) if i == j else (-0.3, 0.3) for i, j in free)
        if len(bounds) != len(free) or any(lo >= hi for lo, hi in bounds):
            raise ValueError("one increasing (lo, hi) bound per free parameter is required")
        object.__setattr__(self, "free", free)
        object.__setattr__(self, "fixed", fixed)
        object.__setattr__(self, "bounds", bounds)

    @classmethod
    def full(cls, dim: int, bounds=()) -> "MetricParametrization":
        """Every upper-triangular entry free."""
        free = [(i, j) for i in range(1, dim + 1) for j in range(i, dim + 1)]
        return cls(dim, tuple(free), {}, tuple(bounds))

    @property
    def size(self) -> int:
        return len(self.free)

    def metric(self, params) -> np.ndarray:
        """Matrix for a parameter vector; float in, float out; other scalars
        (rationals, mpfr) give an object array."""
        params = list(params)
        if len(params) != self.size:
            raise ValueError(f"{self.size} parameters expected, got {len(params)}")
        as_float = all(isinstance(p, (float, np.floating)) for p in params)
        n = self.dim
        if as_float:
            g = np.zeros((n, n))
            fixed = {k: float(v) for k, v in self.fixed.items()}
        else:
            g = np.empty((n, n), dtype=object)
            g[...] = mpq(0)
            fixed = self.fixed
        for (i, j), v in list(fixed.items()) + list(zip(self.free, params)):
            g[i - 1, j - 1] = v
            g[j - 1, i - 1] = v
        return g

    def basis(self) -> np.ndarray:
        """Derivative of :meth:`metric` along each parameter (float 0/1 matrices)."""
        E = np.zeros((self.size, self.dim, self.dim))
        for p, (i, j) in enumerate(self.free):
            E[p, i - 1, j - 1] = E[p, j - 1, i - 1] = 1.0
        return E


class _System:
    """``F(p)_k = 2 g(div S, X_k)`` and its Jacobian for one (alg, D, param).

    Works on float64 arrays and on object arrays of mpfr alike.
    """

    def __init__(self, alg: LieAlgebra, D, param: MetricParametrization):
        if param.dim != alg.dim:
            raise ValueError(f"parametrization dim {param.dim} != algebra dim {alg.dim}")
        self.alg, self.param = alg, param
        self.D_exact = exact_array(D)
        if self.D_exact.shape != (alg.dim, alg.dim):
            raise ValueError("derivation has the wrong shape")
        n = alg.dim
        ads = np.array([ad(alg, basis_vector(n, k)) for k in range(n)], dtype=object)
        tr_ad = np.einsum("ijj->i", alg.c)
        self._exact = (self.D_exact, ads, tr_ad)
        self._float = tuple(a.astype(float) for a in self._exact)
        self._E = param.basis()

    def _data(self, high: bool):
        if not high:
            return self._float + (self._E,)
        to = np.vectorize(gmpy2.mpfr, otypes=[object])
        return tuple(to(a) for a in self._exact) + (to(self._E),)

    def residual(self, g, ginv, data):
        D, ads, tr_ad, _ = data
        Dstar = ginv.dot(D.T).dot(g)
        # tr(D ad_k) + tr(D* ad_k) - tr_ad . (D + D*)[:, k]
        both = D + Dstar
        return np.einsum("ij,kji->k", both, ads) - tr_ad.dot(both)

    def jacobian(self, g, ginv, data):
        D, ads, tr_ad, E = data
        # d(D*) along E_p: -g^-1 E_p g^-1 D^T g + g^-1 D^T E_p
        left = ginv.dot(D.T)
        dstar = np.array([-ginv.dot(Ep).dot(left).dot(g) + left.dot(Ep) for Ep in E])
        return (np.einsum("pij,kji->kp", dstar, ads) - np.einsum("i,pik->kp", tr_ad, dstar))


def _min_eig(g) -> float:
    return float(np.linalg.eigvalsh(np.asarray(g, dtype=float))[0])


def divergence_residual(alg: LieAlgebra, D, param: MetricParametrization, params) -> Optional[np.ndarray]:
    """Float vector ``2 g(div S, X_k)`` at ``param.metric(params)``.

    Returns ``None`` (the rejection flag) when the sample is not positive
    definite above the eigenvalue floor.
    """
    system = _System(alg, D, param)
    g = param.metric(np.asarray(params, dtype=float))
    if _min_eig(g) < EIG_FLOOR:
        return None
    return system.residual(g, np.linalg.inv(g), system._data(False))


@dataclass(frozen=True)
class Solution:
    params: tuple  # floats, after extended-precision polish
    residual: float  # max-norm of the double-precision residual before polish
    polished_residual: float  # max-norm after polish
    rational: Optional[tuple]  # Fractions, denominators <= 10^6
    verified: bool  # exact divergence_closed_form == 0 at ``rational``
    seed_index: int
    iterations: int

    @property
    def status(self) -> str:
        return "exact" if self.verified else "numerically-only"


@dataclass(frozen=True)
class SeedFailure:
    seed_index: int
    reason: str
    residual: float
    iterations: int


@dataclass(frozen=True)
class SearchResult:
    solutions: list
    failures: list
    seeds: int
    tol: float
    trivial: bool  # residual vanishes at every seed before any step

    @property
    def converged(self) -> int:
        return len(self.solutions) + sum(f.reason == "duplicate" for f in self.failures)

    @property
    def residual(self) -> float:
        return max((s.residual for s in self.solutions), default=math.nan)

    @property
    def all_verified(self) -> bool:
        return all(s.verified for s in self.solutions)


def halton_seeds(param: MetricParametrization, count: int, seed: int = 0) -> np.ndarray:
    """Scrambled Halton points scaled into the parameter bounds."""
    sampler = qmc.Halton(d=param.size, scramble=True, seed=seed)
    lo, hi = np.array(param.bounds).T
    return qmc.scale(sampler.random(count), lo, hi)


def _levenberg(system: _System, x, tol, high: bool, max_iter: int):
    """Damped min-norm steps ``-J^T (J J^T + mu I)^{-1} F`` with backtracking
    that keeps the metric above the eigenvalue floor."""
    data = system._data(high)
    param = system.param
    solve = (lambda A, b: inverse(A).dot(b)) if high else np.linalg.solve
    inv = inverse if high else np.linalg.inv
    norm = (lambda v: max(abs(t) for t in v)) if high else (lambda v: float(np.max(np.abs(v))))

    def evaluate(p):
        g = param.metric(p)
        if _min_eig(g) < EIG_FLOOR:
            return None
        ginv = inv(g)
        return g, ginv, system.residual(g, ginv, data)

    state = evaluate(x)
    if state is None:
        return x, math.inf, 0, "indefinite seed"
    g, ginv, F = state
    r = norm(F)
    mu_scale = gmpy2.mpfr(2) ** (-2 * POLISH_BITS // 3) if high else 1e-12
    it = 0
    while it < max_iter and r > tol:
        it += 1
        J = system.jacobian(g, ginv, data)
        JJ = J.dot(J.T)
        mu = mu_scale * (1 + max(abs(t) for t in np.diag(JJ)))
        try:
            step = -J.T.dot(solve(JJ + mu * np.eye(len(F), dtype=JJ.dtype), F))
        except (np.linalg.LinAlgError, ZeroDivisionError):
            return x, float(r), it, "singular Jacobian"
        t, accepted = 1.0, False
        while t > 1e-6:
            trial = x + step * t
            s = evaluate(trial)
            if s is not None and norm(s[2]) < r:
                x, (g, ginv, F), accepted = trial, s, True
                break
            t *= 0.5
        if not accepted:
            return x, float(r), it, "stalled"
        r = norm(F)
    return x, float(r), it, ("converged" if r <= tol else "max iterations")


def _rationalize(params) -> tuple:
    out = []
    for p in params:
        q = gmpy2.mpq(p)  # exact value of the float or mpfr
        out.append(Fraction(int(q.numerator), int(q.denominator)).limit_denominator(MAX_DENOMINATOR))
    return tuple(out)


def _exact_check(system: _System, rat) -> bool:
    try:
        g = InvariantMetric(system.param.metric([mpq(f.numerator, f.denominator) for f in rat]))
    except NotPositiveDefinite:
        return False
    return is_zero(divergence_closed_form(system.alg, g, system.D_exact).covector)


def _solve_seed(args):
    system, index, x0, tol, max_iter, verify = args
    x, r, it, status = _levenberg(system, np.asarray(x0, dtype=float), tol, False, max_iter)
    if status != "converged":
        return SeedFailure(index, status, r, it)
    with gmpy2.context(gmpy2.get_context(), precision=POLISH_BITS):
        xp = np.array([gmpy2.mpfr(float(v)) for v in x], dtype=object)
        xp, rp, it2, _ = _levenberg(system, xp, gmpy2.mpfr(POLISH_TOL), True, 4 * POLISH_BITS)
        rat = _rationalize(xp) if verify else None
        xf = tuple(float(v) for v in xp)
    verified = _exact_check(system, rat) if verify else False
    return Solution(xf, r, rp, rat, verified, index, it + it2)


def find_div_free_family(
    alg: LieAlgebra,
    D,
    param: MetricParametrization,
    seeds=100,
    tol: float = 1e-10,
    *,
    seed: int = 0,
    max_iter: int = 200,
    verify: bool = True,
    workers: int = 1,
) -> SearchResult:
    """Root-find ``div S = 0`` from each seed and deduplicate the hits.

    ``seeds`` is either a count (scrambled Halton points with ``seed``) or an
    explicit array of parameter vectors.  Output order depends only on the
    seeds, not on ``workers``.
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    system = _System(alg, D, param)
    points = halton_seeds(param, int(seeds), seed) if np.isscalar(seeds) else np.asarray(seeds, dtype=float)
    if points.ndim != 2 or points.shape[1] != param.size:
        raise ValueError(f"seeds must be an (N, {param.size}) array")
    jobs = [(system, i, p, tol, max_iter, verify) for i, p in enumerate(points)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(_solve_seed, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
    else:
        outcomes = [_solve_seed(j) for j in jobs]

    hits = sorted((o for o in outcomes if isinstance(o, Solution)), key=lambda s: (s.params, s.seed_index))
    failures = [o for o in outcomes if isinstance(o, SeedFailure)]
    kept: list[Solution] = []
    for s in hits:
        if any(max(abs(a - b) for a, b in zip(s.params, k.params)) < DEDUP_DISTANCE for k in kept):
            failures.append(SeedFailure(s.seed_index, "duplicate", s.residual, s.iterations))
        else:
            kept.append(s)
    failures.sort(key=lambda f: f.seed_index)
    trivial = bool(outcomes) and all(isinstance(o, Solution) and o.iterations == 0 for o in outcomes)
    return SearchResult(kept, failures, len(points), tol, trivial)
