"""Derivative-free search for profile tails that satisfy the sign conditions.

The search works in floating point on a scalar feasibility margin and then
rationalizes promising tails and re-certifies them exactly; only the exact
verdict counts.
"""
from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np
from scipy.optimize import minimize
from sklearn.base import BaseEstimator

from .certify import Certificate, certify_dimension, check_degree, product_factor
from .errors import CertError
from .exact import rational_str
from .moments import moment_float

DEFAULT_DENOMINATOR_CAP = 10**6
COEFF_BOUND = 1e3
# a = SCALE * sinh(y): log-like magnitude with a smooth sign change at 0
SCALE = 1e-5
Y_BOUND = math.asinh(COEFF_BOUND / SCALE)


@lru_cache(maxsize=256)
def _forms(n: int, d: int, tc: float) -> tuple:
    """Matrices of I(1), I'(1), I''(1) and J(1) as forms in (a_0, ..., a_d).

    alpha_q collects a_i a_j ((n+1) + 4j + 2ij) over ordered pairs i + j = q;
    beta_q collects 2 j a_i a_j over i + j = q + 1 plus q a_q.
    """
    c = np.array([moment_float(n, q, tc) for q in range(2 * d + 1)])
    P = np.array([float(product_factor(n, q, -1)) for q in range(2 * d + 1)])
    R = np.array([float(product_factor(n, q, 3)) for q in range(2 * d)])
    idx = np.arange(d + 1)
    i, j = np.meshgrid(idx, idx, indexing="ij")
    q = i + j
    base = (n + 1) + 4 * j + 2 * i * j
    mats = []
    for order in (0, 1, 2):
        mult = np.ones_like(q) if order == 0 else (q + 2 if order == 1 else (q + 2) * (q + 1))
        M = base * mult * c[q] * P[q]
        mats.append((M + M.T) / 2)
    qb = q - 1
    valid = (j >= 1) & (qb >= 0) & (qb <= 2 * d - 1)
    qb_safe = np.clip(qb, 0, max(2 * d - 1, 0))
    if d >= 1:
        Jm = np.where(valid, 2 * j * c[qb_safe] * R[qb_safe], 0.0)
        Jm = (Jm + Jm.T) / 2
        Jl = np.array([k * c[k] * R[k] if 1 <= k <= 2 * d - 1 else 0.0 for k in range(d + 1)])
    else:
        Jm = np.zeros((1, 1))
        Jl = np.zeros(1)
    return mats[0], mats[1], mats[2], Jm, Jl


def _ratio(value: float, scale: float) -> float:
    if scale == 0.0:
        return 0.0
    return value / scale


def margin_components(n: int, tail: Sequence[float], Tc: float = 0.0) -> dict:
    """Floating values and normalized margins of the four conditions."""
    t = np.asarray([float(x) for x in tail], dtype=float)
    d = len(t)
    check_degree(n, d)
    M0, M1, M2, Jm, Jl = _forms(n, d, float(Tc))
    A = M1[0, 0]
    B = 2.0 * M1[0, 1:] @ t
    C = t @ M1[1:, 1:] @ t
    disc = B * B - 4 * A * C
    out = {"A": A, "B": B, "C": C, "discriminant": disc,
           "m_discriminant": _ratio(disc, B * B + 4 * abs(A) * abs(C))}
    if disc <= 0 or A <= 0:
        out["a0"] = None
        out["margin"] = out["m_discriminant"] if disc <= 0 else -1.0
        return out
    a0 = (-B + math.sqrt(disc)) / (2 * A)
    a = np.concatenate(([a0], t))
    aa = np.abs(a)
    i1 = a @ M0 @ a
    i2 = a @ M2 @ a
    j1 = a @ Jm @ a + Jl @ a
    out.update(
        a0=a0,
        i1=i1,
        idoubleprime1=i2,
        j1=j1,
        m_i1=_ratio(i1, aa @ np.abs(M0) @ aa),
        m_idoubleprime1=_ratio(-i2, aa @ np.abs(M2) @ aa),
        m_j1=_ratio(-j1, aa @ np.abs(Jm) @ aa + np.abs(Jl) @ aa),
    )
    out["margin"] = min(out["m_discriminant"], out["m_i1"], out["m_idoubleprime1"], out["m_j1"])
    return out


def feasibility_margin(n: int, tail: Sequence[float], Tc: float = 0.0) -> float:
    """min of the normalized condition margins; > 0 iff all hold numerically."""
    return float(margin_components(n, tail, Tc)["margin"])


# ---------------------------------------------------------------------------
# Candidates
# ---------------------------------------------------------------------------


@dataclass
class Candidate:
    tail: tuple
    n: int
    margin: float
    rational_tail: tuple | None = None
    certified: Certificate | None = None
    note: str = ""

    @property
    def is_certified(self) -> bool:
        return self.certified is not None and self.certified.passed

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "margin": repr(float(self.margin)),
            "tail_float": [repr(float(x)) for x in self.tail],
            "tail": None if self.rational_tail is None else [rational_str(x) for x in self.rational_tail],
            "certified": self.is_certified,
            "certificate": None if self.certified is None else self.certified.to_dict(),
            "note": self.note,
        }


def rationalize(tail: Sequence, cap: int = DEFAULT_DENOMINATOR_CAP) -> tuple:
    """Best rational approximations (continued fractions) with denominator <= cap."""
    out = []
    for x in tail:
        if isinstance(x, Fraction):
            out.append(x if x.denominator <= cap else x.limit_denominator(cap))
        else:
            out.append(Fraction(float(x)).limit_denominator(cap))
    return tuple(out)


def rationalize_and_recheck(c: Candidate, cap: int = DEFAULT_DENOMINATOR_CAP) -> Candidate:
    """Rationalize the tail and re-run the exact certificate at T_c = 0."""
    rt = rationalize(c.tail, cap)
    out = Candidate(c.tail, c.n, c.margin, rt)
    if all(x == 0 for x in rt):
        out.note = "zero tail"
        return out
    try:
        cert = certify_dimension(c.n, rt, 0)
    except CertError as exc:
        out.note = f"exact recheck error: {exc}"
        return out
    if cert.passed:
        out.certified = cert
        out.note = "exact certificate passes"
    else:
        failed = sorted(k for k, v in cert.verdicts.items() if v != "pass")
        out.note = "exact recheck rejected: " + ", ".join(failed)
    return out


# ---------------------------------------------------------------------------
# Search
# ---------------------------------------------------------------------------


def _to_tail(y: np.ndarray) -> np.ndarray:
    return SCALE * np.sinh(np.clip(y, -Y_BOUND, Y_BOUND))


def _to_y(tail: np.ndarray) -> np.ndarray:
    return np.arcsinh(np.asarray(tail, dtype=float) / SCALE)


def _initial_point(d: int, rng: np.random.Generator) -> np.ndarray:
    # magnitudes log-uniform over [1e-5, 1e3]; sign pattern a_odd < 0 < a_even
    # is followed with probability 3/4 per coordinate
    mags = 10.0 ** rng.uniform(-5.0, math.log10(COEFF_BOUND), size=d)
    pattern = np.array([-1.0 if (k + 1) % 2 else 1.0 for k in range(d)])
    flip = rng.random(d) < 0.25
    return mags * np.where(flip, -pattern, pattern)


class _Budget:
    def __init__(self, n: int, tc: float, limit: int):
        self.n, self.tc, self.limit = n, tc, limit
        self.used = 0
        self.best_y = None
        self.best = -math.inf

    def objective(self, y: np.ndarray) -> float:
        if self.used >= self.limit:
            return -self.best if self.best > -math.inf else 1.0
        self.used += 1
        m = feasibility_margin(self.n, _to_tail(y), self.tc)
        if m > self.best:
            self.best, self.best_y = m, np.array(y, dtype=float)
        return -m


def _run_start(args) -> tuple:
    """One start: Nelder-Mead, then perturb-and-restart rounds while budget remains."""
    n, d, tc, y0, limit, seed_seq = args
    rng = np.random.default_rng(seed_seq)
    budget = _Budget(n, tc, limit)
    y = np.asarray(y0, dtype=float)
    budget.objective(y)
    step = 1.0
    while budget.used < limit:
        remaining = limit - budget.used
        if remaining < 2 * d + 2:
            break
        res = minimize(
            budget.objective,
            y,
            method="Nelder-Mead",
            options={"maxfev": remaining, "xatol": 1e-9, "fatol": 1e-12, "adaptive": True},
        )
        y = budget.best_y if budget.best_y is not None else res.x
        # population-style perturbation of the incumbent
        y = y + rng.normal(scale=step, size=d)
        step = max(0.05, step * 0.7)
    if budget.best_y is None:
        budget.best_y, budget.best = y, feasibility_margin(n, _to_tail(y), tc)
    return budget.best_y, budget.best, budget.used


def search(
    d: int,
    n: int,
    budget: int,
    seed: int = 0,
    *,
    tc: float = 0.0,
    n_starts: int | None = None,
    denominator_cap: int = DEFAULT_DENOMINATOR_CAP,
    recheck_top: int = 10,
    n_jobs: int = 1,
) -> list[Candidate]:
    """Multi-start simplex search maximizing the feasibility margin.

    Deterministic for fixed (d, n, budget, seed): each start draws from its
    own spawned seed sequence, so results do not depend on ``n_jobs``.
    """
    check_degree(n, d)
    if budget <= 0:
        raise ValueError("budget must be positive")
    if d == 0:
        raise ValueError("the tail is empty for d = 0; nothing to search")
    seq = np.random.SeedSequence(seed)
    screen_seq, *start_seqs = seq.spawn(1 + 64)
    screen_rng = np.random.default_rng(screen_seq)

    # screening: a share of the budget on random points, the rest on starts
    n_screen = max(1, min(budget, budget // 10))
    points = [_initial_point(d, screen_rng) for _ in range(n_screen)]
    scored = [(feasibility_margin(n, p, tc), k) for k, p in enumerate(points)]
    remaining = budget - n_screen
    candidates = [Candidate(tuple(float(x) for x in points[k]), n, m) for m, k in scored]
    if remaining >= 4 * (d + 1):
        k_starts = n_starts or max(1, min(len(start_seqs), remaining // 500))
        order = sorted(scored, key=lambda mk: (-mk[0], mk[1]))
        chosen = [points[k] for _, k in order[:k_starts]]
        while len(chosen) < k_starts:
            chosen.append(_initial_point(d, screen_rng))
        share = remaining // k_starts
        jobs = [(n, d, tc, _to_y(p), share, start_seqs[i]) for i, p in enumerate(chosen)]
        if n_jobs > 1:
            with ProcessPoolExecutor(max_workers=n_jobs) as pool:
                results = list(pool.map(_run_start, jobs))
        else:
            results = [_run_start(job) for job in jobs]
        for y, m, _ in results:
            candidates.append(Candidate(tuple(float(x) for x in _to_tail(y)), n, float(m)))

    candidates.sort(key=lambda c: -c.margin)
    out = []
    seen = set()
    for c in candidates:
        key = tuple(round(x, 12) for x in c.tail)
        if key in seen:
            continue
        seen.add(key)
        out.append(c)
    for k, c in enumerate(out):
        if k < recheck_top and c.margin > 0:
            out[k] = rationalize_and_recheck(c, denominator_cap)
    return out


@dataclass
class SearchReport:
    d: int
    n: int
    budget: int
    seed: int
    tc: float
    denominator_cap: int
    candidates: list = field(default_factory=list)

    def to_dict(self, limit: int | None = 20) -> dict:
        cands = self.candidates if limit is None else self.candidates[:limit]
        return {
            "parameters": {
                "d": self.d,
                "n": self.n,
                "budget": self.budget,
                "seed": self.seed,
                "tc": repr(float(self.tc)),
                "denominator_cap": self.denominator_cap,
            },
            "certified_count": sum(c.is_certified for c in self.candidates),
            "candidates": [c.to_dict() for c in cands],
        }


class CoefficientSearch(BaseEstimator):
    """Estimator wrapper around :func:`search`.

    ``fit(n)`` runs the search at dimension ``n`` and stores the ranked
    candidates in ``candidates_``; ``predict(tails)`` returns floating
    margins for arbitrary tails at the fitted dimension.
    """

    def __init__(self, d=6, budget=20000, seed=0, tc=0.0, denominator_cap=DEFAULT_DENOMINATOR_CAP, n_jobs=1):
        self.d = d
        self.budget = budget
        self.seed = seed
        self.tc = tc
        self.denominator_cap = denominator_cap
        self.n_jobs = n_jobs

    def fit(self, n, y=None):
        n = int(np.asarray(n).ravel()[0]) if not isinstance(n, int) else n
        self.candidates_ = search(
            self.d, n, self.budget, self.seed, tc=self.tc,
            denominator_cap=self.denominator_cap, n_jobs=self.n_jobs,
        )
        self.n_ = n
        self.best_ = self.candidates_[0]
        self.certified_ = [c for c in self.candidates_ if c.is_certified]
        return self

    def predict(self, tails):
        if not hasattr(self, "n_"):
            from sklearn.exceptions import NotFittedError

            raise NotFittedError("call fit(n) first")
        tails = np.atleast_2d(np.asarray(tails, dtype=float))
        if tails.shape[1] != self.d:
            raise ValueError(f"expected tails with {self.d} coefficients, got {tails.shape[1]}")
        return np.array([feasibility_margin(self.n_, t, self.tc) for t in tails])

    def report(self) -> SearchReport:
        return SearchReport(self.d, self.n_, self.budget, self.seed, self.tc, self.denominator_cap, self.candidates_)
