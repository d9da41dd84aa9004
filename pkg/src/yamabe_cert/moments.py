"""Moment integrals c_q(T) = int_0^inf (1 + (t - T)^2)^((5 + 2q - n)/2) dt.

Three evaluators with different guarantees:

``moment_zero``        exact value at T = 0 as kappa * r (kappa is 1 or pi)
``moment_general``     certified interval enclosure for T <= 0
``moment_quadrature``  floating adaptive quadrature, used as an oracle
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from scipy import integrate

from .errors import DivergentMomentError, UnsupportedDomainError
from .exact import RatInterval, enclose_arctan, enclose_pi, enclose_sqrt

KAPPA_ONE = "one"
KAPPA_PI = "pi"


@dataclass(frozen=True)
class MomentZero:
    """c_q(0) = kappa * r with kappa = 1 (n even) or pi (n odd)."""

    kappa: str
    r: Fraction

    def enclose(self, precision: Fraction = Fraction(1, 10**30)) -> RatInterval:
        if self.kappa == KAPPA_ONE:
            return RatInterval.point(self.r)
        return enclose_pi(precision / (self.r + 1)) * self.r

    def __float__(self) -> float:
        return float(self.r) * (math.pi if self.kappa == KAPPA_PI else 1.0)


@dataclass(frozen=True)
class MomentEnclosure:
    value: RatInterval
    n: int
    q: int
    Tc: RatInterval

    @property
    def certified(self) -> bool:
        return self.value.lo > 0


def check_convergent(n: int, q: int) -> None:
    if q < 0:
        raise DivergentMomentError(f"moment index must be non-negative, got q={q}")
    if n - 6 - 2 * q <= 0:
        raise DivergentMomentError(
            f"c_{q} diverges for n={n}: need n - 6 - 2q > 0"
        )


def _double_factorial(k: int) -> int:
    return math.prod(range(k, 0, -2)) if k > 0 else 1


@lru_cache(maxsize=None)
def _moment_zero_base(n: int) -> MomentZero:
    # q = 0: integrand (1 + t^2)^(-k), k = (n - 5)/2
    if n % 2:
        k = (n - 5) // 2
        return MomentZero(KAPPA_PI, Fraction(_double_factorial(2 * k - 3), 2 * _double_factorial(2 * k - 2)))
    m = (n - 6) // 2  # k = m + 1/2
    return MomentZero(
        KAPPA_ONE,
        Fraction(math.factorial(m - 1) * 4**m * math.factorial(m), 2 * math.factorial(2 * m)),
    )


@lru_cache(maxsize=None)
def moment_zero(n: int, q: int) -> MomentZero:
    """Exact c_q(0), via c_{q+1}(0) = c_q(0) (n-7-2q)/(n-8-2q)."""
    check_convergent(n, q)
    if q == 0:
        return _moment_zero_base(n)
    prev = moment_zero(n, q - 1)
    j = q - 1
    return MomentZero(prev.kappa, prev.r * Fraction(n - 7 - 2 * j, n - 8 - 2 * j))


def _tail_integral(twice_k: int, u: Fraction, precision: Fraction) -> RatInterval:
    """Enclose G(u) = int_u^inf (1 + v^2)^(-twice_k/2) dv for rational u >= 0.

    Reduction on the exponent: for k > 1 (k = twice_k/2)
        G_k(u) = -u / (2(k-1) (1+u^2)^(k-1)) + (2k-3)/(2(k-1)) G_{k-1}(u)
    down to G_1 = arctan(1/u) (= pi/2 - arctan u) or
    G_{3/2} = 1 - u/sqrt(1+u^2) = 1/(s (s + u)), s = sqrt(1+u^2).
    """
    one_u2 = 1 + u * u
    if twice_k % 2 == 0:
        if u == 0:
            g = enclose_pi(precision) / 2
        elif u <= 1:
            g = enclose_pi(precision / 2) / 2 - enclose_arctan(RatInterval.point(u), precision / 2)
        else:
            g = enclose_arctan(RatInterval.point(1 / u), precision)
        k2 = 2
        root = None
    else:
        root = enclose_sqrt(RatInterval.point(one_u2), precision / 8)
        g = 1 / (root * (root + u))
        k2 = 3
    while k2 < twice_k:
        k2 += 2
        km1 = Fraction(k2 - 2, 2)  # k - 1
        if u == 0:
            lead = RatInterval.point(0)
        elif root is None:
            lead = RatInterval.point(u / (2 * km1 * one_u2 ** int(km1)))
        else:
            lead = u / (root * (2 * km1 * one_u2 ** int(km1 - Fraction(1, 2))))
        g = -lead + g * (Fraction(k2 - 3) / (2 * km1))
    return g


def _point_enclosure(n: int, q: int, t: Fraction, precision: Fraction) -> RatInterval:
    twice_k = n - 5 - 2 * q
    u = -t
    eps = precision / 4
    # refine until the width target is met and the (positive) value is
    # resolved away from zero, which matters for tiny moments far from 0
    for _ in range(16):
        g = _tail_integral(twice_k, u, eps)
        if g.width() <= precision and g.lo > 0:
            break
        eps = eps * Fraction(1, 2**40)
    bits = max(64, precision.denominator.bit_length() - precision.numerator.bit_length() + 32)
    g = g.round_outward(bits)
    return RatInterval(max(g.lo, Fraction(0)), g.hi)


def moment_general(n: int, q: int, Tc, precision=Fraction(1, 10**30)) -> MomentEnclosure:
    """Certified enclosure of {c_q(t) : t in Tc} for Tc <= 0.

    c_q is increasing in t on (-inf, 0], so the endpoints of Tc bound it.
    """
    check_convergent(n, q)
    Tc = RatInterval.coerce(Tc)
    if Tc.hi > 0:
        raise UnsupportedDomainError("moments are only supported for T_c <= 0")
    precision = Fraction(precision)
    if precision <= 0:
        raise ValueError("precision must be positive")
    low = _point_enclosure(n, q, Tc.lo, precision)
    if Tc.lo == Tc.hi:
        return MomentEnclosure(low, n, q, Tc)
    high = _point_enclosure(n, q, Tc.hi, precision)
    return MomentEnclosure(RatInterval(low.lo, high.hi), n, q, Tc)


def moment_slope(n: int, q: int, Tc, precision=Fraction(1, 10**30)) -> RatInterval:
    """Enclosure of dc_q/dT = (1 + T^2)^((5+2q-n)/2) over T in Tc (Tc <= 0).

    Differentiating c_q(T) = int_{-T}^inf (1+u^2)^p du gives the integrand
    at u = -T; it is increasing in T on (-inf, 0].
    """
    check_convergent(n, q)
    Tc = RatInterval.coerce(Tc)
    if Tc.hi > 0:
        raise UnsupportedDomainError("moments are only supported for T_c <= 0")
    twice_p = 5 + 2 * q - n  # negative

    def at(t: Fraction) -> RatInterval:
        base = 1 + t * t
        k = -twice_p // 2  # (1+t^2)^(-k) times an extra 1/sqrt for odd twice_p
        val = RatInterval.point(1 / base**k)
        if twice_p % 2:
            val = val / enclose_sqrt(RatInterval.point(base), precision)
        return val

    lo, hi = at(Tc.lo), at(Tc.hi)
    return RatInterval(lo.lo, hi.hi).round_outward(128)


def moment_float(n: int, q: int, Tc: float = 0.0) -> float:
    """Floating c_q(Tc) from the same reduction recurrence (no certification)."""
    check_convergent(n, q)
    if Tc > 0:
        raise UnsupportedDomainError("moments are only supported for T_c <= 0")
    twice_k = n - 5 - 2 * q
    u = -float(Tc)
    one_u2 = 1.0 + u * u
    if twice_k % 2 == 0:
        g = math.atan2(1.0, u)
        k2 = 2
    else:
        s = math.sqrt(one_u2)
        g = 1.0 / (s * (s + u))
        k2 = 3
    while k2 < twice_k:
        k2 += 2
        km1 = (k2 - 2) / 2
        g = -u / (2 * km1 * one_u2**km1) + g * (k2 - 3) / (2 * km1)
    return g


def moment_quadrature(n: int, q: int, Tc: float = 0.0, tol: float = 1e-10) -> float:
    """Adaptive quadrature of c_q(Tc) with an explicit power-law tail cut.

    The integrand is bounded by (t - Tc)^(5+2q-n); the range is truncated
    at the first T (doubling from 8) whose tail bound
    (T - Tc)^(6+2q-n) / (n-6-2q) falls below tol/10 of the head integral.
    """
    check_convergent(n, q)
    if tol <= 0:
        raise ValueError("tol must be positive")
    Tc = float(Tc)
    if Tc > 0:
        raise UnsupportedDomainError("moments are only supported for T_c <= 0")
    p = (5 + 2 * q - n) / 2.0
    decay = n - 6 - 2 * q

    def integrand(t: float) -> float:
        return math.exp(p * math.log1p((t - Tc) ** 2))

    epsrel = max(tol / 10, 1e-13)
    T = 8.0
    while True:
        # geometric pieces: resolves the peak near t = 0 and the long tail
        edges = [0.0, 0.5]
        while edges[-1] < T:
            edges.append(min(2 * edges[-1], T))
        head = 0.0
        for a, b in zip(edges, edges[1:]):
            val, _ = integrate.quad(integrand, a, b, epsabs=0.0, epsrel=epsrel, limit=200)
            head += val
        tail_bound = (T - Tc) ** (-decay) / decay
        if tail_bound <= tol / 10 * head:
            return head
        T *= 2
