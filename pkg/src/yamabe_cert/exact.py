"""Exact scalars: rationals, real quadratic-field elements and rational intervals.

``Rational`` is :class:`fractions.Fraction`; every value is kept in lowest
terms with a positive denominator.  ``QuadExt`` represents ``p + q*sqrt(D)``
with rational ``p, q, D`` and decides its sign without approximation.
``RatInterval`` is a closed interval with rational endpoints; arithmetic on
it is exact, and the transcendental enclosures (pi, arctan, sqrt) are
rounded outward onto a dyadic grid so that tighter requests nest inside
looser ones.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import IntEnum
from fractions import Fraction
from typing import Callable, Union

from .errors import DomainError

Rational = Fraction
Number = Union[int, Fraction]


class Sign(IntEnum):
    NEGATIVE = -1
    ZERO = 0
    POSITIVE = 1

    @classmethod
    def of(cls, x: Number) -> "Sign":
        return cls((x > 0) - (x < 0))

    def __str__(self) -> str:
        return self.name.lower()


def to_rational(value: Union[str, int, Fraction]) -> Fraction:
    """Parse ``"num/den"``, a decimal literal or an integer into a Fraction.

    Floats are rejected: a float is not an exact statement about a rational.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, float):
        raise TypeError(f"refusing float {value!r}; pass an exact rational string")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not text:
            raise ValueError("empty rational string")
        return Fraction(text)
    raise TypeError(f"cannot interpret {type(value).__name__} as a rational")


def rational_str(x: Number) -> str:
    """Serialize as ``"num/den"``; the denominator is omitted when it is 1."""
    return str(Fraction(x))


def _is_square_int(k: int) -> bool:
    return k >= 0 and math.isqrt(k) ** 2 == k


def rational_sqrt_exact(x: Fraction) -> Fraction | None:
    """Return sqrt(x) if it is rational, else None."""
    if x < 0:
        return None
    a, b = x.numerator, x.denominator
    if _is_square_int(a) and _is_square_int(b):
        return Fraction(math.isqrt(a), math.isqrt(b))
    return None


# ---------------------------------------------------------------------------
# Quadratic field elements
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class QuadExt:
    """The real number ``p + q*sqrt(D)`` with rational p, q and D >= 0.

    ``D`` is carried verbatim, never reduced to square-free form.  Arithmetic
    is only defined between elements sharing the same radicand (or with plain
    rationals).
    """

    p: Fraction
    q: Fraction = Fraction(0)
    D: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        object.__setattr__(self, "p", Fraction(self.p))
        object.__setattr__(self, "q", Fraction(self.q))
        object.__setattr__(self, "D", Fraction(self.D))
        if self.D < 0:
            raise DomainError(f"negative radicand {self.D}: not a real number")

    # -- helpers ----------------------------------------------------------
    def _coerce(self, other) -> "QuadExt":
        if isinstance(other, QuadExt):
            if other.D != self.D and other.q != 0 and self.q != 0:
                raise ValueError("QuadExt operands live in different quadratic fields")
            return other
        if isinstance(other, (int, Fraction)):
            return QuadExt(Fraction(other), Fraction(0), self.D)
        return NotImplemented

    def _radicand(self, other: "QuadExt") -> Fraction:
        return self.D if self.q != 0 else other.D

    @property
    def is_rational(self) -> bool:
        return self.q == 0 or self.D == 0 or rational_sqrt_exact(self.D) is not None

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadExt(self.p + o.p, self.q + o.q, self._radicand(o))

    __radd__ = __add__

    def __neg__(self):
        return QuadExt(-self.p, -self.q, self.D)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        D = self._radicand(o)
        return QuadExt(self.p * o.p + self.q * o.q * D, self.p * o.q + self.q * o.p, D)

    __rmul__ = __mul__

    def conjugate(self) -> "QuadExt":
        return QuadExt(self.p, -self.q, self.D)

    def norm(self) -> Fraction:
        """p^2 - q^2 D, the field norm."""
        return self.p * self.p - self.q * self.q * self.D

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if quadext_sign(o) == Sign.ZERO:
            raise ZeroDivisionError("division by zero in quadratic field")
        nrm = o.norm()
        if nrm == 0:
            # o = p + q sqrt(D) with sqrt(D) rational: collapse first
            return self / o.collapse()
        num = self * o.conjugate()
        return QuadExt(num.p / nrm, num.q / nrm, num.D)

    def __rtruediv__(self, other):
        return QuadExt(Fraction(other), 0, self.D) / self

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        result = QuadExt(Fraction(1), Fraction(0), self.D)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def collapse(self) -> Fraction:
        """The value as a Fraction; raises if it is irrational."""
        if self.q == 0 or self.D == 0:
            return self.p
        r = rational_sqrt_exact(self.D)
        if r is None:
            raise ValueError("value is irrational")
        return self.p + self.q * r

    def is_zero(self) -> bool:
        return quadext_sign(self) == Sign.ZERO

    def canonical(self) -> tuple[Fraction, int, Fraction]:
        """Return ``(p, s, R)`` with value ``p + s*sqrt(R)``.

        R is not a rational square unless s == 0.  Two QuadExt values are
        equal as real numbers iff their canonical triples are equal.
        """
        if self.q == 0 or self.D == 0:
            return (self.p, 0, Fraction(0))
        r = rational_sqrt_exact(self.D)
        if r is not None:
            return (self.p + self.q * r, 0, Fraction(0))
        return (self.p, 1 if self.q > 0 else -1, self.q * self.q * self.D)

    def same_value(self, other: "QuadExt") -> bool:
        return self.canonical() == other.canonical()

    def enclose(self, precision: Fraction = Fraction(1, 10**30)) -> "RatInterval":
        if self.q == 0 or self.D == 0:
            return RatInterval.point(self.p)
        root = enclose_sqrt(RatInterval.point(self.D), precision / (abs(self.q) + 1))
        return RatInterval.point(self.p) + root * self.q

    def __float__(self) -> float:
        return float(self.enclose().mid())

    def to_dict(self) -> dict:
        return {"p": rational_str(self.p), "q": rational_str(self.q), "D": rational_str(self.D)}

    @classmethod
    def from_dict(cls, data: dict) -> "QuadExt":
        return cls(to_rational(data["p"]), to_rational(data["q"]), to_rational(data["D"]))

    def __str__(self) -> str:
        if self.q == 0:
            return rational_str(self.p)
        return f"{rational_str(self.p)} + ({rational_str(self.q)})*sqrt({rational_str(self.D)})"


def quadext_sign(x: QuadExt) -> Sign:
    """Exact sign of ``p + q*sqrt(D)`` by rational case analysis."""
    if x.D < 0:
        raise DomainError("negative radicand")
    sp = Sign.of(x.p)
    sq = Sign.of(x.q) if x.D != 0 else Sign.ZERO
    if sq == Sign.ZERO:
        return sp
    if sp == Sign.ZERO or sp == sq:
        return sq
    # opposite signs: compare p^2 against q^2 D
    diff = x.p * x.p - x.q * x.q * x.D
    if diff == 0:
        return Sign.ZERO
    return sp if diff > 0 else sq


# ---------------------------------------------------------------------------
# Rational intervals
# ---------------------------------------------------------------------------


def _floor_log2(x: Fraction) -> int:
    # floor(log2(x)) for x > 0
    n, d = x.numerator, x.denominator
    e = n.bit_length() - d.bit_length()
    if e >= 0:
        if n < (d << e):
            e -= 1
    elif (n << -e) < d:
        e -= 1
    return e


def _round_down(x: Fraction, bits: int) -> Fraction:
    if x == 0:
        return x
    e = _floor_log2(abs(x)) - bits
    scale = Fraction(2) ** e
    return math.floor(x / scale) * scale


def _round_up(x: Fraction, bits: int) -> Fraction:
    return -_round_down(-x, bits)


@dataclass(frozen=True)
class RatInterval:
    """Closed interval ``[lo, hi]`` with rational endpoints."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "lo", Fraction(self.lo))
        object.__setattr__(self, "hi", Fraction(self.hi))
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, x: Number) -> "RatInterval":
        return cls(Fraction(x), Fraction(x))

    @staticmethod
    def coerce(x) -> "RatInterval":
        if isinstance(x, RatInterval):
            return x
        if isinstance(x, (int, Fraction)):
            return RatInterval.point(x)
        if isinstance(x, tuple) and len(x) == 2:
            return RatInterval(*x)
        raise TypeError(f"cannot use {type(x).__name__} as an interval")

    # -- queries ----------------------------------------------------------
    def width(self) -> Fraction:
        return self.hi - self.lo

    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, x) -> bool:
        if isinstance(x, RatInterval):
            return self.lo <= x.lo and x.hi <= self.hi
        if isinstance(x, float):
            return float(self.lo) <= x <= float(self.hi)
        return self.lo <= x <= self.hi

    __contains__ = contains

    def sign(self) -> Sign | None:
        """Sign shared by every point, or None when the interval straddles 0."""
        if self.lo > 0:
            return Sign.POSITIVE
        if self.hi < 0:
            return Sign.NEGATIVE
        if self.lo == 0 and self.hi == 0:
            return Sign.ZERO
        return None

    def hull(self, other: "RatInterval") -> "RatInterval":
        return RatInterval(min(self.lo, other.lo), max(self.hi, other.hi))

    def intersect(self, other: "RatInterval") -> "RatInterval":
        return RatInterval(max(self.lo, other.lo), min(self.hi, other.hi))

    def round_outward(self, bits: int) -> "RatInterval":
        """Widen both endpoints onto a grid with ``bits`` significant bits."""
        return RatInterval(_round_down(self.lo, bits), _round_up(self.hi, bits))

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        o = _as_interval(other)
        if o is None:
            return NotImplemented
        return RatInterval(self.lo + o.lo, self.hi + o.hi)

    __radd__ = __add__

    def __neg__(self):
        return RatInterval(-self.hi, -self.lo)

    def __sub__(self, other):
        o = _as_interval(other)
        if o is None:
            return NotImplemented
        return RatInterval(self.lo - o.hi, self.hi - o.lo)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            a, b = self.lo * other, self.hi * other
            return RatInterval(min(a, b), max(a, b))
        o = _as_interval(other)
        if o is None:
            return NotImplemented
        prods = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        return RatInterval(min(prods), max(prods))

    __rmul__ = __mul__

    def sqr(self) -> "RatInterval":
        a, b = self.lo * self.lo, self.hi * self.hi
        if self.lo >= 0:
            return RatInterval(a, b)
        if self.hi <= 0:
            return RatInterval(b, a)
        return RatInterval(Fraction(0), max(a, b))

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        if k == 0:
            return RatInterval.point(1)
        if k % 2 == 0:
            return self.sqr() ** (k // 2)
        return self * (self ** (k - 1))

    def reciprocal(self) -> "RatInterval":
        if self.lo <= 0 <= self.hi:
            raise ZeroDivisionError("interval divisor contains zero")
        return RatInterval(1 / self.hi, 1 / self.lo)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return self * (1 / Fraction(other))
        o = _as_interval(other)
        if o is None:
            return NotImplemented
        return self * o.reciprocal()

    def __rtruediv__(self, other):
        return RatInterval.coerce(other) * self.reciprocal()

    def to_dict(self) -> dict:
        return {"lo": rational_str(self.lo), "hi": rational_str(self.hi)}

    @classmethod
    def from_dict(cls, data: dict) -> "RatInterval":
        return cls(to_rational(data["lo"]), to_rational(data["hi"]))

    def __str__(self) -> str:
        return f"[{rational_str(self.lo)}, {rational_str(self.hi)}]"


def _as_interval(x) -> RatInterval | None:
    if isinstance(x, RatInterval):
        return x
    if isinstance(x, (int, Fraction)):
        return RatInterval.point(x)
    return None


# ---------------------------------------------------------------------------
# Certified enclosures of pi, arctan and sqrt
# ---------------------------------------------------------------------------


def _atan_series(x: Fraction, bits: int) -> RatInterval:
    """arctan(x) for |x| <= 1/2 by fixed-point summation with a rigorous error bound."""
    if x == 0:
        return RatInterval.point(0)
    neg = x < 0
    p, q = abs(x.numerator), x.denominator
    scale = 1 << bits
    pp, qq = p * p, q * q
    power = (p << bits) // q  # floor(|x| * 2^bits), error < 1 ulp
    total = 0
    k = 0
    terms = 0
    # each power is floor-truncated; with |x| <= 1/2 the accumulated power
    # error stays below 2 ulp, so each term is off by < 3 ulp
    while power > 2:
        term = power // (2 * k + 1)
        total = total - term if k & 1 else total + term
        power = power * pp // qq
        k += 1
        terms += 1
    err = 3 * terms + 8
    lo = Fraction(total - err, scale)
    hi = Fraction(total + err, scale)
    if neg:
        lo, hi = -hi, -lo
    return RatInterval(lo, hi)


def _pi_tight(bits: int) -> RatInterval:
    b = bits + 8
    return _atan_series(Fraction(1, 5), b) * 16 - _atan_series(Fraction(1, 239), b) * 4


def _atan_tight(x: Fraction, bits: int) -> RatInterval:
    if x == 0:
        return RatInterval.point(0)
    if x < 0:
        return -_atan_tight(-x, bits)
    if x > 1:
        return _pi_tight(bits + 2) / 2 - _atan_tight(1 / x, bits + 2)
    if x > Fraction(1, 2):
        # arctan x = pi/4 + arctan((x-1)/(x+1)), |(x-1)/(x+1)| <= 1/3
        return _pi_tight(bits + 2) / 4 + _atan_series((x - 1) / (x + 1), bits + 4)
    return _atan_series(x, bits + 4)


def _sqrt_tight(x: Fraction, bits: int) -> RatInterval:
    exact = rational_sqrt_exact(x)
    if exact is not None:
        return RatInterval.point(exact)
    a, b = x.numerator, x.denominator
    m = math.isqrt((a * b) << (2 * bits))
    den = b << bits
    return RatInterval(Fraction(m, den), Fraction(m + 1, den))


def _grid_exponent(precision: Fraction) -> int:
    # smallest k with 2^-k <= precision
    return -_floor_log2(precision)


def _snap(tight: Callable[[int], RatInterval], precision: Fraction) -> RatInterval:
    """Enclose a real number on the dyadic grid of step 2^-k <= precision.

    The result is [floor_k(v), ceil_k(v)], which depends only on the true
    value v and k; enclosures at finer precision are therefore nested in
    coarser ones.
    """
    precision = Fraction(precision)
    if precision <= 0:
        raise ValueError("precision must be positive")
    k = _grid_exponent(precision)
    step = Fraction(2) ** -k
    bits = max(k, 0) + 24
    for _ in range(12):
        enc = tight(bits)
        if enc.lo == enc.hi:
            return enc
        lo_g = math.floor(enc.lo / step)
        hi_g = math.ceil(enc.hi / step)
        if hi_g - lo_g <= 1:
            return RatInterval(lo_g * step, hi_g * step)
        bits += 64
    # value sits (numerically) on a grid point: fall back to a half-step grid
    half = step / 2
    return RatInterval(math.floor(enc.lo / half) * half, math.ceil(enc.hi / half) * half)


def enclose_pi(precision: Number) -> RatInterval:
    """Interval of width <= precision containing pi (Machin's formula)."""
    return _snap(_pi_tight, Fraction(precision))


def enclose_arctan(x, precision: Number) -> RatInterval:
    """Enclosure of arctan over the interval (or rational point) ``x``."""
    x = RatInterval.coerce(x)
    precision = Fraction(precision)
    lo = _snap(lambda b: _atan_tight(x.lo, b), precision)
    if x.lo == x.hi:
        return lo
    hi = _snap(lambda b: _atan_tight(x.hi, b), precision)
    return RatInterval(lo.lo, hi.hi)


def enclose_sqrt(x, precision: Number) -> RatInterval:
    """Enclosure of the square root over the interval ``x`` (x.lo >= 0)."""
    x = RatInterval.coerce(x)
    if x.lo < 0:
        raise DomainError(f"sqrt of interval with negative lower endpoint {x.lo}")
    precision = Fraction(precision)
    lo = _snap(lambda b: _sqrt_tight(x.lo, b), precision)
    if x.lo == x.hi:
        return lo
    hi = _snap(lambda b: _sqrt_tight(x.hi, b), precision)
    return RatInterval(lo.lo, hi.hi)
