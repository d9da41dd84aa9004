"""Dense polynomials over the rationals and the profile expansions.

For a profile polynomial ``f(s) = a_0 + a_1 s + ... + a_d s^d`` two
expansions feed the certifier:

* ``alpha``: coefficients of ``(n+1) f^2 + 4 s f f' + 2 s^2 f'^2``
* ``beta``: coefficients of ``2 f f' + s f'``

``paper_alpha_d6`` / ``paper_beta_d6`` are written-out degree-6 formulas
used as an independent check on the generic expansion.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import UsageError
from .exact import rational_str, to_rational


class Poly:
    """Dense polynomial in ``s``; ``coeffs[i]`` multiplies ``s**i``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        c = [Fraction(x) if isinstance(x, int) else x for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs: tuple = tuple(c)

    def degree(self) -> float:
        """Highest power with a nonzero coefficient; ``-inf`` for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else -math.inf

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, i: int):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"Poly({list(map(str, self.coeffs))})"

    def __add__(self, other: "Poly") -> "Poly":
        m = max(len(self), len(other))
        return Poly(self[i] + other[i] for i in range(m))

    def __sub__(self, other: "Poly") -> "Poly":
        m = max(len(self), len(other))
        return Poly(self[i] - other[i] for i in range(m))

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            return Poly(c * other for c in self.coeffs)
        if not self.coeffs or not other.coeffs:
            return Poly()
        out = [Fraction(0)] * (len(self) + len(other) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def derivative(self) -> "Poly":
        return Poly(i * c for i, c in enumerate(self.coeffs) if i > 0)

    def shift(self, k: int) -> "Poly":
        """Multiply by ``s**k``."""
        if not self.coeffs:
            return self
        return Poly([Fraction(0)] * k + list(self.coeffs))

    def __call__(self, s):
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * s + c
        return acc

    def padded(self, length: int) -> list:
        return [self[i] for i in range(length)]


@dataclass(frozen=True)
class CoeffVector:
    """Degree ``d`` and coefficients ``a_0..a_d`` of the profile ``f``.

    When only the tail ``a_1..a_d`` is meaningful (``a_0`` is later fixed as
    the largest root of the a_0-quadratic) ``a[0]`` is a placeholder.
    """

    d: int
    a: tuple

    def __post_init__(self) -> None:
        if self.d < 0:
            raise UsageError("degree must be non-negative")
        a = tuple(Fraction(x) if isinstance(x, (int, str)) else x for x in self.a)
        if len(a) != self.d + 1:
            raise UsageError(f"expected {self.d + 1} coefficients, got {len(a)}")
        object.__setattr__(self, "a", a)

    @classmethod
    def from_tail(cls, tail: Sequence, a0=Fraction(0)) -> "CoeffVector":
        tail = [to_rational(t) if isinstance(t, str) else t for t in tail]
        return cls(len(tail), (a0, *tail))

    @property
    def tail(self) -> tuple:
        return self.a[1:]

    def with_a0(self, a0) -> "CoeffVector":
        return CoeffVector(self.d, (a0, *self.a[1:]))

    def poly(self) -> Poly:
        return Poly(self.a)

    def tail_strings(self) -> list[str]:
        return [rational_str(x) for x in self.tail]


def _degree_of(f) -> int:
    if isinstance(f, CoeffVector):
        return f.d
    return len(_as_poly(f)) - 1


def _as_poly(f) -> Poly:
    if isinstance(f, Poly):
        return f
    if isinstance(f, CoeffVector):
        return f.poly()
    return Poly(f)


def expand_alpha(f, n: int) -> list:
    """Coefficients alpha_0..alpha_{2d} of ``(n+1) f^2 + 4 s f f' + 2 s^2 f'^2``."""
    d = _degree_of(f)
    f = _as_poly(f)
    if d < 0:
        return []
    fp = f.derivative()
    g = (f * f) * (n + 1) + (f * fp).shift(1) * 4 + (fp * fp).shift(2) * 2
    return g.padded(2 * d + 1)


def expand_beta(f) -> list:
    """Coefficients beta_0..beta_{2d-1} of ``2 f f' + s f'``.

    A constant ``f`` gives the empty list.
    """
    d = _degree_of(f)
    f = _as_poly(f)
    if d < 1:
        return []
    fp = f.derivative()
    g = (f * fp) * 2 + fp.shift(1)
    return g.padded(2 * d)


def _d6(a: CoeffVector) -> tuple:
    if not isinstance(a, CoeffVector):
        a = CoeffVector(len(a) - 1, tuple(a))
    if a.d != 6:
        raise UsageError(f"written-out formulas are for degree 6, got d={a.d}")
    return a.a


def paper_alpha_d6(a: CoeffVector, n: int) -> list:
    """The thirteen alpha_q for a degree-6 profile, written out term by term."""
    a0, a1, a2, a3, a4, a5, a6 = _d6(a)
    return [
        (n + 1) * a0**2,
        2 * (n + 3) * a0 * a1,
        (n + 7) * a1**2 + 2 * (n + 5) * a0 * a2,
        2 * (n + 11) * a1 * a2 + 2 * (n + 7) * a0 * a3,
        (n + 17) * a2**2 + 2 * (n + 15) * a1 * a3 + 2 * (n + 9) * a0 * a4,
        2 * (n + 23) * a2 * a3 + 2 * (n + 19) * a1 * a4 + 2 * (n + 11) * a0 * a5,
        (n + 31) * a3**2 + 2 * (n + 29) * a2 * a4 + 2 * (n + 23) * a1 * a5 + 2 * (n + 13) * a0 * a6,
        2 * (n + 39) * a3 * a4 + 2 * (n + 35) * a2 * a5 + 2 * (n + 27) * a1 * a6,
        (n + 49) * a4**2 + 2 * (n + 47) * a3 * a5 + 2 * (n + 41) * a2 * a6,
        2 * (n + 59) * a4 * a5 + 2 * (n + 55) * a3 * a6,
        (n + 71) * a5**2 + 2 * (n + 69) * a4 * a6,
        2 * (n + 83) * a5 * a6,
        (n + 97) * a6**2,
    ]


def paper_beta_d6(a: CoeffVector) -> list:
    """The twelve beta_q for a degree-6 profile, written out term by term.

    beta_10 is 22 a_5 a_6: the s^10 coefficient of 2 f f' collects
    2 (6 + 5) a_5 a_6.
    """
    a0, a1, a2, a3, a4, a5, a6 = _d6(a)
    return [
        2 * a0 * a1,
        a1 + 2 * a1**2 + 4 * a0 * a2,
        2 * a2 + 6 * a1 * a2 + 6 * a0 * a3,
        4 * a2**2 + 3 * a3 + 8 * a1 * a3 + 8 * a0 * a4,
        10 * a2 * a3 + 4 * a4 + 10 * a1 * a4 + 10 * a0 * a5,
        6 * a3**2 + 12 * a2 * a4 + 5 * a5 + 12 * a1 * a5 + 12 * a0 * a6,
        14 * a3 * a4 + 14 * a2 * a5 + 6 * a6 + 14 * a1 * a6,
        8 * a4**2 + 16 * a3 * a5 + 16 * a2 * a6,
        18 * a4 * a5 + 18 * a3 * a6,
        10 * a5**2 + 20 * a4 * a6,
        22 * a5 * a6,
        12 * a6**2,
    ]
