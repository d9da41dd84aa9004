"""Written-out degree-6 formulas for A, B, C, I''(1) and J(1).

These are term-by-term transcriptions kept deliberately separate from the
generic assembly in :mod:`yamabe_cert.certify`; the test-suite checks that
both routes agree exactly.  ``a`` is ``(a_0, ..., a_6)`` and ``c`` the
thirteen moments ``c_0..c_12`` (rational parts are enough).
"""
from __future__ import annotations

from fractions import Fraction


def _prod(n: int, q: int, shift: int) -> Fraction:
    out = Fraction(1)
    for j in range(q + 1):
        out *= Fraction(n + shift + 2 * j, n - 5 - 2 * j)
    return out


def P(n: int, q: int) -> Fraction:
    return _prod(n, q, -1)


def Q(n: int, q: int) -> Fraction:
    return _prod(n, q, 1)


def R(n: int, q: int) -> Fraction:
    return _prod(n, q, 3)


def _inner_terms(n: int, a) -> list:
    # a_0-free part of alpha_q, grouped as in the written-out display
    _, a1, a2, a3, a4, a5, a6 = a
    return [
        None,
        None,
        (n + 7) * a1**2,
        (n + 11) * a1 * a2,
        (n + 17) * a2**2 + 2 * (n + 15) * a1 * a3,
        (n + 23) * a2 * a3 + (n + 19) * a1 * a4,
        (n + 31) * a3**2 + 2 * (n + 29) * a2 * a4 + 2 * (n + 23) * a1 * a5,
        (n + 39) * a3 * a4 + (n + 35) * a2 * a5 + (n + 27) * a1 * a6,
        (n + 49) * a4**2 + 2 * (n + 47) * a3 * a5 + 2 * (n + 41) * a2 * a6,
        (n + 59) * a4 * a5 + (n + 55) * a3 * a6,
        (n + 71) * a5**2 + 2 * (n + 69) * a4 * a6,
        (n + 83) * a5 * a6,
        (n + 97) * a6**2,
    ]


_C_FACTORS = [None, None, 4, 10, 6, 14, 8, 18, 10, 22, 12, 26, 14]
_IPP_FACTORS = [None, None, 12, 40, 30, 84, 56, 144, 90, 220, 132, 312, 182]


def literal_abc(n: int, a, c) -> tuple:
    """(A_n, B_n, C_n) of the a_0-quadratic I'(1) = A a_0^2 + B a_0 + C."""
    A = Fraction(2 * (n - 1) * (n + 1), n - 5) * c[0]
    B = 2 * (n - 1) * sum((l + 2) * a[l] * c[l] * Q(n, l) for l in range(1, 7))
    inner = _inner_terms(n, a)
    C = sum(_C_FACTORS[q] * inner[q] * c[q] * P(n, q) for q in range(2, 13))
    return A, B, C


def literal_i2(n: int, a, c):
    """I''(1) for a degree-6 profile, term by term."""
    a0 = a[0]
    out = Fraction(2 * (n - 1) * (n + 1), n - 5) * a0**2 * c[0]
    out += 2 * (n - 1) * a0 * sum((l + 1) * (l + 2) * a[l] * c[l] * Q(n, l) for l in range(1, 7))
    inner = _inner_terms(n, a)
    out += sum(_IPP_FACTORS[q] * inner[q] * c[q] * P(n, q) for q in range(2, 13))
    return out


def literal_j1(n: int, a, c):
    """J(1) for a degree-6 profile, term by term.

    The c_6 group carries 14 a_1 a_6 (the s^6 coefficient of 2 f f').
    """
    a0, a1, a2, a3, a4, a5, a6 = a
    groups = [
        2 * a1 * a0,
        a1 + 2 * a1**2 + 4 * a2 * a0,
        2 * a2 + 6 * a1 * a2 + 6 * a3 * a0,
        4 * a2**2 + 3 * a3 + 8 * a1 * a3 + 8 * a4 * a0,
        10 * a2 * a3 + 4 * a4 + 10 * a1 * a4 + 10 * a5 * a0,
        6 * a3**2 + 12 * a2 * a4 + 5 * a5 + 12 * a1 * a5 + 12 * a6 * a0,
        14 * a3 * a4 + 14 * a2 * a5 + 6 * a6 + 14 * a1 * a6,
        8 * a4**2 + 16 * a3 * a5 + 16 * a2 * a6,
        18 * a4 * a5 + 18 * a3 * a6,
        10 * a5**2 + 20 * a4 * a6,
        22 * a5 * a6,
        12 * a6**2,
    ]
    return sum(g * c[q] * R(n, q) for q, g in enumerate(groups))
