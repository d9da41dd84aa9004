from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from yamabe_cert.errors import DomainError
from yamabe_cert.exact import (
    QuadExt,
    RatInterval,
    Sign,
    enclose_arctan,
    enclose_pi,
    enclose_sqrt,
    quadext_sign,
    rational_str,
    to_rational,
)

mpmath.mp.prec = 400

rationals = st.fractions(max_denominator=10**6).filter(lambda x: abs(x) < 10**6)
small_pos = st.fractions(min_value=0, max_value=1000, max_denominator=10**4)


def mp_fraction(x: Fraction):
    return mpmath.mpf(x.numerator) / x.denominator


# -- rationals ---------------------------------------------------------------


def test_to_rational_parses_strings():
    assert to_rational("-1/10") == Fraction(-1, 10)
    assert to_rational("0.184") == Fraction(23, 125)
    assert to_rational(7) == 7


def test_to_rational_refuses_floats():
    with pytest.raises(TypeError):
        to_rational(0.1)


def test_rational_str_omits_unit_denominator():
    assert rational_str(Fraction(6, 3)) == "2"
    assert rational_str(Fraction(-3, 6)) == "-1/2"


@given(rationals, rationals, rationals)
def test_rational_field_identities(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    s = a + b
    assert s.denominator > 0
    from math import gcd

    assert gcd(abs(s.numerator), s.denominator) == 1


# -- quadratic field -----------------------------------------------------------


def test_sign_examples():
    assert quadext_sign(QuadExt(-3, 1, 8)) == Sign.NEGATIVE
    assert quadext_sign(QuadExt(0, 0, 5)) == Sign.ZERO
    assert quadext_sign(QuadExt(3, -1, 8)) == Sign.POSITIVE
    assert quadext_sign(QuadExt(-3, 1, 9)) == Sign.ZERO


def test_negative_radicand_is_domain_error():
    with pytest.raises((DomainError, ValueError)):
        quadext_sign(QuadExt(1, 1, -2))


def test_root_minus_its_rational_part_has_sign_of_q():
    # a0 = (P + sqrt(R)) / den; 2A a0 + B = sqrt(D) > 0 and a0 - P/den is positive
    x = QuadExt(Fraction(388694358052, 21443906250), Fraction(1, 21443906250), 31382012570285343694)
    shifted = x - Fraction(388694358052, 21443906250)
    assert quadext_sign(shifted) == Sign.POSITIVE
    assert quadext_sign(shifted - QuadExt(0, Fraction(1, 21443906250), 31382012570285343694)) == Sign.ZERO


@settings(max_examples=2000, deadline=None)
@given(rationals, rationals, small_pos)
def test_sign_agrees_with_high_precision_float(p, q, D):
    x = QuadExt(p, q, D)
    v = mp_fraction(p) + mp_fraction(q) * mpmath.sqrt(mp_fraction(D))
    if abs(v) < mpmath.mpf(10) ** -30:
        return
    assert int(quadext_sign(x)) == (1 if v > 0 else -1)


@given(rationals, rationals, small_pos, rationals, rationals)
def test_quadext_ring_operations_match_floats(p1, q1, D, p2, q2):
    x, y = QuadExt(p1, q1, D), QuadExt(p2, q2, D)
    s = mpmath.sqrt(mp_fraction(D))
    xv = mp_fraction(p1) + mp_fraction(q1) * s
    yv = mp_fraction(p2) + mp_fraction(q2) * s
    for got, want in ((x + y, xv + yv), (x - y, xv - yv), (x * y, xv * yv)):
        gv = mp_fraction(got.p) + mp_fraction(got.q) * s
        assert abs(gv - want) <= mpmath.mpf(10) ** -80 * (1 + abs(want))
    if not y.is_zero():
        got = x / y
        gv = mp_fraction(got.p) + mp_fraction(got.q) * s
        assert abs(gv - xv / yv) <= mpmath.mpf(10) ** -60 * (1 + abs(xv / yv))


def test_collapse_when_q_or_d_vanish():
    assert QuadExt(Fraction(5, 2), 0, 7).collapse() == Fraction(5, 2)
    assert QuadExt(Fraction(5, 2), 3, 0).collapse() == Fraction(5, 2)
    assert quadext_sign(QuadExt(Fraction(-1, 3), 0, 11)) == Sign.NEGATIVE


def test_same_value_across_representations():
    # 1 + sqrt(8) = 1 + 2 sqrt(2)
    assert QuadExt(1, 1, 8).same_value(QuadExt(1, 2, 2))
    assert not QuadExt(1, 1, 8).same_value(QuadExt(1, 1, 2))


def test_quadext_serialization_round_trip():
    x = QuadExt(Fraction(-7, 3), Fraction(2, 5), Fraction(11, 2))
    d = x.to_dict()
    assert d == {"p": "-7/3", "q": "2/5", "D": "11/2"}
    assert QuadExt.from_dict(d) == x


# -- intervals -----------------------------------------------------------------


def test_pi_enclosure_coarse_and_fine():
    coarse = enclose_pi(Fraction(1))
    assert coarse.width() <= 1 and Fraction(314159, 100000) in coarse
    fine = enclose_pi(Fraction(1, 10**20))
    assert fine.width() <= Fraction(1, 10**20)
    assert mp_fraction(fine.lo) <= mpmath.pi <= mp_fraction(fine.hi)


def test_pi_enclosures_are_nested():
    prev = enclose_pi(Fraction(1))
    for k in range(1, 40, 3):
        cur = enclose_pi(Fraction(1, 10**k))
        assert prev.lo <= cur.lo and cur.hi <= prev.hi
        prev = cur


def test_arctan_examples():
    one = enclose_arctan(RatInterval.point(1), Fraction(1, 10**10))
    assert one.width() <= Fraction(1, 10**10)
    assert mp_fraction(one.lo) <= mpmath.pi / 4 <= mp_fraction(one.hi)
    zero = enclose_arctan(RatInterval.point(0), Fraction(1, 10**10))
    assert zero.lo <= 0 <= zero.hi and zero.width() <= Fraction(1, 10**10)
    sym = enclose_arctan(RatInterval(-1, 1), Fraction(1, 10**10))
    assert mp_fraction(sym.lo) <= -mpmath.pi / 4 and mpmath.pi / 4 <= mp_fraction(sym.hi)


@settings(max_examples=200, deadline=None)
@given(st.fractions(min_value=-10**4, max_value=10**4, max_denominator=10**5))
def test_arctan_contains_reference(x):
    enc = enclose_arctan(RatInterval.point(x), Fraction(1, 10**25))
    ref = mpmath.atan(mp_fraction(x))
    assert mp_fraction(enc.lo) <= ref <= mp_fraction(enc.hi)
    assert enc.width() <= Fraction(1, 10**25)


def test_sqrt_examples():
    four = enclose_sqrt(RatInterval.point(4), Fraction(1, 10**10))
    assert 2 in four and four.width() <= Fraction(1, 10**10)
    two = enclose_sqrt(RatInterval.point(2), Fraction(1, 10**10))
    assert 2 in two.sqr()
    assert enclose_sqrt(RatInterval.point(0), Fraction(1, 10**10)) == RatInterval(0, 0)
    with pytest.raises(DomainError):
        enclose_sqrt(RatInterval(-1, 1), Fraction(1, 10))


@settings(max_examples=200, deadline=None)
@given(small_pos, small_pos)
def test_sqrt_contains_reference(a, b):
    lo, hi = min(a, b), max(a, b)
    enc = enclose_sqrt(RatInterval(lo, hi), Fraction(1, 10**20))
    assert mp_fraction(enc.lo) <= mpmath.sqrt(mp_fraction(lo))
    assert mpmath.sqrt(mp_fraction(hi)) <= mp_fraction(enc.hi)


intervals = st.tuples(rationals, rationals).map(lambda t: RatInterval(min(t), max(t)))


@settings(max_examples=300, deadline=None)
@given(intervals, intervals, st.floats(0, 1), st.floats(0, 1))
def test_interval_containment(x, y, s, t):
    a = x.lo + (x.hi - x.lo) * Fraction(s)
    b = y.lo + (y.hi - y.lo) * Fraction(t)
    assert a + b in x + y
    assert a - b in x - y
    assert a * b in x * y
    assert a * a in x.sqr()
    if not (y.lo <= 0 <= y.hi):
        assert a / b in x / y


@given(intervals, intervals)
def test_interval_refinement_is_monotone(x, y):
    inner_x = RatInterval(x.lo + x.width() / 4, x.hi - x.width() / 4)
    for op in (lambda u, v: u + v, lambda u, v: u * v, lambda u, v: u - v):
        outer, inner = op(x, y), op(inner_x, y)
        assert outer.lo <= inner.lo and inner.hi <= outer.hi


def test_round_outward_contains_original():
    x = RatInterval(Fraction(1, 3), Fraction(2, 3))
    r = x.round_outward(10)
    assert r.lo <= x.lo and x.hi <= r.hi
    assert r.lo.denominator & (r.lo.denominator - 1) == 0


def test_interval_sign():
    assert RatInterval(1, 2).sign() == Sign.POSITIVE
    assert RatInterval(-2, -1).sign() == Sign.NEGATIVE
    assert RatInterval(0, 0).sign() == Sign.ZERO
    assert RatInterval(-1, 1).sign() is None


def test_interval_serialization():
    x = RatInterval(Fraction(-1, 3), Fraction(5, 2))
    assert RatInterval.from_dict(x.to_dict()) == x


def test_sign_agrees_with_200_bit_evaluation_on_many_inputs():
    import random

    rng = random.Random(2024)
    old = mpmath.mp.prec
    mpmath.mp.prec = 200
    try:
        checked = 0
        for _ in range(100_000):
            p = Fraction(rng.randint(-10**9, 10**9), rng.randint(1, 10**6))
            q = Fraction(rng.randint(-10**9, 10**9), rng.randint(1, 10**6))
            D = Fraction(rng.randint(0, 10**12), rng.randint(1, 10**6))
            v = mp_fraction(p) + mp_fraction(q) * mpmath.sqrt(mp_fraction(D))
            if abs(v) < mpmath.mpf(10) ** -30:
                continue
            assert int(quadext_sign(QuadExt(p, q, D))) == (1 if v > 0 else -1)
            checked += 1
        assert checked > 99_000
    finally:
        mpmath.mp.prec = old
