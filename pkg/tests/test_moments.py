import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from yamabe_cert.errors import DivergentMomentError, UnsupportedDomainError
from yamabe_cert.exact import RatInterval, enclose_pi
from yamabe_cert.moments import (
    KAPPA_ONE,
    KAPPA_PI,
    moment_float,
    moment_general,
    moment_quadrature,
    moment_slope,
    moment_zero,
)


def wallis(k: int) -> float:
    """int_0^inf (1+t^2)^-k dt for integer k >= 1."""
    return math.pi / 2 * math.prod(range(2 * k - 3, 0, -2)) / math.prod(range(2 * k - 2, 0, -2))


def test_c12_n35_is_three_pi_over_sixteen():
    m = moment_zero(35, 12)
    assert m.kappa == KAPPA_PI and m.r == Fraction(3, 16)
    assert abs(float(m) - wallis(3)) < 1e-15


def test_c12_n36_is_eight_fifteenths():
    # (1+t^2)^(-7/2): Gamma(3) sqrt(pi) / (2 Gamma(7/2)) = 8/15
    m = moment_zero(36, 12)
    assert m.kappa == KAPPA_ONE and m.r == Fraction(8, 15)
    ref = float(mpmath.sqrt(mpmath.pi) * mpmath.gamma(3) / (2 * mpmath.gamma(mpmath.mpf(7) / 2)))
    assert abs(float(m) - ref) < 1e-15


def test_c0_n7_is_half_pi():
    m = moment_zero(7, 0)
    assert m.kappa == KAPPA_PI and m.r == Fraction(1, 2)


@pytest.mark.parametrize("n", [7, 8, 20, 35, 36, 61, 62, 100])
def test_kappa_depends_only_on_parity(n):
    tags = {moment_zero(n, q).kappa for q in range(0, (n - 7) // 2 + 1)}
    assert tags == {KAPPA_PI if n % 2 else KAPPA_ONE}


@pytest.mark.parametrize("n", [9, 35, 36, 62])
def test_closed_form_matches_gamma_ratio(n):
    for q in range(0, (n - 7) // 2 + 1):
        ref = mpmath.sqrt(mpmath.pi) * mpmath.gamma(mpmath.mpf(n - 6 - 2 * q) / 2) / (
            2 * mpmath.gamma(mpmath.mpf(n - 5 - 2 * q) / 2)
        )
        assert abs(float(moment_zero(n, q)) / float(ref) - 1) < 1e-13


@pytest.mark.parametrize("n", [9, 35, 36, 62])
def test_recurrence_is_exact(n):
    for q in range(0, (n - 9) // 2 + 1):
        a, b = moment_zero(n, q), moment_zero(n, q + 1)
        assert b.r * (n - 8 - 2 * q) == a.r * (n - 7 - 2 * q)


def test_divergent_moments_rejected():
    with pytest.raises(DivergentMomentError):
        moment_zero(35, 15)
    with pytest.raises(DivergentMomentError):
        moment_quadrature(62, 28, 0.0)
    with pytest.raises(DivergentMomentError):
        moment_general(10, 2, 0)


def test_general_at_zero_contains_exact_value():
    for n, q in ((35, 0), (35, 12), (36, 12), (62, 7)):
        m = moment_zero(n, q)
        enc = moment_general(n, q, RatInterval.point(0), Fraction(1, 10**30)).value
        exact = m.enclose(Fraction(1, 10**40))
        assert enc.lo <= exact.lo and exact.hi <= enc.hi
        assert enc.width() <= Fraction(1, 10**29)


def test_general_arctan_oracle():
    enc = moment_general(7, 0, RatInterval.point(-1), Fraction(1, 10**30)).value
    pi = enclose_pi(Fraction(1, 10**40))
    assert enc.lo <= pi.lo / 4 and pi.hi / 4 <= enc.hi


def test_general_monotone_in_tc():
    wide = moment_general(35, 0, RatInterval(Fraction(-1, 10), 0)).value
    at0 = moment_general(35, 0, RatInterval.point(0)).value
    assert wide.hi <= at0.hi
    left = moment_general(35, 3, RatInterval(-2, -1)).value
    right = moment_general(35, 3, RatInterval(Fraction(-1, 2), 0)).value
    assert left.hi < right.lo


def test_general_rejects_positive_tc():
    with pytest.raises(UnsupportedDomainError):
        moment_general(35, 0, RatInterval(0, Fraction(1, 10)))


@settings(max_examples=40, deadline=None)
@given(
    st.integers(9, 70),
    st.data(),
    st.fractions(min_value=-20, max_value=0, max_denominator=1000),
)
def test_general_contains_high_precision_quadrature(n, data, t):
    q = data.draw(st.integers(0, (n - 7) // 2))
    enc = moment_general(n, q, RatInterval.point(t), Fraction(1, 10**25)).value
    mpmath.mp.dps = 40
    tt = mpmath.mpf(t.numerator) / t.denominator
    p = mpmath.mpf(5 + 2 * q - n) / 2
    ref = mpmath.quad(lambda u: (1 + u * u) ** p, [-tt, -tt + 1, mpmath.inf])
    assert mpmath.mpf(enc.lo.numerator) / enc.lo.denominator - mpmath.mpf(10) ** -30 <= ref
    assert ref <= mpmath.mpf(enc.hi.numerator) / enc.hi.denominator + mpmath.mpf(10) ** -30
    assert enc.lo > 0


def test_refinement_nests():
    coarse = moment_general(35, 2, RatInterval(Fraction(-1, 2), 0)).value
    fine = moment_general(35, 2, RatInterval(Fraction(-1, 4), 0)).value
    assert coarse.lo <= fine.lo and fine.hi <= coarse.hi


def test_slope_brackets_difference_quotient():
    n, q = 35, 4
    a, b = Fraction(-3, 10), Fraction(-1, 10)
    slope = moment_slope(n, q, RatInterval(a, b))
    lo = moment_general(n, q, a).value
    hi = moment_general(n, q, b).value
    # mean value theorem: (c(b) - c(a)) / (b - a) lies in the slope range
    assert slope.lo * (b - a) <= hi.hi - lo.lo
    assert (hi.lo - lo.hi) <= slope.hi * (b - a)
    assert slope.lo > 0


@pytest.mark.parametrize("n", [35, 36, 62])
def test_float_recurrence_agrees(n):
    for q in range(0, (n - 7) // 2 + 1):
        assert abs(moment_float(n, q, 0.0) / float(moment_zero(n, q)) - 1) < 1e-12
        assert abs(moment_float(n, q, -0.5) / moment_quadrature(n, q, -0.5, 1e-11) - 1) < 1e-9


def test_quadrature_against_closed_form_at_general_tc():
    for n, q, t in ((35, 0, -0.5), (36, 5, -2.0), (62, 20, -0.25)):
        enc = moment_general(n, q, RatInterval.point(Fraction(t)), Fraction(1, 10**20)).value
        mid = float(enc.mid())
        assert abs(moment_quadrature(n, q, t, 1e-10) - mid) / mid < 1e-9


def test_quadrature_tolerance_refinement():
    a = moment_quadrature(11, 1, -0.3, 1e-6)
    b = moment_quadrature(11, 1, -0.3, 5e-7)
    assert abs(a - b) / b < 1e-6
