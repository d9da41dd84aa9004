import math

import numpy as np
import pytest
from scipy import integrate, special

from yamabe_cert.bubble import (
    BubbleParams,
    W,
    energy_integrals,
    energy_Sc,
    eval_bubble,
    eval_deriv_bubbles,
    orthogonality_residual,
    pde_residual_W,
    radial_vs_direct_n3,
    richardson_ratio,
    sphere_area,
)
from yamabe_cert.errors import DomainError, UsageError


def test_sphere_area_small_cases():
    assert sphere_area(1) == pytest.approx(2 * math.pi)
    assert sphere_area(2) == pytest.approx(4 * math.pi)


def test_bubble_at_origin_equals_W():
    for n, T in ((5, -0.3), (35, -0.1)):
        p = BubbleParams(n, T)
        x = np.zeros(n)
        assert eval_bubble(p, x) == pytest.approx((1 + T * T) ** ((2 - n) / 2), rel=1e-14)
        assert eval_bubble(p, x) == pytest.approx(W(n, T, x), rel=1e-14)


def test_bubble_scaling_identity():
    rng = np.random.default_rng(0)
    n, T = 9, -0.4
    for _ in range(20):
        xi = rng.normal(size=n - 1)
        eps = float(rng.uniform(0.2, 3))
        x = rng.normal(size=n)
        x[-1] = abs(x[-1])
        p = BubbleParams(n, T, xi, eps)
        y = np.concatenate(((x[:-1] - xi) / eps, [x[-1] / eps]))
        ref = eps ** ((2 - n) / 2) * eval_bubble(BubbleParams(n, T), y)
        assert eval_bubble(p, x) == pytest.approx(ref, rel=1e-12)


def test_bubble_decays_with_large_eps():
    x = np.ones(7)
    vals = [eval_bubble(BubbleParams(7, -0.1, eps=e), x) for e in (1e2, 1e4, 1e6)]
    assert vals[0] > vals[1] > vals[2] and vals[2] < 1e-10


def test_bubble_rejects_lower_half_space():
    with pytest.raises(DomainError):
        eval_bubble(BubbleParams(5), np.array([0, 0, 0, 0, -1.0]))


def test_amplitude_factor():
    p = BubbleParams(6, 0.0, c1=6.0)
    assert p.amplitude == pytest.approx((24 / 6) ** 1.0)


def test_derivative_bubbles():
    n, T = 8, -0.2
    p = BubbleParams(n, T)
    x = np.zeros(n)
    x[-1] = 0.3
    u, uh = eval_deriv_bubbles(p, 2, x)
    assert u == 0 and uh == 0
    un, unh = eval_deriv_bubbles(p, n, np.zeros(n))
    assert un == pytest.approx((1 + T * T) ** (-(n + 2) / 2), rel=1e-14)
    assert unh == pytest.approx((1 + T * T) ** (-n / 2), rel=1e-14)
    inside = np.zeros(n)
    inside[0] = 0.5
    outside = np.zeros(n)
    outside[0] = 2.0
    assert eval_deriv_bubbles(p, n, inside)[0] > 0
    assert eval_deriv_bubbles(p, n, outside)[0] < 0
    with pytest.raises(UsageError):
        eval_deriv_bubbles(p, n + 1, x)


def test_boundary_residual_small_and_zero_at_tc_zero():
    n = 35
    for r in (0.0, 0.2, 0.5):
        x = np.zeros(n)
        x[0] = r
        _, b = pde_residual_W(n, -0.1, x, 1e-4)
        assert b < 1e-6
        _, b0 = pde_residual_W(n, 0.0, x, 1e-4)
        assert b0 < 1e-7


def test_boundary_derivative_formula():
    # dW/dx_n at x_n = 0 is (n-2) T_c (1 + T_c^2 + |x'|^2)^(-n/2)
    n, T = 11, -0.3
    x = np.zeros(n)
    x[1] = 0.4
    h = 1e-6
    e = np.zeros(n)
    e[-1] = h
    fd = (W(n, T, x + e) - W(n, T, x - e)) / (2 * h)
    assert fd == pytest.approx((n - 2) * T * (1 + T * T + 0.16) ** (-n / 2), rel=1e-8)


def test_interior_residual_second_order():
    n = 12
    x = np.full(n, 0.1)
    ratio = richardson_ratio(n, -0.2, x, 0.01)
    assert 3.5 <= ratio <= 4.5


def test_tangential_orthogonality_vanishes():
    assert orthogonality_residual(7, -0.3, 1) < 1e-12


def test_normal_orthogonality_small():
    assert orthogonality_residual(9, -0.3, 9) < 1e-6
    assert orthogonality_residual(9, 0.0, 9) < 1e-6


def test_orthogonality_translation_invariance():
    a = orthogonality_residual(7, -0.3, 2)
    b = orthogonality_residual(7, -0.3, 2, xi_shift=1.7)
    assert a < 1e-12 and b < 1e-12 and abs(a - b) < 1e-12


def test_orthogonality_precondition():
    with pytest.raises(UsageError):
        orthogonality_residual(4, -0.1, 4)


def test_critical_integral_against_beta_function_oracle():
    n, T = 9, -0.25
    e = energy_integrals(n, T)
    k = (n - 1) / 2
    inner = sphere_area(n - 2) * 0.5 * special.beta(k, n - k)
    tint, _ = integrate.quad(lambda t: (1 + (t - T) ** 2) ** (k - n), 0, math.inf, epsabs=0, epsrel=1e-13)
    assert e["critical"] == pytest.approx(inner * tint, rel=1e-9)


@pytest.mark.parametrize("n,T", [(5, 0.0), (7, -0.3), (20, -0.1)])
def test_energy_positive_and_forms_agree(n, T):
    s2 = energy_Sc(n, T)
    s3 = energy_Sc(n, T, form="three-term")
    assert s2 > 0
    assert s3 == pytest.approx(s2, rel=1e-8)


def test_energy_continuity_in_tc():
    a = energy_Sc(11, 0.0)
    b = energy_Sc(11, -1e-6)
    assert abs(a - b) / a < 1e-3


def test_energy_tolerance_refinement():
    a = energy_Sc(9, -0.2, tol=1e-6)
    b = energy_Sc(9, -0.2, tol=5e-7)
    assert abs(a - b) / abs(b) < 1e-6


def test_radial_reduction_matches_direct_quadrature_n3():
    red, direct = radial_vs_direct_n3(-0.1, 2.0, 1e-8)
    assert red == pytest.approx(direct, rel=1e-6)
