"""Floating-point diagnostics for the half-space bubble and its derivatives.

Nothing here feeds a certificate.  Integrals over the half-space
R^n_+ = {x_n >= 0} are reduced by rotational symmetry in x':

* radial integrands F(|x'|, x_n): omega_{n-2} * int int F(r, t) r^(n-2) dr dt,
  computed in polar coordinates (r, t) = (s cos th, s sin th);
* integrands odd in one tangential coordinate x_i: a folded 3-D reduction
  in (x_i, rho, x_n) with rho = |x' without x_i| and weight omega_{n-3} rho^(n-3).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy import integrate

from .errors import DomainError, UsageError


def sphere_area(k: int) -> float:
    """Area of the unit k-sphere in R^(k+1): 2 pi^((k+1)/2) / Gamma((k+1)/2)."""
    return 2.0 * math.exp(0.5 * (k + 1) * math.log(math.pi) - math.lgamma(0.5 * (k + 1)))


@dataclass
class BubbleParams:
    n: int
    Tc: float = 0.0
    xi: np.ndarray | None = None
    eps: float = 1.0
    c1: float | None = None

    def __post_init__(self) -> None:
        if self.n < 3:
            raise UsageError("bubbles need n >= 3")
        if self.Tc > 0:
            raise DomainError("T_c must be <= 0")
        if self.eps <= 0:
            raise DomainError("eps must be positive")
        if self.c1 is None:
            self.c1 = float(self.n * (self.n - 2))
        if self.c1 <= 0:
            raise DomainError("c1 must be positive")
        xi = np.zeros(self.n - 1) if self.xi is None else np.asarray(self.xi, dtype=float)
        if xi.shape != (self.n - 1,):
            raise UsageError(f"xi must have n-1 = {self.n - 1} components")
        self.xi = xi

    @property
    def amplitude(self) -> float:
        return (self.n * (self.n - 2) / self.c1) ** ((self.n - 2) / 4)


def _split(p: BubbleParams, x) -> tuple:
    x = np.asarray(x, dtype=float)
    if x.shape != (p.n,):
        raise UsageError(f"point must have n = {p.n} components")
    if x[-1] < 0:
        raise DomainError("point must lie in the closed half-space x_n >= 0")
    dx = x[:-1] - p.xi
    return dx, float(x[-1])


def _denominator(p: BubbleParams, dx, xn: float) -> float:
    return p.eps**2 + (xn - p.Tc * p.eps) ** 2 + float(dx @ dx)


def eval_bubble(p: BubbleParams, x) -> float:
    """u_(xi,eps)(x), scaled by (n(n-2)/c1)^((n-2)/4) (which is 1 by default)."""
    dx, xn = _split(p, x)
    base = p.eps / _denominator(p, dx, xn)
    return p.amplitude * base ** ((p.n - 2) / 2)


def eval_deriv_bubbles(p: BubbleParams, a: int, x) -> tuple[float, float]:
    """(u_(xi,eps,a)(x), uhat_(xi,eps,a)(x)) for 1 <= a <= n."""
    if not 1 <= a <= p.n:
        raise UsageError(f"index a must be in 1..{p.n}, got {a}")
    dx, xn = _split(p, x)
    den = _denominator(p, dx, xn)
    base = p.eps / den
    if a < p.n:
        factor = 2 * p.eps * dx[a - 1] / den
    else:
        factor = ((1 + p.Tc**2) * p.eps**2 - xn**2 - float(dx @ dx)) / den
    return base ** ((p.n + 2) / 2) * factor, base ** (p.n / 2) * factor


def W(n: int, Tc: float, x, c1: float | None = None) -> float:
    """The unit bubble W(x) = (n(n-2)/c1)^((n-2)/4) (1 + |x - T_c e_n|^2)^((2-n)/2)."""
    x = np.asarray(x, dtype=float)
    c1 = n * (n - 2) if c1 is None else c1
    y = x.copy()
    y[-1] -= Tc
    return (n * (n - 2) / c1) ** ((n - 2) / 4) * (1.0 + float(y @ y)) ** ((2 - n) / 2)


def pde_residual_W(n: int, Tc: float, x, h: float) -> tuple[float, float]:
    """Finite-difference residuals of the equations satisfied by W (c1 = n(n-2)).

    interior: |Laplacian W + n(n-2) W^((n+2)/(n-2))| at x, central differences;
    boundary: |dW/dx_n - (n-2) T_c W^(n/(n-2))| at (x', 0), second-order
    one-sided differences into the half-space.
    """
    if h <= 0:
        raise ValueError("h must be positive")
    x = np.asarray(x, dtype=float)
    if x.shape != (n,):
        raise UsageError(f"point must have n = {n} components")
    w0 = W(n, Tc, x)
    lap = 0.0
    for i in range(n):
        e = np.zeros(n)
        e[i] = h
        lap += (W(n, Tc, x + e) - 2 * w0 + W(n, Tc, x - e)) / h**2
    interior = abs(lap + n * (n - 2) * w0 ** ((n + 2) / (n - 2)))

    xb = x.copy()
    xb[-1] = 0.0
    en = np.zeros(n)
    en[-1] = h
    dn = (-3 * W(n, Tc, xb) + 4 * W(n, Tc, xb + en) - W(n, Tc, xb + 2 * en)) / (2 * h)
    boundary = abs(dn - (n - 2) * Tc * W(n, Tc, xb) ** (n / (n - 2)))
    return interior, boundary


def richardson_ratio(n: int, Tc: float, x, h: float) -> float:
    """interior residual at 2h over that at h; about 4 for a second-order scheme."""
    return pde_residual_W(n, Tc, x, 2 * h)[0] / pde_residual_W(n, Tc, x, h)[0]


# ---------------------------------------------------------------------------
# Reduced quadrature
# ---------------------------------------------------------------------------


def _radial_edges(breaks: Sequence[float], S: float) -> list:
    edges = [0.0, 0.5]
    while edges[-1] < S:
        edges.append(min(2 * edges[-1], S))
    edges.extend(b for b in breaks if 0 < b < S)
    return sorted(set(edges))


def _truncation_radius(decay: float, head_scale: float, tol: float, dim: int) -> float:
    # |integrand| <= s^-decay for s >= 1; the tail over |x| > S in R^dim_+
    # is then <= omega_{dim-1}/2 * S^(dim-decay) / (decay-dim); the factor 10
    # is a safety margin
    if decay <= dim:
        raise ValueError("integrand does not decay fast enough")
    S = 8.0
    area = sphere_area(dim - 1) / 2
    while area * S ** (dim - decay) / (decay - dim) > tol / 10 * head_scale:
        S *= 2
        if S > 1e8:
            break
    return S


def halfspace_radial(
    F: Callable[[float, float], float],
    n: int,
    decay: float,
    tol: float = 1e-10,
    breaks: Sequence[float] = (),
    absolute: bool = False,
    scale: float = 0.0,
) -> float:
    """int_{R^n_+} F(|x'|, x_n) dx via polar coordinates in the (r, x_n) quarter plane.

    ``decay`` bounds |F| <= |x|^-decay for large |x|; ``breaks`` are radii
    where F has a kink or sign change.  ``scale`` (typically the integral
    of |F|) sets an absolute tolerance for integrals that cancel to ~0.
    """
    g = (lambda r, t: abs(F(r, t))) if absolute else F
    omega = sphere_area(n - 2)
    epsrel = max(tol / 10, 1e-13)
    epsabs = epsrel * scale / omega

    def radial(S, th):
        c, s_ = math.cos(th), math.sin(th)
        total = 0.0
        for a, b in zip(edges, edges[1:]):
            val, _ = integrate.quad(
                lambda s: g(s * c, s * s_) * (s * c) ** (n - 2) * s, a, b, epsabs=epsabs, epsrel=epsrel, limit=200
            )
            total += val
        return total

    S = _truncation_radius(decay, 1.0, tol, n)
    edges = _radial_edges(breaks, S)
    val, _ = integrate.quad(lambda th: radial(S, th), 0.0, math.pi / 2, epsabs=epsabs, epsrel=epsrel, limit=200)
    return omega * val


def boundary_radial(
    G: Callable[[float], float],
    n: int,
    decay: float,
    tol: float = 1e-10,
    breaks: Sequence[float] = (),
    absolute: bool = False,
    scale: float = 0.0,
) -> float:
    """int_{R^(n-1)} G(|x'|) dx' = omega_{n-2} int_0^inf G(r) r^(n-2) dr."""
    g = (lambda r: abs(G(r))) if absolute else G
    epsrel = max(tol / 10, 1e-13)
    epsabs = epsrel * scale / sphere_area(n - 2)
    S = _truncation_radius(decay, 1.0, tol, n - 1)
    total = 0.0
    edges = _radial_edges(breaks, S)
    for a, b in zip(edges, edges[1:]):
        val, _ = integrate.quad(lambda r: g(r) * r ** (n - 2), a, b, epsabs=epsabs, epsrel=epsrel, limit=200)
        total += val
    return sphere_area(n - 2) * total


def _folded_box_integral(F, n: int, L: float, tol: float, fold: bool, absolute: bool, scale: float = 0.0) -> float:
    """omega_{n-3} int_0^L int_0^L int_0^L F(u, rho, t) rho^(n-3) dt drho du.

    With ``fold`` the u-integrand is F(u) + F(-u), which integrates the full
    range -L <= u <= L. ``scale`` (an absolute integral) sets an absolute
    tolerance for signed integrands that cancel.
    """
    omega = sphere_area(n - 3)
    epsrel = max(tol / 10, 1e-8)
    epsabs = epsrel * scale / omega

    def h(u, rho, t):
        if fold:
            v = F(u, rho, t) + F(-u, rho, t)
        else:
            v = F(u, rho, t)
        return abs(v) if absolute else v

    val, _ = integrate.tplquad(
        lambda t, rho, u: h(u, rho, t) * rho ** (n - 3),
        0.0, L, 0.0, L, 0.0, L,
        epsabs=epsabs, epsrel=epsrel,
    )
    return omega * val


def _folded_plane_integral(G, n: int, L: float, tol: float, fold: bool, absolute: bool, scale: float = 0.0) -> float:
    omega = sphere_area(n - 3)
    epsrel = max(tol / 10, 1e-8)
    epsabs = epsrel * scale / omega

    def h(u, rho):
        v = G(u, rho) + G(-u, rho) if fold else G(u, rho)
        return abs(v) if absolute else v

    val, _ = integrate.dblquad(lambda rho, u: h(u, rho) * rho ** (n - 3), 0.0, L, 0.0, L, epsabs=epsabs, epsrel=epsrel)
    return omega * val


# ---------------------------------------------------------------------------
# Orthogonality and energy
# ---------------------------------------------------------------------------


@dataclass
class Check:
    name: str
    parameters: dict
    residual: float
    tolerance: float
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return bool(self.residual < self.tolerance)

    def to_dict(self) -> dict:
        return {
            "check": self.name,
            "parameters": self.parameters,
            "residual": repr(float(self.residual)),
            "tolerance": repr(float(self.tolerance)),
            "pass": self.passed,
            "details": {k: repr(float(v)) for k, v in self.details.items()},
        }


def orthogonality_terms(n: int, Tc: float, a: int, tol: float = 1e-10, xi_shift: float = 0.0) -> dict:
    """The two integrals 2n int u u_a and T_c int_bdy u uhat_a (bubble at xi = 0, eps = 1),
    together with the integrals of their absolute values.

    ``xi_shift`` moves the bubble centre to xi_shift * e_1 and the integration
    variables with it; translation invariance predicts an unchanged result.
    """
    if n < 5:
        raise UsageError("the orthogonality integrals need n >= 5 for absolute convergence")
    if not 1 <= a <= n:
        raise UsageError(f"index a must be in 1..{n}, got {a}")
    T = float(Tc)
    q = 1.0 + T * T
    if a == n:
        # u * u_n = rho^-n ((1+T^2) - |x|^2) / rho, rho = 1 + r^2 + (t-T)^2
        def F(r, t):
            rho = 1.0 + r * r + (t - T) ** 2
            return 2 * n * rho ** (-n - 1) * (q - t * t - r * r)

        def G(r):
            rho = q + r * r
            return T * rho ** (-(n - 1) - 1) * (q - r * r)

        kink = [math.sqrt(q)]
        interior_abs = halfspace_radial(F, n, 2 * n, tol, kink, absolute=True)
        interior = halfspace_radial(F, n, 2 * n, tol, kink, scale=interior_abs)
        bdy_abs = boundary_radial(G, n, 2 * n - 2, tol, kink, absolute=True) if T != 0 else 0.0
        bdy = boundary_radial(G, n, 2 * n - 2, tol, kink, scale=bdy_abs) if T != 0 else 0.0
    else:
        s0 = float(xi_shift)
        L = 10.0

        # coordinates relative to the centre; the shift is applied and removed
        # so that rounding (not algebra) is all that could differ
        def F(u, rho, t):
            x_i = (u + s0) - s0
            den = 1.0 + x_i * x_i + rho * rho + (t - T) ** 2
            return 2 * n * den ** (-n) * 2 * x_i / den

        def G(u, rho):
            x_i = (u + s0) - s0
            den = q + x_i * x_i + rho * rho
            return T * den ** (-(n - 1)) * 2 * x_i / den

        interior_abs = 2 * _folded_box_integral(F, n, L, 1e-6, fold=False, absolute=True)
        interior = _folded_box_integral(F, n, L, tol, fold=True, absolute=False, scale=interior_abs)
        bdy_abs = 2 * _folded_plane_integral(G, n, L, 1e-6, fold=False, absolute=True) if T != 0 else 0.0
        bdy = _folded_plane_integral(G, n, L, tol, fold=True, absolute=False, scale=bdy_abs) if T != 0 else 0.0
    return {"interior": interior, "boundary": bdy, "interior_abs": interior_abs, "boundary_abs": bdy_abs}


def orthogonality_residual(n: int, Tc: float, a: int, tol: float = 1e-10, xi_shift: float = 0.0) -> float:
    """|2n int u u_a - T_c int_bdy u uhat_a| over the sum of the absolute integrals."""
    t = orthogonality_terms(n, Tc, a, tol, xi_shift)
    scale = t["interior_abs"] + t["boundary_abs"]
    return abs(t["interior"] - t["boundary"]) / scale


def energy_integrals(n: int, Tc: float, tol: float = 1e-10) -> dict:
    """int |grad W|^2, int W^(2n/(n-2)) and int_bdy W^(2(n-1)/(n-2)) for c1 = n(n-2)."""
    if n < 3:
        raise UsageError("need n >= 3")
    T = float(Tc)

    def grad2(r, t):
        rho = 1.0 + r * r + (t - T) ** 2
        return math.exp(2 * math.log(n - 2) - n * math.log(rho)) * (r * r + (t - T) ** 2)

    def crit(r, t):
        return math.exp(-n * math.log1p(r * r + (t - T) ** 2))

    def bdy(r):
        return math.exp(-(n - 1) * math.log1p(T * T + r * r))

    return {
        "grad": halfspace_radial(grad2, n, 2 * n - 2, tol),
        "critical": halfspace_radial(crit, n, 2 * n, tol),
        "boundary": boundary_radial(bdy, n, 2 * n - 2, tol),
    }


def energy_Sc(n: int, Tc: float, tol: float = 1e-10, form: str = "two-term") -> float:
    """S_c with c1 = n(n-2) and c = -(n-2) T_c.

    ``two-term``:   4/(n-2) int |grad W|^2 + 4 c1/n int W^(2n/(n-2))
    ``three-term``: 4(n-1)/(n-2) int |grad W|^2 - 4(n-1)/n c1 int W^(2n/(n-2))
                    - 4c int_bdy W^(2(n-1)/(n-2))

    The forms agree because testing -Lap W = c1 W^((n+2)/(n-2)) against W
    gives int |grad W|^2 - c int_bdy W^(2(n-1)/(n-2)) = c1 int W^(2n/(n-2)).
    """
    if n < 5:
        # the three integrals converge for n >= 4 (gradient) but the
        # truncation bound used here needs a little more room
        raise UsageError("energy quadrature implemented for n >= 5")
    e = energy_integrals(n, Tc, tol)
    c1 = n * (n - 2)
    c = -(n - 2) * float(Tc)
    if form == "two-term":
        return 4 / (n - 2) * e["grad"] + 4 * c1 / n * e["critical"]
    if form == "three-term":
        return 4 * (n - 1) / (n - 2) * e["grad"] - 4 * (n - 1) / n * c1 * e["critical"] - 4 * c * e["boundary"]
    raise UsageError(f"unknown form {form!r}")


def radial_vs_direct_n3(Tc: float = -0.1, L: float = 2.0, tol: float = 1e-8) -> tuple[float, float]:
    """int of u_(0,1)^2 over the cylinder {|x'| <= L, 0 <= x_3 <= L} in R^3_+,
    once reduced (2 pi int int F r dr dt) and once by direct 3-D quadrature."""
    T = float(Tc)

    def u2(r2, t):
        return 1.0 / (1.0 + r2 + (t - T) ** 2)

    red, _ = integrate.dblquad(lambda t, r: u2(r * r, t) * r, 0.0, L, 0.0, L, epsabs=0.0, epsrel=tol)
    red *= 2 * math.pi
    direct, _ = integrate.tplquad(
        lambda t, y, x: u2(x * x + y * y, t),
        -L, L,
        lambda x: -math.sqrt(max(L * L - x * x, 0.0)), lambda x: math.sqrt(max(L * L - x * x, 0.0)),
        0.0, L,
        epsabs=0.0, epsrel=tol,
    )
    return red, direct


# ---------------------------------------------------------------------------
# Report
# ---------------------------------------------------------------------------

DEFAULT_SAMPLE_POINTS = 5


def _sample_points(n: int, count: int, seed: int) -> list:
    # points in the bubble core (|x| <= 0.6), where W is of order one
    rng = np.random.default_rng(seed)
    pts = []
    for k in range(count):
        x = rng.normal(size=n)
        x *= 0.6 * (k + 1) / count / np.linalg.norm(x)
        x[-1] = abs(x[-1])
        pts.append(x)
    return pts


def bubble_report(n: int = 35, Tc: float = -0.1, seed: int = 0, tangential: Sequence[int] = (1,)) -> list[Check]:
    """The diagnostic checks bundled for the CLI and the acceptance suite."""
    params = {"n": n, "Tc": repr(float(Tc))}
    checks = []
    for a in tangential:
        checks.append(Check("orthogonality_tangential", {**params, "a": a}, orthogonality_residual(n, Tc, a), 1e-12))
    t = orthogonality_terms(n, Tc, n)
    res = abs(t["interior"] - t["boundary"]) / (t["interior_abs"] + t["boundary_abs"])
    checks.append(Check("orthogonality_normal", {**params, "a": n}, res, 1e-6, t))
    s2 = energy_Sc(n, Tc, form="two-term")
    s3 = energy_Sc(n, Tc, form="three-term")
    checks.append(Check("energy_positive", params, 0.0 if s2 > 0 else 1.0, 0.5, {"S_c": s2}))
    checks.append(Check("energy_forms_agree", params, abs(s2 - s3) / abs(s2), 1e-8, {"two_term": s2, "three_term": s3}))
    h = 1e-5
    for k, x in enumerate(_sample_points(n, DEFAULT_SAMPLE_POINTS, seed)):
        _, b = pde_residual_W(n, Tc, x, h)
        checks.append(Check("boundary_pde", {**params, "point": k, "h": h}, b, 1e-6))
    x = _sample_points(n, 1, seed + 1)[0]
    ratio = richardson_ratio(n, Tc, x, 0.01)
    checks.append(Check("interior_richardson", {**params, "h": 0.01}, abs(ratio - 4.0), 0.5, {"ratio": ratio}))
    return checks
