"""Assembly of I(1), I'(1), I''(1), J(1) and the certificate itself.

With the profile ``f(s) = a_0 + a_1 s + ... + a_d s^d`` and moments c_q,

    I(s)  = sum_q c_q alpha_q s^(q+2) prod_{j<=q} (n-1+2j)/(n-5-2j)
    J(s)  = sum_q c_q beta_q  s^(q+2) prod_{j<=q} (n+3+2j)/(n-5-2j)

Every quantity is a quadratic polynomial in a_0 (J is linear).  The
certifier eliminates a_0 as the largest root of I'(1) = A a_0^2 + B a_0 + C
and then decides the signs of I(1), I''(1) and J(1) at that root.

At T_c = 0 all moments are ``kappa * r`` with a common kappa > 0; only the
rational parts r are used, so the whole computation lives in Q(sqrt(D)) with
D = B^2 - 4AC and is exact.  For T_c < 0 moments are interval enclosures and
the conditions are certified over whole T_c ranges.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from . import __version__
from .errors import DegreeConstraintError, NoRealRootError, PreconditionError, UnsupportedDomainError
from .exact import QuadExt, RatInterval, Sign, enclose_sqrt, quadext_sign, rational_str, to_rational
from .moments import moment_general, moment_slope, moment_zero
from .polynomials import CoeffVector, expand_alpha, expand_beta

PAPER_D6_TAIL = (
    Fraction(-10),
    Fraction(1, 10**4),
    Fraction(-1, 10**3),
    Fraction(184, 1000),
    Fraction(-265, 10000),
    Fraction(737, 10**6),
)
CHENWU_D1_TAIL = (Fraction(-1),)
BUILTIN_TAILS = {"paper-d6": PAPER_D6_TAIL, "chenwu-d1": CHENWU_D1_TAIL}

DEFAULT_PRECISION = Fraction(1, 10**30)
DEFAULT_MAX_DEPTH = 20
_ROUND_BITS = 160

PASS, FAIL, INDETERMINATE, STRUCTURAL = "pass", "fail", "indeterminate", "structural"
SKIPPED = "skipped"
CONDITIONS = ("discriminant", "i1", "iprime1", "idoubleprime1", "j1")


def check_degree(n: int, d: int) -> None:
    """Enforce 0 <= d < (n - 6)/4."""
    if d < 0 or 4 * d >= n - 6:
        raise DegreeConstraintError(
            f"degree d={d} needs n > 4d + 6 = {4 * d + 6}, got n={n}"
        )


@lru_cache(maxsize=None)
def product_factor(n: int, q: int, shift: int) -> Fraction:
    """prod_{j=0}^{q} (n + shift + 2j)/(n - 5 - 2j)."""
    out = Fraction(1)
    for j in range(q + 1):
        den = n - 5 - 2 * j
        if den == 0:
            raise DegreeConstraintError(f"vanishing denominator n-5-2j at j={j}, n={n}")
        out *= Fraction(n + shift + 2 * j, den)
    return out


def _order_multiplier(q: int, order: int) -> int:
    if order == 0:
        return 1
    if order == 1:
        return q + 2
    if order == 2:
        return (q + 2) * (q + 1)
    raise ValueError(f"order must be 0, 1 or 2, got {order}")


def _as_vector(f) -> CoeffVector:
    if isinstance(f, CoeffVector):
        return f
    return CoeffVector(len(f) - 1, tuple(f))


def i_terms(n: int, f, order: int) -> list:
    """Per-q weights alpha_q * m(q, order) * prod (n-1+2j)/(n-5-2j), moments excluded."""
    f = _as_vector(f)
    alpha = expand_alpha(f, n)
    return [a * _order_multiplier(q, order) * product_factor(n, q, -1) for q, a in enumerate(alpha)]


def j_terms(n: int, f) -> list:
    f = _as_vector(f)
    beta = expand_beta(f)
    return [b * product_factor(n, q, 3) for q, b in enumerate(beta)]


def _check_moments(moments: Sequence, needed: int) -> None:
    if len(moments) < needed:
        raise ValueError(f"need moments c_0..c_{needed - 1}, got {len(moments)}")


def I_derivative(n: int, f, moments: Sequence, order: int = 0, s=1):
    """I(s), I'(s) or I''(s) (``order`` 0, 1, 2) for the profile ``f``."""
    f = _as_vector(f)
    check_degree(n, f.d)
    _check_moments(moments, 2 * f.d + 1)
    total = Fraction(0)
    for q, w in enumerate(i_terms(n, f, order)):
        total = total + moments[q] * w * s ** (q + 2 - order)
    return total


def J_value(n: int, f, moments: Sequence, s=1):
    """J(s) for the profile ``f``; the sum runs over q = 0..2d-1."""
    f = _as_vector(f)
    check_degree(n, f.d)
    _check_moments(moments, 2 * f.d)
    total = Fraction(0)
    for q, w in enumerate(j_terms(n, f)):
        total = total + moments[q] * w * s ** (q + 2)
    return total


_KINDS = {
    "i": lambda n, f: i_terms(n, f, 0),
    "iprime": lambda n, f: i_terms(n, f, 1),
    "idoubleprime": lambda n, f: i_terms(n, f, 2),
    "j": j_terms,
}


@lru_cache(maxsize=4096)
def a0_weights(n: int, tail: tuple, kind: str) -> tuple:
    """Per-moment coefficients of a_0^2, a_0, 1 for one of the four quantities.

    Obtained by exact quadratic interpolation through a_0 = 0, 1, 2.
    """
    terms = _KINDS[kind]
    v0, v1, v2 = (terms(n, CoeffVector.from_tail(tail, Fraction(a0))) for a0 in (0, 1, 2))
    w2 = tuple((x0 - 2 * x1 + x2) / 2 for x0, x1, x2 in zip(v0, v1, v2))
    w1 = tuple(x1 - x0 - c2 for x0, x1, c2 in zip(v0, v1, w2))
    return w2, w1, tuple(v0)


@dataclass(frozen=True)
class QuadraticInA0:
    """``A a0^2 + B a0 + C`` with rational or interval coefficients."""

    A: object
    B: object
    C: object

    def discriminant(self):
        if isinstance(self.B, RatInterval):
            return self.B.sqr() - 4 * self.A * self.C
        return self.B * self.B - 4 * self.A * self.C

    def __call__(self, a0):
        if isinstance(a0, RatInterval):
            return self.A * a0.sqr() + self.B * a0 + self.C
        return self.A * a0 * a0 + self.B * a0 + self.C


def _dot(moments: Sequence, weights: Sequence):
    total = Fraction(0)
    for c, w in zip(moments, weights):
        if w:
            total = total + c * w
    return total


def quadratic_in_a0(n: int, tail, moments: Sequence, kind: str = "iprime") -> QuadraticInA0:
    """The chosen quantity at s = 1 as a quadratic in a_0 (default: I'(1) = p_n(a_0))."""
    tail = tuple(tail.tail if isinstance(tail, CoeffVector) else tail)
    check_degree(n, len(tail))
    w2, w1, w0 = a0_weights(n, tail, kind)
    _check_moments(moments, len(w0))
    return QuadraticInA0(_dot(moments, w2), _dot(moments, w1), _dot(moments, w0))


def largest_root(quad: QuadraticInA0, precision: Fraction = DEFAULT_PRECISION):
    """(-B + sqrt(B^2 - 4AC)) / (2A): a QuadExt for rational input, else an enclosure."""
    disc = quad.discriminant()
    if isinstance(disc, RatInterval):
        if disc.lo <= 0:
            raise NoRealRootError(f"discriminant enclosure {disc} is not strictly positive")
        A = RatInterval.coerce(quad.A)
        if A.lo <= 0:
            raise NoRealRootError("leading coefficient enclosure is not strictly positive")
        root = enclose_sqrt(disc, precision)
        return ((root - quad.B) / (2 * A)).round_outward(_ROUND_BITS)
    if disc <= 0:
        raise NoRealRootError(f"discriminant {disc} is not positive")
    if quad.A <= 0:
        raise NoRealRootError("leading coefficient is not positive")
    two_a = 2 * quad.A
    return QuadExt(-quad.B / two_a, 1 / two_a, disc)


# ---------------------------------------------------------------------------
# Certificates
# ---------------------------------------------------------------------------


def _value_dict(value) -> dict | None:
    if value is None:
        return None
    if isinstance(value, QuadExt):
        out = value.to_dict()
        out["approx"] = repr(float(value))
        return out
    if isinstance(value, RatInterval):
        out = value.to_dict()
        out["approx"] = repr(float(value.mid()))
        return out
    return {"value": rational_str(value), "approx": repr(float(value))}


def _sign_str(sign: Sign | None) -> str:
    return "indeterminate" if sign is None else str(sign)


@dataclass
class Certificate:
    n: int
    d: int
    tail: tuple
    tc: RatInterval
    mode: str
    discriminant: object = None
    discriminant_sign: Sign | None = None
    a0: object = None
    i1: object = None
    i1_sign: Sign | None = None
    iprime1: object = None
    iprime1_sign: Sign | None = None
    idoubleprime1: object = None
    idoubleprime1_sign: Sign | None = None
    j1: object = None
    j1_sign: Sign | None = None
    verdicts: dict = field(default_factory=dict)
    overall: str = FAIL
    kappa: str | None = None
    pieces: int = 1
    notes: list = field(default_factory=list)
    elapsed_ms: float | None = None

    @property
    def passed(self) -> bool:
        return self.overall == PASS

    def to_dict(self, timing: bool = False) -> dict:
        return {
            "n": self.n,
            "d": self.d,
            "tail": [rational_str(x) for x in self.tail],
            "tc_lo": rational_str(self.tc.lo),
            "tc_hi": rational_str(self.tc.hi),
            "mode": self.mode,
            "kappa": self.kappa,
            "discriminant": {"value": _value_dict(self.discriminant), "sign": _sign_str(self.discriminant_sign)},
            "a0": _value_dict(self.a0),
            "i1": {"value": _value_dict(self.i1), "sign": _sign_str(self.i1_sign)},
            "iprime1": {"value": _value_dict(self.iprime1), "sign": _sign_str(self.iprime1_sign)},
            "idoubleprime1": {
                "value": _value_dict(self.idoubleprime1),
                "sign": _sign_str(self.idoubleprime1_sign),
            },
            "j1": {"value": _value_dict(self.j1), "sign": _sign_str(self.j1_sign)},
            "verdicts": dict(self.verdicts),
            "overall": self.overall,
            "pieces": self.pieces,
            "notes": list(self.notes),
            "version": __version__,
            "elapsed_ms": round(self.elapsed_ms, 3) if (timing and self.elapsed_ms is not None) else None,
        }


def _overall(verdicts: dict) -> str:
    vals = list(verdicts.values())
    if FAIL in vals:
        return FAIL
    if INDETERMINATE in vals:
        return INDETERMINATE
    return PASS


def _normalize_tail(tail) -> tuple:
    if isinstance(tail, str):
        tail = BUILTIN_TAILS[tail]
    if isinstance(tail, CoeffVector):
        tail = tail.tail
    return tuple(to_rational(t) if isinstance(t, (str, int)) else Fraction(t) for t in tail)


def _exact_certificate(n: int, tail: tuple) -> Certificate:
    d = len(tail)
    mz = [moment_zero(n, q) for q in range(2 * d + 1)]
    moments = [m.r for m in mz]
    cert = Certificate(n=n, d=d, tail=tail, tc=RatInterval.point(0), mode="exact", kappa=mz[0].kappa)
    cert.notes.append("values are divided by the common positive moment factor kappa")

    quad = quadratic_in_a0(n, tail, moments, "iprime")
    disc = quad.discriminant()
    cert.discriminant = disc
    cert.discriminant_sign = Sign.of(disc)
    if disc <= 0:
        cert.verdicts = {c: FAIL if c == "discriminant" else INDETERMINATE for c in CONDITIONS}
        cert.overall = FAIL
        cert.notes.append("no real a_0 makes I'(1) vanish")
        return cert

    a0 = largest_root(quad)
    cert.a0 = a0
    cert.iprime1 = quad(a0)
    cert.iprime1_sign = quadext_sign(cert.iprime1)
    cert.i1 = quadratic_in_a0(n, tail, moments, "i")(a0)
    cert.i1_sign = quadext_sign(cert.i1)
    cert.idoubleprime1 = quadratic_in_a0(n, tail, moments, "idoubleprime")(a0)
    cert.idoubleprime1_sign = quadext_sign(cert.idoubleprime1)
    cert.j1 = quadratic_in_a0(n, tail, moments, "j")(a0)
    cert.j1_sign = quadext_sign(cert.j1)

    cert.verdicts = {
        "discriminant": PASS,
        "i1": PASS if cert.i1_sign == Sign.POSITIVE else FAIL,
        "iprime1": PASS if cert.iprime1_sign == Sign.ZERO else FAIL,
        "idoubleprime1": PASS if cert.idoubleprime1_sign == Sign.NEGATIVE else FAIL,
        "j1": PASS if cert.j1_sign == Sign.NEGATIVE else FAIL,
    }
    cert.overall = _overall(cert.verdicts)
    return cert


def certify_dimension(n: int, tail, Tc=Fraction(0)) -> Certificate:
    """Decide the four sign conditions for dimension ``n`` and the given tail.

    ``Tc = 0`` runs in exact mode; a negative rational ``Tc`` falls back to
    interval mode on the point interval [Tc, Tc].
    """
    start = time.perf_counter()
    tail = _normalize_tail(tail)
    check_degree(n, len(tail))
    Tc = to_rational(Tc)
    if Tc > 0:
        raise UnsupportedDomainError("T_c must be <= 0")
    if Tc == 0:
        cert = _exact_certificate(n, tail)
    else:
        cert = certify_interval(n, tail, RatInterval.point(Tc))
    cert.elapsed_ms = (time.perf_counter() - start) * 1000
    return cert


# ---------------------------------------------------------------------------
# Interval mode
# ---------------------------------------------------------------------------


def _positive_status(x: RatInterval) -> str:
    if x.lo > 0:
        return PASS
    if x.hi <= 0:
        return FAIL
    return INDETERMINATE


def _negative_status(x: RatInterval) -> str:
    if x.hi < 0:
        return PASS
    if x.lo >= 0:
        return FAIL
    return INDETERMINATE


@dataclass
class _Piece:
    tc: RatInterval
    status: str
    values: dict


class _MeanValue:
    """A function of T_c on one piece [m - r, m + r], in mean-value form.

    ``mid`` encloses the value at m, ``rng`` the values over the piece and
    ``der`` the derivative over the piece; the enclosure is
    (mid + [-r, r] der) intersected with rng.  Carrying derivatives lets
    cancellations such as B^2 - 4AC shrink with the piece width instead of
    being swamped by the independent widths of B^2 and 4AC.
    """

    __slots__ = ("mid", "rng", "der", "r")

    def __init__(self, mid: RatInterval, rng: RatInterval, der: RatInterval, r: Fraction):
        self.mid = mid.round_outward(_ROUND_BITS)
        self.der = der.round_outward(_ROUND_BITS)
        self.r = r
        mv = self.mid + RatInterval(-r, r) * self.der
        self.rng = rng.intersect(mv).round_outward(_ROUND_BITS) if _overlaps(rng, mv) else mv

    def enclosure(self) -> RatInterval:
        return self.rng

    def _lift(self, x) -> "_MeanValue":
        if isinstance(x, _MeanValue):
            return x
        p = RatInterval.coerce(x)
        return _MeanValue(p, p, RatInterval.point(0), self.r)

    def __add__(self, other):
        o = self._lift(other)
        return _MeanValue(self.mid + o.mid, self.rng + o.rng, self.der + o.der, self.r)

    __radd__ = __add__

    def __neg__(self):
        return _MeanValue(-self.mid, -self.rng, -self.der, self.r)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return _MeanValue(self.mid * other, self.rng * other, self.der * other, self.r)
        o = self._lift(other)
        return _MeanValue(
            self.mid * o.mid,
            self.rng * o.rng,
            self.der * o.rng + self.rng * o.der,
            self.r,
        )

    __rmul__ = __mul__

    def reciprocal(self) -> "_MeanValue":
        return _MeanValue(self.mid.reciprocal(), self.rng.reciprocal(), -self.der / self.rng.sqr(), self.r)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        return self * self._lift(other).reciprocal()

    def sqrt(self, precision: Fraction) -> "_MeanValue":
        if self.rng.lo <= 0:
            raise NoRealRootError("square root of an enclosure that is not strictly positive")
        root = enclose_sqrt(self.rng, precision)
        return _MeanValue(enclose_sqrt(self.mid, precision), root, self.der / (2 * root), self.r)


def _overlaps(a: RatInterval, b: RatInterval) -> bool:
    return a.lo <= b.hi and b.lo <= a.hi


def _piece_moments(n: int, d: int, tc: RatInterval, precision: Fraction) -> list:
    m = tc.mid()
    r = tc.width() / 2
    out = []
    for q in range(2 * d + 1):
        out.append(
            _MeanValue(
                moment_general(n, q, m, precision).value,
                moment_general(n, q, tc, precision).value,
                moment_slope(n, q, tc, precision),
                r,
            )
        )
    return out


def _evaluate_piece(n: int, tail: tuple, tc: RatInterval, precision: Fraction) -> _Piece:
    d = len(tail)
    moments = _piece_moments(n, d, tc, precision)
    quad = quadratic_in_a0(n, tail, moments, "iprime")
    disc_mv = quad.B * quad.B - 4 * quad.A * quad.C
    disc = disc_mv.enclosure()
    values = {"discriminant": disc}
    status = {"discriminant": _positive_status(disc)}
    if status["discriminant"] != PASS or quad.A.enclosure().lo <= 0:
        for c in ("i1", "idoubleprime1", "j1"):
            status[c] = INDETERMINATE
        return _Piece(tc, FAIL if status["discriminant"] == FAIL else INDETERMINATE, values)

    a0 = (disc_mv.sqrt(precision) - quad.B) / (2 * quad.A)
    values["a0"] = a0.enclosure()
    for name, kind, check in (
        ("i1", "i", _positive_status),
        ("idoubleprime1", "idoubleprime", _negative_status),
        ("j1", "j", _negative_status),
    ):
        q = quadratic_in_a0(n, tail, moments, kind)
        v = ((q.A * a0 + q.B) * a0 + q.C).enclosure()
        values[name] = v
        status[name] = check(v)
    values["status"] = status
    return _Piece(tc, _overall(status), values)


def _split_point(tc: RatInterval) -> Fraction:
    mid = tc.mid()
    # keep split points short: round the midpoint to a nearby dyadic inside tc
    w = tc.width()
    if w > 0:
        step = Fraction(1, 1 << max(0, (w.denominator.bit_length() - w.numerator.bit_length()) + 8))
        snapped = Fraction(round(mid / step)) * step
        if tc.lo < snapped < tc.hi:
            return snapped
    return mid


def _certify_pieces(n, tail, tc, precision, depth, max_depth, out: list) -> None:
    piece = _evaluate_piece(n, tail, tc, precision)
    if piece.status in (PASS, FAIL) or depth >= max_depth or tc.width() == 0:
        out.append(piece)
        return
    m = _split_point(tc)
    _certify_pieces(n, tail, RatInterval(tc.lo, m), precision, depth + 1, max_depth, out)
    if out[-1].status in (FAIL, SKIPPED):
        # one failing piece settles the overall verdict; the rest is not examined
        out.append(_Piece(RatInterval(m, tc.hi), SKIPPED, {}))
        return
    _certify_pieces(n, tail, RatInterval(m, tc.hi), precision, depth + 1, max_depth, out)


def certify_interval(
    n: int,
    tail,
    Tc,
    precision=DEFAULT_PRECISION,
    max_depth: int = DEFAULT_MAX_DEPTH,
) -> Certificate:
    """Certify the strict conditions for every T_c in the interval ``Tc``.

    An indeterminate piece is bisected up to ``max_depth`` times.  I'(1) = 0
    holds by the choice of a_0 for each T_c and is reported as structural.
    """
    start = time.perf_counter()
    tail = _normalize_tail(tail)
    d = len(tail)
    check_degree(n, d)
    Tc = RatInterval.coerce(Tc if not isinstance(Tc, str) else to_rational(Tc))
    if Tc.hi > 0:
        raise UnsupportedDomainError("T_c interval must lie in (-inf, 0]")
    precision = Fraction(precision)
    if precision <= 0:
        raise ValueError("precision must be positive")

    pieces: list[_Piece] = []
    _certify_pieces(n, tail, Tc, precision, 0, max_depth, pieces)

    cert = Certificate(n=n, d=d, tail=tail, tc=Tc, mode="interval", pieces=len(pieces))
    cert.notes.append("I'(1) = 0 holds by the per-T_c choice of a_0 (structural)")
    if any(p.status == SKIPPED for p in pieces):
        cert.notes.append("evaluation stopped at the first failing piece; later pieces were not examined")

    def hull(name):
        vals = [p.values[name] for p in pieces if name in p.values]
        if not vals:
            return None
        out = vals[0]
        for v in vals[1:]:
            out = out.hull(v)
        return out

    cert.discriminant = hull("discriminant")
    cert.a0 = hull("a0")
    cert.i1 = hull("i1")
    cert.idoubleprime1 = hull("idoubleprime1")
    cert.j1 = hull("j1")
    cert.discriminant_sign = cert.discriminant.sign() if cert.discriminant is not None else None

    def merged(name):
        sts = [
            INDETERMINATE if "discriminant" not in p.values
            else _positive_status(p.values["discriminant"]) if name == "discriminant"
            else p.values.get("status", {}).get(name, INDETERMINATE)
            for p in pieces
        ]
        if FAIL in sts:
            return FAIL
        if all(s == PASS for s in sts):
            return PASS
        return INDETERMINATE

    complete = all("i1" in p.values for p in pieces)
    cert.i1_sign = cert.i1.sign() if (cert.i1 is not None and complete) else None
    cert.idoubleprime1_sign = cert.idoubleprime1.sign() if (cert.idoubleprime1 is not None and complete) else None
    cert.j1_sign = cert.j1.sign() if (cert.j1 is not None and complete) else None
    cert.verdicts = {
        "discriminant": merged("discriminant"),
        "i1": merged("i1"),
        "iprime1": STRUCTURAL,
        "idoubleprime1": merged("idoubleprime1"),
        "j1": merged("j1"),
    }
    strict = {k: v for k, v in cert.verdicts.items() if k != "iprime1"}
    cert.overall = FAIL if any(p.status == FAIL for p in pieces) else _overall(strict)
    cert.elapsed_ms = (time.perf_counter() - start) * 1000
    return cert


# ---------------------------------------------------------------------------
# c-bar and the degree-1 reproduction
# ---------------------------------------------------------------------------


@dataclass
class CbarResult:
    n: int
    cbar: Fraction
    certificate: Certificate
    rejected: Fraction | None
    evaluations: int

    def to_dict(self, timing: bool = False) -> dict:
        return {
            "n": self.n,
            "cbar": rational_str(self.cbar),
            "cbar_approx": repr(float(self.cbar)),
            "tc_lo": rational_str(-self.cbar / (self.n - 2)),
            "first_rejected_c": None if self.rejected is None else rational_str(self.rejected),
            "evaluations": self.evaluations,
            "certificate": self.certificate.to_dict(timing),
        }


def find_cbar(
    n: int,
    tail,
    precision=Fraction(1, 10**4),
    max_depth: int = DEFAULT_MAX_DEPTH,
    moment_precision=DEFAULT_PRECISION,
    c_max=Fraction(2**20),
) -> CbarResult:
    """Largest c (to relative accuracy ``precision``) certified on T_c in [-c/(n-2), 0].

    Bracket by doubling/halving from c = 1, then bisect until
    (rejected - accepted) <= precision * accepted.
    """
    tail = _normalize_tail(tail)
    precision = Fraction(precision)
    if precision <= 0:
        raise ValueError("precision must be positive")
    base = certify_dimension(n, tail, 0)
    if not base.passed:
        raise PreconditionError(f"exact certificate at T_c = 0 does not pass for n={n}")

    evaluations = 0

    def attempt(c: Fraction) -> Certificate:
        nonlocal evaluations
        evaluations += 1
        return certify_interval(n, tail, RatInterval(-c / (n - 2), Fraction(0)), moment_precision, max_depth)

    c = Fraction(1)
    cert = attempt(c)
    if cert.passed:
        good, good_cert, bad = c, cert, None
        while good < c_max:
            c = good * 2
            cert = attempt(c)
            if not cert.passed:
                bad = c
                break
            good, good_cert = c, cert
        if bad is None:
            return CbarResult(n, good, good_cert, None, evaluations)
    else:
        bad = c
        while True:
            c = bad / 2
            if c < Fraction(1, 2**80):
                raise PreconditionError("no certifiable T_c range found above 2^-80")
            cert = attempt(c)
            if cert.passed:
                good, good_cert = c, cert
                break
            bad = c

    while bad - good > precision * good:
        mid = (good + bad) / 2
        cert = attempt(mid)
        if cert.passed:
            good, good_cert = mid, cert
        else:
            bad = mid
    return CbarResult(n, good, good_cert, bad, evaluations)


def reproduce_chenwu(n: int) -> Certificate:
    """Exact certificate for the degree-1 profile f(s) = -s + a_0."""
    return certify_dimension(n, CHENWU_D1_TAIL, 0)
