from fractions import Fraction

import numpy as np
import pytest

from yamabe_cert.certify import PAPER_D6_TAIL, certify_dimension, i_terms, j_terms
from yamabe_cert.errors import DegreeConstraintError
from yamabe_cert.moments import moment_zero
from yamabe_cert.polynomials import CoeffVector
from yamabe_cert.search import (
    Candidate,
    CoefficientSearch,
    SearchReport,
    feasibility_margin,
    margin_components,
    rationalize,
    rationalize_and_recheck,
    search,
)

D6_FLOAT = [float(x) for x in PAPER_D6_TAIL]


def test_d6_tail_margin_positive_and_signs_agree():
    m = margin_components(35, D6_FLOAT, 0.0)
    assert m["margin"] > 0
    cert = certify_dimension(35, PAPER_D6_TAIL)
    assert (m["discriminant"] > 0) == (int(cert.discriminant_sign) > 0)
    assert (m["i1"] > 0) == (int(cert.i1_sign) > 0)
    assert (m["idoubleprime1"] < 0) == (int(cert.idoubleprime1_sign) < 0)
    assert (m["j1"] < 0) == (int(cert.j1_sign) < 0)


def test_float_forms_match_exact_assembly():
    n = 35
    rng = np.random.default_rng(1)
    tail = np.array(D6_FLOAT) * (1 + 1e-6 * rng.normal(size=6))
    m = margin_components(n, tail, 0.0)
    a0 = m["a0"]
    f = CoeffVector(6, tuple(Fraction(float(x)) for x in (a0, *tail)))
    c = [float(moment_zero(n, q)) for q in range(13)]
    i1 = sum(float(w) * c[q] for q, w in enumerate(i_terms(n, f, 0)))
    ipp = sum(float(w) * c[q] for q, w in enumerate(i_terms(n, f, 2)))
    j1 = sum(float(w) * c[q] for q, w in enumerate(j_terms(n, f)))
    assert abs(m["i1"] - i1) <= 1e-9 * abs(i1)
    assert abs(m["idoubleprime1"] - ipp) <= 1e-9 * abs(ipp)
    assert abs(m["j1"] - j1) <= 1e-9 * abs(j1)


def test_zero_tail_margin_not_positive():
    for n in (31, 35, 62):
        assert feasibility_margin(n, [0.0] * 6) <= 0


def test_degree_one_margin_positive_at_62():
    assert feasibility_margin(62, [-1.0]) > 0


def test_margin_negative_discriminant_reported_not_raised():
    m = margin_components(35, [1.0, 0, 0, 0, 0, 0])
    assert m["discriminant"] <= 0 and m["margin"] <= 0


def test_margin_degree_constraint():
    with pytest.raises(DegreeConstraintError):
        feasibility_margin(30, D6_FLOAT)


def test_rationalize_d6_decimals_exactly():
    assert rationalize(D6_FLOAT) == PAPER_D6_TAIL


def test_recheck_d6_tail_certifies():
    c = rationalize_and_recheck(Candidate(tuple(D6_FLOAT), 35, feasibility_margin(35, D6_FLOAT)))
    assert c.is_certified
    assert c.certified.tail == c.rational_tail == PAPER_D6_TAIL


def test_recheck_zero_tail_uncertified():
    c = rationalize_and_recheck(Candidate((0.0,) * 6, 35, 0.0))
    assert not c.is_certified and c.certified is None


def test_recheck_marginal_tail_reports_outcome():
    # a tail whose a_6 is below the rationalization grain: the exact verdict stands
    tail = tuple(D6_FLOAT[:5]) + (1e-9,)
    c = rationalize_and_recheck(Candidate(tail, 35, 1e-15))
    assert c.rational_tail[-1] == 0
    assert c.is_certified == (c.certified is not None)
    if c.certified is not None:
        assert c.certified.passed


def test_search_budget_one():
    out = search(6, 35, 1, seed=3)
    assert len(out) == 1


def test_search_deterministic():
    a = search(6, 35, 600, seed=11)
    b = search(6, 35, 600, seed=11)
    assert [c.tail for c in a] == [c.tail for c in b]
    assert [c.margin for c in a] == [c.margin for c in b]


def test_search_degree_one_n62():
    out = search(1, 62, 400, seed=0)
    assert out[0].margin > 0


def test_search_soundness_gate():
    out = search(6, 35, 3000, seed=5)
    for c in out:
        if c.is_certified:
            assert c.certified.passed
            assert c.certified.tail == c.rational_tail


def test_search_ranked_by_margin():
    out = search(6, 40, 2000, seed=2)
    margins = [c.margin for c in out]
    assert margins == sorted(margins, reverse=True)


def test_search_precondition():
    with pytest.raises(DegreeConstraintError):
        search(6, 30, 10, seed=0)
    with pytest.raises(ValueError):
        search(6, 35, 0, seed=0)


def test_estimator_wrapper():
    est = CoefficientSearch(d=1, budget=300, seed=4)
    assert est.get_params()["budget"] == 300
    est.fit(62)
    assert est.best_.margin > 0
    assert est.predict([[-1.0]])[0] == pytest.approx(feasibility_margin(62, [-1.0]))
    rep = est.report().to_dict()
    assert rep["parameters"]["n"] == 62


def test_report_shape():
    out = search(1, 62, 200, seed=1)
    rep = SearchReport(1, 62, 200, 1, 0.0, 10**6, out).to_dict()
    assert set(rep) == {"parameters", "certified_count", "candidates"}
    first = rep["candidates"][0]
    assert {"tail", "margin", "certified", "certificate"} <= set(first)
