from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from linkgate.errors import FactorizationUnavailable, ParseError
from linkgate.laurent import (
    FactorBudget,
    LaurentPoly,
    associated,
    canonical,
    evaluate,
    expand_factorization,
    factor,
    format_poly,
    gcd,
    gcd_many,
    involve,
    normalize,
    parse_poly,
)
from strategies import laurent, units

P = parse_poly


def test_zero_has_no_terms():
    z = LaurentPoly.zero(2)
    assert not z and z.terms == {}
    assert LaurentPoly(1, {(1,): 2, (0,): 0}) == LaurentPoly(1, {(1,): 2})
    assert LaurentPoly(1, {(1,): 0}) == LaurentPoly.zero(1)


def test_parse_and_format_roundtrip():
    p = P("t1*t2 - t1 - t2 + 3")
    assert p.nvars == 2
    assert P(format_poly(p), nvars=2) == p
    assert P("t^-1 - 3 + t") == LaurentPoly(1, {(-1,): 1, (0,): -3, (1,): 1})
    assert P("1").nvars == 1


@pytest.mark.parametrize("bad", ["t +", "t^", "(t", "t1 ** 2", "x"])
def test_parse_errors_carry_position(bad):
    with pytest.raises(ParseError) as info:
        P(bad)
    assert info.value.position >= 0


def test_normalize_examples():
    nf = normalize(P("-t^-2 + t^-3"))
    assert nf.poly == P("t - 1")
    assert nf.sign == -1 and nf.shift == (-3,)
    assert canonical(P("-2*t^3 + 5*t^2 - 2*t")) == P("2*t^2 - 5*t + 2")


def test_associated():
    assert associated(P("t - 2"), -P("t^3 - 2*t^2"))
    assert not associated(P("t - 2"), P("2*t - 1"))


def test_gcd_examples():
    assert gcd(P("t^2 - 1"), P("t^2 - 2*t + 1")) == P("t - 1")
    assert gcd(P("t - 1"), P("t + 1")) == P("1")
    assert gcd(P("2*t - 2"), P("4*t - 4")) == P("2*t - 2")
    assert gcd_many([], nvars=1) == LaurentPoly.zero(1)


def test_factor_examples():
    assert factor(P("t^2 - 1")) == (1, [(P("t - 1"), 1), (P("t + 1"), 1)])
    assert factor(P("t^2 - t + 1")) == (1, [(P("t^2 - t + 1"), 1)])
    assert factor(P("6*t - 6")) == (6, [(P("t - 1"), 1)])


def test_factor_budget():
    with pytest.raises(FactorizationUnavailable):
        factor(P("t^30 - 1"))
    with pytest.raises(FactorizationUnavailable):
        factor(P("t1 + t2 + t3 + 1"))
    c, facs = factor(P("t^30 - 1"), FactorBudget(max_degree=40))
    assert expand_factorization(c, facs, 1) == P("t^30 - 1")


def test_evaluate_returns_fractions():
    assert evaluate(P("t - 3 + t^-1"), [2]) == Fraction(-1, 2)
    with pytest.raises(ValueError):
        evaluate(P("t"), [0])


@given(laurent(2), laurent(2))
def test_involve_is_ring_involution(p, q):
    assert involve(p + q) == involve(p) + involve(q)
    assert involve(p * q) == involve(p) * involve(q)
    assert involve(involve(p)) == p


@given(laurent(2, nonzero=True), units(2))
def test_normalize_ignores_units(p, u):
    assert normalize(p).poly == normalize(u * p).poly
    nf = normalize(p)
    assert p == nf.poly * LaurentPoly.monomial(nf.shift, nf.sign)


@settings(max_examples=40, deadline=None)
@given(laurent(1, nonzero=True), laurent(1, nonzero=True), laurent(1, nonzero=True))
def test_gcd_laws(p, q, r):
    assert gcd(p, q) == gcd(q, p)
    assert associated(gcd(gcd(p, q), r), gcd(p, gcd(q, r)))
    assert associated(gcd(p * r, q * r), gcd(p, q) * r)


@settings(max_examples=30, deadline=None)
@given(laurent(2, nonzero=True), laurent(2, nonzero=True))
def test_gcd_laws_two_vars(p, q):
    g = gcd(p, q)
    assert g.divides(p) and g.divides(q)


@given(laurent(2), laurent(2), st.tuples(st.integers(-3, 3).filter(bool), st.integers(-3, 3).filter(bool)))
def test_evaluate_is_homomorphism(p, q, point):
    assert evaluate(p * q, point) == evaluate(p, point) * evaluate(q, point)
    assert evaluate(p + q, point) == evaluate(p, point) + evaluate(q, point)


@settings(max_examples=40, deadline=None)
@given(laurent(1, nonzero=True))
def test_factor_roundtrip(p):
    c, facs = factor(p)
    assert expand_factorization(c, facs, 1) == canonical(p)
    for f, _ in facs:
        assert f == canonical(f) and f.content() == 1


def test_exquo_and_divides():
    a, b = P("t^2 - 1"), P("t + 1")
    assert a.exquo(b) == P("t - 1")
    assert not P("t + 2").divides(a)
    with pytest.raises(ValueError):
        a.exquo(P("t + 2"))
