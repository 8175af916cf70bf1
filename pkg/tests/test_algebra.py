from fractions import Fraction
from math import comb, factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import poly
from latticetodd.algebra import (
    GradedSeries,
    Polynomial,
    bernoulli,
    diff_apply,
    exp_form,
    monomials,
    pairing,
    todd_factor,
    todd_series,
)

small = st.fractions(min_value=-5, max_value=5, max_denominator=6)


@st.composite
def polys(draw, dim=2, max_deg=3):
    mons = [e for k in range(max_deg + 1) for e in monomials(dim, k)]
    chosen = draw(st.lists(st.sampled_from(mons), max_size=5, unique=True))
    return Polynomial(dim, {e: draw(small) for e in chosen})


points = st.tuples(small, small)


def test_monomials_graded_lex():
    assert monomials(2, 2) == [(2, 0), (1, 1), (0, 2)]
    assert len(monomials(3, 4)) == comb(6, 2)


def test_zero_coefficients_dropped():
    p = Polynomial(2, {(1, 0): 0, (0, 0): 3})
    assert p == Polynomial.constant(2, 3)
    assert Polynomial.zero(2).is_zero()


def test_to_str():
    p = poly(2, {(0, 0): 1, (1, 0): "1/2", (0, 2): -3})
    assert p.to_str() == "1 + 1/2*s1 - 3*s2^2"


@settings(max_examples=60, deadline=None)
@given(polys(), polys(), polys())
def test_ring_axioms(p, q, r):
    assert p + q == q + p
    assert p * q == q * p
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p - p == Polynomial.zero(2)


@settings(max_examples=60, deadline=None)
@given(polys(), polys(), points)
def test_evaluation_is_a_homomorphism(p, q, u):
    assert (p * q).evaluate(u) == p.evaluate(u) * q.evaluate(u)
    assert (p + q).evaluate(u) == p.evaluate(u) + q.evaluate(u)


@settings(max_examples=40, deadline=None)
@given(polys(), points, points)
def test_translate(p, v, u):
    assert p.translate(v).evaluate(u) == p.evaluate([a + b for a, b in zip(u, v)])


@settings(max_examples=40, deadline=None)
@given(polys(), polys())
def test_leibniz(p, q):
    assert (p * q).derivative(0) == p.derivative(0) * q + p * q.derivative(0)


def test_diff_apply_monomial():
    s1 = Polynomial.variable(2, 0)
    f = poly(2, {(3, 1): 1})
    assert diff_apply(s1, f) == poly(2, {(2, 1): 3})
    assert diff_apply(s1 * s1, f) == poly(2, {(1, 1): 6})


def test_pairing_is_diff_apply_at_zero():
    p = poly(2, {(1, 1): 2, (0, 0): 1})
    f = poly(2, {(1, 1): 3, (0, 0): 5})
    assert pairing(p, f) == diff_apply(p, f).evaluate((0, 0)) == 2 * 3 + 5


def test_bernoulli_known_values():
    known = [1, Fraction(-1, 2), Fraction(1, 6), 0, Fraction(-1, 30), 0, Fraction(1, 42)]
    assert [bernoulli(k) for k in range(7)] == known


def test_bernoulli_recurrence():
    # sum_{j<=k} C(k+1, j) B_j = 0 for k >= 1
    for k in range(1, 14):
        assert sum(comb(k + 1, j) * bernoulli(j) for j in range(k + 1)) == 0


def test_todd_factor_inverts_series():
    # (1 - e^{-x}) / x times x / (1 - e^{-x}) is 1 up to the cap
    cap = 8
    x = Polynomial.variable(1, 0)
    inverse = sum((x ** k * Fraction((-1) ** k, factorial(k + 1)) for k in range(cap + 1)),
                  Polynomial.zero(1))
    assert todd_factor((1,), cap).mul_truncated(inverse, cap) == Polynomial.one(1)


def test_exp_form_times_inverse():
    cap = 6
    assert exp_form((1, 2), cap).mul_truncated(exp_form((1, 2), cap, sign=-1), cap) == Polynomial.one(2)


def test_todd_series_one_dimensional():
    s = todd_series([(1,), (1,)], (1,), 1)
    assert s.poly == Polynomial.one(1)
    assert isinstance(s, GradedSeries)


def test_todd_series_zero_column_is_one():
    assert todd_series([(0, 0)], (0, 0), 4).poly == Polynomial.one(2)


def test_todd_series_negative_cap():
    with pytest.raises(ValueError):
        todd_series([(1,)], (0,), -1)
