from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pyquasiiso import DomainError, EventuallyPolynomialSeq, Polynomial
from pyquasiiso.numeric import (
    NEG_INF,
    NOT_POLYNOMIAL,
    alt_binomial_sum,
    as_rational,
    format_degree,
    format_rational,
)

small_fractions = st.fractions(min_value=-20, max_value=20, max_denominator=12)
coefficient_lists = st.lists(small_fractions, max_size=5)


def test_as_rational():
    assert as_rational("5/3") == Fraction(5, 3)
    assert as_rational(" -7 ") == Fraction(-7)
    assert as_rational(Fraction(2, 4)) == Fraction(1, 2)
    for bad in (0.5, True, "1.5", "abc", "1/0", None):
        with pytest.raises(DomainError):
            as_rational(bad)


def test_format_rational_and_degree():
    assert format_rational(Fraction(4, 2)) == "2"
    assert format_rational(Fraction(-21, 31)) == "-21/31"
    assert format_degree(3) == "3"
    assert format_degree(NEG_INF) == "-inf"
    assert format_degree(NOT_POLYNOMIAL) == "inf"


def test_alt_binomial_sum():
    assert alt_binomial_sum([1]) == 1
    assert alt_binomial_sum([1, 3, 5]) == 0
    assert alt_binomial_sum([1, 3]) == -2
    with pytest.raises(DomainError):
        alt_binomial_sum([])


def test_polynomial_is_canonical():
    assert Polynomial([1, 0, 0]) == Polynomial([1])
    assert Polynomial([0]).is_zero()
    assert Polynomial([]).degree == NEG_INF
    assert Polynomial(["1/2", 0, 3]).degree == 2
    assert Polynomial(["1/2", 0, 3]).leading == 3


def test_polynomial_str():
    assert str(Polynomial([1, -2, 3])) == "1 - 2*j + 3*j^2"
    assert str(Polynomial([0, -1])) == "-j"
    assert str(Polynomial(["-1/2"])) == "-1/2"
    assert str(Polynomial([])) == "0"


def test_polynomial_operations():
    p = Polynomial([1, 1])
    assert p * p == Polynomial([1, 2, 1])
    assert p - p == Polynomial()
    assert p * Fraction(1, 2) == Polynomial(["1/2", "1/2"])
    assert Polynomial([0, 0, 1]).difference() == Polynomial([1, 2])
    assert Polynomial([0, 0, 1]).compose_shift(-1) == Polynomial([1, -2, 1])
    assert p(4) == 5


def test_real_root_brackets():
    brackets = Polynomial([-6, 1]).real_root_brackets()
    assert len(brackets) == 1
    a, b = brackets[0]
    assert a <= 6 <= b and b - a < 1
    assert Polynomial([5]).real_root_brackets() == []
    assert Polynomial([1, 0, 1]).real_root_brackets() == []
    assert Polynomial([10**9, 1]).integers_near_roots(1) == []
    assert 6 in Polynomial([-6, 1]).integers_near_roots(6)
    assert Polynomial([-6, 1]).integers_near_roots(8) == []


@settings(max_examples=100, deadline=None)
@given(a=coefficient_lists, b=coefficient_lists, x=small_fractions)
def test_polynomial_arithmetic_matches_evaluation(a, b, x):
    p, q = Polynomial(a), Polynomial(b)
    assert (p + q)(x) == p(x) + q(x)
    assert (p * q)(x) == p(x) * q(x)
    assert (p - q)(x) == p(x) - q(x)


@settings(max_examples=100, deadline=None)
@given(a=coefficient_lists, d=st.integers(-5, 5), x=small_fractions)
def test_compose_shift_matches_evaluation(a, d, x):
    p = Polynomial(a)
    assert p.compose_shift(d)(x) == p(x + d)
    assert p.difference()(x) == p(x + 1) - p(x)


@settings(max_examples=50, deadline=None)
@given(a=st.lists(small_fractions, min_size=2, max_size=5))
def test_root_brackets_cover_every_sign_change(a):
    p = Polynomial(a)
    if p.degree < 1:
        return
    brackets = p.real_root_brackets()
    assert all(hi - lo < 1 for lo, hi in brackets)
    for n in range(-25, 25):
        if p(n) == 0:
            assert any(lo <= n <= hi for lo, hi in brackets)
        elif p(n) * p(n + 1) < 0:
            assert any(lo < n + 1 and hi > n for lo, hi in brackets)


def test_sequence_indexing():
    s = EventuallyPolynomialSeq(["5/3", 2], [0, 1])
    assert s.at(1) == Fraction(5, 3)
    assert s(2) == 2
    assert s.at(7) == 7
    assert s.values(3, start=2) == [2, 3, 4]
    for bad in (0, -1, True):
        with pytest.raises(DomainError):
            s.at(bad)


def test_sequence_degree():
    assert EventuallyPolynomialSeq([1, 2], [0, 1]).polynomial_degree() == 1
    assert EventuallyPolynomialSeq([1, 3], [0, 1]).polynomial_degree() == NOT_POLYNOMIAL
    assert EventuallyPolynomialSeq([5], [0, 1]).shift(1).polynomial_degree() == 1
    assert EventuallyPolynomialSeq([], []).is_zero()
    assert not EventuallyPolynomialSeq([1], []).is_zero()
    assert EventuallyPolynomialSeq([1], [1]).is_polynomial_of_degree_at_most(0)
    assert not EventuallyPolynomialSeq([2], [1]).is_polynomial_of_degree_at_most(5)


def test_sequence_arithmetic():
    a = EventuallyPolynomialSeq([9], [0, 1])
    b = EventuallyPolynomialSeq([1, 1], [1])
    total = a + b
    assert [total.at(j) for j in range(1, 5)] == [10, 3, 4, 5]
    assert (a - a).is_zero()
    assert (a * 2).at(1) == 18
    with pytest.raises(DomainError):
        a.shift(-1)


@settings(max_examples=50, deadline=None)
@given(
    prefix=st.lists(small_fractions, max_size=4),
    tail=coefficient_lists,
    order=st.integers(0, 3),
    start=st.integers(1, 6),
)
def test_delta_agrees_with_alternating_sum(prefix, tail, order, start):
    s = EventuallyPolynomialSeq(prefix, tail)
    window = s.values(order + 1, start=start)
    assert s.delta(order).at(start) == (-1) ** order * alt_binomial_sum(window)


sequences = st.builds(
    EventuallyPolynomialSeq,
    st.lists(small_fractions, max_size=4),
    st.lists(small_fractions, max_size=4),
)


@settings(max_examples=100, deadline=None)
@given(s=sequences, d=st.integers(0, 4))
def test_degree_test_is_a_vanishing_difference(s, d):
    assert s.is_polynomial_of_degree_at_most(d) == s.delta(d + 1).is_zero()
    if s.is_polynomial_of_degree_at_most(d):
        assert s.is_polynomial_of_degree_at_most(d + 1)


@settings(max_examples=100, deadline=None)
@given(s=sequences)
def test_delta_commutes_with_shift(s):
    left, right = s.shift(1).delta(), s.delta().shift(1)
    assert left.values(8) == right.values(8)
    assert left.tail == right.tail
