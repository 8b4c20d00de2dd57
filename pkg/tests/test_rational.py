from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from vbsum.errors import BadBase, NotCoprime, NotFoundWithinCap, OutOfRange, ZeroDenominator
from vbsum.power import PowerValue
from vbsum.rational import (
    digit_at,
    expand_prefix,
    expansion_shape,
    format_rational,
    multiplicative_order,
    nth_nonzero_digit,
    parse_rational,
    reduce_rational,
    split_denominator,
)
from vbsum.verify import long_division_shape, naive_digit


@pytest.mark.parametrize("num,den,want", [(2, 4, Fraction(1, 2)), (-3, 6, Fraction(-1, 2)), (5, 1, Fraction(5))])
def test_reduce(num, den, want):
    assert reduce_rational(num, den) == want


def test_reduce_zero_den():
    with pytest.raises(ZeroDenominator):
        reduce_rational(1, 0)


def test_parse_and_format():
    assert parse_rational("6/8") == Fraction(3, 4)
    assert format_rational(Fraction(5)) == "5/1"
    assert format_rational(parse_rational("-3/6")) == "-1/2"
    with pytest.raises(ValueError):
        parse_rational("abc")


@pytest.mark.parametrize(
    "q,b,i,want",
    [("1/7", 10, 1, 1), ("1/2", 2, 1, 1), ("1/2", 2, 2, 0), ("3/8", 10, 3, 5), ("1/6", 10, 5, 6)],
)
def test_digit_at(q, b, i, want):
    assert digit_at(Fraction(q), b, i) == want


def test_digit_at_errors():
    with pytest.raises(BadBase):
        digit_at(Fraction(1, 3), 1, 1)
    with pytest.raises(OutOfRange):
        digit_at(Fraction(3, 2), 10, 1)


@pytest.mark.parametrize("b,d,want", [(10, 3, 1), (2, 3, 2), (10, 7, 6), (5, 1, 1)])
def test_multiplicative_order(b, d, want):
    assert multiplicative_order(b, d) == want


def test_order_not_coprime():
    with pytest.raises(NotCoprime):
        multiplicative_order(10, 4)


def test_shapes():
    assert expansion_shape(Fraction(1, 6), 10).as_dict() == {"kind": "periodic", "preperiod": 1, "period": 1}
    assert expansion_shape(Fraction(3, 8), 10).as_dict() == {"kind": "finite", "length": 3}
    assert expansion_shape(Fraction(1, 3), 2).as_dict() == {"kind": "periodic", "preperiod": 0, "period": 2}
    assert expansion_shape(Fraction(1, 2), 2).as_dict() == {"kind": "finite", "length": 1}


def test_large_denominator_order_is_fast():
    shape = expansion_shape(Fraction(1, 27 * 5**600000), 2, factors=[3, 5])
    assert not shape.is_finite
    assert shape.preperiod == 0


def test_expand_prefix():
    assert expand_prefix(Fraction(1, 7), 10, 6).digits == (1, 4, 2, 8, 5, 7)
    assert expand_prefix(Fraction(1, 2), 2, 3).digits == (1, 0, 0)
    window = expand_prefix(Fraction(29, 54), 2, 5)
    assert window.digits == (1, 0, 0, 0, 1)
    assert window.serialize() == "1,0,0,0,1"


def test_nth_nonzero():
    assert nth_nonzero_digit(Fraction(11, 100), 10, 2, 10) == (2, 1)
    assert nth_nonzero_digit(Fraction(1, 101), 10, 1, 10) == (3, 9)


def test_nth_nonzero_matches_scan():
    q = Fraction(29, 54)
    seen = 0
    for pos in range(1, 10**6):
        d = naive_digit(q.numerator, q.denominator, 2, pos)
        if d:
            seen += 1
            if seen == 775:
                break
    assert nth_nonzero_digit(q, 2, 775, 10**6) == (pos, d)


def test_nth_nonzero_cap():
    with pytest.raises(NotFoundWithinCap):
        nth_nonzero_digit(Fraction(1, 2), 2, 2, 100)
    with pytest.raises(NotFoundWithinCap):
        nth_nonzero_digit(Fraction(1, 10**9), 10, 1, 5)
    assert nth_nonzero_digit(Fraction(1, 3), 2, 3, PowerValue(1, 2, 100)) == (6, 1)


fractions_unit = st.builds(
    lambda d, c: Fraction(c % d, d), st.integers(2, 400), st.integers(1, 10**6)
).filter(lambda q: q > 0)


@settings(max_examples=200, deadline=None)
@given(fractions_unit, st.integers(2, 16))
def test_shape_matches_long_division(q, b):
    shape = expansion_shape(q, b)
    s, p = long_division_shape(q.numerator, q.denominator, b)
    if shape.is_finite:
        assert p == 0 and shape.length == s
    else:
        assert (shape.preperiod, shape.period) == (s, p)
        d1, _ = split_denominator(q.denominator, b)
        assert shape.period == multiplicative_order(b, d1)


@settings(max_examples=200, deadline=None)
@given(fractions_unit, st.integers(2, 16), st.integers(1, 300))
def test_digit_window_value_brackets(q, b, n):
    w = expand_prefix(q, b, n)
    assert w.value() <= q < w.value() + Fraction(1, b**n)
    assert w[n] == digit_at(q, b, n)


@settings(max_examples=100, deadline=None)
@given(st.integers(-10**9, 10**9), st.integers(1, 10**9))
def test_format_roundtrip(c, d):
    q = Fraction(c, d)
    assert parse_rational(format_rational(q)) == q
