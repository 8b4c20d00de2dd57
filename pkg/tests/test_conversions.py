from fractions import Fraction

import pytest

from vbsum.conversions import (
    GsumSource,
    cut_from_gsum,
    cut_from_gsum_above,
    gsum_above_from_trace_and_cut,
    gsum_from_trace_and_cut,
    native_cut,
    native_trace_below,
    trace_above_from_gsum_above,
    trace_below_from_gsum,
)
from vbsum.oracles import Side, cut, make_oracle
from vbsum.sumapprox import general_sum, general_sum_above

SQRT2 = make_oracle("sqrt:2")
ALPHA = make_oracle("alpha:T1")


def test_trace_below():
    src = GsumSource(SQRT2)
    assert trace_below_from_gsum(src, Fraction(2, 5)) == Fraction(51, 125)
    assert trace_below_from_gsum(src, Fraction(1, 2)) == Fraction(3, 8)
    assert trace_below_from_gsum(GsumSource(ALPHA), Fraction(1, 3)) == Fraction(4, 9)


def test_cut_from_gsum():
    src = GsumSource(SQRT2)
    assert cut_from_gsum(src, Fraction(2, 5)) == 0
    assert cut_from_gsum(src, Fraction(1, 2)) == 1
    assert cut_from_gsum(src, Fraction(3, 7)) == 1


def test_gsum_from_native():
    t, d = native_trace_below(SQRT2), native_cut(SQRT2)
    assert gsum_from_trace_and_cut(t, d, 10, 1) == Fraction(2, 5)
    assert gsum_from_trace_and_cut(t, d, 10, 2) == Fraction(1, 100)
    assert gsum_from_trace_and_cut(t, d, 1, 7) == 0


@pytest.mark.parametrize("o", [SQRT2, ALPHA])
def test_trace_below_improves(o):
    src = GsumSource(o)
    for q in (Fraction(1, 10), Fraction(1, 3), Fraction(2, 5), Fraction(50, 101)):
        if cut(o, q) is Side.BELOW:
            t = trace_below_from_gsum(src, q)
            assert q < t and cut(o, t) is Side.BELOW
            assert cut_from_gsum(src, q) == 0
        else:
            assert cut_from_gsum(src, q) == 1


@pytest.mark.parametrize("o", [SQRT2, ALPHA])
def test_round_trip_from_gsum(o):
    src = GsumSource(o)
    trace = lambda q: trace_below_from_gsum(src, q)
    dcut = lambda q: cut_from_gsum(src, q)
    for b in (2, 3, 10):
        for n in range(1, 8):
            assert gsum_from_trace_and_cut(trace, dcut, b, n) == general_sum(o, b, n)


def test_above_direction():
    src = GsumSource(SQRT2)
    q = Fraction(3, 5)
    t = trace_above_from_gsum_above(src, q)
    assert cut(SQRT2, t) is Side.ABOVE and t < q
    assert cut_from_gsum_above(src, q) == 1
    assert cut_from_gsum_above(src, Fraction(2, 5)) == 0
    trace = lambda q: trace_above_from_gsum_above(src, q)
    dcut = lambda q: cut_from_gsum_above(src, q)
    for n in range(1, 6):
        assert gsum_above_from_trace_and_cut(trace, dcut, 10, n) == general_sum_above(SQRT2, 10, n)
