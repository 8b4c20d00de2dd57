"""Acceptance criteria 1-12, each at its stated tolerance and time limit.

Every criterion is compared against an oracle written here from first
principles (plain long division, integer square roots, exact Fractions)
rather than against the library's own helpers.
"""

import random
import time
from fractions import Fraction
from math import gcd, isqrt

import pytest

from vbsum.alpha import (
    AlphaNumber,
    digit_agreement_check,
    fast_sum_below_term,
    max_zero_run_check,
    recover_next_value,
    tail_bounds_check,
    trace_above_with_step,
)
from vbsum.conversions import GsumSource, cut_from_gsum, gsum_terms_from_trace_and_cut, trace_below_from_gsum
from vbsum.oracles import Side, cut, make_oracle
from vbsum.primes import bertrand_check, nth_prime
from vbsum.rational import digit_at, expansion_shape, multiplicative_order, split_denominator
from vbsum.schedules import BUILTIN, Schedule, check_growth_property, check_square_inequality
from vbsum.sumapprox import general_sum, partial_value, sum_above, sum_below
from vbsum.verify import thm6_sample


def fresh(schedule_id):
    """An alpha with empty caches, so timings include all of the work."""
    base = BUILTIN[schedule_id]
    return AlphaNumber(Schedule(base.id, base.values))


class Timer:
    def __init__(self, limit):
        self.limit = limit

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start
        if exc[0] is None:
            assert self.elapsed < self.limit, f"took {self.elapsed:.1f}s, limit {self.limit}s"


def cycle_shape(c, d, b):
    """(preperiod, period) by long division with remainder cycle detection; period 0 if finite."""
    seen = {}
    r, pos = c % d, 0
    while r and r not in seen:
        seen[r] = pos
        r = r * b % d
        pos += 1
    if r == 0:
        return pos, 0
    return seen[r], pos - seen[r]


def long_division_digit(c, d, b, i):
    r = c % d
    for _ in range(i - 1):
        r = r * b % d
    return r * b // d


@pytest.mark.criterion(1, "expansion structure, d <= 200, bases 2-12")
def test_expansion_structure():
    with Timer(10):
        bad = []
        for d in range(2, 201):
            for c in range(1, d):
                if gcd(c, d) != 1:
                    continue
                q = Fraction(c, d)
                for b in range(2, 13):
                    shape = expansion_shape(q, b)
                    s, p = cycle_shape(c, d, b)
                    if shape.is_finite:
                        ok = p == 0 and shape.length == s
                    else:
                        d1, _ = split_denominator(d, b)
                        ok = (shape.preperiod, shape.period) == (s, p) and p == multiplicative_order(b, d1)
                    if not ok:
                        bad.append((c, d, b))
        assert bad == []


@pytest.mark.criterion(2, "digitAt versus naive long division, 500 samples")
def test_digit_access():
    rng = random.Random(2)
    samples = []
    for _ in range(500):
        d = rng.randint(2, 10**6)
        c = rng.randrange(0, d)
        samples.append((c, d, rng.randint(2, 36), rng.randint(1, 10**4)))
    expected = [long_division_digit(c, d, b, i) for c, d, b, i in samples]
    with Timer(5):
        got = [digit_at(Fraction(c, d), b, i) for c, d, b, i in samples]
    assert got == expected


@pytest.mark.criterion(3, "sumBelow(sqrt2 - 1, 10, 100) against a 150-digit reference")
def test_sum_below_sqrt2():
    ref = str(isqrt(2 * 10**300) - 10**150).zfill(150)
    expected = [(int(ch), pos) for pos, ch in enumerate(ref, 1) if ch != "0"][:100]
    with Timer(5):
        seq = sum_below(make_oracle("sqrt:2"), 10, 100)
    assert [(t.digit, t.exponent) for t in seq] == expected
    assert (seq[12].digit, seq[12].exponent) == (9, 14)


@pytest.mark.criterion(4, "identity: sum below + sum above = 1 at N = 50")
def test_identity():
    with Timer(30):
        for spec in ("sqrt:2", "alpha:T1"):
            o = fresh("T1").oracle() if spec == "alpha:T1" else make_oracle(spec)
            for b in (2, 3, 10, 16):
                below = sum_below(o, b, 50)
                above = sum_above(o, b, 50)
                defect = 1 - partial_value(below) - partial_value(above)
                bound = Fraction(1, b ** below[-1].exponent) + Fraction(1, b ** above[-1].exponent)
                assert 0 < defect < bound, (spec, b)


@pytest.mark.criterion(5, "trace + cut reconstruct the general sum, n <= 40")
def test_conversion_round_trip():
    with Timer(60):
        for spec in ("sqrt:2", "alpha:T1"):
            o = fresh("T1").oracle() if spec == "alpha:T1" else make_oracle(spec)
            src = GsumSource(o)
            trace = lambda q, src=src: trace_below_from_gsum(src, q)
            dcut = lambda q, src=src: cut_from_gsum(src, q)
            for b in (2, 10):
                rebuilt = gsum_terms_from_trace_and_cut(trace, dcut, b, 40)
                direct = [general_sum(o, b, n) for n in range(1, 41)]
                assert rebuilt == direct, (spec, b)


@pytest.mark.criterion(6, "trace from above on T1, 1000 rationals with denominator <= 10^4")
def test_trace_above_sound():
    a = fresh("T1")
    o = a.oracle()
    sample = thm6_sample(a, 1000, 10**4)
    assert len(sample) == 1000 and all(q.denominator <= 10**4 for q in sample)
    steps = {}
    with Timer(60):
        for q in sample:
            t, step = trace_above_with_step(a, q)
            steps[step] = steps.get(step, 0) + 1
            below = cut(o, q) is Side.BELOW
            if t == 0:
                assert below, q
            else:
                assert not below, q
                assert t < q and cut(o, t) is Side.ABOVE, q
    print("branch counts:", dict(sorted(steps.items())))


@pytest.mark.criterion(7, "recovering h(n+1) on T1 for n = 0, 1, 2")
def test_recovery():
    a = fresh("T1")
    with Timer(60):
        got = [recover_next_value(a, n, a.schedule.require(n)) for n in range(3)]
    assert got == [5, 22, 112]


@pytest.mark.criterion(8, "fast path on T2 in base 2")
def test_fast_path():
    a = fresh("T2")
    o = a.oracle()
    want = {729: "Step3A", 740: "Step3A", 774: "Step3A", 775: "Step3B", 800: "Step3B"}
    with Timer(300):
        reference = sum_below(o, 2, 800)
        for n, branch in want.items():
            term, trace = fast_sum_below_term(a, 2, n)
            assert trace.branch == branch, n
            assert term == reference[n - 1], n
            guards = dict(trace.guards)
            assert guards["checkSquareInequality(2)"] is True
            # the first entry selects the branch; the rest must hold
            assert all(ok for ok in list(guards.values())[1:])


@pytest.mark.criterion(9, "zero-run bound and digit agreement, base 2, horizon 10^4")
def test_lemma4():
    t1, t2 = fresh("T1"), fresh("T2")
    with Timer(30):
        # the zero-run bound presumes P_j > b, which excludes T1 at j = 0
        for j in (1, 2):
            assert max_zero_run_check(t1, j, 2, 10**4)
        for j in (0, 1, 2):
            assert digit_agreement_check(t1, j, 2, 10**4)
        assert max_zero_run_check(t2, 1, 2, 10**4)
        assert digit_agreement_check(t2, 1, 2, 10**4)


@pytest.mark.criterion(10, "tail bounds on T1 (n = 0, 1) and T2 (n = 0)")
def test_tail_bounds():
    with Timer(5):
        assert tail_bounds_check(fresh("T1"), 0)
        assert tail_bounds_check(fresh("T1"), 1)
        assert tail_bounds_check(fresh("T2"), 0)


@pytest.mark.criterion(11, "P_y <= 2^(y+1) for y <= 5000")
def test_bertrand():
    with Timer(5):
        assert bertrand_check(5000)
        assert all(nth_prime(y) <= 2 ** (y + 1) for y in range(5001))


@pytest.mark.criterion(12, "growth property implies the square inequality")
def test_growth_implies_square():
    hits = 0
    for s in BUILTIN.values():
        for n in range(len(s) - 1):
            if check_growth_property(s, n):
                hits += 1
                assert check_square_inequality(s, n), (s.id, n)
    assert hits >= 1
