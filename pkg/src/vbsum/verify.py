"""Self-check suites behind ``vbs verify``."""

from __future__ import annotations

import math
import random
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .alpha import (
    alpha_number,
    classify_partial_expansion,
    digit_agreement_check,
    fast_sum_below_term,
    max_zero_run_check,
    recover_next_value,
    tail_bounds_check,
    trace_above_with_step,
)
from .conversions import GsumSource, cut_from_gsum, gsum_terms_from_trace_and_cut, trace_below_from_gsum
from .errors import UnknownSuite
from .oracles import Side, cut, make_oracle
from .primes import bertrand_check, nth_prime
from .rational import digit_at, expansion_shape, multiplicative_order
from .schedules import BUILTIN, check_growth_property, check_square_inequality, get_schedule
from .sumapprox import general_sum, partial_value, sum_above, sum_below


@dataclass
class Report:
    suite: str
    checks: list[tuple[str, bool]] = field(default_factory=list)

    def add(self, name: str, ok: bool) -> None:
        self.checks.append((name, bool(ok)))

    @property
    def passed(self) -> int:
        return sum(ok for _, ok in self.checks)

    @property
    def ok(self) -> bool:
        return self.passed == len(self.checks)

    def lines(self) -> list[str]:
        out = [f"{'PASS' if ok else 'FAIL'} {name}" for name, ok in self.checks]
        out.append(f"{self.suite}: {self.passed}/{len(self.checks)} passed")
        return out


def _progress(msg: str) -> None:
    print(msg, file=sys.stderr, flush=True)


def long_division_shape(c: int, d: int, b: int) -> tuple[int, int]:
    """(preperiod, cycle length) by remainder-cycle detection; cycle 0 if finite."""
    seen = {}
    r = c % d
    pos = 0
    while r and r not in seen:
        seen[r] = pos
        r = r * b % d
        pos += 1
    if r == 0:
        return pos, 0
    return seen[r], pos - seen[r]


def naive_digit(c: int, d: int, b: int, i: int) -> int:
    r = c
    digit = 0
    for _ in range(i):
        digit, r = divmod(r * b, d)
    return digit


def suite_expansions(max_den: int = 200, **_) -> Report:
    rep = Report("expansions")
    bad_shape = bad_order = total = 0
    for b in range(2, 13):
        for d in range(2, max_den + 1):
            for c in range(1, d):
                if math.gcd(c, d) != 1:
                    continue
                total += 1
                shape = expansion_shape(Fraction(c, d), b)
                pre, cyc = long_division_shape(c, d, b)
                if shape.is_finite:
                    bad_shape += not (cyc == 0 and shape.preperiod == pre)
                else:
                    bad_shape += (shape.preperiod, shape.period) != (pre, cyc)
                    bad_order += shape.period != multiplicative_order(b, shape.d1)
    rep.add(f"shape equals long division on {total} cases", bad_shape == 0)
    rep.add("period equals multiplicative order", bad_order == 0)
    rng = random.Random(2024)
    bad = 0
    for _ in range(500):
        d = rng.randint(2, 1000)
        c = rng.randint(0, d - 1)
        b = rng.randint(2, 16)
        i = rng.randint(1, 10**4)
        bad += digit_at(Fraction(c, d), b, i) != naive_digit(c, d, b, i)
    rep.add("digitAt equals naive long division (500 samples)", bad == 0)
    return rep


def suite_sumapprox(real: str = "sqrt:2", base: int = 10, terms: int = 50, **_) -> Report:
    rep = Report("sumapprox")
    o = make_oracle(real)
    below = sum_below(o, base, terms)
    above = sum_above(o, base, terms)
    rep.add("digits nonzero and exponents increasing",
            all(1 <= t.digit < base for t in below) and all(1 <= t.digit < base for t in above))
    low = partial_value(below)
    err_b = Fraction(1, base ** below[-1].exponent)
    err_a = Fraction(1, base ** above[-1].exponent)
    rep.add("partial sum below the value", cut(o, low) is Side.BELOW)
    rep.add("partial sum + b^-k above the value", cut(o, low + err_b) is Side.ABOVE)
    upper = 1 - partial_value(above)
    rep.add("1 - partial above is above the value", cut(o, upper) is Side.ABOVE)
    rep.add("1 - partial above - b^-k' is below the value", cut(o, upper - err_a) is Side.BELOW)
    defect = 1 - low - partial_value(above)
    rep.add("0 < identity defect < b^-k + b^-k'", 0 < defect < err_b + err_a)
    rep.add("G(b, n) equals the n-th term",
            all(general_sum(o, base, n) == below[n - 1].value for n in range(1, min(terms, 20) + 1)))
    return rep


def suite_lemma2(schedule: str = "T1", count: int = 2, **_) -> Report:
    rep = Report("lemma2")
    a = alpha_number(schedule)
    for n in range(min(count, len(a.schedule) - 2)):
        rep.add(f"tail bounds at n={n}", tail_bounds_check(a, n))
    return rep


def suite_lemma3(schedule: str = "T1", max_j: int = 2, **_) -> Report:
    rep = Report("lemma3")
    a = alpha_number(schedule)
    s = a.schedule
    for j in range(min(max_j, len(s) - 1) + 1):
        for b in (2, 6, 30):
            shape = classify_partial_expansion(a, j, b)
            divides = all(b % nth_prime(i) == 0 for i in range(j + 1))
            rep.add(f"j={j} b={b} finite iff all P_i divide b", shape.is_finite == divides)
            if divides:
                last = digit_at(a.partial(j), b, shape.length)
                rep.add(f"j={j} b={b} length h(j) with nonzero last digit",
                        shape.length == s.require(j) and last != 0)
    return rep


def suite_lemma4(schedule: str = "T1", base: int = 2, horizon: int = 10**4, max_j: int = 2, **_) -> Report:
    rep = Report("lemma4")
    a = alpha_number(schedule)
    top = min(max_j, len(a.schedule) - 2)
    for j in range(top + 1):
        if nth_prime(j) > base:
            rep.add(f"zero-run bound j={j}", max_zero_run_check(a, j, base, horizon))
        rep.add(f"digit agreement j={j}", digit_agreement_check(a, j, base, horizon))
    return rep


def suite_thm4(schedule: str = "T2", base: int = 2, start: int | None = None, count: int | None = None, **_) -> Report:
    rep = Report("thm4")
    a = alpha_number(schedule)
    if start is None:
        ns = [729, 740, 774, 775, 800]
    else:
        ns = list(range(start, start + (count or 1)))
    for n in ns:
        _progress(f"thm4: n={n}")
        term, trace = fast_sum_below_term(a, base, n)
        ref = sum_below(a.oracle(), base, n)[-1]
        rep.add(f"n={n} {trace.branch} term {term} equals extraction", term == ref)
    return rep


def suite_thm5(schedule: str = "T1", count: int = 3, **_) -> Report:
    rep = Report("thm5")
    a = alpha_number(schedule)
    for n in range(min(count, len(a.schedule) - 1)):
        _progress(f"thm5: n={n}")
        got = recover_next_value(a, n, a.schedule.require(n))
        rep.add(f"h({n + 1}) recovered as {got}", got == a.schedule.require(n + 1))
    return rep


def thm6_sample(a, count: int, max_den: int = 10**4, seed: int = 6) -> list[Fraction]:
    """All rationals with tiny denominators, then nearest neighbours of alpha, then uniform ones."""
    qs = []
    for d in range(2, 31):
        qs.extend(Fraction(c, d) for c in range(1, d) if math.gcd(c, d) == 1)
    rng = random.Random(seed)
    approx = a.partial(min(3, len(a.schedule) - 1))
    while len(qs) < count:
        d = rng.randint(2, max_den)
        if len(qs) % 2:
            c = math.floor(approx * d) + rng.choice((0, 1))
        else:
            c = rng.randint(1, d - 1)
        if 0 < c < d:
            qs.append(Fraction(c, d))
    return qs[:count]


def suite_thm6(schedule: str = "T1", count: int = 1000, **_) -> Report:
    rep = Report("thm6")
    a = alpha_number(schedule)
    o = a.oracle()
    bad_trace = bad_cut = 0
    steps: dict[str, int] = {}
    for q in thm6_sample(a, count):
        value, step = trace_above_with_step(a, q)
        steps[step] = steps.get(step, 0) + 1
        side = cut(o, q)
        if value == 0:
            bad_trace += side is not Side.BELOW
        else:
            bad_trace += not (side is Side.ABOVE and value < q and cut(o, value) is Side.ABOVE)
        bad_cut += (0 if value == 0 else 1) != (0 if side is Side.BELOW else 1)
    rep.add(f"trace from above sound on {count} rationals", bad_trace == 0)
    rep.add("Dedekind cut agrees with oracle cut", bad_cut == 0)
    _progress("thm6 steps: " + ", ".join(f"{k}={v}" for k, v in sorted(steps.items())))
    return rep


def suite_thm8(real: str = "sqrt:2", base: int = 10, terms: int = 40, **_) -> Report:
    rep = Report("thm8")
    o = make_oracle(real)
    src = GsumSource(o)
    rebuilt = gsum_terms_from_trace_and_cut(
        lambda q: trace_below_from_gsum(src, q), lambda q: cut_from_gsum(src, q), base, terms
    )
    direct = [t.value for t in sum_below(o, base, terms)]
    for n in range(1, terms + 1):
        rep.add(f"G({base},{n}) round trip", rebuilt[n - 1] == direct[n - 1])
    rep.add("reconstructed partial sums increase",
            all(x > 0 for x in rebuilt))
    return rep


def suite_bertrand(max: int = 5000, **_) -> Report:
    rep = Report("bertrand")
    rep.add(f"P_y <= 2^(y+1) for y <= {max}", bertrand_check(max))
    for s in BUILTIN.values():
        for n in range(len(s) - 1):
            if check_growth_property(s, n):
                rep.add(f"{s.id}: growth at {n} implies square inequality", check_square_inequality(s, n))
    return rep


SUITES: dict[str, Callable[..., Report]] = {
    "expansions": suite_expansions,
    "sumapprox": suite_sumapprox,
    "lemma2": suite_lemma2,
    "lemma3": suite_lemma3,
    "lemma4": suite_lemma4,
    "thm4": suite_thm4,
    "thm5": suite_thm5,
    "thm6": suite_thm6,
    "thm8": suite_thm8,
    "bertrand": suite_bertrand,
}


def run_suite(name: str, **options) -> Report:
    try:
        fn = SUITES[name]
    except KeyError:
        raise UnknownSuite(name) from None
    return fn(**{k: v for k, v in options.items() if v is not None})
