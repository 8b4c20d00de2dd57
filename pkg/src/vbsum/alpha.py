"""The numbers alpha = sum_i P_i**-h(i) for a schedule h.

Covers the partial sums alpha_j and their companions beta_j, the bounds
M(j) and M'(j), executable forms of the irrationality tail estimate, the
finite/periodic classification and the zero-run / digit-agreement facts,
plus the algorithms that compute the base-b sum approximation quickly,
recover h from the general sum approximation and trace alpha from above.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from .errors import (
    GuardFailed,
    NotFoundWithinCap,
    OutOfRange,
    PremiseViolated,
    ScheduleExhausted,
    SearchFailed,
    Undecidable,
)
from .oracles import AlphaOracle, Side, cut, real_prefix
from .power import Magnitude, PowerValue, as_int, compare
from .primes import nth_prime, primorial_base
from .rational import ExpansionShape, check_base, expand_prefix, expansion_shape, nth_nonzero_digit
from .schedules import (
    Schedule,
    big_m as _big_m,
    big_m_prime as _big_m_prime,
    bounded_search,
    check_square_inequality,
    get_schedule,
    graph_contains,
)
from .sumapprox import SumTerm, general_sum, sum_below


class AlphaNumber:
    """alpha for one schedule, with thread-safe caches of alpha_j and beta_j."""

    def __init__(self, schedule: Schedule):
        self.schedule = schedule
        self._partials: list[Fraction] = []
        self._lock = threading.Lock()
        self._oracle = AlphaOracle(self)

    def __repr__(self):
        return f"AlphaNumber({self.schedule.id})"

    def term(self, i: int) -> Fraction:
        return Fraction(1, nth_prime(i) ** self.schedule.require(i))

    def partial(self, j: int) -> Fraction:
        """alpha_j; lowest terms come for free since the added denominators are coprime."""
        if j < 0:
            raise ValueError("index must be natural")
        with self._lock:
            while len(self._partials) <= j:
                i = len(self._partials)
                prev = self._partials[-1] if self._partials else Fraction(0)
                self._partials.append(prev + self.term(i))
            return self._partials[j]

    def beta(self, j: int) -> Fraction:
        if j == 0:
            return Fraction(2) ** (1 - self.schedule.require(0))
        p = nth_prime(j)
        return self.partial(j - 1) + Fraction(1, p ** (self.schedule.require(j) - 1))

    def oracle(self) -> AlphaOracle:
        return self._oracle


@lru_cache(maxsize=None)
def _cached_alpha(schedule_id: str) -> AlphaNumber:
    return AlphaNumber(get_schedule(schedule_id))


def alpha_number(schedule) -> AlphaNumber:
    """AlphaNumber for a Schedule, a bundled id, or ``@file.json``."""
    if isinstance(schedule, Schedule):
        return AlphaNumber(schedule)
    if schedule.startswith("@"):
        return AlphaNumber(get_schedule(schedule))
    return _cached_alpha(schedule)


def partial_alpha(a: AlphaNumber, n: int) -> Fraction:
    return a.partial(n)


def beta(a: AlphaNumber, j: int) -> Fraction:
    return a.beta(j)


def big_m(a: AlphaNumber, j: int) -> PowerValue:
    return _big_m(a.schedule, j)


def big_m_prime(a: AlphaNumber, j: int) -> Magnitude:
    return _big_m_prime(a.schedule, j)


def _primes_through(j: int) -> list[int]:
    return [nth_prime(i) for i in range(j + 1)]


def classify_partial_expansion(a: AlphaNumber, j: int, b: int) -> ExpansionShape:
    """Finite or periodic base-b expansion of alpha_j.

    Finite exactly when every P_i (i <= j) divides b. The finite length is
    h(j) when b is squarefree in those primes, and shorter otherwise.
    """
    check_base(b)
    return expansion_shape(a.partial(j), b, factors=_primes_through(j))


def max_zero_run_check(a: AlphaNumber, j: int, b: int, horizon: int) -> bool:
    """No run of M(j) zeros among the first ``horizon`` digits of alpha_j."""
    check_base(b)
    if nth_prime(j) <= b:
        raise PremiseViolated(f"P_{j} = {nth_prime(j)} does not exceed the base {b}")
    bound = big_m(a, j).floor_clamp(horizon + 1)
    run = 0
    for digit in expand_prefix(a.partial(j), b, horizon).digits:
        run = run + 1 if digit == 0 else 0
        if run >= bound:
            return False
    return True


def agreement_length(a: AlphaNumber, j: int, cap: int) -> int:
    """min(M'(j) - M(j), cap), floored at 0."""
    diff_sign = compare(big_m_prime(a, j), big_m(a, j))
    if diff_sign <= 0:
        return 0
    m = big_m(a, j)
    m_prime = big_m_prime(a, j)
    # M' - M >= cap  <=>  M' >= M + cap
    if isinstance(m_prime, int) or compare(m_prime, m.floor_clamp(1 << 64) + cap) < 0:
        return min(as_int(m_prime) - as_int(m), cap)
    return cap


def digit_agreement_check(a: AlphaNumber, j: int, b: int, cap: int) -> bool:
    """alpha_j, alpha_{j+1} and alpha share their first min(M'(j) - M(j), cap) digits.

    The comparison is evaluated even when P_j <= b; the digit agreement is
    then an observation rather than a consequence of the zero-run bound.
    """
    check_base(b)
    length = agreement_length(a, j, cap)
    if length == 0:
        return True
    first = expand_prefix(a.partial(j), b, length).digits
    second = expand_prefix(a.partial(j + 1), b, length).digits
    limit = real_prefix(a.oracle(), b, length).digits
    return first == second == limit


def tail_bounds_check(a: AlphaNumber, n: int) -> bool:
    """P_{n+1}**-h(n+1) < alpha - alpha_n <= P_{n+1}**(1 - h(n+1)).

    Both sides reduce to oracle cuts: alpha_{n+1} must lie below alpha and
    beta_{n+1} above it.
    """
    o = a.oracle()
    return cut(o, a.partial(n + 1)) is Side.BELOW and cut(o, a.beta(n + 1)) is Side.ABOVE


# --- fast computation of the sum approximation ---------------------------------


@dataclass
class FastPathTrace:
    resolved_j: Optional[int]
    branch: str  # "Fallback", "Step3A" or "Step3B"
    guards: list[tuple[str, bool]] = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "resolvedJ": self.resolved_j,
            "branch": self.branch,
            "guards": [{"name": name, "ok": ok} for name, ok in self.guards],
        }


def least_prime_index_above(b: int) -> int:
    m = 0
    while nth_prime(m) <= b:
        m += 1
    return m


def fast_sum_below_term(a: AlphaNumber, b: int, n: int) -> tuple[SumTerm, FastPathTrace]:
    """The n-th term of alpha's base-b sum approximation from below.

    Below M(m), with m the least index such that P_m > b, the term is read
    off the bracketing oracle. From there on the term comes from a single
    partial sum alpha_j (or alpha_{j+1}) scanned over a bounded digit window.
    Every inequality the window argument needs is re-checked; a failed one
    raises GuardFailed.
    """
    check_base(b)
    if n < 1:
        raise ValueError("n must be positive")
    s = a.schedule
    m = least_prime_index_above(b)
    if compare(n, big_m(a, m)) < 0:
        return sum_below(a.oracle(), b, n).terms[-1], FastPathTrace(None, "Fallback")

    j = m
    while compare(n, big_m(a, j + 1)) >= 0:
        j += 1
    trace = FastPathTrace(j, "")
    m_j = as_int(big_m(a, j))  # M(j) <= n
    step3a = compare(n * n + 1 + m_j, big_m_prime(a, j)) < 0
    trace.guards.append(("n^2+1 < M'(j)-M(j)", step3a))
    try:
        sq = check_square_inequality(s, j + 1)
    except (Undecidable, ScheduleExhausted):
        sq = None
    trace.guards.append((f"checkSquareInequality({j + 1})", sq))

    if step3a:
        trace.branch = "Step3A"
        premise = nth_prime(j) > b
        trace.guards.append(("P_j > b", premise))
        if not premise:
            raise GuardFailed("P_j > b")
        q = a.partial(j)
        cap: Magnitude = n * n + 1
    else:
        trace.branch = "Step3B"
        if not sq:
            raise GuardFailed("checkSquareInequality", f"j+1 = {j + 1}")
        m_next = big_m(a, j + 1)
        window = compare(PowerValue(n + 1, m_next.base, m_next.exp, 1), big_m_prime(a, j + 1)) < 0
        trace.guards.append(("n*M(j+1)+1 < M'(j+1)-M(j+1)", window))
        if not window:
            raise GuardFailed("window", f"n = {n}")
        q = a.partial(j + 1)
        cap = m_next.scaled(n)
    try:
        pos, digit = nth_nonzero_digit(q, b, n, cap)
    except NotFoundWithinCap as exc:
        raise GuardFailed("nonzero digits in window", str(exc)) from exc
    return SumTerm(digit, b, pos), trace


# --- recovering h from the general sum approximation ----------------------------


def recover_next_value(a: AlphaNumber, n: int, hn: int, graph=None) -> int:
    """Find h(n+1) from h(n) using only the graph of h and G(b, h(n)+1).

    With b = P_0 * ... * P_n, the term G(b, h(n)+1) lies in alpha's tail, so
    h(n+1) < 1/G + 1; the answer is the first y in that range accepted by
    the graph predicate.
    """
    fn = graph if graph is not None else a.schedule
    b = primorial_base(n)
    g = general_sum(a.oracle(), b, hn + 1)
    bound = math.ceil(1 / g + 1)
    for y in range(bound):
        if graph_contains(fn, n + 1, y):
            return y
    raise SearchFailed(f"no y < {bound} with h({n + 1}) = y")


# --- trace from above and the Dedekind cut ----------------------------------------


def _pow_cmp(p: int, e: int, x: Fraction) -> int:
    """Sign of p**e - x for a positive rational x."""
    return compare(PowerValue(x.denominator, p, e), x.numerator)


def _least_exponent(b: int, x: Fraction) -> int:
    """Least t >= 1 with b**t > x (x positive)."""
    est = max(1, (x.numerator.bit_length() - x.denominator.bit_length()) // b.bit_length())
    t = est
    while b**t * x.denominator <= x.numerator:
        t += 1
    while t > 1 and b ** (t - 1) * x.denominator > x.numerator:
        t -= 1
    return t


def trace_above_with_step(a: AlphaNumber, q) -> tuple[Fraction, str]:
    """trace_above plus the name of the step that produced the answer."""
    q = Fraction(q)
    if not 0 < q < 1:
        raise OutOfRange(f"{q} is not in (0,1)")
    s = a.schedule

    # Step 1: q = m / n with n >= h(0); base b = P_0 ... P_n
    n = max(q.denominator, s.require(0))
    b = primorial_base(n)

    # Step 2: j with h(j) <= n < h(j+1)
    j = 0
    while True:
        if j + 1 < len(s):
            if compare(n, s.entry(j + 1)) < 0:
                break
        elif n < s.lower_bound(j + 1):
            break
        else:
            raise ScheduleExhausted(f"schedule {s.id} ends before h exceeds {n}")
        j += 1

    # Step 3
    if q <= a.partial(j):
        return Fraction(0), "Step3"
    for k in range(j + 1):
        if a.beta(k) < q:
            return a.beta(k), "Step3"

    # Step 4: q <= beta_{j+1}  <=>  P_{j+1}**h(j+1) <= P_{j+1} / (q - alpha_j)
    p1 = nth_prime(j + 1)
    bound = p1 / (q - a.partial(j))
    y = bounded_search(s, j + 1, bound)
    if y is None or _pow_cmp(p1, y, bound) > 0:
        return _step6(a, q, b, j), "Step6B"

    # Step 5
    alpha_next = a.partial(j + 1)
    if q <= alpha_next:
        return Fraction(0), "Step5"
    p2 = nth_prime(j + 2)
    bound = p2 / (q - alpha_next)
    z = bounded_search(s, j + 2, bound)
    if z is not None and _pow_cmp(p2, z, bound) <= 0:
        # q <= beta_{j+2}; q < alpha needs b**(h(j+1)+1) < P_{j+2}**(h(j+2)-1)
        ok = compare(PowerValue(1, b, y + 1), PowerValue(1, p2, z - 1)) < 0
        if not ok:
            raise GuardFailed("b^(h(j+1)+1) < P_{j+2}^(h(j+2)-1)", f"q = {q}")
        return Fraction(0), "Step5"
    return _step6(a, q, b, j + 1), "Step6A"


def _step6(a: AlphaNumber, q: Fraction, b: int, k: int) -> Fraction:
    """Steps 6A/6B with alpha_k and index k+1, entered when beta_{k+1} < q."""
    alpha_k = a.partial(k)
    t = _least_exponent(b, 1 / (q - alpha_k))
    shifted = q - Fraction(1, b**t)
    p = nth_prime(k + 1)
    bound = p / (shifted - alpha_k)
    u = bounded_search(a.schedule, k + 1, bound)
    if u is not None and _pow_cmp(p, u, bound) < 0:
        return a.beta(k + 1)
    return shifted


def trace_above(a: AlphaNumber, q) -> Fraction:
    """0 when q < alpha, otherwise a rational strictly between alpha and q."""
    return trace_above_with_step(a, q)[0]


def dedekind_cut(a: AlphaNumber, q) -> int:
    """0 iff q < alpha."""
    return 0 if trace_above(a, q) == 0 else 1
