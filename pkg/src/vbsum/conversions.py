"""Trace function plus Dedekind cut versus general sum approximation.

One direction builds a trace from below and a cut out of G; the other
rebuilds G(b, n) from any trace-from-below and cut of the same irrational.
The from-above variants go through the complement 1 - beta.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable

from .errors import InconsistentOracles
from .oracles import BracketingOracle, Side, cut
from .sumapprox import general_sum

TraceFn = Callable[[Fraction], Fraction]
CutFn = Callable[[Fraction], int]

DEFAULT_STEP_CAP = 10**6


class GsumSource:
    """G(b, n) for the value of a bracketing oracle."""

    def __init__(self, oracle: BracketingOracle):
        self.oracle = oracle

    def gsum(self, b: int, n: int) -> Fraction:
        return general_sum(self.oracle, b, n)

    def complement(self) -> "GsumSource":
        return GsumSource(self.oracle.complement())


def _denominator(q: Fraction) -> int:
    # q = 0 has denominator 1, where G vanishes identically; 0 = 0/2 works instead
    return q.denominator if q.denominator > 1 else 2


def trace_below_from_gsum(src: GsumSource, q) -> Fraction:
    """G(n, 1) + G(n, 2) with n the reduced denominator of q.

    A trace from below whenever q < beta; for q > beta the value carries no
    guarantee.
    """
    q = Fraction(q)
    n = _denominator(q)
    return src.gsum(n, 1) + src.gsum(n, 2)


def cut_from_gsum(src: GsumSource, q) -> int:
    """0 iff q <= G(n, 1), which happens exactly when q < beta."""
    q = Fraction(q)
    return 0 if q <= src.gsum(_denominator(q), 1) else 1


def native_trace_below(o: BracketingOracle) -> TraceFn:
    """Trace from below read directly off the oracle's lower brackets."""

    def trace(q):
        q = Fraction(q)
        n = 0
        while True:
            lo, hi = o.refine(n)
            if lo > q:
                return lo
            if hi <= q:
                # q is above the value: unconstrained, keep it where it is
                return q
            n = 2 * n + 8

    return trace


def native_cut(o: BracketingOracle) -> CutFn:
    return lambda q: 0 if cut(o, q) is Side.BELOW else 1


def gsum_terms_from_trace_and_cut(
    trace: TraceFn, dcut: CutFn, b: int, count: int, step_cap: int = DEFAULT_STEP_CAP
) -> list[Fraction]:
    """G(b, 1), ..., G(b, count) rebuilt from a trace from below and a cut.

    Each step only looks at the running partial sum s: the trace gives a
    rational strictly between s and beta whose leading nonzero digit position
    k bounds the next term's position, and the cut pins down that term.
    """
    if b < 2 or count <= 0:
        return []
    terms: list[Fraction] = []
    partial = Fraction(0)
    probes = 0
    for _ in range(count):
        gap = Fraction(trace(partial)) - partial
        if not 0 < gap < 1:
            raise InconsistentOracles(f"trace did not move {partial} towards the value")
        k = 1
        scale = Fraction(b)
        while gap * scale < 1:
            k += 1
            scale *= b
        found = None
        unit = Fraction(1)
        for ell in range(1, k + 1):
            unit /= b
            for digit in range(b - 1, 0, -1):
                probes += 1
                if probes > step_cap:
                    raise InconsistentOracles(f"no term found within {step_cap} probes")
                low = partial + digit * unit
                if dcut(low) == 0 and dcut(low + unit) == 1:
                    found = digit * unit
                    break
            if found is not None:
                break
        if found is None:
            raise InconsistentOracles(f"no digit at positions 1..{k} fits between the cut values")
        terms.append(found)
        partial += found
    return terms


def gsum_from_trace_and_cut(
    trace: TraceFn, dcut: CutFn, b: int, n: int, step_cap: int = DEFAULT_STEP_CAP
) -> Fraction:
    """G(b, n) from a trace from below and a Dedekind cut; 0 if b < 2 or n == 0."""
    if b < 2 or n <= 0:
        return Fraction(0)
    return gsum_terms_from_trace_and_cut(trace, dcut, b, n, step_cap)[-1]


# --- from above, by complementation ---------------------------------------------


def trace_above_from_gsum_above(src: GsumSource, q) -> Fraction:
    """Trace from above for beta built from the from-above general sum."""
    return 1 - trace_below_from_gsum(src.complement(), 1 - Fraction(q))


def cut_from_gsum_above(src: GsumSource, q) -> int:
    return 1 - cut_from_gsum(src.complement(), 1 - Fraction(q))


def gsum_above_from_trace_and_cut(
    trace_above: TraceFn, dcut: CutFn, b: int, n: int, step_cap: int = DEFAULT_STEP_CAP
) -> Fraction:
    """The from-above general sum rebuilt from a trace from above and a cut."""
    return gsum_from_trace_and_cut(
        lambda q: 1 - Fraction(trace_above(1 - q)),
        lambda q: 1 - dcut(1 - q),
        b,
        n,
        step_cap,
    )
