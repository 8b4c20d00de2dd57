"""Concrete irrationals in (0, 1) as deterministic bracketing sequences.

Each oracle answers ``refine(n)`` with rationals ``lo < value < hi`` whose
gap is at most ``2**-n``. Cuts and base-b digits are read off these
brackets; both terminate because the represented value is irrational (a
promise of the constructor, not something checked at runtime).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import BadBase
from .power import PowerValue, compare
from .primes import nth_prime
from .rational import DigitWindow, check_base


class Side(enum.Enum):
    BELOW = "below"  # q < value
    ABOVE = "above"  # q > value


@dataclass(frozen=True)
class SqrtSpec:
    """sqrt(k) minus its integer part."""

    k: int

    def __post_init__(self):
        if self.k < 1 or math.isqrt(self.k) ** 2 == self.k:
            raise ValueError(f"sqrt:{self.k} is rational")

    def __str__(self):
        return f"sqrt:{self.k}"


@dataclass(frozen=True)
class AlphaSpec:
    schedule_id: str

    def __str__(self):
        return f"alpha:{self.schedule_id}"


RealSpec = Union[SqrtSpec, AlphaSpec]


def parse_real_spec(text: str) -> RealSpec:
    kind, sep, arg = text.partition(":")
    if not sep or not arg:
        raise ValueError(f"bad real spec {text!r}; expected sqrt:<k> or alpha:<schedule>")
    if kind == "sqrt":
        if not arg.isdigit():
            raise ValueError(f"bad radicand in {text!r}")
        return SqrtSpec(int(arg))
    if kind == "alpha":
        return AlphaSpec(arg)
    raise ValueError(f"unknown real kind {kind!r}")


class BracketingOracle:
    """Nested rational brackets around an irrational in (0, 1)."""

    spec: object = None

    def refine(self, n: int) -> tuple[Fraction, Fraction]:
        raise NotImplementedError

    def __repr__(self):
        return f"<{type(self).__name__} {self.spec}>"

    def cut(self, q) -> Side:
        return cut(self, q)

    def prefix(self, b: int, n: int) -> DigitWindow:
        return real_prefix(self, b, n)

    def complement(self) -> "ComplementOracle":
        return ComplementOracle(self)


class SqrtOracle(BracketingOracle):
    def __init__(self, k: int):
        self.spec = SqrtSpec(k)
        self.k = k
        self.c = math.isqrt(k)

    def refine(self, n: int) -> tuple[Fraction, Fraction]:
        scale = 1 << n
        num = math.isqrt(self.k << (2 * n)) - self.c * scale
        lo = Fraction(num, scale)
        return lo, lo + Fraction(1, scale)


class AlphaOracle(BracketingOracle):
    """Brackets ``(alpha_j, beta_{j+1})`` with j the least index that is fine enough."""

    def __init__(self, alpha):
        self.alpha = alpha
        self.spec = AlphaSpec(alpha.schedule.id)

    def level(self, n: int) -> int:
        schedule = self.alpha.schedule
        j = 0
        while True:
            h = schedule.require(j + 1)
            # width P_{j+1}**(1 - h) <= 2**-n
            if compare(PowerValue(1, nth_prime(j + 1), h - 1), PowerValue(1, 2, n)) >= 0:
                return j
            j += 1

    def refine(self, n: int) -> tuple[Fraction, Fraction]:
        j = self.level(n)
        return self.alpha.partial(j), self.alpha.beta(j + 1)


class ComplementOracle(BracketingOracle):
    """The value ``1 - x`` for an inner oracle's value x."""

    def __init__(self, inner: BracketingOracle):
        self.inner = inner
        self.spec = f"1-({inner.spec})"

    def refine(self, n: int) -> tuple[Fraction, Fraction]:
        lo, hi = self.inner.refine(n)
        return 1 - hi, 1 - lo

    def complement(self) -> BracketingOracle:
        return self.inner


def make_oracle(spec: Union[str, RealSpec]) -> BracketingOracle:
    if isinstance(spec, str):
        spec = parse_real_spec(spec)
    if isinstance(spec, SqrtSpec):
        return SqrtOracle(spec.k)
    from .alpha import alpha_number

    return alpha_number(spec.schedule_id).oracle()


def refine(o: BracketingOracle, n: int) -> tuple[Fraction, Fraction]:
    if n < 0:
        raise ValueError("precision must be natural")
    return o.refine(n)


def cut(o: BracketingOracle, q) -> Side:
    """Which side of the value q lies on; never returns for q equal to the value."""
    q = Fraction(q)
    n = 0
    while True:
        lo, hi = o.refine(n)
        if q <= lo:
            return Side.BELOW
        if q >= hi:
            return Side.ABOVE
        n = 2 * n + 8


def int_to_digits(x: int, b: int, n: int) -> tuple[int, ...]:
    """The n lowest base-b digits of x, most significant first."""
    if n <= 0:
        return ()
    if b == 10:
        return tuple(int(ch) for ch in str(x).zfill(n)[-n:])
    if b & (b - 1) == 0:
        width = b.bit_length() - 1
        mask = b - 1
        return tuple((x >> (width * (n - 1 - i))) & mask for i in range(n))
    if n <= 32:
        out = []
        for _ in range(n):
            x, r = divmod(x, b)
            out.append(r)
        return tuple(reversed(out))
    low = n // 2
    high_part, low_part = divmod(x, b**low)
    return int_to_digits(high_part, b, n - low) + int_to_digits(low_part, b, low)


def real_prefix(o: BracketingOracle, b: int, n: int) -> DigitWindow:
    """The first n base-b digits of the oracle's value."""
    check_base(b)
    if n <= 0:
        return DigitWindow(b, 1, ())
    scale = b**n
    bits = math.ceil(n * math.log2(b)) + 8
    while True:
        lo, hi = o.refine(bits)
        cell = lo.numerator * scale // lo.denominator
        if hi.numerator * scale <= (cell + 1) * hi.denominator:
            return DigitWindow(b, 1, int_to_digits(cell, b, n))
        bits *= 2


def real_digit_at(o: BracketingOracle, b: int, i: int) -> int:
    if i < 1:
        raise ValueError("digit positions start at 1")
    return real_prefix(o, b, i).digits[-1]
