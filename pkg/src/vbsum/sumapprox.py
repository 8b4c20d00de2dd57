"""Base-b sum approximations from below and above, and the general sum
approximation, extracted from any bracketing oracle."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .oracles import BracketingOracle, real_prefix
from .rational import check_base, format_rational


@dataclass(frozen=True)
class SumTerm:
    """``digit * base**-exponent`` with a nonzero digit."""

    digit: int
    base: int
    exponent: int

    def __post_init__(self):
        if not 1 <= self.digit < self.base:
            raise ValueError(f"digit {self.digit} not in [1, {self.base - 1}]")
        if self.exponent < 1:
            raise ValueError("exponent must be positive")

    @property
    def value(self) -> Fraction:
        return Fraction(self.digit, self.base**self.exponent)

    def __str__(self):
        return f"{self.digit}*{self.base}^-{self.exponent}"


@dataclass(frozen=True)
class ApproxSequence:
    base: int
    terms: tuple[SumTerm, ...]

    def __post_init__(self):
        for t in self.terms:
            if t.base != self.base:
                raise ValueError("mixed bases in one sequence")
        for a, b in zip(self.terms, self.terms[1:]):
            if a.exponent >= b.exponent:
                raise ValueError("exponents must strictly increase")

    def __len__(self):
        return len(self.terms)

    def __getitem__(self, i):
        return self.terms[i]

    def __iter__(self):
        return iter(self.terms)

    def serialize(self) -> str:
        lines = [str(t) for t in self.terms]
        lines.append(f"partial={format_rational(partial_value(self))}")
        return "\n".join(lines)


def partial_value(s: Iterable[SumTerm]) -> Fraction:
    return sum((t.value for t in s), Fraction(0))


def sum_below(o: BracketingOracle, b: int, n: int) -> ApproxSequence:
    """The first n terms: leading nonzero base-b digits with their positions."""
    check_base(b)
    if n <= 0:
        return ApproxSequence(b, ())
    length = max(2 * n, 16)
    while True:
        window = real_prefix(o, b, length)
        found = [(pos, d) for pos, d in enumerate(window.digits, 1) if d]
        if len(found) >= n:
            return ApproxSequence(b, tuple(SumTerm(d, b, pos) for pos, d in found[:n]))
        length *= 2


def sum_above(o: BracketingOracle, b: int, n: int) -> ApproxSequence:
    """Terms whose partial sums s give upper approximations ``1 - s``."""
    return sum_below(o.complement(), b, n)


def general_sum(o: BracketingOracle, b: int, n: int) -> Fraction:
    """G(b, n): the n-th term value of the base-b sum from below; 0 if b < 2 or n == 0."""
    if b < 2 or n <= 0:
        return Fraction(0)
    return sum_below(o, b, n).terms[-1].value


def general_sum_above(o: BracketingOracle, b: int, n: int) -> Fraction:
    if b < 2 or n <= 0:
        return Fraction(0)
    return sum_above(o, b, n).terms[-1].value
