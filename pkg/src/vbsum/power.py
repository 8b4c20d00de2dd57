"""Lazy big-integer values of the form ``c * p**e + a``.

Numbers such as ``P_j ** ((j + 1) * h(j))`` have millions of digits (or
far more), so comparisons go through base-2 logarithm intervals first and
only fall back to exact integers when the intervals overlap and the
operands fit inside the bit budget.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import BudgetExceeded, Undecidable

DEFAULT_BIT_BUDGET = 1 << 26

# relative slack applied to float log2 values; far above the 1-ulp error of math.log2
_SLACK = Fraction(1, 10**12)


def bit_budget() -> int:
    """Materialization budget in bits, overridable through ``VBS_BIT_BUDGET``."""
    raw = os.environ.get("VBS_BIT_BUDGET")
    if raw:
        try:
            value = int(raw, 0)
        except ValueError:
            value = None
        if value is not None and value > 0:
            return value
    return DEFAULT_BIT_BUDGET


def _log2_interval_of_positive_int(x: int) -> tuple[Fraction, Fraction]:
    if x < (1 << 52):
        # exact powers of two keep their exact logarithm
        if x & (x - 1) == 0:
            k = Fraction(x.bit_length() - 1)
            return k, k
    v = Fraction(math.log2(x))
    return v * (1 - _SLACK) - _SLACK, v * (1 + _SLACK) + _SLACK


@dataclass(frozen=True)
class PowerValue:
    """The integer ``coeff * base**exp + addend``."""

    coeff: int
    base: int
    exp: int
    addend: int = 0

    def __post_init__(self):
        if self.coeff < 1:
            raise ValueError("coeff must be positive")
        if self.base < 2:
            raise ValueError("base must be at least 2")
        if self.exp < 0:
            raise ValueError("exp must be natural")

    def __str__(self):
        text = f"{self.base}^{self.exp}"
        if self.coeff != 1:
            text = f"{self.coeff}*{text}"
        if self.addend > 0:
            text += f"+{self.addend}"
        elif self.addend < 0:
            text += f"{self.addend}"
        return text

    def _main_log2(self) -> tuple[Fraction, Fraction]:
        clo, chi = _log2_interval_of_positive_int(self.coeff)
        plo, phi = _log2_interval_of_positive_int(self.base)
        return clo + self.exp * plo, chi + self.exp * phi

    def bit_estimate(self) -> int:
        """Upper estimate of the bit length of ``coeff * base**exp``."""
        _, hi = self._main_log2()
        return math.floor(hi) + 2

    def _cached(self):
        return self.__dict__.get("_int")

    def materialize(self, budget: int | None = None) -> int:
        cached = self._cached()
        if cached is not None:
            return cached
        if budget is None:
            budget = bit_budget()
        if self.bit_estimate() > budget:
            raise BudgetExceeded(f"{self} needs about {self.bit_estimate()} bits (budget {budget})")
        value = self.coeff * self.base**self.exp + self.addend
        self.__dict__["_int"] = value
        return value

    def log2_bounds(self) -> tuple[Fraction, Fraction] | None:
        """Interval for log2 of the value, or None when the value is not positive."""
        lo, hi = self._main_log2()
        if self.addend == 0:
            return lo, hi
        # addend negligible: |a| <= main / 4
        if abs(self.addend).bit_length() + 2 <= math.floor(lo):
            return lo - 1, hi + 1
        value = self.materialize()
        if value <= 0:
            return None
        return _log2_interval_of_positive_int(value)

    def scaled(self, k: int) -> "PowerValue":
        """``k * self`` for a positive integer k."""
        if k < 1:
            raise ValueError("scale must be positive")
        return PowerValue(self.coeff * k, self.base, self.exp, self.addend * k)

    def squared(self) -> "PowerValue":
        if self.addend:
            raise ValueError("only pure powers square symbolically")
        return PowerValue(self.coeff**2, self.base, 2 * self.exp)

    def floor_clamp(self, limit: int) -> int:
        """``min(value, limit)`` without materializing values beyond ``limit``."""
        if compare(self, limit) >= 0:
            return limit
        return self.materialize()


Magnitude = Union[int, PowerValue]


def as_int(x: Magnitude, budget: int | None = None) -> int:
    return x if isinstance(x, int) else x.materialize(budget)


def _bounds(x: Magnitude):
    if isinstance(x, int):
        if x <= 0:
            return None
        return _log2_interval_of_positive_int(x)
    return x.log2_bounds()


def compare(x: Magnitude, y: Magnitude, budget: int | None = None) -> int:
    """Three-way comparison of two magnitudes (-1, 0 or 1)."""
    if isinstance(x, int) and isinstance(y, int):
        return (x > y) - (x < y)
    bx, by = _bounds(x), _bounds(y)
    if bx is None or by is None:
        # at least one side is not positive, hence small enough to hold exactly
        if bx is None and by is None:
            a, b = as_int(x, budget), as_int(y, budget)
            return (a > b) - (a < b)
        return -1 if bx is None else 1
    if bx[1] < by[0]:
        return -1
    if by[1] < bx[0]:
        return 1
    try:
        a, b = as_int(x, budget), as_int(y, budget)
    except BudgetExceeded:
        pass
    else:
        return (a > b) - (a < b)
    if isinstance(x, PowerValue) and isinstance(y, PowerValue) and (x.coeff, x.base, x.exp) == (y.coeff, y.base, y.exp):
        return (x.addend > y.addend) - (x.addend < y.addend)
    if (
        isinstance(x, PowerValue)
        and isinstance(y, PowerValue)
        and x.base == y.base
        and x.addend == 0
        and y.addend == 0
    ):
        common = min(x.exp, y.exp)
        return compare(
            PowerValue(x.coeff, x.base, x.exp - common),
            PowerValue(y.coeff, y.base, y.exp - common),
            budget,
        )
    raise Undecidable("compare", f"{x} vs {y} overlap and exceed the bit budget")


def lt(x: Magnitude, y: Magnitude) -> bool:
    return compare(x, y) < 0


def le(x: Magnitude, y: Magnitude) -> bool:
    return compare(x, y) <= 0
