"""Exact rationals and the base-b expansion theory of rational numbers.

Rationals are :class:`fractions.Fraction` values, which are always kept in
lowest terms with a positive denominator. Digit positions are 1-based:
position 1 is the first digit after the point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Optional, Sequence

from .errors import BadBase, NotCoprime, NotFoundWithinCap, OutOfRange, ZeroDenominator
from .power import Magnitude, PowerValue

Rational = Fraction

# longest period (in digits) that nth_nonzero_digit is willing to tabulate
_PERIOD_TABLE_LIMIT = 1 << 16


def reduce_rational(num: int, den: int) -> Fraction:
    if den == 0:
        raise ZeroDenominator(f"{num}/0")
    return Fraction(num, den)


def parse_rational(text: str) -> Fraction:
    """Parse ``"num/den"`` (or a bare integer) into a reduced rational."""
    text = text.strip()
    num, sep, den = text.partition("/")
    try:
        n = int(num)
        d = int(den) if sep else 1
    except ValueError:
        raise ValueError(f"not a rational: {text!r}") from None
    return reduce_rational(n, d)


def format_rational(q: Fraction) -> str:
    """Serialize as ``"num/den"`` in lowest terms, always with a denominator."""
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def check_base(b: int) -> None:
    if not isinstance(b, int) or b < 2:
        raise BadBase(f"base must be an integer >= 2, got {b!r}")


def _check_unit(q: Fraction, open_left: bool = False) -> None:
    if q >= 1 or q < 0 or (open_left and q == 0):
        interval = "(0,1)" if open_left else "[0,1)"
        raise OutOfRange(f"{q} is not in {interval}")


# --- factorization helpers -------------------------------------------------


def valuation(n: int, p: int) -> int:
    """Exponent of p in n (n != 0), using repeated squaring of p."""
    if n == 0:
        raise ValueError("valuation of zero")
    n = abs(n)
    if n % p:
        return 0
    powers = [p]
    while True:
        nxt = powers[-1] * powers[-1]
        if n % nxt:
            break
        powers.append(nxt)
    v = 0
    for i in range(len(powers) - 1, -1, -1):
        if n % powers[i] == 0:
            n //= powers[i]
            v += 1 << i
    return v


def factorize(n: int, hints: Iterable[int] = (), limit: int = 10**6) -> dict[int, int]:
    """Prime factorization by dividing out hinted primes, then trial division.

    Trial division runs up to ``limit``; what remains must then be 1 or a
    prime below ``limit**2``.
    """
    if n < 1:
        raise ValueError("factorize expects a positive integer")
    factors: dict[int, int] = {}
    for p in sorted(set(hints)):
        if p > 1 and n % p == 0:
            v = valuation(n, p)
            factors[p] = v
            n //= p**v
    p = 2
    while n > 1 and p * p <= n:
        if p > limit:
            raise ValueError(f"cannot factor cofactor {n} by trial division")
        if n % p == 0:
            v = valuation(n, p)
            factors[p] = factors.get(p, 0) + v
            n //= p**v
        p += 1 if p == 2 else 2
    if n > 1:
        factors[n] = factors.get(n, 0) + 1
    return factors


def _order_mod_prime(b: int, p: int) -> int:
    e = p - 1
    for r in factorize(p - 1):
        while e % r == 0 and pow(b, e // r, p) == 1:
            e //= r
    return e


def _order_mod_prime_power(b: int, p: int, k: int) -> int:
    if p == 2:
        if k == 1:
            return 1
        e0 = 1 if b % 4 == 1 else 2
    else:
        e0 = _order_mod_prime(b % p, p)
    modulus = p**k
    x = (pow(b, e0, modulus) - 1) % modulus
    v = k if x == 0 else valuation(x, p)
    return e0 * p ** max(0, k - v)


def multiplicative_order(b: int, d1: int, factors: Optional[dict[int, int] | Iterable[int]] = None) -> int:
    """Least e >= 1 with ``b**e == 1 (mod d1)``; 1 when d1 == 1.

    ``factors`` may be a full factorization of d1 or an iterable of primes
    known to divide it; large prime powers are handled through lifting, so
    denominators such as ``5**600000`` stay cheap.
    """
    if d1 < 1:
        raise ValueError("modulus must be positive")
    if math.gcd(b, d1) != 1:
        raise NotCoprime(f"gcd({b}, {d1}) != 1")
    if d1 == 1:
        return 1
    if isinstance(factors, dict):
        fac = factors
    else:
        fac = factorize(d1, hints=factors or ())
    order = 1
    for p, k in fac.items():
        e = _order_mod_prime_power(b, p, k)
        order = order * e // math.gcd(order, e)
    return order


# --- expansions -----------------------------------------------------------------


@dataclass(frozen=True)
class ExpansionShape:
    """Finite/periodic structure of a rational's base-b expansion.

    ``preperiod`` is the least s with ``d2 | base**s``; for finite
    expansions it is also the expansion length and ``period`` is None.
    """

    base: int
    kind: str  # "finite" or "periodic"
    d1: int
    d2: int
    preperiod: int
    period: Optional[int] = None

    @property
    def is_finite(self) -> bool:
        return self.kind == "finite"

    @property
    def length(self) -> Optional[int]:
        return self.preperiod if self.is_finite else None

    def as_dict(self) -> dict:
        if self.is_finite:
            return {"kind": "finite", "length": self.preperiod}
        return {"kind": "periodic", "preperiod": self.preperiod, "period": self.period}


def split_denominator(d: int, b: int) -> tuple[int, int]:
    """Split d = d1 * d2 with d1 coprime to b and maximal."""
    d1 = d
    probe = b
    while True:
        g = math.gcd(d1, probe)
        if g == 1:
            break
        d1 //= g
        probe = g * g
    return d1, d // d1


def expansion_shape(q: Fraction, b: int, factors: Optional[Iterable[int]] = None) -> ExpansionShape:
    """Preperiod and period (or finite length) of q's base-b expansion.

    ``factors`` optionally lists primes dividing the denominator, which
    keeps huge prime-power denominators cheap to analyse.
    """
    check_base(b)
    q = Fraction(q)
    _check_unit(q, open_left=True)
    d = q.denominator
    d1, d2 = split_denominator(d, b)
    hints = set(factors or ())
    s = 0
    if d2 > 1:
        for p, e in factorize(b, hints=hints).items():
            if d2 % p == 0:
                s = max(s, -(-valuation(d2, p) // e))
    if d1 == 1:
        return ExpansionShape(b, "finite", d1, d2, s)
    period = multiplicative_order(b, d1, factors=[p for p in hints if d1 % p == 0] or None)
    return ExpansionShape(b, "periodic", d1, d2, s, period)


@dataclass(frozen=True)
class DigitWindow:
    base: int
    start: int
    digits: tuple[int, ...]

    def __post_init__(self):
        if any(not 0 <= x < self.base for x in self.digits):
            raise ValueError("digit out of range")

    def __len__(self):
        return len(self.digits)

    def __getitem__(self, pos: int) -> int:
        """Digit at absolute (1-based) position ``pos``."""
        i = pos - self.start
        if not 0 <= i < len(self.digits):
            raise IndexError(pos)
        return self.digits[i]

    def value(self) -> Fraction:
        """The rational ``(0.D_start ... D_end)_b`` with leading zeros implied."""
        acc = 0
        for x in self.digits:
            acc = acc * self.base + x
        return Fraction(acc, self.base ** (self.start - 1 + len(self.digits)))

    def serialize(self) -> str:
        return ",".join(str(x) for x in self.digits)


def digit_at(q: Fraction, b: int, i: int) -> int:
    """The i-th base-b digit of q, via modular exponentiation on the denominator."""
    check_base(b)
    q = Fraction(q)
    _check_unit(q)
    if i < 1:
        raise ValueError("digit positions start at 1")
    d = q.denominator
    r = q.numerator * pow(b, i - 1, d) % d
    return r * b // d


def iter_digits(q: Fraction, b: int, start: int = 1) -> Iterator[int]:
    """Stream digits from position ``start`` onwards by remainder updates."""
    check_base(b)
    q = Fraction(q)
    _check_unit(q)
    d = q.denominator
    r = q.numerator if start == 1 else q.numerator * pow(b, start - 1, d) % d
    if b == 2:
        while True:
            r <<= 1
            if r >= d:
                r -= d
                yield 1
            else:
                yield 0
    while True:
        digit, r = divmod(r * b, d)
        yield digit


def expand_prefix(q: Fraction, b: int, n: int, start: int = 1) -> DigitWindow:
    """Digits at positions ``start .. start + n - 1``."""
    check_base(b)
    stream = iter_digits(q, b, start)
    return DigitWindow(b, start, tuple(next(stream) for _ in range(n)))


def nth_nonzero_digit(q: Fraction, b: int, n: int, cap: Magnitude) -> tuple[int, int]:
    """Position and value of the n-th nonzero digit among positions 1..cap.

    Small denominators jump over whole periods; large ones are streamed and
    stop at the first hit, so ``cap`` (possibly a :class:`PowerValue`) is
    never materialized.
    """
    check_base(b)
    q = Fraction(q)
    _check_unit(q)
    if n < 1:
        raise ValueError("n must be positive")
    limit = cap.floor_clamp(1 << 64) if isinstance(cap, PowerValue) else cap
    found = None
    if q.denominator.bit_length() <= 256 and q != 0:
        found = _nth_nonzero_by_periods(q, b, n)
    else:
        count = 0
        d = q.denominator
        r = q.numerator
        pos = 0
        while r and pos < limit:
            pos += 1
            digit, r = divmod(r * b, d)
            if digit:
                count += 1
                if count == n:
                    found = (pos, digit)
                    break
    if found is None or found[0] > limit:
        raise NotFoundWithinCap(f"fewer than {n} nonzero digits within the first {cap} positions")
    return found


def _nth_nonzero_by_periods(q: Fraction, b: int, n: int) -> Optional[tuple[int, int]]:
    shape = expansion_shape(q, b)
    stream = iter_digits(q, b)
    count = 0
    pos = 0
    for _ in range(shape.preperiod):
        pos += 1
        digit = next(stream)
        if digit:
            count += 1
            if count == n:
                return pos, digit
    if shape.is_finite:
        return None
    if shape.period > _PERIOD_TABLE_LIMIT:
        while True:
            pos += 1
            digit = next(stream)
            if digit:
                count += 1
                if count == n:
                    return pos, digit
    block = [next(stream) for _ in range(shape.period)]
    per_block = sum(1 for x in block if x)
    skip = (n - count - 1) // per_block
    pos += skip * shape.period
    count += skip * per_block
    for digit in block:
        pos += 1
        if digit:
            count += 1
            if count == n:
                return pos, digit
    raise AssertionError("period scan overran")  # pragma: no cover
