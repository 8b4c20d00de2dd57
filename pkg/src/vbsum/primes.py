"""Prime table used for P_i (P_0 = 2) and the Bertrand-bound scan."""

from __future__ import annotations

import math
import threading
from functools import lru_cache

from .errors import SieveLimit

SIEVE_BOUND = 2_000_000  # primes below this bound: 148933 of them

_lock = threading.Lock()
_primes: list[int] | None = None


def _sieve(bound: int) -> list[int]:
    flags = bytearray([1]) * bound
    flags[0:2] = b"\x00\x00"
    for p in range(2, math.isqrt(bound - 1) + 1):
        if flags[p]:
            flags[p * p :: p] = bytes(len(range(p * p, bound, p)))
    return [i for i, f in enumerate(flags) if f]


def prime_table() -> list[int]:
    global _primes
    if _primes is None:
        with _lock:
            if _primes is None:
                _primes = _sieve(SIEVE_BOUND)
    return _primes


def sieve_limit() -> int:
    """Largest index i accepted by :func:`nth_prime`."""
    return len(prime_table()) - 1


def nth_prime(i: int) -> int:
    """P_i, the (i+1)-st prime: ``nth_prime(0) == 2``."""
    table = prime_table()
    if i < 0:
        raise ValueError("prime index must be natural")
    if i >= len(table):
        raise SieveLimit(f"P_{i} is beyond the sieve (limit index {len(table) - 1})")
    return table[i]


@lru_cache(maxsize=256)
def primorial_base(n: int) -> int:
    """The base ``P_0 * P_1 * ... * P_n``."""
    table = prime_table()
    if n >= len(table):
        raise SieveLimit(f"P_{n} is beyond the sieve")
    return math.prod(table[: n + 1])


def bertrand_check(y_max: int) -> bool:
    """True iff ``P_y <= 2**(y+1)`` for every y <= y_max."""
    if y_max > sieve_limit():
        raise SieveLimit(f"index {y_max} is beyond the sieve")
    table = prime_table()
    return all(table[y] <= 1 << (y + 1) for y in range(y_max + 1))
