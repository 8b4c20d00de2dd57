"""Exponent schedules h, the canonical auxiliary function g, and the
growth inequalities that the alpha construction relies on.

A :class:`Schedule` is a finite table ``h(0), h(1), ...``. Entries may be
plain integers or :class:`~vbsum.power.PowerValue` expressions. The
canonical ``g`` is only reachable through budgeted evaluation and its graph
predicate: ``g(2)`` already has roughly 10**29 bits.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Callable, Optional, Sequence, Union

from .errors import BudgetExceeded, InvalidSchedule, ScheduleExhausted, Undecidable
from .power import Magnitude, PowerValue, as_int, bit_budget, compare
from .primes import nth_prime


@dataclass(frozen=True)
class ExceedsBudget:
    """Returned instead of an integer that would not fit the bit budget.

    ``bits_lower_bound`` is a lower bound for the bit length of the value.
    """

    index: int
    bits_lower_bound: int


class Schedule:
    """A finite, strictly increasing exponent table with verified flags."""

    def __init__(self, id: str, values: Sequence[Magnitude]):
        if not values:
            raise InvalidSchedule("a schedule needs at least one value")
        entries = tuple(values)
        for i, v in enumerate(entries):
            if not isinstance(v, (int, PowerValue)) or isinstance(v, bool):
                raise InvalidSchedule(f"entry {i} is not an integer")
            if compare(v, 1) < 0:
                raise InvalidSchedule(f"entry {i} is below 1")
            if i and compare(entries[i - 1], v) >= 0:
                raise InvalidSchedule(f"entries {i - 1} and {i} are not strictly increasing")
        self.id = id
        self._entries = entries
        self.flags = {
            "gapOK": self._all_indices(self._gap_at),
            "growthOK": self._all_indices(lambda n: check_growth_property(self, n)),
            "honestLike": self._honest_like(),
        }

    def __repr__(self):
        return f"Schedule({self.id!r}, {len(self)} entries)"

    def __len__(self):
        return len(self._entries)

    @property
    def values(self) -> tuple:
        return self._entries

    @property
    def gap_ok(self) -> bool:
        return self.flags["gapOK"]

    @property
    def growth_ok(self) -> bool:
        return self.flags["growthOK"]

    @property
    def honest_like(self) -> bool:
        return self.flags["honestLike"]

    def entry(self, n: int) -> Magnitude:
        if not 0 <= n < len(self._entries):
            raise ScheduleExhausted(f"schedule {self.id} has no value at index {n}")
        return self._entries[n]

    def require(self, n: int) -> int:
        """h(n) as an integer; ScheduleExhausted beyond the table."""
        try:
            return as_int(self.entry(n))
        except BudgetExceeded as exc:
            raise Undecidable("materialize", str(exc)) from exc

    def value(self, n: int) -> Optional[int]:
        """h(n), or None when n lies beyond the table."""
        if not 0 <= n < len(self._entries):
            return None
        return self.require(n)

    def lower_bound(self, n: int) -> int:
        """A certain lower bound on h(n), valid beyond the table as well."""
        last = len(self._entries) - 1
        if n <= last:
            return self.require(n)
        # strictly increasing integers
        return self.require(last) + (n - last)

    def graph(self, x: int, y: int) -> bool:
        return compare(self.entry(x), y) == 0

    def _all_indices(self, check: Callable[[int], bool]) -> bool:
        try:
            return all(check(n) for n in range(len(self._entries) - 1))
        except (Undecidable, BudgetExceeded):
            return False

    def _gap_at(self, n: int) -> bool:
        return compare(self._entries[n + 1], (n + 2) * self.require(n) + 1) > 0

    def _honest_like(self) -> bool:
        try:
            return all(compare(v, 1 << x) >= 0 for x, v in enumerate(self._entries))
        except (Undecidable, BudgetExceeded):
            return False

    # --- file format ---------------------------------------------------------

    def to_json(self) -> dict:
        values = []
        for i, v in enumerate(self._entries):
            if isinstance(v, PowerValue):
                values.append({"i": i, "pow": {"c": v.coeff, "b": v.base, "e": v.exp, "a": v.addend}})
            else:
                values.append({"i": i, "int": str(v)})
        return {"id": self.id, "values": values}

    @classmethod
    def from_json(cls, data: dict) -> "Schedule":
        try:
            sid = data["id"]
            raw = data["values"]
        except (KeyError, TypeError):
            raise InvalidSchedule("schedule JSON needs 'id' and 'values'") from None
        if not isinstance(sid, str) or not isinstance(raw, list):
            raise InvalidSchedule("malformed schedule JSON")
        values: list[Magnitude] = []
        for expected, item in enumerate(sorted(raw, key=lambda it: it.get("i", -1) if isinstance(it, dict) else -1)):
            if not isinstance(item, dict) or item.get("i") != expected:
                raise InvalidSchedule("indices must be contiguous from 0")
            if "int" in item:
                text = item["int"]
                if not isinstance(text, str) or not text.strip().isdigit():
                    raise InvalidSchedule(f"bad decimal string at index {expected}")
                values.append(int(text))
            elif "pow" in item:
                p = item["pow"]
                try:
                    values.append(PowerValue(int(p["c"]), int(p["b"]), int(p["e"]), int(p.get("a", 0))))
                except (KeyError, TypeError, ValueError) as exc:
                    raise InvalidSchedule(f"bad pow entry at index {expected}: {exc}") from None
            else:
                raise InvalidSchedule(f"entry {expected} has neither 'int' nor 'pow'")
        return cls(sid, values)


def load_schedule(path: Union[str, Path]) -> Schedule:
    with open(path, encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InvalidSchedule(f"{path}: {exc}") from None
    return Schedule.from_json(data)


def schedule_value(s: Schedule, n: int) -> Optional[int]:
    return s.value(n)


# --- canonical g and honest descriptors -------------------------------------


def _log2_lower(p: int) -> Fraction:
    return Fraction(math.log2(p)) * (1 - Fraction(1, 10**12))


def canonical_g(j: int, bit_budget_: Optional[int] = None) -> Union[int, ExceedsBudget]:
    """g(0) = 1, g(i+1) = P_i ** (2 (i+2) (g(i)+1)**3), or ExceedsBudget."""
    if bit_budget_ is None:
        bit_budget_ = bit_budget()
    g = 1
    for i in range(j):
        e = 2 * (i + 2) * (g + 1) ** 3
        p = nth_prime(i)
        bits = math.floor(e * _log2_lower(p))
        if bits > bit_budget_:
            return ExceedsBudget(j, bits)
        g = p**e
    return g


def canonical_g_graph(x: int, y: int) -> bool:
    """Decide g(x) == y, aborting once the recurrence overshoots y."""
    if y < 1:
        return False
    g = 1
    limit = y.bit_length()
    for i in range(x):
        e = 2 * (i + 2) * (g + 1) ** 3
        if e >= limit:
            # P_i**e >= 2**e > y
            return False
        g = nth_prime(i) ** e
        if g > y:
            return False
    return g == y


@dataclass(frozen=True)
class HonestDescriptor:
    """A function given by a budgeted evaluator and a graph predicate."""

    name: str
    evaluate: Callable[[int], Union[int, ExceedsBudget]]
    graph: Callable[[int, int], bool]


def _pow2_graph(x: int, y: int) -> bool:
    return y == 1 << x


POW2 = HonestDescriptor("2^x", lambda x: 1 << x, _pow2_graph)
CANONICAL_G = HonestDescriptor("g", canonical_g, canonical_g_graph)


def canonical_h(f: HonestDescriptor = POW2) -> HonestDescriptor:
    """h(i) = g(f(i) + i) for an honest f."""

    def evaluate(x):
        fx = f.evaluate(x)
        if isinstance(fx, ExceedsBudget):
            return fx
        return canonical_g(fx + x)

    def graph(x, y):
        fx = f.evaluate(x)
        if isinstance(fx, ExceedsBudget):
            return False
        return canonical_g_graph(fx + x, y)

    return HonestDescriptor(f"g({f.name}+x)", evaluate, graph)


def graph_contains(fn: Union[Schedule, HonestDescriptor], x: int, y: int) -> bool:
    return fn.graph(x, y)


def bounded_search(fn: Union[Schedule, HonestDescriptor], x: int, bound) -> Optional[int]:
    """Find y < bound with fn(x) = y, or None when no such y exists.

    For table-backed schedules the scan over the graph reduces to one lookup
    (and needs no lookup at all when the bound sits below the monotone lower
    bound); descriptors are scanned upwards from 0.
    """
    ceiling = math.ceil(Fraction(bound))
    if isinstance(fn, Schedule):
        if ceiling <= fn.lower_bound(x):
            return None
        value = fn.entry(x)
        if compare(value, ceiling) < 0:
            return as_int(value)
        return None
    for y in range(max(ceiling, 0)):
        if fn.graph(x, y):
            return y
    return None


# --- inequalities -------------------------------------------------------------


def big_m(s: Schedule, j: int) -> PowerValue:
    """M(j) = P_j ** ((j+1) h(j))."""
    return PowerValue(1, nth_prime(j), (j + 1) * s.require(j))


def big_m_prime(s: Schedule, j: int) -> Magnitude:
    """M'(j) = h(j+1)."""
    return s.entry(j + 1)


def check_growth_property(s: Schedule, n: int) -> bool:
    """P_n ** (2 (n+2) (h(n)+1)**3) < h(n+1)."""
    h_next = s.entry(n + 1)
    lhs = PowerValue(1, nth_prime(n), 2 * (n + 2) * (s.require(n) + 1) ** 3)
    return compare(lhs, h_next) < 0


def check_square_inequality(s: Schedule, j: int) -> bool:
    """M(j)**2 + M(j) + 1 < M'(j)."""
    memo = s.__dict__.setdefault("_sqineq", {})
    if j not in memo:
        memo[j] = _square_inequality(s, j)
    return memo[j]


def _square_inequality(s: Schedule, j: int) -> bool:
    m = big_m(s, j)
    m_prime = big_m_prime(s, j)
    try:
        mi = m.materialize(bit_budget() // 2)
    except BudgetExceeded:
        pass
    else:
        return compare(mi * mi + mi + 1, m_prime) < 0
    lo, hi = m.log2_bounds()
    bounds = m_prime.log2_bounds() if isinstance(m_prime, PowerValue) else (
        Fraction(math.log2(m_prime)) * (1 - Fraction(1, 10**12)),
        Fraction(math.log2(m_prime)) * (1 + Fraction(1, 10**12)) + 1,
    )
    # M**2 < lhs < 2 M**2
    if 2 * hi + 1 < bounds[0]:
        return True
    if 2 * lo >= bounds[1]:
        return False
    raise Undecidable("sqineq", f"j={j}")


# --- bundled schedules ---------------------------------------------------------


def _t1_values(count: int) -> list[int]:
    values = [1]
    for n in range(count - 1):
        values.append((n + 3) * values[-1] + 2)
    return values


# T1 follows h(n+1) = (n+3) h(n) + 2, the slowest growth that still refutes
# h(n+1) <= (n+2) h(n) + 1. Indices 5..7 serve the cut algorithm on
# rationals with denominators up to 10**4.
T1 = Schedule("T1", _t1_values(8))
T2 = Schedule("T2", [1, 3, 600000, PowerValue(2, 5, 3600000, 1)])
T3 = Schedule("T3", [1, 2**32 + 1])

BUILTIN = {s.id: s for s in (T1, T2, T3)}


def get_schedule(ref: str) -> Schedule:
    """Resolve a bundled id (``T1``) or ``@path/to/file.json``."""
    if ref.startswith("@"):
        return load_schedule(ref[1:])
    try:
        return BUILTIN[ref]
    except KeyError:
        raise InvalidSchedule(f"unknown schedule {ref!r}") from None
