import json

import pytest

from vbsum.errors import InvalidSchedule, ScheduleExhausted, SieveLimit
from vbsum.power import PowerValue, compare
from vbsum.primes import bertrand_check, nth_prime, primorial_base, sieve_limit
from vbsum.schedules import (
    BUILTIN,
    CANONICAL_G,
    ExceedsBudget,
    Schedule,
    big_m,
    big_m_prime,
    bounded_search,
    canonical_g,
    check_growth_property,
    check_square_inequality,
    get_schedule,
    graph_contains,
    load_schedule,
    schedule_value,
)


@pytest.mark.parametrize("i,p", [(0, 2), (1, 3), (4, 11), (24, 97)])
def test_nth_prime(i, p):
    assert nth_prime(i) == p


def test_nth_prime_limit():
    with pytest.raises(SieveLimit):
        nth_prime(10**7)
    assert nth_prime(sieve_limit()) > 10**6


def test_primorial():
    assert primorial_base(0) == 2
    assert primorial_base(4) == 2310


def test_canonical_g():
    assert canonical_g(0) == 1
    assert canonical_g(1, 33) == 2**32
    assert isinstance(canonical_g(2, 10**9), ExceedsBudget)


def test_schedule_values():
    t1 = get_schedule("T1")
    assert schedule_value(t1, 2) == 22
    assert schedule_value(t1, 4) == 674
    assert schedule_value(t1, 99) is None
    with pytest.raises(ScheduleExhausted):
        t1.entry(99)


def test_t1_recurrence():
    t1 = get_schedule("T1")
    for n in range(len(t1.values) - 1):
        assert t1.require(n + 1) == (n + 3) * t1.require(n) + 2


def test_graph_contains():
    t1 = get_schedule("T1")
    assert graph_contains(t1, 2, 22)
    assert not graph_contains(t1, 2, 21)
    assert graph_contains(CANONICAL_G, 1, 2**32)
    assert not graph_contains(CANONICAL_G, 1, 2**32 + 1)


def test_bounded_search():
    t1 = get_schedule("T1")
    assert bounded_search(t1, 1, 10) == 5
    assert bounded_search(t1, 1, 4) is None


def test_growth_property():
    assert check_growth_property(BUILTIN["T1"], 0) is False
    assert check_growth_property(BUILTIN["T3"], 0) is True
    assert check_growth_property(BUILTIN["T2"], 0) is False


def test_square_inequality():
    assert check_square_inequality(BUILTIN["T2"], 1) is True
    assert check_square_inequality(BUILTIN["T2"], 0) is False
    assert check_square_inequality(BUILTIN["T1"], 0) is False


def test_big_m():
    t2, t1 = BUILTIN["T2"], BUILTIN["T1"]
    assert big_m(t2, 1).materialize() == 729
    assert big_m(t1, 1).materialize() == 59049
    assert big_m_prime(t2, 1) == 600000


@pytest.mark.parametrize("y,ok", [(0, True), (10, True), (5000, True)])
def test_bertrand(y, ok):
    assert bertrand_check(y) is ok


def test_flags():
    assert BUILTIN["T1"].flags["gapOK"] and not BUILTIN["T1"].flags["growthOK"]
    assert all(BUILTIN["T3"].flags.values())


def test_invalid_schedules():
    with pytest.raises(InvalidSchedule):
        Schedule("bad", (1, 1))
    with pytest.raises(InvalidSchedule):
        Schedule("bad", (0, 3))


def test_json_roundtrip(tmp_path):
    for s in BUILTIN.values():
        path = tmp_path / f"{s.id}.json"
        path.write_text(json.dumps(s.to_json()))
        again = load_schedule(path)
        assert again.id == s.id
        assert len(again.values) == len(s.values)
        for a, b in zip(again.values, s.values):
            assert compare(a, b) == 0
        assert get_schedule(f"@{path}").values == again.values


def test_json_power_entry(tmp_path):
    path = tmp_path / "t2.json"
    path.write_text(json.dumps(BUILTIN["T2"].to_json()))
    entry = load_schedule(path).values[3]
    assert isinstance(entry, PowerValue)
    assert (entry.coeff, entry.base, entry.exp, entry.addend) == (2, 5, 3600000, 1)


def test_power_compare():
    assert compare(PowerValue(1, 2, 100), 2**100) == 0
    assert compare(PowerValue(1, 2, 100, 1), 2**100) == 1
    assert compare(PowerValue(1, 3, 10**9), PowerValue(1, 3, 10**9, -1)) == 1
    assert compare(PowerValue(1, 5, 10**9), PowerValue(1, 7, 10**9)) == -1
