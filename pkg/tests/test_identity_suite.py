import re

import pytest

from tauwaring.errors import InternalCheckError
from tauwaring.identity_suite import (
    ZERO_SUM_SEVEN,
    ZERO_SUM_SIX,
    check_deligne_all,
    check_deligne_prime,
    check_hecke_all,
    check_hecke_q11,
    check_mod256_odd,
    check_mod691,
    check_multiplicativity,
    make_zero_sum_certificate,
    verify_zero_sums,
)
from tauwaring.tau_core import TauTable


def brute_sigma11(n):
    return sum(d**11 for d in range(1, n + 1) if n % d == 0)


def test_mod691_single_values(table_2k):
    assert (table_2k.tau(1) - 1) % 691 == 0
    # 2049 - 691*3 = -24
    assert (2049 - (-24)) % 691 == 0
    assert (table_2k.tau(2) - brute_sigma11(2)) % 691 == 0


def test_mod691_sweep_clean(table_2k):
    assert check_mod691(table_2k) == []


def test_mod691_matches_brute_force(table_2k):
    for n in range(1, 200):
        assert (table_2k.tau(n) - brute_sigma11(n)) % 691 == 0


def test_mod256_odd_values(table_2k):
    assert (table_2k.tau(3) - (1 + 3**11)) % 256 == 0
    for n in range(1, 200, 2):
        assert (table_2k.tau(n) - brute_sigma11(n)) % 256 == 0


def test_mod256_sweep_clean(table_2k):
    assert check_mod256_odd(table_2k) == []


def test_violation_report_format(table_2k):
    broken = TauTable(table_2k.limit, list(table_2k.values), "series")
    broken.values[10] += 1
    lines = check_mod691(broken, 1, 50)
    assert len(lines) == 1
    assert re.fullmatch(r"CHECK mod691 n=10 expected=\d+ got=\d+", lines[0])
    odd_broken = TauTable(table_2k.limit, list(table_2k.values), "series")
    odd_broken.values[9] += 1
    lines = check_mod256_odd(odd_broken, 1, 50)
    assert len(lines) == 1 and lines[0].startswith("CHECK mod256 n=9 ")


def test_deligne_examples(table_2k):
    assert table_2k.tau(2) ** 2 == 576 and 4 * 2**11 == 8192
    assert check_deligne_prime(2, table_2k)
    assert check_deligne_prime(29, table_2k)
    assert table_2k.tau(29) == 128406630


def test_deligne_rejects_composite(table_2k):
    with pytest.raises(ValueError):
        check_deligne_prime(12, table_2k)


def test_deligne_sweep_clean(table_2k):
    assert check_deligne_all(table_2k) == []


def test_deligne_catches_violation(table_2k):
    broken = TauTable(table_2k.limit, list(table_2k.values), "series")
    broken.values[2] = 10**9
    assert any("n=2" in line for line in check_deligne_all(broken, 10))


def test_hecke_q11_examples(table_2k):
    assert table_2k.tau(2) ** 2 - table_2k.tau(4) == 2**11
    assert table_2k.tau(3) ** 2 - table_2k.tau(9) == 3**11
    assert check_hecke_q11(2, table_2k)
    assert check_hecke_q11(3, table_2k)
    assert check_hecke_q11(5, table_2k)


def test_hecke_sweep_clean(table_2k):
    assert check_hecke_all(table_2k) == []


def test_multiplicativity_sweep_clean(table_2k):
    assert check_multiplicativity(table_2k) == []


def test_multiplicativity_catches_violation(table_2k):
    broken = TauTable(table_2k.limit, list(table_2k.values), "series")
    broken.values[6] += 7
    assert any("n=6" in line for line in check_multiplicativity(broken, 50))


def test_zero_sums(table_2k):
    six, seven = verify_zero_sums(table_2k)
    assert six.indices == ZERO_SUM_SIX
    assert seven.indices == ZERO_SUM_SEVEN
    assert six.recompute(table_2k) == 0
    assert seven.recompute(table_2k) == 0


def test_zero_sum_rejects_nonzero(table_2k):
    with pytest.raises(InternalCheckError):
        make_zero_sum_certificate((1,), table_2k)


def test_zero_sums_need_coverage():
    tiny = TauTable(10, [0] + [1] * 10, "series")
    with pytest.raises(ValueError):
        verify_zero_sums(tiny)
