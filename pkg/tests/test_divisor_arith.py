from math import gcd

import pytest
from hypothesis import given, strategies as st

from tauwaring.divisor_arith import (
    build_sigma_table,
    coprime_to_23_factorial,
    factorize,
    integer_nth_root,
    primes_in,
    sieve_spf,
    sigma,
)


def brute_sigma(s, n):
    return sum(d**s for d in range(1, n + 1) if n % d == 0)


def test_spf_examples():
    spf = sieve_spf(49)
    assert spf[9] == 3
    assert spf[10] == 2
    assert spf[2] == 2
    assert spf[49] == 7


def test_spf_rejects_tiny_limit():
    with pytest.raises(ValueError):
        sieve_spf(1)


def test_spf_matches_least_divisor_brute_force():
    spf = sieve_spf(1000)
    for n in range(2, 1001):
        least = next(d for d in range(2, n + 1) if n % d == 0)
        assert spf[n] == least


def test_factorize_examples():
    spf = sieve_spf(200)
    assert factorize(12, spf).factors == ((2, 2), (3, 1))
    assert factorize(1, spf).factors == ()
    assert factorize(105, spf).factors == ((3, 1), (5, 1), (7, 1))


def test_factorize_out_of_range():
    spf = sieve_spf(10)
    with pytest.raises(ValueError):
        factorize(11, spf)
    with pytest.raises(ValueError):
        factorize(0, spf)


@given(st.integers(min_value=1, max_value=5000))
def test_factorize_reconstructs(n):
    spf = sieve_spf(5000)
    fm = factorize(n, spf)
    assert fm.reconstruct() == n
    primes = [q for q, _ in fm.factors]
    assert primes == sorted(primes) and len(set(primes)) == len(primes)
    assert all(e >= 1 for _, e in fm.factors)


def test_sigma_examples():
    assert sigma(1, 6) == 12
    assert sigma(11, 2) == 2049
    assert sigma(0, 12) == 6
    assert sigma(5, 1) == 1


def test_sigma_prime_shape():
    for q in (2, 3, 5, 29):
        assert sigma(11, q) == 1 + q**11


@pytest.mark.parametrize("s", [0, 1, 5, 11])
def test_sigma_table_matches_divisor_enumeration(s):
    tab = build_sigma_table(s, 1000)
    for n in range(1, 1001):
        assert tab.values[n] == brute_sigma(s, n)


@given(
    st.integers(min_value=1, max_value=300),
    st.integers(min_value=1, max_value=300),
    st.sampled_from([0, 1, 5, 11]),
)
def test_sigma_multiplicative_on_coprime(m, n, s):
    if gcd(m, n) != 1:
        return
    assert sigma(s, m * n) == sigma(s, m) * sigma(s, n)


def test_primes_in_examples():
    assert primes_in(23, 31) == [29, 31]
    assert primes_in(1, 1) == []
    assert primes_in(29 // 2, 29) == [17, 19, 23, 29]


def test_primes_in_excludes_lower_endpoint():
    assert 23 not in primes_in(23, 100)
    assert primes_in(28, 29) == [29]


def test_coprime_to_23_factorial():
    assert coprime_to_23_factorial(29 * 31)
    assert not coprime_to_23_factorial(12)
    assert coprime_to_23_factorial(1)
    assert not coprime_to_23_factorial(23)
    assert coprime_to_23_factorial(29**3)


@given(st.integers(min_value=0, max_value=10**12), st.integers(min_value=1, max_value=11))
def test_integer_nth_root_brackets(x, k):
    r = integer_nth_root(x, k)
    assert r**k <= x < (r + 1) ** k
