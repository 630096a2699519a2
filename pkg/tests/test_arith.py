import math
import random

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from matcount.arith import (
    Discriminant,
    Factorization,
    divisors_in_range,
    factorize,
    is_fundamental_discriminant,
    is_prime,
    kronecker,
    next_fundamental,
    primes_up_to,
    spf_sieve,
)
from oracles import divisors_trial, fundamental_brute, is_prime_trial, legendre_brute


def test_factorize_examples():
    assert factorize(1).factors == ()
    assert factorize(12).factors == ((2, 2), (3, 1))
    p = 10**9 + 7
    assert is_prime_trial(p)
    assert factorize(p).factors == ((p, 1),)


def test_factorize_rejects_nonpositive():
    for n in (0, -5):
        with pytest.raises(ValueError):
            factorize(n)
    with pytest.raises(ValueError):
        factorize(2**63 + 1)


def test_factorize_hard_semiprimes():
    p, q = 1_000_003, 998_244_353
    assert factorize(p * q).factors == ((p, 1), (q, 1))
    assert factorize(p**2 * 7).factors == ((7, 1), (p, 2))
    big = 2_147_483_647 * 2_147_483_629
    assert factorize(big).n == big


@settings(max_examples=300, deadline=None)
@given(st.integers(min_value=1, max_value=10**12))
def test_factorize_roundtrip(n):
    f = factorize(n)
    assert math.prod(p**e for p, e in f.factors) == n
    assert all(is_prime(p) for p in f.primes())
    assert [p for p, _ in f.factors] == sorted(set(f.primes()))


def test_factorization_validates():
    with pytest.raises(ValueError):
        Factorization(12, ((3, 1), (2, 2)))
    with pytest.raises(ValueError):
        Factorization(13, ((2, 2), (3, 1)))


def test_is_prime_against_trial_division():
    assert [n for n in range(200) if is_prime(n)] == [n for n in range(200) if is_prime_trial(n)]
    assert primes_up_to(100).tolist() == [n for n in range(101) if is_prime_trial(n)]


def test_spf_sieve():
    spf = spf_sieve(1000)
    for n in range(2, 1001):
        assert spf[n] == min(p for p in range(2, n + 1) if n % p == 0)


def test_kronecker_examples():
    assert kronecker(5, 1) == 1
    assert kronecker(5, 5) == 0
    assert 4 * 4 % 11 == 5 and kronecker(5, 11) == 1
    assert kronecker(5, 2) == -1  # 5 = 5 (mod 8)


@pytest.mark.parametrize("D", [-7, -4, -3, 5, 8, 12, 13, 17, 21, 24, 221, 10001])
def test_kronecker_matches_sympy_and_legendre(D):
    for n in range(-60, 61):
        assert kronecker(D, n) == int(sympy.kronecker_symbol(D, n)), (D, n)
    for p in primes_up_to(300).tolist():
        if p > 2 and D % p:
            assert kronecker(D, p) == legendre_brute(D, p)


def test_kronecker_completely_multiplicative():
    rng = random.Random(7)
    for D in (5, 8, 12, 13, -3, 17):
        for _ in range(2000):
            m, n = rng.randint(-1000, 1000), rng.randint(-1000, 1000)
            assert kronecker(D, m * n) == kronecker(D, m) * kronecker(D, n)


def test_fundamental_examples():
    assert is_fundamental_discriminant(5)
    assert is_fundamental_discriminant(12) and fundamental_brute(12)
    assert not is_fundamental_discriminant(4) and not fundamental_brute(4)
    assert not is_fundamental_discriminant(0)
    assert not is_fundamental_discriminant(-3)
    # 1 is the degenerate (non-field) case
    assert not is_fundamental_discriminant(1)


def test_fundamental_against_definition():
    for D in range(-20, 3000):
        assert is_fundamental_discriminant(D) == fundamental_brute(D), D


def test_discriminant_type():
    d = Discriminant.of(221)
    assert d.fundamental and d.factorization.factors == ((13, 1), (17, 1))
    with pytest.raises(ValueError):
        Discriminant.of(20).require_fundamental()
    with pytest.raises(ValueError):
        Discriminant.of(-5)
    assert next_fundamental(10**4) == 10001


def test_divisors_in_range_examples():
    assert divisors_in_range(12, 1, 12) == [1, 2, 3, 4, 6, 12]
    assert divisors_in_range(12, 5, 11) == [6]
    assert is_prime_trial(97) and divisors_in_range(97, 2, 96) == []
    with pytest.raises(ValueError):
        divisors_in_range(0, 1, 5)


def test_divisor_count_matches_trial_division():
    rng = random.Random(3)
    for n in [1, 2, 720720, 999983, 10**6] + [rng.randint(1, 10**6) for _ in range(200)]:
        if n <= 20000:
            assert divisors_in_range(n, 1, n) == divisors_trial(n)
        else:
            expected = sum(2 - (d * d == n) for d in range(1, math.isqrt(n) + 1) if n % d == 0)
            assert len(divisors_in_range(n, 1, n)) == expected
