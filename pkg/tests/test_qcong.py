import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from matcount.arith import kronecker, primes_up_to
from matcount.qcong import (
    RootTable,
    poly_roots_mod,
    rho,
    rho_partial_sum,
    rho_prime_power,
    rho_table,
    roots_mod,
    sqrt_roots_prime_power,
)
from oracles import roots_brute

FUNDAMENTAL = [5, 8, 12, 13, 17, 21, 24, 28, 221]


def test_prime_power_examples():
    assert sqrt_roots_prime_power(5, 11, 1).roots == tuple(roots_brute(5, 11)) == (4, 7)
    assert sqrt_roots_prime_power(5, 2, 3).roots == tuple(roots_brute(5, 8)) == ()
    assert sqrt_roots_prime_power(5, 5, 1).roots == (0,)


@pytest.mark.parametrize("D", [5, 8, 12, 13, 17, 24, 1, 4, 9, 16, 48, 0, -3, 200])
def test_two_adic_roots_against_brute_force(D):
    # brute force every 2^e up to 2^16; larger e checked by substitution and count stability
    for e in range(1, 17):
        assert list(sqrt_roots_prime_power(D, 2, e).roots) == roots_brute(D, 2**e), (D, e)
    for e in range(17, 21):
        rs = sqrt_roots_prime_power(D, 2, e)
        assert all((v * v - D) % 2**e == 0 for v in rs.roots)
        assert len(rs) == rho_prime_power(D, 2, e)


def test_odd_prime_powers_against_brute_force():
    for D in [5, 12, 13, 21, 45, 75, 98, 0, 27, 243 * 4]:
        for p in (3, 5, 7, 11, 13):
            e = 1
            while p**e <= 20000:
                assert list(sqrt_roots_prime_power(D, p, e).roots) == roots_brute(D, p**e), (D, p, e)
                assert rho_prime_power(D, p, e) == len(roots_brute(D, p**e))
                e += 1


def test_ramified_prime_powers_large():
    # p | D exactly once: one root mod p, none mod p^e for e >= 2
    for D, p in [(21, 3), (21, 7), (221, 13), (221, 17), (5, 5)]:
        assert rho_prime_power(D, p, 1) == 1
        for e in range(2, 8):
            assert sqrt_roots_prime_power(D, p, e).roots == ()


def test_roots_mod_examples():
    assert roots_mod(5, 1).roots == (0,)
    rs = roots_mod(5, 44)
    assert list(rs.roots) == roots_brute(5, 44) == [7, 15, 29, 37]
    # CRT of {4, 7} mod 11 with {1, 3} mod 4
    assert sorted({v % 11 for v in rs.roots}) == [4, 7]
    assert sorted({v % 4 for v in rs.roots}) == [1, 3]
    assert roots_mod(5, 3).roots == ()


def test_rho_examples():
    assert rho(5, 1) == 1
    assert rho(5, 4) == 2
    assert rho(5, 11) == 2


@pytest.mark.parametrize("D", FUNDAMENTAL)
def test_roots_and_rho_against_brute_force(D):
    for k in range(1, 600):
        expected = roots_brute(D, k)
        assert list(roots_mod(D, k).roots) == expected
        assert rho(D, k) == len(expected)


@pytest.mark.parametrize("D", [5, 13, 24])
def test_rho_multiplicative(D):
    for m in range(1, 120):
        for n in range(1, 120):
            if math.gcd(m, n) == 1:
                assert rho(D, m * n) == rho(D, m) * rho(D, n)


def test_rho_at_unramified_primes():
    for D in FUNDAMENTAL:
        for p in primes_up_to(2000).tolist():
            if p > 2 and D % p:
                assert rho(D, p) == 1 + kronecker(D, p)


def test_roots_verify_by_substitution_large_moduli():
    rng = random.Random(11)
    for _ in range(300):
        D = rng.choice(FUNDAMENTAL + [54999997, 1374999997])
        k = rng.randint(1, 10**12)
        rs = roots_mod(D, k)
        assert all(0 <= v < k and (v * v - D) % k == 0 for v in rs.roots)
        assert list(rs.roots) == sorted(set(rs.roots))
        assert len(rs) == rho(D, k)


def test_poly_roots_examples():
    for b in (1, 7, 44, 105):
        assert poly_roots_mod(0, -5, b).roots == roots_mod(5, b).roots
    assert poly_roots_mod(2, -4, 11).roots == (5, 8)
    assert poly_roots_mod(2, -4, 3).roots == ()
    with pytest.raises(ValueError):
        poly_roots_mod(3, 1, 5)


@settings(max_examples=200, deadline=None)
@given(st.integers(-60, 60), st.integers(-2000, 2000), st.integers(1, 500))
def test_poly_roots_bijection(half_t, r, b):
    t = 2 * half_t
    D = half_t * half_t - r
    rs = poly_roots_mod(t, r, b)
    assert list(rs.roots) == [v for v in range(b) if (v * v - t * v + r) % b == 0]
    if D > 0:
        assert len(rs) == rho(D, b)


def test_root_table_matches_roots_mod():
    table = RootTable(221, 3000)
    for b in range(1, 3001):
        assert table.roots(b) == list(roots_mod(221, b).roots)


def test_partial_sum_examples():
    assert rho_partial_sum(5, 1) == 1
    assert rho_partial_sum(5, 10) == 6


@pytest.mark.parametrize("D", [5, 8, 12, 13, 17, 221])
def test_rho_table_against_per_k_brute_force(D):
    y = 3000
    table = rho_table(D, y)
    assert table[1:].tolist() == [len(roots_brute(D, k)) for k in range(1, y + 1)]


def test_partial_sum_at_ten_thousand():
    # per-k oracle through the (independently brute-force-checked) multiplicative rho
    expected = sum(rho(5, k) for k in range(1, 10**4 + 1))
    assert rho_partial_sum(5, 10**4) == expected


def test_partial_sums_nondecreasing():
    sums = rho_table(13, 5000).cumsum()
    assert (sums[1:] >= sums[:-1]).all()
