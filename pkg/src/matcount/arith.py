"""Integer arithmetic: sieves, factorization, Kronecker symbol, discriminants."""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import List, Tuple

import numpy as np

MAX_FACTOR_INPUT = 2**63
TRIAL_BOUND = 1000
SIEVE_LIMIT = 10**6

# Deterministic Miller-Rabin witnesses, valid for n < 3.3e24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

# (a/2) for a mod 8
_KRON2 = (0, 1, 0, -1, 0, -1, 0, 1)


def primes_up_to(n: int) -> np.ndarray:
    """All primes <= n as an int64 array (Eratosthenes, bytewise)."""
    if n < 2:
        return np.zeros(0, dtype=np.int64)
    sieve = np.ones(n + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, math.isqrt(n) + 1):
        if sieve[p]:
            sieve[p * p :: p] = False
    return np.flatnonzero(sieve).astype(np.int64)


def spf_sieve(n: int) -> np.ndarray:
    """Smallest-prime-factor table for 0..n (entries 0 and 1 are 0 and 1)."""
    spf = np.arange(n + 1, dtype=np.int64)
    for p in range(2, math.isqrt(n) + 1):
        if spf[p] == p:
            block = spf[p * p :: p]
            mask = block == np.arange(p * p, n + 1, p)
            block[mask] = p
    return spf


@lru_cache(maxsize=1)
def _small_primes() -> Tuple[int, ...]:
    return tuple(int(p) for p in primes_up_to(SIEVE_LIMIT))


def _trial_primes() -> Tuple[int, ...]:
    primes = _small_primes()
    return primes[: bisect.bisect_right(primes, TRIAL_BOUND)]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _brent_split(n: int) -> int:
    """Return a nontrivial factor of the odd composite n."""
    c = 1
    while True:
        y, m, g, r, q = 2, 128, 1, 1, 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
        c += 1


def _split_into(n: int, out: dict) -> None:
    if n == 1:
        return
    if is_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    root = math.isqrt(n)
    if root * root == n:
        _split_into(root, out)
        _split_into(root, out)
        return
    d = _brent_split(n)
    _split_into(d, out)
    _split_into(n // d, out)


@dataclass(frozen=True)
class Factorization:
    n: int
    factors: Tuple[Tuple[int, int], ...]

    def __post_init__(self):
        prod = 1
        last = 1
        for p, e in self.factors:
            if p <= last or e < 1:
                raise ValueError(f"malformed factor list {self.factors}")
            last = p
            prod *= p**e
        if prod != self.n:
            raise ValueError(f"factors multiply to {prod}, not {self.n}")

    def primes(self) -> List[int]:
        return [p for p, _ in self.factors]

    def is_squarefree(self) -> bool:
        return all(e == 1 for _, e in self.factors)


def factorize(n: int) -> Factorization:
    """Factor 1 <= n <= 2**63 by trial division then Brent's rho."""
    n = int(n)
    if n < 1:
        raise ValueError(f"factorize needs n >= 1, got {n}")
    if n > MAX_FACTOR_INPUT:
        raise ValueError(f"factorize is limited to n <= 2**63, got {n}")
    found: dict = {}
    m = n
    for p in _trial_primes():
        if p * p > m:
            break
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            found[p] = e
    if m > 1:
        _split_into(m, found)
    return Factorization(n, tuple(sorted(found.items())))


def factorize_with_spf(n: int, spf: np.ndarray) -> Tuple[Tuple[int, int], ...]:
    """Factor n using a precomputed smallest-prime-factor table (n < len(spf))."""
    out = []
    while n > 1:
        p = int(spf[n])
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        out.append((p, e))
    return tuple(out)


def divisors_from_factors(factors) -> List[int]:
    divs = [1]
    for p, e in factors:
        step = []
        pk = 1
        for _ in range(e):
            pk *= p
            step.extend(d * pk for d in divs)
        divs.extend(step)
    return divs


def divisors_in_range(n: int, lo: int, hi: int) -> List[int]:
    """Divisors d of n with lo <= d <= hi, ascending."""
    if n < 1:
        raise ValueError(f"divisors_in_range needs n >= 1, got {n}")
    if lo > hi:
        return []
    return sorted(d for d in divisors_from_factors(factorize(n).factors) if lo <= d <= hi)


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a/n) for arbitrary integers a, n."""
    a, n = int(a), int(n)
    if n == 0:
        return 1 if abs(a) == 1 else 0
    if a % 2 == 0 and n % 2 == 0:
        return 0
    v = 0
    while n % 2 == 0:
        n //= 2
        v += 1
    k = _KRON2[a & 7] if v & 1 else 1
    if n < 0:
        n = -n
        if a < 0:
            k = -k
    # n is now odd and positive: the Jacobi symbol depends only on a mod n
    a %= n
    while a:
        v = 0
        while a % 2 == 0:
            a //= 2
            v += 1
        if v & 1:
            k *= _KRON2[n & 7]
        if a & n & 2:
            k = -k
        a, n = n % a, a
    return k if n == 1 else 0


def is_squarefree(n: int) -> bool:
    return factorize(n).is_squarefree()


def is_fundamental_discriminant(D: int) -> bool:
    """True for discriminants of real quadratic fields (D = 1 is excluded)."""
    D = int(D)
    if D <= 1:
        return False
    if D % 4 == 1:
        return is_squarefree(D)
    if D % 4 == 0:
        m = D // 4
        return m % 4 in (2, 3) and is_squarefree(m)
    return False


@dataclass(frozen=True)
class Discriminant:
    D: int
    fundamental: bool
    factorization: Factorization = field(repr=False)

    @classmethod
    def of(cls, D: int) -> "Discriminant":
        D = int(D)
        if D <= 0:
            raise ValueError(f"only positive discriminants are supported, got {D}")
        return cls(D, is_fundamental_discriminant(D), factorize(D))

    def require_fundamental(self) -> "Discriminant":
        if not self.fundamental:
            raise ValueError(f"D = {self.D} is not a positive fundamental discriminant")
        return self

    def __int__(self) -> int:
        return self.D


def as_discriminant(D) -> Discriminant:
    return D if isinstance(D, Discriminant) else Discriminant.of(D)


def next_fundamental(start: int) -> int:
    D = max(int(start), 2)
    while not is_fundamental_discriminant(D):
        D += 1
    return D
