"""Roots of nu^2 = D (mod k): prime-power solvers, CRT assembly, rho(k) and its partial sums."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Tuple

import numpy as np

from .arith import (
    Discriminant,
    factorize,
    factorize_with_spf,
    kronecker,
    primes_up_to,
)


@dataclass(frozen=True)
class RootSet:
    modulus: int
    roots: Tuple[int, ...]

    def __len__(self) -> int:
        return len(self.roots)

    def __iter__(self):
        return iter(self.roots)


def _int(D) -> int:
    return D.D if isinstance(D, Discriminant) else int(D)


def _valuation(n: int, p: int) -> Tuple[int, int]:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v, n


def _sqrt_mod_prime(a: int, p: int) -> Optional[int]:
    """One square root of a unit a modulo an odd prime p (Tonelli-Shanks)."""
    a %= p
    if pow(a, (p - 1) // 2, p) != 1:
        return None
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, x = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, x = t * c % p, x * b % p
    return x


def _unit_roots(a: int, p: int, m: int) -> List[int]:
    """Roots of mu^2 = a (mod p^m) for a prime to p, m >= 1."""
    pm = p**m
    if p == 2:
        if m == 1:
            return [1]
        if m == 2:
            return [1, 3] if a % 4 == 1 else []
        if a % 8 != 1:
            return []
        # lift x^2 = a from mod 8 upwards; each step fixes one more bit
        x = 1
        for j in range(3, m):
            if (x * x - a) % (1 << (j + 1)):
                x += 1 << (j - 1)
        half = pm // 2
        return sorted({x % pm, (-x) % pm, (x + half) % pm, (-x + half) % pm})
    x = _sqrt_mod_prime(a, p)
    if x is None:
        return []
    # Newton/Hensel: the derivative 2x is a unit mod p
    pk = p
    while pk < pm:
        pk = min(pk * pk, pm)
        x = (x - (x * x - a) * pow(2 * x, -1, pk)) % pk
    return sorted({x, (-x) % pm})


def _unit_root_count(a: int, p: int, m: int) -> int:
    if p == 2:
        if m == 1:
            return 1
        if m == 2:
            return 2 if a % 4 == 1 else 0
        return 4 if a % 8 == 1 else 0
    return 1 + kronecker(a, p)


def sqrt_roots_prime_power(D, p: int, e: int) -> RootSet:
    """All nu mod p^e with nu^2 = D (mod p^e), for any integer D."""
    if e < 1:
        raise ValueError("exponent must be >= 1")
    pe = p**e
    a = _int(D) % pe
    if a == 0:
        step = p ** ((e + 1) // 2)
        return RootSet(pe, tuple(range(0, pe, step)))
    v, unit = _valuation(a, p)
    if v % 2:
        return RootSet(pe, ())
    k = v // 2
    # nu = p^k mu, mu^2 = unit (mod p^(e-2k)), mu read mod p^(e-k)
    m = e - 2 * k
    base = _unit_roots(unit, p, m)
    pm, pk = p**m, p**k
    roots = sorted((pk * (mu + j * pm)) % pe for mu in base for j in range(pk))
    return RootSet(pe, tuple(roots))


def rho_prime_power(D, p: int, e: int) -> int:
    """Count of roots mod p^e without materializing them."""
    if e == 0:
        return 1
    pe = p**e
    a = _int(D) % pe
    if a == 0:
        return p ** (e // 2)
    v, unit = _valuation(a, p)
    if v % 2:
        return 0
    k = v // 2
    return p**k * _unit_root_count(unit, p, e - 2 * k)


def _crt_merge(roots_a: Iterable[int], ma: int, roots_b: Iterable[int], mb: int) -> List[int]:
    inv = pow(ma, -1, mb)
    roots_b = list(roots_b)
    out = []
    for ra in roots_a:
        for rb in roots_b:
            out.append(ra + ma * ((rb - ra) * inv % mb))
    return out


def roots_from_factors(D, factors, cache: Optional[Dict] = None) -> List[int]:
    """CRT-combined roots mod prod(p^e) for the given factor list."""
    roots, mod = [0], 1
    for p, e in factors:
        key = (p, e)
        if cache is not None and key in cache:
            local = cache[key]
        else:
            local = sqrt_roots_prime_power(D, p, e).roots
            if cache is not None:
                cache[key] = local
        if not local:
            return []
        roots = _crt_merge(roots, mod, local, p**e)
        mod *= p**e
    return sorted(roots)


def roots_mod(D, k: int) -> RootSet:
    if k < 1:
        raise ValueError(f"modulus must be >= 1, got {k}")
    if k == 1:
        return RootSet(1, (0,))
    return RootSet(k, tuple(roots_from_factors(D, factorize(k).factors)))


def rho(D, k: int) -> int:
    if k < 1:
        raise ValueError(f"modulus must be >= 1, got {k}")
    out = 1
    for p, e in factorize(k).factors:
        out *= rho_prime_power(D, p, e)
        if out == 0:
            break
    return out


def poly_roots_mod(t: int, r: int, b: int) -> RootSet:
    """Residues nu mod b with nu^2 - t*nu + r = 0 (mod b); t must be even."""
    if t % 2:
        raise ValueError(f"t must be even, got {t}")
    if b < 1:
        raise ValueError(f"modulus must be >= 1, got {b}")
    D = t * t // 4 - r
    shift = t // 2
    return RootSet(b, tuple(sorted((nu + shift) % b for nu in roots_mod(D, b).roots)))


class RootTable:
    """Roots mod b for many b <= limit, sharing one spf table and per-prime-power cache."""

    def __init__(self, D: int, limit: int):
        from .arith import spf_sieve

        self.D = int(D)
        self.limit = int(limit)
        self.spf = spf_sieve(max(self.limit, 2))
        self._cache: Dict = {}

    def roots(self, b: int) -> List[int]:
        if b == 1:
            return [0]
        return roots_from_factors(self.D, factorize_with_spf(b, self.spf), self._cache)


def rho_table(D, y: int) -> np.ndarray:
    """Array of rho(k) for k = 0..y (entry 0 is 0), built prime by prime.

    Odd primes not dividing D contribute the same factor to every power, so a
    single stride suffices; p = 2 and p | D are handled valuation by valuation.
    """
    D = _int(D)
    y = int(y)
    out = np.ones(y + 1, dtype=np.int64)
    out[0] = 0
    if y < 2:
        return out
    for p in primes_up_to(y).tolist():
        if p != 2 and D % p:
            if pow(D % p, (p - 1) // 2, p) != 1:
                out[p::p] = 0
            else:
                out[p::p] *= 2
            continue
        pe, e = p, 1
        while pe <= y:
            idx = np.arange(pe, y + 1, pe)
            idx = idx[(idx // pe) % p != 0]
            out[idx] *= rho_prime_power(D, p, e)
            pe *= p
            e += 1
    return out


def rho_partial_sum(D, y: int) -> int:
    """Sum of rho(k) over 1 <= k <= y."""
    if y < 1:
        raise ValueError(f"y must be >= 1, got {y}")
    return int(rho_table(D, y).sum())
