"""Primality testing and a segmented sieve."""

from __future__ import annotations

import math

import numpy as np

# Deterministic Miller-Rabin witnesses for every n < 3.3e24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)

SEGMENT = 1 << 18


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
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


def _small_primes(limit: int) -> np.ndarray:
    sieve = np.ones(limit + 1, dtype=bool)
    sieve[:2] = False
    for q in range(2, math.isqrt(limit) + 1):
        if sieve[q]:
            sieve[q * q :: q] = False
    return np.flatnonzero(sieve)


def primes_in_range(lo: int, hi: int) -> list[int]:
    """Primes p with lo <= p <= hi, via a segmented sieve."""
    lo = max(lo, 2)
    if hi < lo:
        return []
    base = _small_primes(max(math.isqrt(hi), 2))
    out: list[int] = []
    start = lo
    while start <= hi:
        stop = min(start + SEGMENT, hi + 1)
        mask = np.ones(stop - start, dtype=bool)
        for q in base:
            q = int(q)
            if q * q >= stop:
                break
            first = max(q * q, -(-start // q) * q)
            mask[first - start :: q] = False
        out.extend((np.flatnonzero(mask) + start).tolist())
        start = stop
    return out


def primes_up_to(bound: int) -> list[int]:
    """All primes <= bound, ascending."""
    return primes_in_range(2, bound)


def partition_range(lo: int, hi: int, parts: int) -> list[tuple[int, int]]:
    """Split [lo, hi] into at most ``parts`` contiguous, disjoint, nonempty ranges."""
    if hi < lo:
        return []
    parts = max(1, min(parts, hi - lo + 1))
    step = -(-(hi - lo + 1) // parts)
    return [(a, min(a + step - 1, hi)) for a in range(lo, hi + 1, step)]
