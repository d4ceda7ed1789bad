"""Number fields given by a monic integral polynomial, and how rational primes split in them."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

from . import ffpoly
from .errors import ConsistencyError, DomainError
from .primes import is_prime


def _bareiss_det(m: list[list[int]]) -> int:
    """Integer determinant by fraction-free elimination."""
    a = [row[:] for row in m]
    n = len(a)
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k]:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def resultant(f: Sequence[int], g: Sequence[int]) -> int:
    """Resultant of two integer polynomials (constant term first) via the Sylvester matrix."""
    m, n = len(f) - 1, len(g) - 1
    if m < 0 or n < 0:
        return 0
    if m == 0:
        return f[0] ** n
    if n == 0:
        return g[0] ** m
    size = m + n
    rows = []
    for i in range(n):
        row = [0] * size
        for j, c in enumerate(reversed(f)):
            row[i + j] = c
        rows.append(row)
    for i in range(m):
        row = [0] * size
        for j, c in enumerate(reversed(g)):
            row[i + j] = c
        rows.append(row)
    return _bareiss_det(rows)


def poly_discriminant(f: Sequence[int]) -> int:
    n = len(f) - 1
    df = [i * f[i] for i in range(1, n + 1)]
    res = resultant(f, df)
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return sign * res // f[-1]


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small = [d for d in range(1, math.isqrt(n) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


def has_rational_root(f: Sequence[int]) -> bool:
    """Rational root test for a monic integer polynomial (roots must be integer divisors of f(0))."""
    if f[0] == 0:
        return True
    for d in _divisors(f[0]):
        for r in (d, -d):
            acc = 0
            for c in reversed(f):
                acc = acc * r + c
            if acc == 0:
                return True
    return False


@dataclass(frozen=True)
class NumberField:
    """K = Q[x]/(f) for a monic integral f, stored constant term first.

    Irreducibility over Q is trusted; only a rational-root check is made.
    """

    defining_poly: tuple[int, ...]
    label: Optional[str] = None
    disc_poly: int = field(init=False)

    def __post_init__(self):
        f = tuple(int(c) for c in self.defining_poly)
        if len(f) < 2 or f[-1] != 1:
            raise DomainError(f"defining polynomial {f} must be monic of degree >= 1")
        if len(f) > 2 and has_rational_root(f):
            raise DomainError(f"defining polynomial {f} has a rational root")
        disc = poly_discriminant(f) if len(f) > 2 else 1
        if disc == 0:
            raise DomainError(f"defining polynomial {f} is not separable")
        object.__setattr__(self, "defining_poly", f)
        object.__setattr__(self, "disc_poly", disc)

    @property
    def degree(self) -> int:
        return len(self.defining_poly) - 1

    def is_excluded(self, p: int) -> bool:
        return self.disc_poly % p == 0


@dataclass(frozen=True)
class SplittingPattern:
    prime_p: int
    degrees: tuple[int, ...]
    ramified: bool = False

    @property
    def num_primes(self) -> int:
        return len(self.degrees)


class SplitClass(str, enum.Enum):
    CompletelySplit = "CompletelySplit"
    AlmostNotCompletely = "AlmostNotCompletely"
    Other = "Other"
    RamifiedOrBad = "RamifiedOrBad"


def splitting_pattern(K: NumberField, p: int) -> SplittingPattern:
    """Residue degrees of the primes of K over p, read off the factorization of f mod p.

    Primes dividing the polynomial discriminant are flagged ramified with no degrees.
    """
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    if K.is_excluded(p):
        return SplittingPattern(p, (), True)
    f = [c % p for c in K.defining_poly]
    return SplittingPattern(p, tuple(ffpoly.factor_degrees(f, p)), False)


def classify_split(pattern: SplittingPattern, field_degree: int) -> SplitClass:
    if pattern.ramified:
        return SplitClass.RamifiedOrBad
    if sum(pattern.degrees) != field_degree:
        raise ConsistencyError(
            f"residue degrees {pattern.degrees} do not sum to field degree {field_degree}"
        )
    degs = sorted(pattern.degrees)
    if all(d == 1 for d in degs):
        return SplitClass.CompletelySplit
    if field_degree > 2 and degs[-1] == 2 and all(d == 1 for d in degs[:-1]):
        return SplitClass.AlmostNotCompletely
    return SplitClass.Other


def inert_count_over_p(pattern_K: SplittingPattern, pattern_K0: SplittingPattern) -> int:
    """Number of primes of K0 above p that stay inert in the quadratic extension K/K0.

    With n primes in K and l in K0, a split prime of K0 contributes two primes
    of K and an inert one contributes one, so the count is 2l - n.
    """
    if pattern_K.ramified or pattern_K0.ramified:
        raise ConsistencyError("inert count needs unramified patterns")
    if pattern_K.prime_p != pattern_K0.prime_p:
        raise ConsistencyError("patterns are for different primes")
    if sum(pattern_K.degrees) != 2 * sum(pattern_K0.degrees):
        raise ConsistencyError("K must be a quadratic extension of K0")
    ell, n = pattern_K0.num_primes, pattern_K.num_primes
    inert = 2 * ell - n
    if not 0 <= inert <= ell:
        raise ConsistencyError(f"inconsistent patterns: n={n}, l={ell}")
    return inert
