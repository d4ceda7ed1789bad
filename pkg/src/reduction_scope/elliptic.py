"""Elliptic curves over Q: traces of Frobenius by point counting, supersingular searches,
and the reduction type of a product of two curves.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .classify import ReductionType, product_status, status_to_type
from .errors import DomainError, ExcludedPrimeError
from .parallel import map_ranges
from .primes import is_prime, primes_in_range

# Below this the scalar Euler-criterion loop beats numpy's setup cost.
SCALAR_CUTOFF = 600
CHUNK = 1 << 20


@dataclass(frozen=True)
class EllipticCurveQ:
    """y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6."""

    a1: int
    a2: int
    a3: int
    a4: int
    a6: int
    label: Optional[str] = field(default=None, compare=False)

    def __post_init__(self):
        if self.discriminant == 0:
            raise DomainError(f"singular curve {self.ainvs}")

    @classmethod
    def from_ainvs(cls, ainvs, label: Optional[str] = None) -> EllipticCurveQ:
        a = [int(c) for c in ainvs]
        if len(a) != 5:
            raise DomainError("need five Weierstrass coefficients a1,a2,a3,a4,a6")
        return cls(*a, label=label)

    @property
    def ainvs(self) -> tuple[int, int, int, int, int]:
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    @property
    def b_invariants(self) -> tuple[int, int, int, int]:
        a1, a2, a3, a4, a6 = self.ainvs
        b2 = a1 * a1 + 4 * a2
        b4 = 2 * a4 + a1 * a3
        b6 = a3 * a3 + 4 * a6
        b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
        return b2, b4, b6, b8

    @property
    def c_invariants(self) -> tuple[int, int]:
        b2, b4, b6, _ = self.b_invariants
        return b2 * b2 - 24 * b4, -(b2**3) + 36 * b2 * b4 - 216 * b6

    @property
    def discriminant(self) -> int:
        b2, b4, b6, b8 = self.b_invariants
        return -b2 * b2 * b8 - 8 * b4**3 - 27 * b6 * b6 + 9 * b2 * b4 * b6

    def has_good_reduction(self, p: int) -> bool:
        return self.discriminant % p != 0

    def __str__(self) -> str:
        return self.label or "[" + ",".join(map(str, self.ainvs)) + "]"


def _check_prime(E: EllipticCurveQ, p: int) -> None:
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    if p <= 3:
        raise ExcludedPrimeError(f"p={p}: primes 2 and 3 are excluded")
    if not E.has_good_reduction(p):
        raise ExcludedPrimeError(f"{E} has bad reduction at p={p}")


def _rhs_coeffs(E: EllipticCurveQ, p: int) -> tuple[int, int, int, int]:
    # (2y + a1 x + a3)^2 = 4x^3 + b2 x^2 + 2 b4 x + b6
    b2, b4, b6, _ = E.b_invariants
    return b6 % p, 2 * b4 % p, b2 % p, 4 % p


def _character_sum_scalar(c: tuple[int, int, int, int], p: int) -> int:
    c0, c1, c2, c3 = c
    e = (p - 1) // 2
    total = 0
    for x in range(p):
        v = ((c3 * x + c2) * x + c1) * x + c0
        v %= p
        if v:
            total += 1 if pow(v, e, p) == 1 else -1
    return total


def _character_sum_vector(c: tuple[int, int, int, int], p: int) -> int:
    # Quadratic character by table lookup: chi[v] = +1 on nonzero squares, -1 elsewhere, 0 at 0.
    half = np.arange((p - 1) // 2 + 1, dtype=np.int64)
    chi = np.full(p, -1, dtype=np.int8)
    chi[(half * half) % p] = 1
    chi[0] = 0
    c0, c1, c2, c3 = c
    total = 0
    for start in range(0, p, CHUNK):
        x = np.arange(start, min(start + CHUNK, p), dtype=np.int64)
        # x^2 (c3 x + c2) + c1 x + c0 < 6p^2 fits int64 for p < 2^30; reduce twice only
        x2 = x * x
        x2 %= p
        v = c3 * x
        v += c2
        v *= x2
        v += c1 * x
        v += c0
        v %= p
        total += int(chi[v].sum(dtype=np.int64))
    return total


def ap(E: EllipticCurveQ, p: int) -> int:
    """a_p = p + 1 - #E(F_p) for a good prime p > 3."""
    _check_prime(E, p)
    c = _rhs_coeffs(E, p)
    if p < SCALAR_CUTOFF:
        s = _character_sum_scalar(c, p)
    else:
        if p >= 1 << 30:
            raise DomainError("point counting is limited to p < 2^30")
        s = _character_sum_vector(c, p)
    a = -s
    if a * a > 4 * p:
        raise AssertionError(f"Hasse bound violated: a_{p}={a} for {E}")
    return a


def is_supersingular(E: EllipticCurveQ, p: int) -> bool:
    # |a_p| <= 2 sqrt(p) < p for p >= 5, so p | a_p iff a_p = 0
    return ap(E, p) == 0


def is_ordinary(E: EllipticCurveQ, p: int) -> bool:
    return not is_supersingular(E, p)


@dataclass(frozen=True)
class SupersingularSearch:
    bound: int
    primes: tuple[int, ...]
    bad_primes: tuple[int, ...]


def _search_range(lo: int, hi: int, curves: tuple[EllipticCurveQ, ...]):
    found, bad = [], []
    for p in primes_in_range(max(lo, 5), hi):
        if any(not E.has_good_reduction(p) for E in curves):
            bad.append(p)
            continue
        # later curves are only evaluated while every earlier one is supersingular
        if all(ap(E, p) == 0 for E in curves):
            found.append(p)
    return found, bad


def _search(curves: tuple[EllipticCurveQ, ...], bound: int, workers: int) -> SupersingularSearch:
    if bound < 5:
        raise DomainError("search bound must be >= 5")
    parts = map_ranges(_search_range, 5, bound, workers, curves)
    found = [p for f, _ in parts for p in f]
    bad = [p for _, b in parts for p in b]
    return SupersingularSearch(bound, tuple(found), tuple(bad))


def supersingular_search(E: EllipticCurveQ, bound: int, workers: int = 1) -> SupersingularSearch:
    """All good primes 5 <= p <= bound with a_p = 0."""
    return _search((E,), bound, workers)


def common_supersingular(
    E1: EllipticCurveQ, E2: EllipticCurveQ, bound: int, workers: int = 1
) -> SupersingularSearch:
    """Good primes 5 <= p <= bound where both curves are supersingular."""
    return _search((E1, E2), bound, workers)


def curve_status(E: EllipticCurveQ, p: int) -> tuple[bool, bool]:
    # curves are always Hodge-Witt
    return is_ordinary(E, p), True


def classify_product_surface(E1: EllipticCurveQ, E2: EllipticCurveQ, p: int) -> ReductionType:
    return status_to_type(*product_status([curve_status(E1, p), curve_status(E2, p)]))


# Curves used in the worked examples. Coefficients for 37a1 and 37b1 are from
# Cremona's tables of elliptic curves.
BUILTIN_CURVES = {
    "E_i": EllipticCurveQ(0, 0, 0, -1, 0, label="E_i"),  # y^2 = x^3 - x, CM by Z[i]
    "E_zeta3": EllipticCurveQ(0, 0, 0, 0, 1, label="E_zeta3"),  # y^2 = x^3 + 1, CM by Z[zeta_3]
    "37a1": EllipticCurveQ(0, 0, 1, -1, 0, label="37a1"),
    "37b1": EllipticCurveQ(0, 1, 1, -23, -50, label="37b1"),
}
