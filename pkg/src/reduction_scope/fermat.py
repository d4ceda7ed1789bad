"""Reduction types of Fermat hypersurfaces X_0^m + ... + X_{n+1}^m = 0 over Q.

The classification is table driven: a generic congruence rule plus a short
list of exceptional (n, m). The table lives in ``FERMAT_TABLE`` so entries can
be corrected without touching the classifier.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Optional

from .classify import ReductionType
from .errors import DomainError, ExcludedPrimeError
from .primes import is_prime

TABLE_VERSION = 1


@dataclass(frozen=True)
class FermatRule:
    """How one row decides a prime's fate, in terms of p mod ``modulus``.

    ``ordinary`` / ``hodge_witt`` are residue sets; ``None`` means "always"
    for hodge_witt and "unknown" for ordinary.
    """

    modulus: Optional[int]
    ordinary: Optional[frozenset[int]]
    hodge_witt: Optional[frozenset[int]]
    ordinary_known: bool = True


def _res(*r: int) -> frozenset[int]:
    return frozenset(r)


ALWAYS_ORDINARY = FermatRule(modulus=None, ordinary=None, hodge_witt=None)
CURVE = FermatRule(modulus=None, ordinary=None, hodge_witt=None, ordinary_known=False)

# (n, m) -> rule. The (2, 7) Hodge-Witt residues are taken mod 7.
FERMAT_TABLE: dict[tuple[int, int], FermatRule] = {
    (2, 3): FermatRule(3, _res(1), None),
    (3, 3): FermatRule(3, _res(1), None),
    (3, 4): FermatRule(4, _res(1), None),
    (5, 3): FermatRule(3, _res(1), None),
    (2, 7): FermatRule(7, _res(1), _res(1, 2, 4)),
}


@dataclass(frozen=True)
class FermatSpec:
    n: int
    m: int

    def __post_init__(self):
        if self.n < 1 or self.m < 1:
            raise DomainError("Fermat hypersurface needs n >= 1 and m >= 1")


@dataclass(frozen=True)
class FermatDensities:
    ord: Optional[Fraction]  # None when unknown
    hw: Fraction
    nonhw: Fraction


def rule_for(spec: FermatSpec) -> FermatRule:
    # m <= 2 first: a line or conic is ordinary whatever n is
    if spec.m <= 2:
        return ALWAYS_ORDINARY
    if spec.n == 1:
        return CURVE
    if (spec.n, spec.m) in FERMAT_TABLE:
        return FERMAT_TABLE[(spec.n, spec.m)]
    return FermatRule(spec.m, _res(1), _res(1))


def classify_fermat(spec: FermatSpec, p: int) -> tuple[Optional[bool], ReductionType]:
    """(ordinary or None if unknown, verdict) for F_{n,m} at a good prime p."""
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    if spec.m % p == 0:
        raise ExcludedPrimeError(f"p={p} divides m={spec.m}: bad reduction")
    rule = rule_for(spec)
    if not rule.ordinary_known:
        return None, ReductionType.HodgeWitt
    if rule.modulus is None:
        return True, ReductionType.Ordinary
    r = p % rule.modulus
    ordinary = r in rule.ordinary
    if ordinary:
        return True, ReductionType.Ordinary
    hw = rule.hodge_witt is None or r in rule.hodge_witt
    return False, ReductionType.HodgeWitt if hw else ReductionType.NonHodgeWitt


def fermat_densities(spec: FermatSpec) -> FermatDensities:
    rule = rule_for(spec)
    if not rule.ordinary_known:
        return FermatDensities(None, Fraction(1), Fraction(0))
    if rule.modulus is None:
        return FermatDensities(Fraction(1), Fraction(1), Fraction(0))
    units = [r for r in range(rule.modulus) if gcd(r, rule.modulus) == 1]
    ordinary = Fraction(sum(r in rule.ordinary for r in units), len(units))
    if rule.hodge_witt is None:
        hw = Fraction(1)
    else:
        hw = Fraction(sum(r in rule.hodge_witt or r in rule.ordinary for r in units), len(units))
    return FermatDensities(ordinary, hw, 1 - hw)
