"""Reproductions of the worked examples, each a list of named pass/fail checks."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from . import elliptic
from .classify import ReductionType
from .config import builtin_field
from .density import BUILTIN_TABLES, DensityReport, gtr_density, ordinary_density, scan_rows
from .fermat import FermatSpec, classify_fermat
from .numberfield import SplitClass
from .primes import primes_in_range

J0_37_PRIME = 18489743


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class ReproResult:
    name: str
    checks: list[Check] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name: str, passed: bool, detail: str = "") -> None:
        self.checks.append(Check(name, bool(passed), detail))

    def to_dict(self) -> dict:
        return {
            "example": self.name,
            "passed": self.passed,
            "elapsed_s": round(self.elapsed, 3),
            "checks": [{"name": c.name, "passed": c.passed, "detail": c.detail} for c in self.checks],
        }


def _within(x: Fraction, target: Fraction, tol: float) -> bool:
    return abs(float(x - target)) <= tol


def zeta5(bound: int = 10**6, workers: int = 1) -> ReproResult:
    """Q(zeta_5): ordinary iff p = 1 mod 5, non-Hodge-Witt otherwise."""
    res = ReproResult("zeta5")
    desc = builtin_field("zeta5")
    t = time.perf_counter()
    rows = scan_rows(desc.field, 7, bound - 1, None, desc.other_rule, workers)
    dt = time.perf_counter() - t
    report = DensityReport.from_rows(rows, bound - 1, "zeta5")
    frac = report.split_fraction(SplitClass.CompletelySplit)
    res.add("completely-split fraction within 0.01 of 1/4", _within(frac, Fraction(1, 4), 0.01), f"{float(frac):.5f}")
    bad = [
        r.p
        for r in rows
        if (r.reduction is ReductionType.Ordinary) != (r.p % 5 == 1)
        or r.reduction not in (ReductionType.Ordinary, ReductionType.NonHodgeWitt)
    ]
    res.add("verdict is Ordinary exactly when p = 1 mod 5", not bad, f"{len(rows)} primes, {len(bad)} exceptions")
    almost = report.split_counts[SplitClass.AlmostNotCompletely]
    res.add("no almost-but-not-completely split primes (galois field)", almost == 0, str(almost))
    res.add("scan finishes under 60 s", dt < 60, f"{dt:.2f}s with {workers} worker(s)")
    return res


def d4_field(bound: int = 10**6, workers: int = 1) -> ReproResult:
    """x^4 + 134x^2 + 89 with Galois group D4."""
    res = ReproResult("d4-field")
    table = BUILTIN_TABLES["D4"]
    res.add("gtr density of D4 is 3/8", gtr_density(table) == Fraction(3, 8), str(gtr_density(table)))
    res.add("ordinary density of D4 is 1/8", ordinary_density(table) == Fraction(1, 8), str(ordinary_density(table)))
    desc = builtin_field("d4")
    rows = scan_rows(desc.field, 2, bound - 1, desc.k0, None, workers)
    report = DensityReport.from_rows(rows, bound - 1, "d4")
    cs = report.split_fraction(SplitClass.CompletelySplit)
    an = report.split_fraction(SplitClass.AlmostNotCompletely)
    res.add("completely-split fraction within 0.02 of 1/8", _within(cs, Fraction(1, 8), 0.02), f"{float(cs):.5f}")
    res.add("almost-split fraction within 0.02 of 2/8", _within(an, Fraction(2, 8), 0.02), f"{float(an):.5f}")
    bad = [r.p for r in rows if r.split_class is SplitClass.AlmostNotCompletely and r.inert_count != 1]
    res.add("every almost-split prime has exactly one inert prime of K0", not bad, f"{len(bad)} failures")
    return res


def _fermat_2_7_expected(p: int) -> ReductionType:
    r = p % 7
    if r == 1:
        return ReductionType.Ordinary
    return ReductionType.HodgeWitt if r in (2, 4) else ReductionType.NonHodgeWitt


def fermat_2_7(bound: int = 10**5) -> ReproResult:
    """The septic Fermat surface."""
    res = ReproResult("fermat-2-7")
    spec = FermatSpec(2, 7)
    primes = primes_in_range(11, bound - 1)
    verdicts = {p: classify_fermat(spec, p) for p in primes}
    n = len(primes)
    ordinary = Fraction(sum(1 for o, _ in verdicts.values() if o), n)
    hw = Fraction(sum(1 for _, v in verdicts.values() if v.is_hodge_witt), n)
    nonhw = Fraction(sum(1 for _, v in verdicts.values() if v is ReductionType.NonHodgeWitt), n)
    res.add("ordinary frequency within 0.03 of 1/6", _within(ordinary, Fraction(1, 6), 0.03), f"{float(ordinary):.5f}")
    res.add("Hodge-Witt frequency within 0.03 of 1/2", _within(hw, Fraction(1, 2), 0.03), f"{float(hw):.5f}")
    res.add("non-Hodge-Witt frequency within 0.03 of 1/2", _within(nonhw, Fraction(1, 2), 0.03), f"{float(nonhw):.5f}")
    bad = [p for p, (_, v) in verdicts.items() if v is not _fermat_2_7_expected(p)]
    res.add("every verdict matches the residue rule mod 7", not bad, f"{n} primes, {len(bad)} mismatches")
    return res


def _product_expected(p: int) -> ReductionType:
    ordinary = (p % 4 == 1) + (p % 3 == 1)
    return [ReductionType.NonHodgeWitt, ReductionType.AlmostOrdinary, ReductionType.Ordinary][ordinary]


def e_times_eprime(bound: int = 10**5) -> ReproResult:
    """E: y^2 = x^3 - x times E': y^2 = x^3 + 1."""
    res = ReproResult("e-times-eprime")
    E, E2 = elliptic.BUILTIN_CURVES["E_i"], elliptic.BUILTIN_CURVES["E_zeta3"]
    primes = [p for p in primes_in_range(5, bound - 1) if E.has_good_reduction(p) and E2.has_good_reduction(p)]
    verdicts = {p: elliptic.classify_product_surface(E, E2, p) for p in primes}
    n = len(primes)
    ordinary = Fraction(sum(v is ReductionType.Ordinary for v in verdicts.values()), n)
    hw = Fraction(sum(v.is_hodge_witt for v in verdicts.values()), n)
    res.add("ordinary fraction within 0.02 of 1/4", _within(ordinary, Fraction(1, 4), 0.02), f"{float(ordinary):.5f}")
    res.add("Hodge-Witt fraction within 0.02 of 3/4", _within(hw, Fraction(3, 4), 0.02), f"{float(hw):.5f}")
    bad = [p for p, v in verdicts.items() if v is not _product_expected(p)]
    res.add("every verdict matches p mod 4 and p mod 3", not bad, f"{n} primes, {len(bad)} mismatches")
    return res


def j0_37(search_bound: int = 10**5, workers: int = 1) -> ReproResult:
    """Common supersingular primes of the two elliptic factors of J_0(37)."""
    res = ReproResult("j0-37")
    E1, E2 = elliptic.BUILTIN_CURVES["37a1"], elliptic.BUILTIN_CURVES["37b1"]
    t = time.perf_counter()
    a1, a2 = elliptic.ap(E1, J0_37_PRIME), elliptic.ap(E2, J0_37_PRIME)
    dt = time.perf_counter() - t
    res.add(f"a_p(37a1) = 0 at p = {J0_37_PRIME}", a1 == 0, str(a1))
    res.add(f"a_p(37b1) = 0 at p = {J0_37_PRIME}", a2 == 0, str(a2))
    res.add("both a_p evaluations under 30 s", dt < 30, f"{dt:.2f}s")
    common = elliptic.common_supersingular(E1, E2, search_bound, workers)
    res.add(f"no common supersingular prime up to {search_bound}", not common.primes, str(list(common.primes)))
    return res


EXAMPLES: dict[str, Callable[..., ReproResult]] = {
    "zeta5": zeta5,
    "d4-field": d4_field,
    "e-times-eprime": e_times_eprime,
    "fermat-2-7": fermat_2_7,
    "j0-37": j0_37,
}


def run_example(name: str, workers: int = 1, bound: Optional[int] = None) -> ReproResult:
    fn = EXAMPLES[name]
    kwargs = {}
    if "workers" in fn.__code__.co_varnames:
        kwargs["workers"] = workers
    if bound is not None:
        kwargs["search_bound" if name == "j0-37" else "bound"] = bound
    t = time.perf_counter()
    res = fn(**kwargs)
    res.elapsed = time.perf_counter() - t
    return res
