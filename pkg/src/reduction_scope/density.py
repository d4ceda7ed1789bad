"""Chebotarev-side densities.

Theoretical densities come from conjugacy-class tables of the Galois group of
the normal closure acting on the cosets of the field's stabilizer. Empirical
densities come from scanning primes and tallying split classes and verdicts.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .classify import ReductionType, classify_by_splitting, classify_with_inert_count, refine_galois
from .errors import ConsistencyError
from .numberfield import NumberField, SplitClass, classify_split, inert_count_over_p, splitting_pattern
from .parallel import map_ranges
from .primes import primes_in_range, primes_up_to  # noqa: F401  (re-exported)


@dataclass(frozen=True)
class GroupClassTable:
    degree_n: int
    order: int
    classes: tuple[tuple[int, tuple[int, ...]], ...]
    name: Optional[str] = None

    def __post_init__(self):
        classes = tuple(
            (int(size), tuple(sorted((int(c) for c in ct), reverse=True))) for size, ct in self.classes
        )
        object.__setattr__(self, "classes", classes)
        if sum(size for size, _ in classes) != self.order:
            raise ConsistencyError(f"class sizes of {self.name} do not sum to the order {self.order}")
        for size, ct in classes:
            if size <= 0 or sum(ct) != self.degree_n or any(c <= 0 for c in ct):
                raise ConsistencyError(f"bad class ({size}, {ct}) in {self.name}")
        identity = (1,) * self.degree_n
        if [size for size, ct in classes if ct == identity] != [1]:
            raise ConsistencyError(f"{self.name} needs exactly one identity class of size 1")

    @classmethod
    def from_dict(cls, d: dict) -> GroupClassTable:
        return cls(
            degree_n=int(d["degree"]),
            order=int(d["order"]),
            classes=tuple((c[0], tuple(c[1])) for c in d["classes"]),
            name=d.get("name"),
        )

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "degree": self.degree_n,
            "order": self.order,
            "classes": [[size, list(ct)] for size, ct in self.classes],
        }


def _table(name, n, order, classes):
    return GroupClassTable(n, order, tuple(classes), name)


BUILTIN_TABLES: dict[str, GroupClassTable] = {
    t.name: t
    for t in [
        _table("C2", 2, 2, [(1, (1, 1)), (1, (2,))]),
        _table("C4", 4, 4, [(1, (1, 1, 1, 1)), (1, (4,)), (1, (4,)), (1, (2, 2))]),
        _table("V4", 4, 4, [(1, (1, 1, 1, 1)), (1, (2, 2)), (1, (2, 2)), (1, (2, 2))]),
        _table(
            "D4",
            4,
            8,
            [(1, (1, 1, 1, 1)), (2, (2, 1, 1)), (2, (2, 2)), (1, (2, 2)), (2, (4,))],
        ),
        _table("S3", 3, 6, [(1, (1, 1, 1)), (3, (2, 1)), (2, (3,))]),
        _table("S4", 4, 24, [(1, (1, 1, 1, 1)), (6, (2, 1, 1)), (3, (2, 2)), (8, (3, 1)), (6, (4,))]),
    ]
}


def _is_transposition(ct: tuple[int, ...], n: int) -> bool:
    return n > 2 and ct == (2,) + (1,) * (n - 2)


def gtr_density(t: GroupClassTable) -> Fraction:
    """Share of the group whose cycle type is the identity or a single transposition.

    On two points only the identity counts.
    """
    if t.degree_n < 2:
        raise ConsistencyError("degree must be at least 2")
    identity = (1,) * t.degree_n
    hits = sum(size for size, ct in t.classes if ct == identity or _is_transposition(ct, t.degree_n))
    return Fraction(hits, t.order)


def ordinary_density(t: GroupClassTable) -> Fraction:
    if t.degree_n < 2:
        raise ConsistencyError("degree must be at least 2")
    return Fraction(1, t.order)


def split_class_densities(t: GroupClassTable) -> dict[SplitClass, Fraction]:
    """Limiting share of each split class for unramified primes."""
    ordinary = ordinary_density(t)
    almost = gtr_density(t) - ordinary
    return {
        SplitClass.CompletelySplit: ordinary,
        SplitClass.AlmostNotCompletely: almost,
        SplitClass.Other: 1 - ordinary - almost,
    }


# ---------------------------------------------------------------------------
# scanning


@dataclass(frozen=True)
class ScanRow:
    p: int
    degrees: tuple[int, ...]
    split_class: SplitClass
    inert_count: Optional[int]
    reduction: Optional[ReductionType]

    @property
    def excluded(self) -> bool:
        return self.split_class is SplitClass.RamifiedOrBad


def scan_prime(
    K: NumberField,
    p: int,
    K0: Optional[NumberField] = None,
    other_rule: Optional[ReductionType] = None,
) -> ScanRow:
    pattern = splitting_pattern(K, p)
    if pattern.ramified or (K0 is not None and K0.is_excluded(p)):
        return ScanRow(p, (), SplitClass.RamifiedOrBad, None, None)
    sc = classify_split(pattern, K.degree)
    inert = None
    if K0 is not None:
        inert = inert_count_over_p(pattern, splitting_pattern(K0, p))
        verdict = classify_with_inert_count(sc, inert)
    else:
        verdict = classify_by_splitting(sc)
    verdict = refine_galois(verdict, sc, pattern.degrees, other_rule)
    return ScanRow(p, pattern.degrees, sc, inert, verdict)


def scan_range(lo: int, hi: int, K, K0=None, other_rule=None) -> list[ScanRow]:
    return [scan_prime(K, p, K0, other_rule) for p in primes_in_range(lo, hi)]


def scan_rows(
    K: NumberField,
    lo: int,
    hi: int,
    K0: Optional[NumberField] = None,
    other_rule: Optional[ReductionType] = None,
    workers: int = 1,
) -> list[ScanRow]:
    parts = map_ranges(scan_range, lo, hi, workers, K, K0, other_rule)
    return [row for part in parts for row in part]


@dataclass
class DensityReport:
    bound: int
    split_counts: dict[SplitClass, int]
    reduction_counts: dict[ReductionType, int]
    excluded: tuple[int, ...]
    label: Optional[str] = None
    rows: list[ScanRow] = field(default_factory=list, repr=False)

    @classmethod
    def from_rows(cls, rows: Sequence[ScanRow], bound: int, label: Optional[str] = None) -> DensityReport:
        kept = [r for r in rows if not r.excluded]
        split = Counter(r.split_class for r in kept)
        red = Counter(r.reduction for r in kept)
        return cls(
            bound=bound,
            split_counts={c: split.get(c, 0) for c in SplitClass if c is not SplitClass.RamifiedOrBad},
            reduction_counts={t: red.get(t, 0) for t in ReductionType},
            excluded=tuple(r.p for r in rows if r.excluded),
            label=label,
            rows=list(rows),
        )

    @property
    def total(self) -> int:
        return sum(self.split_counts.values())

    def split_fraction(self, sc: SplitClass) -> Fraction:
        return Fraction(self.split_counts.get(sc, 0), self.total) if self.total else Fraction(0)

    def reduction_fraction(self, rt: ReductionType) -> Fraction:
        return Fraction(self.reduction_counts.get(rt, 0), self.total) if self.total else Fraction(0)

    def hodge_witt_fraction(self) -> Fraction:
        hits = sum(n for t, n in self.reduction_counts.items() if t.is_hodge_witt)
        return Fraction(hits, self.total) if self.total else Fraction(0)

    def to_summary(self) -> dict:
        def frac(x: Fraction) -> dict:
            return {"exact": str(x), "decimal": float(x)}

        return {
            "schema": "reduction-scope/scan-summary/1",
            "label": self.label,
            "bound": self.bound,
            "primes_scanned": self.total,
            "excluded": list(self.excluded),
            "split_counts": {c.value: n for c, n in self.split_counts.items()},
            "split_fractions": {c.value: frac(self.split_fraction(c)) for c in self.split_counts},
            "reduction_counts": {t.value: n for t, n in self.reduction_counts.items()},
            "reduction_fractions": {t.value: frac(self.reduction_fraction(t)) for t in self.reduction_counts},
            "hodge_witt_fraction": frac(self.hodge_witt_fraction()),
        }


def empirical_scan(
    K: NumberField,
    bound: int,
    K0: Optional[NumberField] = None,
    other_rule: Optional[ReductionType] = None,
    workers: int = 1,
    label: Optional[str] = None,
) -> DensityReport:
    """Classify every prime p <= bound and tally the results."""
    if bound < 2:
        raise ValueError("bound must be >= 2")
    rows = scan_rows(K, 2, bound, K0, other_rule, workers)
    return DensityReport.from_rows(rows, bound, label or K.label)


def chebotarev_tolerance(n: int) -> float:
    return 3 / n**0.5
