"""Reduction-type verdicts for CM abelian varieties and for products."""

from __future__ import annotations

import enum
from fractions import Fraction
from typing import Sequence

from .errors import ConsistencyError, ExcludedPrimeError, InvalidPolygonError
from .numberfield import SplitClass
from .polygons import Polygon, check_symmetric


class ReductionType(str, enum.Enum):
    """AlmostOrdinary is Hodge-Witt and not ordinary; HodgeWitt leaves ordinarity open."""

    Ordinary = "Ordinary"
    AlmostOrdinary = "AlmostOrdinary"
    HodgeWitt = "HodgeWitt"
    NonHodgeWitt = "NonHodgeWitt"
    Undetermined = "Undetermined"

    @property
    def is_hodge_witt(self) -> bool:
        return self in (ReductionType.Ordinary, ReductionType.AlmostOrdinary, ReductionType.HodgeWitt)


def classify_by_splitting(sc: SplitClass) -> ReductionType:
    """Sufficient conditions only: a non-almost-split prime gives no verdict."""
    if sc is SplitClass.RamifiedOrBad:
        raise ExcludedPrimeError("ramified or bad prime has no splitting verdict")
    if sc is SplitClass.CompletelySplit:
        return ReductionType.Ordinary
    if sc is SplitClass.AlmostNotCompletely:
        return ReductionType.AlmostOrdinary
    return ReductionType.Undetermined


def classify_with_inert_count(sc: SplitClass, inert: int) -> ReductionType:
    if sc is SplitClass.RamifiedOrBad:
        raise ExcludedPrimeError("ramified or bad prime has no splitting verdict")
    if inert < 0:
        raise ConsistencyError(f"negative inert count {inert}")
    if sc is SplitClass.CompletelySplit and inert != 0:
        raise ConsistencyError(f"completely split prime with inert count {inert}")
    if sc is SplitClass.AlmostNotCompletely and inert != 1:
        raise ConsistencyError(f"almost split prime with inert count {inert}")
    if inert >= 2:
        return ReductionType.NonHodgeWitt
    return classify_by_splitting(sc)


def refine_galois(
    verdict: ReductionType, sc: SplitClass, degrees: Sequence[int], other_rule: ReductionType | None
) -> ReductionType:
    """Opt-in per-field rule for Galois CM fields: equal residue degrees > 1 get ``other_rule``."""
    if (
        other_rule is not None
        and verdict is ReductionType.Undetermined
        and sc is SplitClass.Other
        and len(set(degrees)) == 1
    ):
        return other_rule
    return verdict


def classify_abelian_from_slopes(np_: Polygon, g: int) -> ReductionType:
    """Verdict from the Newton polygon of H^1 of a g-dimensional abelian variety."""
    if np_.width != 2 * g:
        raise InvalidPolygonError(f"expected width {2 * g}, got {np_.width}")
    slopes = np_.slopes()
    if slopes[0] < 0 or slopes[-1] > 1:
        raise InvalidPolygonError("abelian slopes must lie in [0, 1]")
    check_symmetric(np_, Fraction(1, 2))
    present = {s for s, _ in np_.segments}
    if present <= {0, 1}:
        return ReductionType.Ordinary
    if present <= {0, Fraction(1, 2), 1} and np_.multiplicity(Fraction(1, 2)) == 2:
        return ReductionType.AlmostOrdinary
    return ReductionType.NonHodgeWitt


def product_status(factors: Sequence[tuple[bool, bool]]) -> tuple[bool, bool]:
    """(ordinary, Hodge-Witt) of a product from the same flags of its factors.

    A product is ordinary iff every factor is; it is Hodge-Witt iff all
    factors but at most one are ordinary and that one is Hodge-Witt.
    """
    if not factors:
        raise ConsistencyError("product of no factors")
    for ordinary, hw in factors:
        if ordinary and not hw:
            raise ConsistencyError("an ordinary factor is always Hodge-Witt")
    non_ordinary = [hw for ordinary, hw in factors if not ordinary]
    if not non_ordinary:
        return True, True
    return False, len(non_ordinary) == 1 and non_ordinary[0]


def status_to_type(ordinary: bool, hodge_witt: bool) -> ReductionType:
    if ordinary:
        return ReductionType.Ordinary
    return ReductionType.AlmostOrdinary if hodge_witt else ReductionType.NonHodgeWitt
