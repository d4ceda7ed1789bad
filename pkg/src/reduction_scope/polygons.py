"""Newton and Hodge polygons with exact rational slopes, plus trace-of-Frobenius checks."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

from .errors import DegenerateInputError, DomainError, InvalidPolygonError

Valuation = Union[int, Fraction, float]

# Valuation of a zero coefficient. Points carrying it never enter the hull.
INF = math.inf


@dataclass(frozen=True)
class Polygon:
    """A convex polygon starting at the origin, stored as (slope, horizontal length) runs."""

    segments: tuple[tuple[Fraction, int], ...]

    def __post_init__(self):
        segs = tuple((Fraction(s), int(m)) for s, m in self.segments)
        for (s0, _), (s1, _) in zip(segs, segs[1:]):
            if s1 <= s0:
                raise InvalidPolygonError("segment slopes must strictly increase")
        if any(m <= 0 for _, m in segs):
            raise InvalidPolygonError("segment multiplicities must be positive")
        object.__setattr__(self, "segments", segs)

    @classmethod
    def from_slopes(cls, slopes: Iterable[Valuation]) -> Polygon:
        runs: list[list] = []
        for s in sorted(Fraction(x) for x in slopes):
            if runs and runs[-1][0] == s:
                runs[-1][1] += 1
            else:
                runs.append([s, 1])
        return cls(tuple((s, m) for s, m in runs))

    @property
    def width(self) -> int:
        return sum(m for _, m in self.segments)

    @property
    def height(self) -> Fraction:
        return sum((s * m for s, m in self.segments), Fraction(0))

    def slopes(self) -> list[Fraction]:
        return [s for s, m in self.segments for _ in range(m)]

    def multiplicity(self, slope: Valuation) -> int:
        slope = Fraction(slope)
        return sum(m for s, m in self.segments if s == slope)

    def ordinates(self) -> list[Fraction]:
        """Heights at abscissae 0, 1, ..., width."""
        out = [Fraction(0)]
        for s in self.slopes():
            out.append(out[-1] + s)
        return out

    def vertices(self) -> list[tuple[int, Fraction]]:
        pts = [(0, Fraction(0))]
        for s, m in self.segments:
            x, y = pts[-1]
            pts.append((x + m, y + s * m))
        return pts

    def __str__(self) -> str:
        return " ".join(f"{s}^{m}" if m > 1 else str(s) for s, m in self.segments)


@dataclass(frozen=True)
class TraceDatum:
    a_v: int
    p: int
    d: int


def padic_valuation(n: int, p: int) -> Valuation:
    if n == 0:
        return INF
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def newton_polygon(vals: Sequence[tuple[int, Valuation]]) -> Polygon:
    """Lower convex hull of the points (i, v_i) with finite v_i.

    The first finite point fixes the starting height; the result records only
    slopes and their horizontal lengths.
    """
    pts = sorted((int(i), Fraction(v)) for i, v in vals if v != INF and v is not None)
    if len(pts) < 2:
        raise DegenerateInputError("Newton polygon needs at least two finite points")
    if len({x for x, _ in pts}) != len(pts):
        raise DomainError("duplicate abscissa")
    hull: list[tuple[int, Fraction]] = []
    for pt in pts:
        # pop while the last hull point lies on or above the chord to pt
        while len(hull) >= 2:
            (x0, y0), (x1, y1) = hull[-2], hull[-1]
            if (y1 - y0) * (pt[0] - x0) >= (pt[1] - y0) * (x1 - x0):
                hull.pop()
            else:
                break
        hull.append(pt)
    segs = []
    for (x0, y0), (x1, y1) in zip(hull, hull[1:]):
        segs.append((Fraction(y1 - y0) / (x1 - x0), x1 - x0))
    return Polygon(tuple(segs))


def newton_polygon_of(coeffs: Sequence[int], p: int) -> Polygon:
    """Newton polygon of an integer polynomial (constant term first) at p."""
    return newton_polygon([(i, padic_valuation(c, p)) for i, c in enumerate(coeffs)])


def hodge_polygon(hodge_numbers: Sequence[int]) -> Polygon:
    """Slope j repeated h^j times."""
    if any(h < 0 for h in hodge_numbers):
        raise DomainError("Hodge numbers must be nonnegative")
    if not any(hodge_numbers):
        raise DegenerateInputError("all Hodge numbers are zero")
    return Polygon(tuple((Fraction(j), h) for j, h in enumerate(hodge_numbers) if h > 0))


def lies_above(newton: Polygon, hodge: Polygon) -> tuple[bool, bool]:
    """(Newton on or above Hodge at every integer abscissa, equal end heights)."""
    if newton.width != hodge.width:
        raise DomainError(f"width mismatch: {newton.width} vs {hodge.width}")
    above = all(a >= b for a, b in zip(newton.ordinates(), hodge.ordinates()))
    return above, newton.height == hodge.height


def elliptic_newton_polygon(a_p: int, p: int) -> Polygon:
    """Newton polygon of 1 - a_p t + p t^2."""
    return newton_polygon([(0, 0), (1, padic_valuation(a_p, p)), (2, 1)])


def weil_bound_check(t: TraceDatum) -> bool:
    return abs(t.a_v) <= t.d * t.p


def trace_divisibility_check(t: TraceDatum, non_ordinary: bool) -> bool:
    """Non-ordinary reduction forces p | a_v; False flags a violation."""
    return (not non_ordinary) or t.a_v % t.p == 0


def check_symmetric(np_: Polygon, center: Fraction) -> None:
    for s, m in np_.segments:
        if np_.multiplicity(2 * center - s) != m:
            raise InvalidPolygonError(f"slopes are not symmetric about {center}: {np_}")


def k3_status(newton_h2: Polygon) -> tuple[bool, bool]:
    """(ordinary, finite height) for the Newton polygon of H^2 of a K3 surface."""
    if newton_h2.width != 22:
        raise InvalidPolygonError(f"K3 H^2 polygon must have width 22, got {newton_h2.width}")
    slopes = newton_h2.slopes()
    if slopes[0] < 0 or slopes[-1] > 2:
        raise InvalidPolygonError("K3 slopes must lie in [0, 2]")
    check_symmetric(newton_h2, Fraction(1))
    return newton_h2.multiplicity(0) == 1, slopes[0] < 1


def height_polygon(h: Optional[int]) -> Polygon:
    """H^2 polygon of a K3 of formal-group height h (None for infinite height)."""
    if h is None:
        return Polygon.from_slopes([1] * 22)
    if not 1 <= h <= 10:
        raise DomainError("finite K3 height lies in 1..10")
    lo, hi = Fraction(1) - Fraction(1, h), Fraction(1) + Fraction(1, h)
    return Polygon.from_slopes([lo] * h + [1] * (22 - 2 * h) + [hi] * h)
