from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from reduction_scope.errors import DegenerateInputError, DomainError, InvalidPolygonError
from reduction_scope.polygons import (
    INF,
    Polygon,
    TraceDatum,
    elliptic_newton_polygon,
    height_polygon,
    hodge_polygon,
    k3_status,
    lies_above,
    newton_polygon,
    newton_polygon_of,
    padic_valuation,
    trace_divisibility_check,
    weil_bound_check,
)

H = Fraction(1, 2)


def slopes_of(poly):
    return tuple(poly.slopes())


@pytest.mark.parametrize(
    "vals,slopes",
    [
        ([(0, 0), (1, 0), (2, 1)], (0, 1)),
        ([(0, 0), (1, INF), (2, 1)], (H, H)),
        ([(0, 0), (1, 1), (2, 2)], (1, 1)),
    ],
)
def test_newton_examples(vals, slopes):
    assert slopes_of(newton_polygon(vals)) == slopes


def test_newton_degenerate():
    with pytest.raises(DegenerateInputError):
        newton_polygon([(0, 0), (1, INF)])
    with pytest.raises(DomainError):
        newton_polygon([(0, 0), (0, 1)])


def test_newton_of_integer_polynomial():
    # 1 - 0 t + 5 t^2 at p = 5: supersingular
    assert slopes_of(newton_polygon_of([1, 0, 5], 5)) == (H, H)
    assert padic_valuation(250, 5) == 3 and padic_valuation(0, 5) == INF


@pytest.mark.parametrize(
    "h,slopes",
    [((2, 2), (0, 0, 1, 1)), ((1, 20, 1), (0,) + (1,) * 20 + (2,)), ((1,), (0,))],
)
def test_hodge_examples(h, slopes):
    assert slopes_of(hodge_polygon(h)) == slopes


def test_hodge_errors():
    with pytest.raises(DegenerateInputError):
        hodge_polygon((0, 0))
    with pytest.raises(DomainError):
        hodge_polygon((1, -1))


@pytest.mark.parametrize(
    "newton,hodge,expected",
    [((0, 1), (0, 1), (True, True)), ((H, H), (0, 1), (True, True)), ((0, 0), (0, 1), (False, False))],
)
def test_lies_above_examples(newton, hodge, expected):
    assert lies_above(Polygon.from_slopes(newton), Polygon.from_slopes(hodge)) == expected


def test_lies_above_width_mismatch():
    with pytest.raises(DomainError):
        lies_above(Polygon.from_slopes((0,)), Polygon.from_slopes((0, 1)))


def test_weil_and_divisibility():
    assert weil_bound_check(TraceDatum(100, 5, 22))
    assert not weil_bound_check(TraceDatum(111, 5, 22))
    assert weil_bound_check(TraceDatum(-2, 5, 2))
    assert trace_divisibility_check(TraceDatum(10, 5, 2), True)
    assert not trace_divisibility_check(TraceDatum(7, 5, 2), True)
    assert trace_divisibility_check(TraceDatum(7, 5, 2), False)


def test_k3_examples():
    T = Fraction(1, 3)
    assert k3_status(hodge_polygon((1, 20, 1))) == (True, True)
    assert k3_status(Polygon.from_slopes([1] * 22)) == (False, False)
    p3 = Polygon.from_slopes([1 - T] * 3 + [1] * 16 + [1 + T] * 3)
    assert k3_status(p3) == (False, True)
    assert p3 == height_polygon(3)
    assert all(y.denominator == 1 for _, y in p3.vertices())


def test_k3_invalid():
    with pytest.raises(InvalidPolygonError):
        k3_status(Polygon.from_slopes([1] * 20))
    with pytest.raises(InvalidPolygonError):
        k3_status(Polygon.from_slopes([0, 0] + [1] * 20))


@pytest.mark.parametrize("h", list(range(1, 11)) + [None])
def test_height_polygons_sit_above_hodge(h):
    np_ = height_polygon(h)
    assert lies_above(np_, hodge_polygon((1, 20, 1))) == (True, True)
    assert k3_status(np_) == (h == 1, h is not None)


def test_polygon_rejects_unsorted_segments():
    with pytest.raises(InvalidPolygonError):
        Polygon(((Fraction(1), 1), (Fraction(0), 1)))
    with pytest.raises(InvalidPolygonError):
        Polygon(((Fraction(0), 0),))


# --- properties

valuations = st.one_of(st.just(INF), st.fractions(min_value=0, max_value=6, max_denominator=4))


@given(st.fractions(min_value=0, max_value=5, max_denominator=3), st.lists(valuations, min_size=0, max_size=8), st.fractions(min_value=0, max_value=5, max_denominator=3))
def test_newton_convex_with_matching_endpoints(v0, middle, vn):
    vals = [(0, v0)] + [(i + 1, v) for i, v in enumerate(middle)] + [(len(middle) + 1, vn)]
    np_ = newton_polygon(vals)
    s = [sl for sl, _ in np_.segments]
    assert s == sorted(set(s))
    assert np_.width == len(middle) + 1
    assert np_.height == vn - v0
    # every finite point lies on or above the hull
    ords = np_.ordinates()
    for i, v in vals:
        if v != INF:
            assert v - v0 >= ords[i]


@given(st.lists(st.integers(0, 6), min_size=1, max_size=5).filter(any))
def test_generic_valuations_give_hodge(h):
    hodge = hodge_polygon(h)
    vals = list(enumerate(hodge.ordinates()))
    assert newton_polygon(vals) == hodge
