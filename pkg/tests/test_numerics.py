from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from shadowlab.numerics import (
    RationalIntervalSet,
    affine_image,
    closed_ball,
    from_pairs,
    intersect,
    interval,
    normalize,
    point_set,
    rat,
    rat_str,
    union,
)

rationals = st.fractions(min_value=-4, max_value=4, max_denominator=64)


@st.composite
def interval_sets(draw):
    n = draw(st.integers(min_value=0, max_value=5))
    parts = []
    for _ in range(n):
        a = draw(rationals)
        b = draw(rationals)
        parts.append(interval(min(a, b), max(a, b)))
    return normalize(parts)


def test_normalize_merges_overlap():
    assert from_pairs([(0, "1/2"), ("1/4", "3/4")]) == from_pairs([(0, "3/4")])


def test_normalize_merges_touching():
    assert from_pairs([(0, "1/3"), ("1/3", 1)]) == from_pairs([(0, 1)])


def test_normalize_empty():
    assert normalize([]).is_empty


def test_interval_rejects_reversed_endpoints():
    with pytest.raises(ValueError):
        interval(1, 0)


def test_intersect_basic():
    assert intersect(from_pairs([(0, "1/2")]), from_pairs([("1/4", 1)])) == from_pairs([("1/4", "1/2")])


def test_intersect_two_parts():
    got = intersect(from_pairs([(0, "1/4"), ("1/2", 1)]), from_pairs([("1/8", "5/8")]))
    assert got == from_pairs([("1/8", "1/4"), ("1/2", "5/8")])


def test_intersect_empty_absorbs():
    assert intersect(from_pairs([(0, 1)]), normalize([])).is_empty


def test_affine_image_basic():
    assert affine_image(from_pairs([(0, 1)]), 3, 2) == from_pairs([(2, 5)])


def test_affine_image_endpoint_matching():
    # the slope-9 piece sends [2/27, 1/9] onto [2/3, 1]
    assert affine_image(from_pairs([("2/27", "1/9")]), 9, 0) == from_pairs([("2/3", 1)])


def test_affine_image_orientation_reversal():
    assert affine_image(from_pairs([(0, 1)]), -2, 2) == from_pairs([(0, 2)])


def test_affine_image_rejects_zero_slope():
    with pytest.raises(ValueError):
        affine_image(from_pairs([(0, 1)]), 0, 1)


@given(interval_sets())
@settings(max_examples=80)
def test_normalize_idempotent(s):
    assert normalize(list(s.parts)) == s


@given(interval_sets(), interval_sets())
@settings(max_examples=80)
def test_intersect_commutative(a, b):
    assert intersect(a, b) == intersect(b, a)


@given(interval_sets(), interval_sets(), interval_sets())
@settings(max_examples=60)
def test_intersect_associative(a, b, c):
    assert intersect(intersect(a, b), c) == intersect(a, intersect(b, c))


@given(interval_sets(), interval_sets(), interval_sets())
@settings(max_examples=60)
def test_intersect_monotone(a, a_extra, b):
    bigger = union(a, a_extra)
    small = intersect(a, b)
    assert small.subset_of(intersect(bigger, b))


@given(interval_sets(), interval_sets())
@settings(max_examples=80)
def test_intersect_measure_bound(a, b):
    assert intersect(a, b).measure <= min(a.measure, b.measure)


@given(interval_sets(), interval_sets(), rationals.filter(lambda q: q != 0), rationals)
@settings(max_examples=60)
def test_affine_distributes_over_union(a, b, slope, offset):
    lhs = affine_image(union(a, b), slope, offset)
    rhs = union(affine_image(a, slope, offset), affine_image(b, slope, offset))
    assert lhs == rhs


@given(interval_sets(), interval_sets(), rationals.filter(lambda q: q != 0), rationals)
@settings(max_examples=60)
def test_affine_commutes_with_intersect(a, b, slope, offset):
    lhs = affine_image(intersect(a, b), slope, offset)
    rhs = intersect(affine_image(a, slope, offset), affine_image(b, slope, offset))
    assert lhs == rhs


@given(interval_sets(), interval_sets(), rationals)
@settings(max_examples=60)
def test_membership_characterizes_intersection(a, b, x):
    both = a.contains(x) and b.contains(x)
    assert intersect(a, b).contains(x) == both


def test_ball_and_point_helpers():
    assert closed_ball("1/2", "1/4") == from_pairs([("1/4", "3/4")])
    assert point_set("1/3").contains(F(1, 3))
    with pytest.raises(ValueError):
        closed_ball(0, -1)


def test_distance_to_point():
    s = from_pairs([(0, "1/4"), ("1/2", 1)])
    assert s.distance_to(F(3, 8)) == F(1, 8)
    assert s.distance_to(F(1, 8)) == 0
    assert s.distance_to(F(3, 2)) == F(1, 2)


def test_rational_serialization_round_trip():
    assert rat_str(F(3, 6)) == "1/2"
    assert rat("7/3") == F(7, 3)
    assert rat_str(F(4)) == "4/1"
    s = from_pairs([(0, "1/2"), ("2/3", 1)])
    assert RationalIntervalSet.from_json(s.to_json()) == s
