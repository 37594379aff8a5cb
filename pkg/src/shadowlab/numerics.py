"""Exact rational scalars and closed-interval-set algebra.

Every geometric question asked elsewhere in the package (does this ball fit
inside that image, is this constraint set empty, how far is a point from a
region) reduces to operations on finite unions of closed intervals with
rational endpoints.  All arithmetic is exact; nothing here ever touches a
float.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

RationalLike = Union[Fraction, int, str]


def rat(value: RationalLike) -> Fraction:
    """Coerce ints, 'p/q' strings and Fractions to Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"not a rational: {value!r}")


def rat_str(value: Fraction) -> str:
    """Canonical 'p/q' form with q > 0, denominator always explicit."""
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


@dataclass(frozen=True, order=True)
class ClosedInterval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if not isinstance(self.lo, Fraction) or not isinstance(self.hi, Fraction):
            object.__setattr__(self, "lo", rat(self.lo))
            object.__setattr__(self, "hi", rat(self.hi))
        if self.lo > self.hi:
            raise ValueError(f"interval endpoints out of order: {self.lo} > {self.hi}")

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def contains(self, x: Fraction) -> bool:
        return self.lo <= x <= self.hi

    def intersects(self, other: "ClosedInterval") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def __repr__(self):
        return f"[{self.lo}, {self.hi}]"


def interval(lo: RationalLike, hi: RationalLike) -> ClosedInterval:
    return ClosedInterval(rat(lo), rat(hi))


@dataclass(frozen=True)
class RationalIntervalSet:
    """Canonical finite union of disjoint closed intervals.

    Parts are sorted ascending and separated by gaps of positive length;
    touching or overlapping inputs are merged by :func:`normalize`.  The
    empty set is the empty tuple.  Degenerate parts (single points) are
    allowed and used for isolated points of a space.
    """

    parts: tuple[ClosedInterval, ...]

    def __post_init__(self):
        prev = None
        for p in self.parts:
            if prev is not None and p.lo <= prev.hi:
                raise ValueError("parts not canonical (overlap or touch)")
            prev = p

    # -- queries ----------------------------------------------------------

    @property
    def is_empty(self) -> bool:
        return not self.parts

    @property
    def measure(self) -> Fraction:
        return sum((p.width for p in self.parts), Fraction(0))

    def contains(self, x: Fraction) -> bool:
        lo, hi = 0, len(self.parts) - 1
        while lo <= hi:
            mid = (lo + hi) // 2
            p = self.parts[mid]
            if x < p.lo:
                hi = mid - 1
            elif x > p.hi:
                lo = mid + 1
            else:
                return True
        return False

    def subset_of(self, other: "RationalIntervalSet") -> bool:
        return intersect(self, other) == self

    def leftmost(self) -> Fraction:
        if self.is_empty:
            raise ValueError("empty set has no leftmost point")
        return self.parts[0].lo

    def hull(self) -> ClosedInterval:
        if self.is_empty:
            raise ValueError("empty set has no hull")
        return ClosedInterval(self.parts[0].lo, self.parts[-1].hi)

    def distance_to(self, x: Fraction) -> Fraction:
        """Distance from a point to the set (0 if the point is inside)."""
        if self.is_empty:
            raise ValueError("distance to the empty set is undefined")
        best = None
        for p in self.parts:
            if p.contains(x):
                return Fraction(0)
            d = p.lo - x if x < p.lo else x - p.hi
            if best is None or d < best:
                best = d
        return best

    def __iter__(self):
        return iter(self.parts)

    def __repr__(self):
        inner = " ∪ ".join(repr(p) for p in self.parts) if self.parts else "∅"
        return f"{{{inner}}}"

    # -- serialization ----------------------------------------------------

    def to_json(self) -> list:
        return [[rat_str(p.lo), rat_str(p.hi)] for p in self.parts]

    @staticmethod
    def from_json(data: Sequence) -> "RationalIntervalSet":
        return normalize([interval(lo, hi) for lo, hi in data])


EMPTY_SET = RationalIntervalSet(())


def normalize(raw: Iterable[ClosedInterval]) -> RationalIntervalSet:
    """Canonical disjoint sorted form of a union of closed intervals.

    Touching intervals merge: [0,1/3] ∪ [1/3,1] becomes [0,1].
    """
    items = sorted(raw, key=lambda p: (p.lo, p.hi))
    merged: list[ClosedInterval] = []
    for p in items:
        if merged and p.lo <= merged[-1].hi:
            if p.hi > merged[-1].hi:
                merged[-1] = ClosedInterval(merged[-1].lo, p.hi)
        else:
            merged.append(p)
    return RationalIntervalSet(tuple(merged))


def from_pairs(pairs: Iterable[tuple[RationalLike, RationalLike]]) -> RationalIntervalSet:
    return normalize([interval(lo, hi) for lo, hi in pairs])


def point_set(x: RationalLike) -> RationalIntervalSet:
    x = rat(x)
    return RationalIntervalSet((ClosedInterval(x, x),))


def closed_ball(center: RationalLike, radius: RationalLike) -> RationalIntervalSet:
    """B̄_r(c) on the line; clip against a space by intersecting afterwards."""
    c, r = rat(center), rat(radius)
    if r < 0:
        raise ValueError("negative radius")
    return RationalIntervalSet((ClosedInterval(c - r, c + r),))


def intersect(a: RationalIntervalSet, b: RationalIntervalSet) -> RationalIntervalSet:
    """Exact intersection by a two-pointer sweep over canonical parts."""
    out: list[ClosedInterval] = []
    i = j = 0
    pa, pb = a.parts, b.parts
    while i < len(pa) and j < len(pb):
        lo = max(pa[i].lo, pb[j].lo)
        hi = min(pa[i].hi, pb[j].hi)
        if lo <= hi:
            out.append(ClosedInterval(lo, hi))
        if pa[i].hi < pb[j].hi:
            i += 1
        else:
            j += 1
    # pieces produced in order and pairwise disjoint, but two consecutive
    # outputs may touch at a point shared by both operands; re-normalize.
    return normalize(out)


def union(a: RationalIntervalSet, b: RationalIntervalSet) -> RationalIntervalSet:
    return normalize(list(a.parts) + list(b.parts))


def affine_image(s: RationalIntervalSet, slope: RationalLike, offset: RationalLike) -> RationalIntervalSet:
    """Exact image {slope·x + offset : x ∈ s}; slope 0 is rejected."""
    slope, offset = rat(slope), rat(offset)
    if slope == 0:
        raise ValueError("zero slope collapses intervals")
    out = []
    for p in s.parts:
        a, b = slope * p.lo + offset, slope * p.hi + offset
        if a > b:
            a, b = b, a
        out.append(ClosedInterval(a, b))
    return normalize(out)
