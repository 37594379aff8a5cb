"""The zoo of concrete dynamical systems behind one uniform contract.

Interval-type systems (piecewise-linear maps, the quadratic families, the
middle-thirds expanding map, the interval-plus-isolated-points space) use
exact rationals as points.  Symbolic systems (one-sided shifts of finite
type, the binary odometer) use finite words or eventually periodic words.

Every system answers: which points belong to the space, where does a point
map, what are the monotone affine branches over a window, what is the exact
preimage of an interval set, where are the critical points, and what is the
metric.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence, Union

from .numerics import (
    ClosedInterval,
    RationalIntervalSet,
    affine_image,
    closed_ball,
    from_pairs,
    intersect,
    interval,
    normalize,
    rat,
    rat_str,
    union,
)

ONE = Fraction(1)
ZERO = Fraction(0)
HALF = Fraction(1, 2)


class DomainError(ValueError):
    """Point outside the system's space, or an unsupported system kind."""


# ---------------------------------------------------------------------------
# piecewise-linear interval maps
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PiecewiseLinearMap:
    """Interval map on [0,1], affine between consecutive breakpoints.

    ``breakpoints`` is strictly increasing with first 0 and last 1; ``values``
    gives the map at each breakpoint.  Slopes must be nonzero so that every
    lap is a monotone branch.
    """

    breakpoints: tuple[Fraction, ...]
    values: tuple[Fraction, ...]

    kind = "pl"

    def __post_init__(self):
        bps = tuple(rat(b) for b in self.breakpoints)
        vals = tuple(rat(v) for v in self.values)
        object.__setattr__(self, "breakpoints", bps)
        object.__setattr__(self, "values", vals)
        if len(bps) != len(vals) or len(bps) < 2:
            raise ValueError("need matching breakpoint/value lists of length >= 2")
        if bps[0] != 0 or bps[-1] != 1:
            raise ValueError("breakpoints must start at 0 and end at 1")
        if any(b >= c for b, c in zip(bps, bps[1:])):
            raise ValueError("breakpoints must be strictly increasing")
        if any(not (0 <= v <= 1) for v in vals):
            raise ValueError("values must lie in [0,1]")
        if any(s == 0 for s in self.slopes):
            raise ValueError("zero-slope lap is not a monotone branch")

    @property
    def slopes(self) -> tuple[Fraction, ...]:
        return tuple(
            (v1 - v0) / (b1 - b0)
            for (b0, b1, v0, v1) in zip(self.breakpoints, self.breakpoints[1:], self.values, self.values[1:])
        )

    def laps(self) -> list[tuple[ClosedInterval, Fraction, Fraction]]:
        """All maximal affine pieces as (domain, slope, offset)."""
        out = []
        for b0, b1, v0, v1 in zip(self.breakpoints, self.breakpoints[1:], self.values, self.values[1:]):
            s = (v1 - v0) / (b1 - b0)
            out.append((ClosedInterval(b0, b1), s, v0 - s * b0))
        return out

    def space(self) -> RationalIntervalSet:
        return from_pairs([(0, 1)])

    def contains_point(self, x: Fraction) -> bool:
        return 0 <= x <= 1

    def evaluate(self, x: Fraction) -> Fraction:
        if not self.contains_point(x):
            raise DomainError(f"{x} outside [0,1]")
        # rightmost lap whose left endpoint is <= x; consistent at shared breakpoints
        bps = self.breakpoints
        lo, hi = 0, len(bps) - 2
        idx = 0
        while lo <= hi:
            mid = (lo + hi) // 2
            if bps[mid] <= x:
                idx = mid
                lo = mid + 1
            else:
                hi = mid - 1
        _, s, c = self.laps()[idx]
        return s * x + c

    def lipschitz(self) -> Fraction:
        return max(abs(s) for s in self.slopes)

    def min_slope_modulus(self) -> Fraction:
        return min(abs(s) for s in self.slopes)

    def critical_points(self) -> list[Fraction]:
        """Interior breakpoints where the slope changes sign."""
        out = []
        slopes = self.slopes
        for i in range(1, len(self.breakpoints) - 1):
            if slopes[i - 1] * slopes[i] < 0:
                out.append(self.breakpoints[i])
        return out

    def image_bounds(self, window: ClosedInterval) -> ClosedInterval:
        """Exact [min f, max f] over a subinterval of [0,1]."""
        cands = [self.evaluate(window.lo), self.evaluate(window.hi)]
        for b in self.breakpoints:
            if window.lo < b < window.hi:
                cands.append(self.evaluate(b))
        return ClosedInterval(min(cands), max(cands))

    def forward_image(self, s: RationalIntervalSet) -> RationalIntervalSet:
        out = []
        for part in s.parts:
            img = self.image_bounds(part)
            out.append(img)
        return normalize(out)

    def preimage(self, target: RationalIntervalSet) -> RationalIntervalSet:
        out = []
        for dom, s, c in self.laps():
            rng = ClosedInterval(min(s * dom.lo + c, s * dom.hi + c), max(s * dom.lo + c, s * dom.hi + c))
            hit = intersect(target, RationalIntervalSet((rng,)))
            if not hit.is_empty:
                pre = affine_image(hit, 1 / s, -c / s)
                out.extend(intersect(pre, RationalIntervalSet((dom,))).parts)
        return normalize(out)

    def point_preimages(self, y: Fraction) -> list[Fraction]:
        out = set()
        for dom, s, c in self.laps():
            x = (y - c) / s
            if dom.contains(x):
                out.add(x)
        return sorted(out)

    def to_json(self) -> dict:
        return {
            "kind": "pl",
            "breakpoints": [rat_str(b) for b in self.breakpoints],
            "values": [rat_str(v) for v in self.values],
        }


def tent_map(lam) -> PiecewiseLinearMap:
    """T_λ(x) = λ·min(x, 1−x); into [0,1] for λ ≤ 2."""
    lam = rat(lam)
    if not (0 < lam <= 2):
        raise ValueError("tent slope must lie in (0,2]")
    return PiecewiseLinearMap((ZERO, HALF, ONE), (ZERO, lam / 2, ZERO))


def compose_pl(outer: PiecewiseLinearMap, inner: PiecewiseLinearMap) -> PiecewiseLinearMap:
    """Exact composition outer∘inner as a piecewise-linear map."""
    bps = set(inner.breakpoints)
    for dom, s, c in inner.laps():
        lo, hi = s * dom.lo + c, s * dom.hi + c
        lo, hi = min(lo, hi), max(lo, hi)
        for b in outer.breakpoints:
            if lo < b < hi:
                bps.add((b - c) / s)
    bp_list = tuple(sorted(bps))
    vals = tuple(outer.evaluate(inner.evaluate(b)) for b in bp_list)
    m = PiecewiseLinearMap(bp_list, vals)
    # drop interior breakpoints where adjacent laps are collinear
    keep = [0]
    slopes = m.slopes
    for i in range(1, len(bp_list) - 1):
        if slopes[i - 1] != slopes[i]:
            keep.append(i)
    keep.append(len(bp_list) - 1)
    return PiecewiseLinearMap(tuple(bp_list[i] for i in keep), tuple(vals[i] for i in keep))


def iterate_pl(system: PiecewiseLinearMap, n: int) -> PiecewiseLinearMap:
    if n < 1:
        raise ValueError("iterate count must be >= 1")
    out = system
    for _ in range(n - 1):
        out = compose_pl(system, out)
    return out


def random_zigzag_map(seed: int, min_laps: int = 2, max_laps: int = 4) -> PiecewiseLinearMap:
    """Seeded full-lap zigzag: every lap surjective onto [0,1], slopes >= 2.

    These maps are ball expanding on the whole interval, which makes them a
    reusable stress family for the tracing solvers.
    """
    rng = random.Random(seed)
    k = rng.randint(min_laps, max_laps)
    while True:
        weights = [rng.randint(1, 5) for _ in range(k)]
        total = sum(weights)
        widths = [Fraction(w, total) for w in weights]
        if all(w <= HALF for w in widths):
            break
    bps = [ZERO]
    for w in widths[:-1]:
        bps.append(bps[-1] + w)
    bps.append(ONE)
    start_high = rng.random() < 0.5
    vals = []
    for i in range(k + 1):
        vals.append(ONE if (i % 2 == 0) == start_high else ZERO)
    return PiecewiseLinearMap(tuple(bps), tuple(vals))


# ---------------------------------------------------------------------------
# quadratic families
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class QuadraticFamilyMap:
    """Either g_λ(x)=λx(1−x) on [0,1] or f_μ(x)=1−μx² on [−1,1]."""

    family: str  # "logistic" | "quadratic"
    parameter: Fraction

    kind = "quadratic"

    def __post_init__(self):
        object.__setattr__(self, "parameter", rat(self.parameter))
        p = self.parameter
        if self.family == "logistic":
            if not (0 < p <= 4):
                raise ValueError("logistic parameter must be in (0,4]")
        elif self.family == "quadratic":
            if not (1 <= p <= 2):
                raise ValueError("quadratic parameter must be in [1,2]")
        else:
            raise ValueError(f"unknown family {self.family!r}")

    def space(self) -> RationalIntervalSet:
        return from_pairs([(0, 1)] if self.family == "logistic" else [(-1, 1)])

    def contains_point(self, x: Fraction) -> bool:
        lo, hi = (ZERO, ONE) if self.family == "logistic" else (-ONE, ONE)
        return lo <= x <= hi

    def evaluate(self, x: Fraction) -> Fraction:
        if not self.contains_point(x):
            raise DomainError(f"{x} outside the domain")
        p = self.parameter
        return p * x * (1 - x) if self.family == "logistic" else 1 - p * x * x

    def critical_point(self) -> Fraction:
        return HALF if self.family == "logistic" else ZERO

    def derivative(self, x: Fraction) -> Fraction:
        p = self.parameter
        return p * (1 - 2 * x) if self.family == "logistic" else -2 * p * x

    def second_derivative(self, x: Fraction) -> Fraction:
        return -2 * self.parameter

    def third_derivative(self, x: Fraction) -> Fraction:
        return ZERO

    def monotone_laps(self) -> list[ClosedInterval]:
        c = self.critical_point()
        lo, hi = self.space().hull().lo, self.space().hull().hi
        return [ClosedInterval(lo, c), ClosedInterval(c, hi)]

    def forward_image(self, s: RationalIntervalSet) -> RationalIntervalSet:
        out = []
        c = self.critical_point()
        for part in s.parts:
            cands = [self.evaluate(part.lo), self.evaluate(part.hi)]
            if part.lo < c < part.hi:
                cands.append(self.evaluate(c))
            out.append(ClosedInterval(min(cands), max(cands)))
        return normalize(out)

    def preimage_outer(self, target: RationalIntervalSet, bits: int = 64) -> RationalIntervalSet:
        """Outer rational enclosure of the preimage (endpoints are square roots)."""
        out = []
        for part in target.parts:
            for branch in self._branch_preimages(part, bits):
                out.append(branch)
        space = self.space()
        return intersect(normalize(out), space)

    def _branch_preimages(self, part: ClosedInterval, bits: int) -> list[ClosedInterval]:
        p = self.parameter
        if self.family == "quadratic":
            # 1 - p x̂² ∈ [a,b]  ⟺  x² ∈ [(1-b)/p, (1-a)/p]
            lo2 = (1 - part.hi) / p
            hi2 = (1 - part.lo) / p
            if hi2 < 0:
                return []
            lo2 = max(lo2, ZERO)
            rlo = sqrt_enclosure(lo2, bits)[0]
            rhi = sqrt_enclosure(hi2, bits)[1]
            return [ClosedInterval(-rhi, -rlo), ClosedInterval(rlo, rhi)]
        # logistic: p x(1-x) ∈ [a,b] ⟺ (x-1/2)² ∈ [1/4 - b/p, 1/4 - a/p]
        lo2 = Fraction(1, 4) - part.hi / p
        hi2 = Fraction(1, 4) - part.lo / p
        if hi2 < 0:
            return []
        lo2 = max(lo2, ZERO)
        rlo = sqrt_enclosure(lo2, bits)[0]
        rhi = sqrt_enclosure(hi2, bits)[1]
        return [ClosedInterval(HALF - rhi, HALF - rlo), ClosedInterval(HALF + rlo, HALF + rhi)]

    def to_json(self) -> dict:
        return {"kind": "quadratic", "family": self.family, "parameter": rat_str(self.parameter)}


def logistic_map(lam) -> QuadraticFamilyMap:
    return QuadraticFamilyMap("logistic", rat(lam))


def quadratic_map(mu) -> QuadraticFamilyMap:
    return QuadraticFamilyMap("quadratic", rat(mu))


def sqrt_enclosure(q: Fraction, bits: int) -> tuple[Fraction, Fraction]:
    """(lo, hi) with lo² ≤ q ≤ hi² and hi − lo ≤ 2^−bits, exact rationals."""
    if q < 0:
        raise ValueError("negative radicand")
    if q == 0:
        return ZERO, ZERO
    scale = 1 << bits
    n = q.numerator * scale * scale
    d = q.denominator
    # floor(sqrt(n/d)) at the scaled grid
    root = math.isqrt(n // d)
    while root * root * d > n:
        root -= 1
    while (root + 1) * (root + 1) * d <= n:
        root += 1
    lo = Fraction(root, scale)
    hi = Fraction(root + 1, scale)
    return lo, hi


# ---------------------------------------------------------------------------
# the middle-thirds expanding map
# ---------------------------------------------------------------------------


@lru_cache(maxsize=64)
def _thirds_level(level: int) -> tuple[ClosedInterval, ...]:
    """Level-k middle-thirds approximation of the Cantor set on [0,1]."""
    parts = [ClosedInterval(ZERO, ONE)]
    for _ in range(level):
        nxt = []
        for p in parts:
            w = p.width / 3
            nxt.append(ClosedInterval(p.lo, p.lo + w))
            nxt.append(ClosedInterval(p.hi - w, p.hi))
        parts = nxt
    return tuple(parts)


@dataclass(frozen=True)
class CantorSystem:
    """Self-map of a two-sided middle-thirds set in [−1,1] that scales each
    dyadically indexed piece by 3 (by 9 on the two pieces of index ±3) and
    translates it onto another piece.

    Pieces: C_n = X ∩ [2/3ⁿ, 1/3ⁿ⁻¹] for n > 0 and C_{−n} = −C_n.  Images:
    C_{±1} onto the corresponding half of the space, C_{±2} and C_{±3} onto
    C_1, deeper positive pieces onto the right half of the piece two indices
    up.  For the deep negative pieces the stated image "left half of the
    piece two indices up" admits two readings and both are implemented:

    * ``fold``: the image is the left half on the POSITIVE side, so a
      punctured neighbourhood of 0 maps one-sidedly into [0,1];
    * ``mirror``: the image is the reflected left half on the NEGATIVE
      side, which keeps pairs straddling 0 uniformly expanded.

    ``depth`` truncates the piece index at |n| ≤ depth and resolves each
    piece internally to middle-thirds intervals of width 3^−depth, so the
    space is a finite union of closed intervals and every query is exactly
    decidable.
    """

    depth: int
    negative_image_mode: str = "fold"

    kind = "cantor"

    def __post_init__(self):
        if self.depth < 1:
            raise ValueError("depth must be >= 1")
        if self.negative_image_mode not in ("fold", "mirror"):
            raise ValueError("negative_image_mode must be 'fold' or 'mirror'")

    # piece geometry -------------------------------------------------------

    @staticmethod
    def piece_interval(n: int) -> ClosedInterval:
        if n == 0:
            raise ValueError("no piece with index 0")
        m = abs(n)
        lo, hi = Fraction(2, 3**m), Fraction(1, 3 ** (m - 1))
        return ClosedInterval(lo, hi) if n > 0 else ClosedInterval(-hi, -lo)

    @staticmethod
    def piece_half(n: int, side: str) -> ClosedInterval:
        """Left or right half of a positive-index piece."""
        if n <= 0:
            raise ValueError("halves are defined for positive indices")
        if side == "left":
            return ClosedInterval(Fraction(2, 3**n), Fraction(7, 3 ** (n + 1)))
        if side == "right":
            return ClosedInterval(Fraction(8, 3 ** (n + 1)), Fraction(1, 3 ** (n - 1)))
        raise ValueError("side must be 'left' or 'right'")

    def piece_affine(self, n: int) -> tuple[Fraction, Fraction]:
        """(slope, offset) of the orientation-preserving map on piece n."""
        src = self.piece_interval(n)
        if n == 1:
            dst = ClosedInterval(ZERO, ONE)
        elif n == -1:
            dst = ClosedInterval(-ONE, ZERO)
        elif n in (2, 3, -2, -3):
            dst = self.piece_interval(1)
        elif n > 3:
            dst = self.piece_half(n - 2, "right")
        else:  # n < -3
            half = self.piece_half(abs(n) - 2, "left")
            if self.negative_image_mode == "fold":
                dst = half
            else:
                dst = ClosedInterval(-half.hi, -half.lo)
        slope = dst.width / src.width
        return slope, dst.lo - slope * src.lo

    def piece_set(self, n: int, resolution: Optional[int] = None) -> RationalIntervalSet:
        """Piece n resolved to middle-thirds intervals of width 3^−resolution."""
        if resolution is None:
            resolution = self.depth
        m = abs(n)
        span = self.piece_interval(abs(n))
        inner = _thirds_level(max(resolution - m, 0))
        scaled = [
            ClosedInterval(span.lo + span.width * p.lo, span.lo + span.width * p.hi) for p in inner
        ]
        if n < 0:
            scaled = [ClosedInterval(-p.hi, -p.lo) for p in scaled]
        return normalize(scaled)

    def space(self) -> RationalIntervalSet:
        parts = [ClosedInterval(ZERO, ZERO)]
        for n in range(1, self.depth + 1):
            parts.extend(self.piece_set(n).parts)
            parts.extend(self.piece_set(-n).parts)
        return normalize(parts)

    def approximation(self, level: int) -> RationalIntervalSet:
        """Raw level-k middle-thirds hull of the space on both sides of 0,
        including the unresolved core [−3^−k, 3^−k] that the piece-indexed
        space replaces by the fixed point alone."""
        pos = _thirds_level(level)
        neg = [ClosedInterval(-p.hi, -p.lo) for p in pos]
        return normalize(list(pos) + neg)

    # map ------------------------------------------------------------------

    def piece_index(self, x: Fraction) -> int:
        """Index of the piece containing x; 0 for the fixed point at 0."""
        if x == 0:
            return 0
        m = abs(x)
        n = 1
        while n <= self.depth:
            if Fraction(2, 3**n) <= m <= Fraction(1, 3 ** (n - 1)):
                return n if x > 0 else -n
            n += 1
        raise DomainError(f"{x} is not in any piece at depth {self.depth}")

    def contains_point(self, x: Fraction) -> bool:
        if x == 0:
            return True
        try:
            n = self.piece_index(x)
        except DomainError:
            return False
        return self.piece_set(n).contains(x)

    def evaluate(self, x: Fraction) -> Fraction:
        if x == 0:
            return ZERO
        if not self.contains_point(x):
            raise DomainError(f"{x} outside the depth-{self.depth} space")
        s, c = self.piece_affine(self.piece_index(x))
        return s * x + c

    def affine_cells(self) -> list[tuple[ClosedInterval, Fraction, Fraction]]:
        """All space components with their affine data, plus the fixed origin."""
        cells = [(ClosedInterval(ZERO, ZERO), Fraction(1), ZERO)]
        for n in range(1, self.depth + 1):
            for signed in (n, -n):
                s, c = self.piece_affine(signed)
                for part in self.piece_set(signed).parts:
                    cells.append((part, s, c))
        return cells

    def forward_image(self, sset: RationalIntervalSet) -> RationalIntervalSet:
        out = []
        if sset.contains(ZERO):
            out.append(ClosedInterval(ZERO, ZERO))
        for n in range(1, self.depth + 1):
            for signed in (n, -n):
                hit = intersect(sset, self.piece_set(signed))
                if not hit.is_empty:
                    s, c = self.piece_affine(signed)
                    out.extend(affine_image(hit, s, c).parts)
        return normalize(out)

    def preimage(self, target: RationalIntervalSet) -> RationalIntervalSet:
        out = []
        if target.contains(ZERO):
            out.append(ClosedInterval(ZERO, ZERO))
        for n in range(1, self.depth + 1):
            for signed in (n, -n):
                s, c = self.piece_affine(signed)
                pre = affine_image(target, 1 / s, -c / s)
                out.extend(intersect(pre, self.piece_set(signed)).parts)
        return normalize(out)

    def point_preimages(self, y: Fraction) -> list[Fraction]:
        out = set()
        if y == 0:
            out.add(ZERO)
        for n in range(1, self.depth + 1):
            for signed in (n, -n):
                s, c = self.piece_affine(signed)
                x = (y - c) / s
                if self.piece_set(signed).contains(x):
                    out.add(x)
        return sorted(out)

    def ball_image(self, radius: Fraction, closed: bool = True) -> RationalIntervalSet:
        """Exact image of the radius-ball about 0 intersected with the space.

        Open balls are supported only when they coincide with a closed
        intersection at the space's gap structure (true for the radii 2/3ⁿ
        used by the one-sidedness checks).
        """
        ball = intersect(self.space(), closed_ball(ZERO, radius))
        if not closed:
            kept = []
            for p in ball.parts:
                if p.lo == -radius or p.hi == radius:
                    if p.width > 0:
                        raise ValueError("open ball not exactly representable at this radius")
                    continue
                kept.append(p)
            ball = normalize(kept)
        return self.forward_image(ball)

    def to_json(self) -> dict:
        return {"kind": "cantor", "depth": self.depth, "negative_image_mode": self.negative_image_mode}


# ---------------------------------------------------------------------------
# shift spaces
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SymbolicPoint:
    """Eventually periodic one-sided sequence: preamble then repeating cycle."""

    preamble: tuple[str, ...]
    cycle: tuple[str, ...]

    def __post_init__(self):
        if not self.cycle:
            raise ValueError("cycle must be nonempty")
        pre, cyc = list(self.preamble), list(self.cycle)
        # primitive cycle
        for p in range(1, len(cyc)):
            if len(cyc) % p == 0 and cyc == cyc[:p] * (len(cyc) // p):
                cyc = cyc[:p]
                break
        # absorb preamble tail into the cycle
        while pre and pre[-1] == cyc[-1]:
            pre.pop()
            cyc = [cyc[-1]] + cyc[:-1]
        object.__setattr__(self, "preamble", tuple(pre))
        object.__setattr__(self, "cycle", tuple(cyc))

    def symbol(self, i: int) -> str:
        if i < len(self.preamble):
            return self.preamble[i]
        return self.cycle[(i - len(self.preamble)) % len(self.cycle)]

    def prefix(self, k: int) -> tuple[str, ...]:
        return tuple(self.symbol(i) for i in range(k))

    def shifted(self) -> "SymbolicPoint":
        if self.preamble:
            return SymbolicPoint(self.preamble[1:], self.cycle)
        return SymbolicPoint((), self.cycle[1:] + self.cycle[:1])

    def __str__(self):
        return "".join(self.preamble) + "(" + "".join(self.cycle) + ")"

    @staticmethod
    def parse(text: str) -> "SymbolicPoint":
        if "(" not in text:
            raise ValueError("expected 'preamble(cycle)'")
        pre, rest = text.split("(", 1)
        cyc = rest.rstrip(")")
        return SymbolicPoint(tuple(pre), tuple(cyc))


def common_prefix_length(a: SymbolicPoint, b: SymbolicPoint) -> Optional[int]:
    """Length of the longest common prefix; None when the points are equal."""
    if a == b:
        return None
    bound = len(a.preamble) + len(b.preamble) + math.lcm(len(a.cycle), len(b.cycle)) + 1
    for i in range(bound + 1):
        if a.symbol(i) != b.symbol(i):
            return i
    raise AssertionError("distinct eventually periodic points must disagree within the bound")


@dataclass(frozen=True)
class ShiftSystem:
    """One-sided shift over a finite alphabet avoiding a finite word list."""

    alphabet: tuple[str, ...]
    forbidden: tuple[str, ...] = ()

    kind = "sft"

    def __post_init__(self):
        if not self.alphabet:
            raise ValueError("alphabet must be nonempty")
        if any(len(a) != 1 for a in self.alphabet):
            raise ValueError("alphabet symbols must be single characters")

    @property
    def max_forbidden_length(self) -> int:
        return max((len(w) for w in self.forbidden), default=0)

    def word_admissible(self, word: Sequence[str]) -> bool:
        text = "".join(word)
        return not any(bad in text for bad in self.forbidden)

    def point_admissible(self, p: SymbolicPoint) -> bool:
        window = list(p.preamble) + list(p.cycle) * 2
        horizon = len(window) + self.max_forbidden_length
        return self.word_admissible([p.symbol(i) for i in range(horizon)])

    def contains_point(self, p: SymbolicPoint) -> bool:
        return all(s in self.alphabet for s in p.preamble + p.cycle) and self.point_admissible(p)

    def evaluate(self, p: SymbolicPoint) -> SymbolicPoint:
        if not self.contains_point(p):
            raise DomainError(f"{p} not admissible")
        return p.shifted()

    def distance(self, a: SymbolicPoint, b: SymbolicPoint) -> Fraction:
        k = common_prefix_length(a, b)
        return ZERO if k is None else Fraction(1, 2**k)

    def follower_continuation(self, context: Sequence[str], rng: random.Random, length: int) -> list[str]:
        """Seeded admissible continuation of the given context."""
        L = self.max_forbidden_length
        word = list(context)
        for _ in range(length):
            options = [a for a in self.alphabet if self.word_admissible(word[-(L - 1):] + [a] if L > 1 else [a])]
            if not options:
                raise DomainError("context admits no admissible continuation")
            word.append(rng.choice(options))
        return word[len(context):]

    def admissible_cycle_from(self, context: Sequence[str]) -> tuple[str, ...]:
        """Some cycle whose infinite repetition extends the context admissibly."""
        L = max(self.max_forbidden_length, 1)
        for size in range(1, L + 2):
            for idx in range(len(self.alphabet) ** size):
                cyc = []
                k = idx
                for _ in range(size):
                    cyc.append(self.alphabet[k % len(self.alphabet)])
                    k //= len(self.alphabet)
                trial = list(context[-(L):]) + cyc * (L + 2)
                if self.word_admissible(trial):
                    return tuple(cyc)
        raise DomainError("no admissible cycle extends the context")

    def to_json(self) -> dict:
        return {"kind": "sft", "alphabet": list(self.alphabet), "forbidden": list(self.forbidden)}


def golden_mean_shift() -> ShiftSystem:
    return ShiftSystem(("0", "1"), ("11",))


def full_shift(symbols: int = 2) -> ShiftSystem:
    return ShiftSystem(tuple(str(i) for i in range(symbols)), ())


# ---------------------------------------------------------------------------
# binary odometer
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class OdometerSystem:
    """Add-one-with-carry on binary words of fixed length, least bit first."""

    depth: int

    kind = "odometer"

    def __post_init__(self):
        if self.depth < 1:
            raise ValueError("depth must be >= 1")

    def contains_point(self, w: tuple[int, ...]) -> bool:
        return isinstance(w, tuple) and len(w) == self.depth and all(b in (0, 1) for b in w)

    def evaluate(self, w: tuple[int, ...]) -> tuple[int, ...]:
        if not self.contains_point(w):
            raise DomainError(f"{w} is not a depth-{self.depth} word")
        out = list(w)
        for i in range(self.depth):
            if out[i] == 0:
                out[i] = 1
                break
            out[i] = 0
        return tuple(out)

    def inverse(self, w: tuple[int, ...]) -> tuple[int, ...]:
        out = list(w)
        for i in range(self.depth):
            if out[i] == 1:
                out[i] = 0
                break
            out[i] = 1
        return tuple(out)

    def iterate_inverse(self, w: tuple[int, ...], steps: int) -> tuple[int, ...]:
        value = (self.word_to_int(w) - steps) % (1 << self.depth)
        return self.int_to_word(value)

    def word_to_int(self, w: tuple[int, ...]) -> int:
        return sum(b << i for i, b in enumerate(w))

    def int_to_word(self, value: int) -> tuple[int, ...]:
        return tuple((value >> i) & 1 for i in range(self.depth))

    def distance(self, a: tuple[int, ...], b: tuple[int, ...]) -> Fraction:
        if a == b:
            return ZERO
        k = 0
        while a[k] == b[k]:
            k += 1
        return Fraction(1, 2**k)

    def to_json(self) -> dict:
        return {"kind": "odometer", "depth": self.depth}


# ---------------------------------------------------------------------------
# interval plus isolated fixed tail points
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SLimitSystem:
    """[0,1] ∪ {−1/2ⁿ : n ≤ tail_depth} with g(x)=x² on [0,1], identity below 0.

    g is an increasing bijection of [0,1] with g(x) < x strictly inside, so
    every forward orbit in (0,1) slides down to 0 while the isolated negative
    points never move.
    """

    tail_depth: int

    kind = "slimit"

    def __post_init__(self):
        if self.tail_depth < 1:
            raise ValueError("tail_depth must be >= 1")

    def tail_points(self) -> list[Fraction]:
        return [Fraction(-1, 2**n) for n in range(1, self.tail_depth + 1)]

    def space(self) -> RationalIntervalSet:
        parts = [ClosedInterval(p, p) for p in self.tail_points()]
        parts.append(ClosedInterval(ZERO, ONE))
        return normalize(parts)

    def contains_point(self, x: Fraction) -> bool:
        return (0 <= x <= 1) or x in set(self.tail_points())

    def evaluate(self, x: Fraction) -> Fraction:
        if not self.contains_point(x):
            raise DomainError(f"{x} outside the space")
        return x * x if x >= 0 else x

    def forward_image(self, sset: RationalIntervalSet) -> RationalIntervalSet:
        out = []
        for part in sset.parts:
            if part.hi <= 0:
                out.append(part)
            else:
                lo = max(part.lo, ZERO)
                out.append(ClosedInterval(lo * lo, part.hi * part.hi))
                if part.lo < 0:
                    out.append(ClosedInterval(part.lo, part.lo))
        return intersect(normalize(out), self.space())

    def to_json(self) -> dict:
        return {"kind": "slimit", "tail_depth": self.tail_depth}


# ---------------------------------------------------------------------------
# uniform contract
# ---------------------------------------------------------------------------

SystemSpec = Union[
    PiecewiseLinearMap, QuadraticFamilyMap, CantorSystem, ShiftSystem, OdometerSystem, SLimitSystem
]
Point = Union[Fraction, SymbolicPoint, tuple]

INTERVAL_KINDS = ("pl", "quadratic", "cantor", "slimit")
PIECEWISE_AFFINE_KINDS = ("pl", "cantor")


def evaluate(system: SystemSpec, x: Point) -> Point:
    """One application of the system's map; exact for every system kind."""
    return system.evaluate(x)


def iterate(system: SystemSpec, x: Point, n: int) -> Point:
    for _ in range(n):
        x = system.evaluate(x)
    return x


def branches(system: SystemSpec, window: RationalIntervalSet) -> list[tuple[ClosedInterval, Fraction, Fraction]]:
    """Maximal monotone affine pieces meeting the window, clipped to it."""
    if system.kind == "pl":
        cells = system.laps()
    elif system.kind == "cantor":
        # report at the piece level: each piece is one maximal affine branch
        cells = []
        for n in range(1, system.depth + 1):
            for signed in (n, -n):
                s, c = system.piece_affine(signed)
                cells.append((system.piece_interval(signed), s, c))
    else:
        raise DomainError(f"{system.kind} systems do not expose affine branches")
    out = []
    for dom, s, c in cells:
        clipped = intersect(RationalIntervalSet((dom,)), window)
        for part in clipped.parts:
            out.append((part, s, c))
    return out


def preimage_set(system: SystemSpec, target: RationalIntervalSet) -> RationalIntervalSet:
    """Exact {x : f(x) ∈ target} for piecewise-monotone interval systems."""
    if system.kind in ("pl", "cantor"):
        return system.preimage(target)
    if system.kind == "quadratic":
        return system.preimage_outer(target)
    raise DomainError(f"{system.kind} systems do not support interval preimages")


def critical_set(system: SystemSpec) -> list[Point]:
    if system.kind == "pl":
        return system.critical_points()
    if system.kind == "quadratic":
        return [system.critical_point()]
    if system.kind == "slimit":
        return []
    raise DomainError("critical points are defined for interval-map systems")


def distance(system: SystemSpec, x: Point, y: Point) -> Fraction:
    if system.kind in INTERVAL_KINDS:
        if not isinstance(x, Fraction) or not isinstance(y, Fraction):
            raise DomainError("interval systems take rational points")
        return abs(x - y)
    if system.kind == "sft":
        if not isinstance(x, SymbolicPoint) or not isinstance(y, SymbolicPoint):
            raise DomainError("shift systems take symbolic points")
        return system.distance(x, y)
    if system.kind == "odometer":
        if not isinstance(x, tuple) or not isinstance(y, tuple):
            raise DomainError("odometer systems take binary words")
        return system.distance(x, y)
    raise DomainError(f"unknown system kind {system.kind}")


def space_set(system: SystemSpec) -> RationalIntervalSet:
    if system.kind not in INTERVAL_KINDS:
        raise DomainError("only interval-type systems have an interval-set space")
    return system.space()


def point_to_str(system: SystemSpec, x: Point) -> str:
    if system.kind in INTERVAL_KINDS:
        return rat_str(x)
    if system.kind == "sft":
        return str(x)
    return "".join(str(b) for b in x)


def point_from_str(system: SystemSpec, text: str) -> Point:
    if system.kind in INTERVAL_KINDS:
        return rat(text)
    if system.kind == "sft":
        return SymbolicPoint.parse(text)
    return tuple(int(ch) for ch in text)


def system_to_json(system: SystemSpec) -> dict:
    return system.to_json()


def system_from_json(data: Union[dict, str]) -> SystemSpec:
    if isinstance(data, str):
        data = json.loads(data)
    kind = data["kind"]
    if kind == "pl":
        return PiecewiseLinearMap(
            tuple(rat(b) for b in data["breakpoints"]), tuple(rat(v) for v in data["values"])
        )
    if kind == "quadratic":
        return QuadraticFamilyMap(data["family"], rat(data["parameter"]))
    if kind == "cantor":
        return CantorSystem(int(data["depth"]), data.get("negative_image_mode", "fold"))
    if kind == "sft":
        return ShiftSystem(tuple(data["alphabet"]), tuple(data.get("forbidden", ())))
    if kind == "odometer":
        return OdometerSystem(int(data["depth"]))
    if kind == "slimit":
        return SLimitSystem(int(data["tail_depth"]))
    raise ValueError(f"unknown system kind {kind!r}")
