"""Itineraries, the signed symbol order, and parameter search for unimodal maps.

Symbols are 'L', 'C', 'R' relative to the critical point.  The kneading word
of a map is the itinerary of its critical value.  Words are compared in the
order that mirrors the order of points on the line: lexicographic, with the
orientation flipping after every 'R'.  Parameter search drives a bisection
on the quadratic family with that order; comparisons are exact because
orbits of rational points under rational maps stay rational.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .numerics import rat, rat_str
from .systems import PiecewiseLinearMap, QuadraticFamilyMap, critical_set, quadratic_map

L, C, R = "L", "C", "R"
_ORDER = {L: -1, C: 0, R: 1}


@dataclass(frozen=True)
class KneadingWord:
    symbols: str
    horizon: int

    def __post_init__(self):
        if len(self.symbols) > self.horizon:
            raise ValueError("more symbols than the declared horizon")
        if any(s not in "LCR" for s in self.symbols):
            raise ValueError("symbols must be over {L, C, R}")
        if C in self.symbols[:-1]:
            raise ValueError("a critical hit terminates the word")

    def __len__(self):
        return len(self.symbols)

    def __str__(self):
        return self.symbols


def word(symbols: str, horizon: Optional[int] = None) -> KneadingWord:
    return KneadingWord(symbols, len(symbols) if horizon is None else horizon)


def _unimodal_critical(system) -> Fraction:
    if isinstance(system, QuadraticFamilyMap):
        return system.critical_point()
    crit = critical_set(system)
    if len(crit) != 1:
        raise ValueError("itineraries need a unimodal map (exactly one critical point)")
    return crit[0]


def itinerary(system: Union[QuadraticFamilyMap, PiecewiseLinearMap], x, n: int) -> KneadingWord:
    """Symbols of x, f(x), …, f^{n−1}(x) relative to the critical point;
    a critical hit emits 'C' and stops."""
    if n < 1:
        raise ValueError("need n >= 1")
    c = _unimodal_critical(system)
    x = rat(x)
    out = []
    for _ in range(n):
        if x == c:
            out.append(C)
            break
        out.append(L if x < c else R)
        x = system.evaluate(x)
    return KneadingWord("".join(out), n)


def kneading_word(system, horizon: int) -> KneadingWord:
    """Itinerary of the critical value (the first symbol sits at f(c))."""
    c = _unimodal_critical(system)
    return itinerary(system, system.evaluate(c), horizon)


def _fast_quadratic_kneading(mu: Fraction, horizon: int, bits: int = 192) -> Optional[KneadingWord]:
    """Kneading word of 1−μx² via outward-rounded dyadic interval iteration.

    Every emitted symbol is certified by an enclosure that stays strictly on
    one side of the critical point; returns None when the precision ladder
    cannot separate some iterate from 0 (the exact path then decides).
    """
    while bits <= 8192:
        lo = hi = Fraction(1)
        syms: list[str] = []
        stuck = False
        for _ in range(horizon):
            if lo > 0:
                syms.append(R)
            elif hi < 0:
                syms.append(L)
            elif lo == hi == 0:
                syms.append(C)
                break
            else:
                stuck = True
                break
            mags = sorted((abs(lo), abs(hi)))
            sq_hi = mags[1] * mags[1]
            sq_lo = Fraction(0) if lo <= 0 <= hi else mags[0] * mags[0]
            lo, hi = _round_down(1 - mu * sq_hi, bits), _round_up(1 - mu * sq_lo, bits)
        if not stuck:
            return KneadingWord("".join(syms), horizon)
        bits *= 4
    return None


def _kneading_for_search(mu: Fraction, horizon: int) -> KneadingWord:
    fast = _fast_quadratic_kneading(mu, horizon)
    if fast is not None:
        return fast
    return kneading_word(quadratic_map(mu), horizon)


# ---------------------------------------------------------------------------
# the staircase target sequence
# ---------------------------------------------------------------------------


def staircase_symbol(n: int) -> str:
    """Symbol n of R·L·L followed by blocks R^k L with k = 2, 3, 4, …

    Block k occupies positions [k(k+1)/2, (k+1)(k+2)/2); its final position
    carries the lone L.  The run of R's between consecutive L's therefore
    grows by exactly one each time, which is what makes the prefix never
    recur.
    """
    if n < 0:
        raise ValueError("need n >= 0")
    if n < 3:
        return (R, L, L)[n]
    k = (math.isqrt(8 * n + 1) - 1) // 2
    while k * (k + 1) // 2 > n:
        k -= 1
    while (k + 1) * (k + 2) // 2 <= n:
        k += 1
    return L if n == (k + 1) * (k + 2) // 2 - 1 else R


def staircase_word(length: int) -> KneadingWord:
    return word("".join(staircase_symbol(i) for i in range(length)))


def is_recurrent_prefix(w: KneadingWord, window: int) -> bool:
    """Does the length-``window`` prefix reappear as a factor at index ≥ 1?"""
    if window > len(w):
        raise ValueError("window exceeds the word length")
    if window == 0:
        return True
    text = w.symbols
    return text.find(text[:window], 1) != -1


# ---------------------------------------------------------------------------
# signed lexicographic order
# ---------------------------------------------------------------------------


def parity_lex_compare(a: KneadingWord, b: KneadingWord) -> int:
    """−1, 0, +1 in the order compatible with point order on the line.

    At the first differing index the natural order L < C < R applies when
    the number of preceding R's is even and reverses when it is odd.  Words
    agreeing on their common prefix compare equal at that horizon.
    """
    parity = 1
    for sa, sb in zip(a.symbols, b.symbols):
        if sa != sb:
            return parity * (-1 if _ORDER[sa] < _ORDER[sb] else 1)
        if sa == R:
            parity = -parity
    return 0


# ---------------------------------------------------------------------------
# parameter search in the even quadratic family
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ParameterSearchResult:
    parameter: Fraction
    achieved: KneadingWord
    bracket: tuple[Fraction, Fraction]
    matched: bool

    def to_json(self) -> dict:
        return {
            "parameter": rat_str(self.parameter),
            "achieved": str(self.achieved),
            "bracketLo": rat_str(self.bracket[0]),
            "bracketHi": rat_str(self.bracket[1]),
            "bracketWidth": rat_str(self.bracket[1] - self.bracket[0]),
            "matched": self.matched,
        }


def find_parameter(target: KneadingWord, horizon: int, bisection_steps: int) -> ParameterSearchResult:
    """Bisection over μ ∈ [1,2] for a map 1−μx² whose kneading word matches
    the target prefix at the horizon.

    Relies on the kneading word being weakly monotone in μ under the signed
    order (validated empirically by the tests on a parameter grid; it cannot
    be certified here).  Returns the last matching parameter seen together
    with the final bracket.
    """
    if horizon > len(target):
        raise ValueError("horizon exceeds the target length")
    goal = word(target.symbols[:horizon])
    lo, hi = Fraction(1), Fraction(2)
    mid = (lo + hi) / 2
    best: Optional[tuple[Fraction, KneadingWord]] = None
    achieved = _kneading_for_search(mid, horizon)
    for _ in range(bisection_steps):
        cmp = parity_lex_compare(achieved, goal)
        if cmp == 0 and len(achieved) == horizon:
            best = (mid, achieved)
            hi = mid  # keep shrinking toward the window's lower edge
        elif cmp < 0:
            lo = mid
        else:
            hi = mid
        mid = (lo + hi) / 2
        achieved = _kneading_for_search(mid, horizon)
    if best is not None and parity_lex_compare(achieved, goal) != 0:
        mid, achieved = best
    matched = parity_lex_compare(achieved, goal) == 0 and len(achieved) == horizon
    return ParameterSearchResult(mid, achieved, (lo, hi), matched)


# ---------------------------------------------------------------------------
# certified critical-orbit separation at working precision
# ---------------------------------------------------------------------------


def _round_down(x: Fraction, bits: int) -> Fraction:
    scale = 1 << bits
    return Fraction(math.floor(x * scale), scale)


def _round_up(x: Fraction, bits: int) -> Fraction:
    scale = 1 << bits
    return Fraction(math.ceil(x * scale), scale)


def critical_orbit_separation(mu: Fraction, first: int, last: int,
                              bits: int = 512, max_bits: int = 4096) -> Optional[Fraction]:
    """Certified positive lower bound on min |Fⁿ(0)| for n in [first, last],
    F = 1−μx², via outward-rounded dyadic interval iteration.

    Returns None when no positive bound can be certified even at the
    precision cap (the orbit may genuinely meet 0).
    """
    mu = rat(mu)
    while bits <= max_bits:
        lo, hi = Fraction(0), Fraction(0)
        best: Optional[Fraction] = None
        ok = True
        for n in range(1, last + 1):
            # image of [lo, hi] under 1 − μx², outward rounded
            mags = sorted((abs(lo), abs(hi)))
            sq_hi = mags[1] * mags[1]
            sq_lo = Fraction(0) if lo <= 0 <= hi else mags[0] * mags[0]
            new_lo = _round_down(1 - mu * sq_hi, bits)
            new_hi = _round_up(1 - mu * sq_lo, bits)
            lo, hi = new_lo, new_hi
            if n >= first:
                if lo <= 0 <= hi:
                    ok = False
                    break
                bound = min(abs(lo), abs(hi))
                if best is None or bound < best:
                    best = bound
        if ok:
            return best
        bits *= 2
    return None
