"""Certifiers and falsifiers for the expansion-property hierarchy.

Piecewise-affine systems get exact decisions: pair conditions reduce to the
sign of piecewise-affine functions over small polytopes, decided at the
vertices of a line arrangement with rational coordinates.  Smooth systems
get derivative-bound certification where a monotone hull argument applies,
sampling falsifiers otherwise, and honest ``undetermined`` when neither
side lands.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from .numerics import (
    ClosedInterval,
    RationalIntervalSet,
    closed_ball,
    intersect,
    normalize,
    rat,
    rat_str,
)
from .systems import (
    CantorSystem,
    DomainError,
    PiecewiseLinearMap,
    QuadraticFamilyMap,
    SystemSpec,
    critical_set,
    distance,
    evaluate,
    space_set,
)

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class RegionSpec:
    """A subset of the space: an interval-set carrier (interval systems) or a
    point list (symbolic systems), plus a certified margin to the critical set."""

    carrier: Union[RationalIntervalSet, tuple]
    margin: Fraction = ZERO

    def __post_init__(self):
        object.__setattr__(self, "margin", rat(self.margin))
        if self.margin < 0:
            raise ValueError("margin must be nonnegative")

    def interval_carrier(self) -> RationalIntervalSet:
        if not isinstance(self.carrier, RationalIntervalSet):
            raise DomainError("this check needs an interval-set region")
        return self.carrier


def region_of(*pairs, margin=ZERO) -> RegionSpec:
    return RegionSpec(normalize([ClosedInterval(rat(a), rat(b)) for a, b in pairs]), margin)


def whole_space_region(system) -> RegionSpec:
    return RegionSpec(space_set(system))


@dataclass(frozen=True)
class ExpansivityVerdict:
    property: str
    holds: str  # "certified" | "falsified" | "undetermined"
    constants: dict
    counterexample: Optional[dict] = None

    def __post_init__(self):
        if self.holds == "falsified" and self.counterexample is None:
            raise ValueError("a falsified verdict must carry a counterexample")

    @property
    def certified(self) -> bool:
        return self.holds == "certified"

    @property
    def falsified(self) -> bool:
        return self.holds == "falsified"

    def to_json(self) -> dict:
        return {
            "property": self.property,
            "holds": self.holds,
            "constants": {k: str(v) for k, v in sorted(self.constants.items())},
            "counterexample": self.counterexample,
        }


# ---------------------------------------------------------------------------
# exact pair analysis over affine cells
# ---------------------------------------------------------------------------

Cell = tuple[ClosedInterval, Fraction, Fraction]  # (domain, slope, offset)


def _affine_cells(system, carrier: RationalIntervalSet) -> list[Cell]:
    if system.kind == "pl":
        base = system.laps()
    elif system.kind == "cantor":
        base = system.affine_cells()
    else:
        raise DomainError("affine-cell analysis needs a piecewise-affine system")
    cells = []
    for dom, s, c in base:
        for part in intersect(RationalIntervalSet((dom,)), carrier).parts:
            cells.append((part, s, c))
    return cells


def _vertex_candidates(cx: Cell, cy: Cell, delta: Fraction) -> list[tuple[Fraction, Fraction]]:
    """Vertices of the arrangement of the pair polytope with the image-equality line."""
    (ix, sx, ox), (iy, sy, oy) = cx, cy
    xs = [ix.lo, ix.hi]
    ys = [iy.lo, iy.hi]
    lines = []  # y = a*x + b
    lines.append((ONE, ZERO))            # y = x
    lines.append((ONE, delta))           # y = x + delta
    lines.append((sx / sy, (ox - oy) / sy))  # F(x) = G(y)
    pts = set()
    for x in xs:
        for y in ys:
            pts.add((x, y))
        for a, b in lines:
            pts.add((x, a * x + b))
    for y in ys:
        for a, b in lines:
            if a != 0:
                pts.add(((y - b) / a, y))
    for (a1, b1) in lines:
        for (a2, b2) in lines:
            if a1 != a2:
                x = (b2 - b1) / (a1 - a2)
                pts.add((x, a1 * x + b1))
    out = []
    for x, y in pts:
        if ix.lo <= x <= ix.hi and iy.lo <= y <= iy.hi and ZERO <= y - x <= delta:
            out.append((x, y))
    return out


def _pair_violation(cx: Cell, cy: Cell, delta: Fraction, mu: Fraction) -> Optional[tuple]:
    """A pair x ∈ cx, y ∈ cy with 0 < y−x < delta and |F(x)−G(y)| < μ(y−x),
    or None when no such pair exists (decided exactly at arrangement vertices)."""
    (ix, sx, ox), (iy, sy, oy) = cx, cy
    if iy.lo - ix.hi >= delta:
        return None
    # prefer an exact image collision F(x) = G(y), i.e. y = a·x + b
    a, b = sx / sy, (ox - oy) / sy
    lo, hi = ix.lo, ix.hi
    y_bounds = sorted(((iy.lo - b) / a, (iy.hi - b) / a))
    lo, hi = max(lo, y_bounds[0]), min(hi, y_bounds[1])
    if a != 1:
        sep_bounds = sorted((-b / (a - 1), (delta - b) / (a - 1)))
        lo, hi = max(lo, sep_bounds[0]), min(hi, sep_bounds[1])
        feasible_line = lo < hi
    else:
        feasible_line = lo <= hi and ZERO < b < delta
    if feasible_line:
        x = (lo + hi) / 2
        y = a * x + b
        if ix.lo <= x <= ix.hi and iy.lo <= y <= iy.hi and ZERO < y - x < delta:
            return x, y
    best = None
    for (x, y) in _vertex_candidates(cx, cy, delta):
        h = abs((sx * x + ox) - (sy * y + oy)) - mu * (y - x)
        if h < 0 and (best is None or h < best[2]):
            best = (x, y, h)
    if best is None:
        return None
    x, y, _ = best
    # restore strictness 0 < y−x < delta by nudging into the cell interior
    if y - x == 0 or y - x == delta:
        shrink = Fraction(1, 2)
        for _ in range(64):
            found = None
            for (xx, yy) in (
                (x - _small_step(ix, shrink), y),
                (x + _small_step(ix, shrink), y),
                (x, y - _small_step(iy, shrink)),
                (x, y + _small_step(iy, shrink)),
            ):
                if ix.lo <= xx <= ix.hi and iy.lo <= yy <= iy.hi and ZERO < yy - xx < delta:
                    if abs((sx * xx + ox) - (sy * yy + oy)) - mu * (yy - xx) < 0:
                        found = (xx, yy)
                        break
            if found is not None:
                x, y = found
                break
            shrink /= 2
        else:
            return None
    return x, y


def _small_step(iv: ClosedInterval, shrink: Fraction) -> Fraction:
    w = iv.width if iv.width > 0 else ONE
    return w * shrink / 4


def _expanding_violation(cells: list[Cell], delta: Fraction, mu: Fraction) -> Optional[tuple]:
    cells = sorted(cells, key=lambda c: (c[0].lo, c[0].hi))
    for i, cx in enumerate(cells):
        # pairs inside one cell: the ratio is exactly the slope modulus
        if cx[0].width > 0 and abs(cx[1]) < mu:
            gap = min(delta / 2, cx[0].width)
            return (cx[0].lo, cx[0].lo + gap)
        for j in range(i + 1, len(cells)):
            cy = cells[j]
            if cy[0].lo - cx[0].hi >= delta:
                break  # cells sorted by lo: everything further is out of reach
            hit = _pair_violation(cx, cy, delta, mu)
            if hit is None:
                hit = _pair_violation(cy, cx, delta, mu)
            if hit is not None:
                return hit
    return None


def _falsified_pair_verdict(system, prop: str, x, y, mu, constants) -> ExpansivityVerdict:
    fx, fy = evaluate(system, x), evaluate(system, y)
    lhs = distance(system, fx, fy)
    rhs = mu * distance(system, x, y)
    if lhs >= rhs:
        raise AssertionError("counterexample failed direct re-validation")
    counter = {
        "x": rat_str(x),
        "y": rat_str(y),
        "d(x,y)": rat_str(distance(system, x, y)),
        "d(f(x),f(y))": rat_str(lhs),
        "inequality": f"{rat_str(lhs)} < {rat_str(mu)} * {rat_str(distance(system, x, y))}",
    }
    return ExpansivityVerdict(prop, "falsified", constants, counter)


def check_expanding(system: SystemSpec, region: RegionSpec, delta, mu) -> ExpansivityVerdict:
    """Does d(f(x), f(y)) ≥ μ·d(x, y) hold for all region pairs closer than δ?"""
    delta, mu = rat(delta), rat(mu)
    if mu <= 1 or delta <= 0:
        raise ValueError("need mu > 1 and delta > 0")
    constants = {"delta": rat_str(delta), "mu": rat_str(mu)}
    if system.kind in ("pl", "cantor"):
        cells = _affine_cells(system, region.interval_carrier())
        hit = _expanding_violation(cells, delta, mu)
        if hit is None:
            return ExpansivityVerdict("expanding", "certified", constants)
        return _falsified_pair_verdict(system, "expanding", hit[0], hit[1], mu, constants)
    if system.kind == "quadratic":
        return _quadratic_expanding(system, region, delta, mu, constants, one_sided=False)
    raise DomainError(f"expanding check unsupported for {system.kind}")


def check_star(system: SystemSpec, lambda_set: RegionSpec, delta, mu) -> ExpansivityVerdict:
    """One-sided variant: only x is confined to the region, y roams the space."""
    delta, mu = rat(delta), rat(mu)
    if mu <= 1 or delta <= 0:
        raise ValueError("need mu > 1 and delta > 0")
    constants = {"delta": rat_str(delta), "mu": rat_str(mu)}
    if system.kind in ("pl", "cantor"):
        cells_x = _affine_cells(system, lambda_set.interval_carrier())
        cells_y = _affine_cells(system, space_set(system))
        for cx in cells_x:
            for cy in cells_y:
                if max(cy[0].lo - cx[0].hi, cx[0].lo - cy[0].hi) >= delta:
                    continue
                hit = _pair_violation(cx, cy, delta, mu)
                if hit is None:
                    swapped = _pair_violation(cy, cx, delta, mu)
                    hit = None if swapped is None else (swapped[1], swapped[0])
                if hit is not None:
                    # first coordinate is the region-constrained point
                    return _falsified_pair_verdict(system, "star", hit[0], hit[1], mu, constants)
        return ExpansivityVerdict("star", "certified", constants)
    if system.kind == "quadratic":
        return _quadratic_expanding(system, lambda_set, delta, mu, constants, one_sided=True)
    raise DomainError(f"star check unsupported for {system.kind}")


def _quadratic_expanding(system, region, delta, mu, constants, one_sided) -> ExpansivityVerdict:
    carrier = region.interval_carrier()
    if carrier.is_empty:
        return ExpansivityVerdict("star" if one_sided else "expanding", "certified", constants)
    hull = carrier.hull()
    if one_sided:
        hull = ClosedInterval(hull.lo - delta, hull.hi + delta)
    c = system.critical_point()
    # derivative-bound certification on the monotone hull
    if not (hull.lo <= c <= hull.hi):
        dmin = min(abs(system.derivative(hull.lo)), abs(system.derivative(hull.hi)))
        if dmin >= mu:
            return ExpansivityVerdict("star" if one_sided else "expanding", "certified",
                                      {**constants, "minDerivative": rat_str(dmin)})
    # sampling falsifier around the critical point
    for k in range(1, 12):
        s = delta / 2**k
        x, y = c - s, c + s
        if carrier.contains(x) and (one_sided or carrier.contains(y)) and system.contains_point(y):
            lhs = abs(system.evaluate(x) - system.evaluate(y))
            if lhs < mu * (y - x):
                return _falsified_pair_verdict(system, "star" if one_sided else "expanding",
                                               x, y, mu, constants)
    return ExpansivityVerdict("star" if one_sided else "expanding", "undetermined", constants)


# ---------------------------------------------------------------------------
# ball expanding
# ---------------------------------------------------------------------------


def _uncovered_point(ball: RationalIntervalSet, image: RationalIntervalSet) -> Optional[Fraction]:
    """A point of ``ball`` outside ``image``, or None when covered."""
    for part in ball.parts:
        cover = intersect(RationalIntervalSet((part,)), image)
        if cover.is_empty:
            return part.lo
        if cover.parts[0].lo > part.lo:
            return part.lo
        cursor = cover.parts[0].hi
        for nxt in cover.parts[1:]:
            if nxt.lo > cursor:
                return (cursor + nxt.lo) / 2
            cursor = nxt.hi
        if cursor < part.hi:
            return part.hi
    return None


def _pl_ball_expanding_once(system: PiecewiseLinearMap, carrier: RationalIntervalSet,
                            mu: Fraction, eps: Fraction) -> Optional[tuple]:
    """Exact certification over all carrier x for one ε.

    Between consecutive cuts every quantity involved (the window edges
    f(x∓ε), the window-interior breakpoint values, f(x)±μsense) is a single
    affine function of x, so after refining each cell by all pairwise
    crossings of those affines the two covering inequalities are affine per
    piece and endpoint checks decide them completely.
    """
    cuts = {ZERO, ONE}
    for b in system.breakpoints:
        for v in (b, b + eps, b - eps):
            if ZERO <= v <= ONE:
                cuts.add(v)
    base = sorted(cuts)
    laps = system.laps()

    def lap_at(t: Fraction):
        for dom, s, c in laps:
            if dom.lo <= t <= dom.hi:
                return s, c
        raise AssertionError("point escaped every lap")

    def window_extrema(x):
        lo, hi = max(ZERO, x - eps), min(ONE, x + eps)
        vals = [system.evaluate(lo), system.evaluate(hi)]
        vals.extend(system.evaluate(b) for b in system.breakpoints if lo < b < hi)
        return min(vals), max(vals)

    def violation_at(x):
        m, M = window_extrema(x)
        fx = system.evaluate(x)
        top = min(ONE, fx + mu * eps)
        bot = max(ZERO, fx - mu * eps)
        if top > M:
            return top
        if bot < m:
            return bot
        return None

    for lo, hi in zip(base, base[1:]):
        seg = intersect(RationalIntervalSet((ClosedInterval(lo, hi),)), carrier)
        if seg.is_empty:
            continue
        # affine candidates valid throughout (lo, hi)
        xm = (lo + hi) / 2
        cands: list[tuple[Fraction, Fraction]] = []
        if xm - eps <= 0:
            cands.append((ZERO, system.evaluate(ZERO)))
        else:
            s, c = lap_at(xm - eps)
            cands.append((s, c - s * eps))
        if xm + eps >= 1:
            cands.append((ZERO, system.evaluate(ONE)))
        else:
            s, c = lap_at(xm + eps)
            cands.append((s, c + s * eps))
        for b in system.breakpoints:
            if xm - eps < b < xm + eps:
                cands.append((ZERO, system.evaluate(b)))
        s, c = lap_at(xm)
        cands.append((s, c + mu * eps))
        cands.append((s, c - mu * eps))
        cands.append((ZERO, ONE))
        cands.append((ZERO, ZERO))

        crossings = set()
        for i in range(len(cands)):
            for j in range(i + 1, len(cands)):
                s1, c1 = cands[i]
                s2, c2 = cands[j]
                if s1 != s2:
                    x = (c2 - c1) / (s1 - s2)
                    if lo < x < hi:
                        crossings.add(x)
        for part in seg.parts:
            xs = {part.lo, part.hi}
            xs.update(x for x in crossings if part.lo < x < part.hi)
            for x in sorted(xs):
                missing = violation_at(x)
                if missing is not None:
                    return x, missing
    return None


def check_ball_expanding(system: SystemSpec, region: RegionSpec, mu, nu,
                         eps_grid: Sequence, seed: int = 11) -> ExpansivityVerdict:
    """Does f(B̄_ε(x) ∩ X) cover B̄_{μsenε}(f(x)) ∩ X for region x and ε < ν?

    Piecewise-linear maps are certified for every grid ε over the whole
    region by breakpoint case analysis.  The middle-thirds system is probed
    at component endpoints plus seeded samples; a probe failure is an exact
    falsification, while all-probes-pass yields ``undetermined`` unless the
    region is a finite point set.
    """
    mu, nu = rat(mu), rat(nu)
    if mu <= 1:
        raise ValueError("mu must exceed 1")
    if nu <= 0:
        raise ValueError("nu must be positive")
    eps_list = [rat(e) for e in eps_grid]
    if any(not (0 < e < nu) for e in eps_list):
        raise ValueError("grid values must lie in (0, nu)")
    constants = {"mu": rat_str(mu), "nu": rat_str(nu), "gridSize": len(eps_list)}
    carrier = region.interval_carrier()
    space = space_set(system)

    if system.kind == "pl":
        for eps in eps_list:
            hit = _pl_ball_expanding_once(system, carrier, mu, eps)
            if hit is not None:
                x, missing = hit
                return _ball_falsified(system, x, eps, mu, missing, constants)
        return ExpansivityVerdict("ballExpanding", "certified", constants)

    if system.kind == "cantor":
        rng = random.Random(seed)
        probes = []
        for part in carrier.parts:
            probes.extend([part.lo, part.hi])
        pool = [p.lo for p in space.parts if carrier.contains(p.lo)]
        for _ in range(min(24, len(pool))):
            probes.append(pool[rng.randrange(len(pool))])
        for x in sorted(set(probes)):
            fx = evaluate(system, x)
            for eps in eps_list:
                ball_in = intersect(closed_ball(x, eps), space)
                image = system.forward_image(ball_in)
                target = intersect(closed_ball(fx, mu * eps), space)
                missing = _uncovered_point(target, image)
                if missing is not None:
                    return _ball_falsified(system, x, eps, mu, missing, constants)
        finite = all(p.width == 0 for p in carrier.parts)
        holds = "certified" if finite else "undetermined"
        return ExpansivityVerdict("ballExpanding", holds, constants)

    raise DomainError(f"ball-expanding check unsupported for {system.kind}")


def _ball_falsified(system, x, eps, mu, missing, constants) -> ExpansivityVerdict:
    fx = evaluate(system, x)
    space = space_set(system)
    image = system.forward_image(intersect(closed_ball(x, eps), space))
    if image.contains(missing) or abs(missing - fx) > mu * eps or not space.contains(missing):
        raise AssertionError("ball-expanding counterexample failed re-validation")
    counter = {
        "x": rat_str(x),
        "epsilon": rat_str(eps),
        "missingPoint": rat_str(missing),
        "statement": (
            f"point {rat_str(missing)} lies within {rat_str(mu * eps)} of f(x)={rat_str(fx)} "
            "but outside the image of the ε-ball"
        ),
    }
    return ExpansivityVerdict("ballExpanding", "falsified", constants, counter)


def search_ball_expanding_constants(system, region: RegionSpec,
                                    grid_size: int = 12) -> Optional[tuple[Fraction, Fraction]]:
    """Small search for working (μ, ν); None when nothing on the menu certifies."""
    mu_cands = []
    if system.kind == "pl":
        mu_cands.append(system.min_slope_modulus())
    mu_cands.extend([Fraction(3, 2), Fraction(5, 4), Fraction(9, 8)])
    for mu in mu_cands:
        if mu <= 1:
            continue
        for nu in (Fraction(1, 4), Fraction(1, 8), Fraction(1, 16)):
            grid = [nu * Fraction(j, grid_size + 1) for j in range(1, grid_size + 1)]
            try:
                verdict = check_ball_expanding(system, region, mu, nu, grid)
            except (ValueError, DomainError):
                continue
            if verdict.certified:
                return mu, nu
    return None


# ---------------------------------------------------------------------------
# openness and local injectivity
# ---------------------------------------------------------------------------


def check_open_at(system: SystemSpec, x) -> ExpansivityVerdict:
    """Is the image of every small neighbourhood of x a relative
    neighbourhood of f(x)?  Exact for interval maps and the middle-thirds
    system."""
    constants = {"x": rat_str(x)}
    if system.kind == "pl":
        return _pl_open_at(system, rat(x), constants)
    if system.kind == "quadratic":
        return _quadratic_open_at(system, rat(x), constants)
    if system.kind == "cantor":
        return _cantor_open_at(system, rat(x), constants)
    raise DomainError(f"openness check unsupported for {system.kind}")


def _pl_open_at(system: PiecewiseLinearMap, x: Fraction, constants) -> ExpansivityVerdict:
    if not system.contains_point(x):
        raise DomainError(f"{x} outside [0,1]")
    slopes = system.slopes
    bps = system.breakpoints
    fx = system.evaluate(x)

    def left_slope():
        for i in range(len(bps) - 1, 0, -1):
            if bps[i - 1] < x <= bps[i]:
                return slopes[i - 1]
        return None

    def right_slope():
        for i in range(len(bps) - 1):
            if bps[i] <= x < bps[i + 1]:
                return slopes[i]
        return None

    sl, sr = left_slope(), right_slope()
    if x == 0:
        ok = (sr > 0 and fx == 0) or (sr < 0 and fx == 1)
    elif x == 1:
        ok = (sl > 0 and fx == 1) or (sl < 0 and fx == 0)
    elif sl * sr > 0:
        ok = True
    elif sl > 0 > sr:  # strict local max
        ok = fx == 1
    else:  # strict local min
        ok = fx == 0
    if ok:
        return ExpansivityVerdict("openOn", "certified", constants)
    side = "above" if (x not in (0, 1) and sl > 0) or (x == 0 and sr < 0) or (x == 1 and sl > 0) else "below"
    counter = {
        "x": rat_str(x),
        "f(x)": rat_str(fx),
        "statement": f"images of small neighbourhoods of x omit points just {side} f(x)",
    }
    return ExpansivityVerdict("openOn", "falsified", constants, counter)


def _quadratic_open_at(system: QuadraticFamilyMap, x: Fraction, constants) -> ExpansivityVerdict:
    c = system.critical_point()
    hull = space_set(system).hull()
    fx = system.evaluate(x)
    if x == c:
        ok = fx in (hull.lo, hull.hi)
    elif x in (hull.lo, hull.hi):
        # one-sided neighbourhood, monotone there
        going_up = system.derivative(x) > 0
        at_left = x == hull.lo
        ok = fx == (hull.lo if going_up == at_left else hull.hi)
    else:
        ok = True
    if ok:
        return ExpansivityVerdict("openOn", "certified", constants)
    counter = {"x": rat_str(x), "f(x)": rat_str(fx),
               "statement": "interior extremum value is not a space endpoint"}
    return ExpansivityVerdict("openOn", "falsified", constants, counter)


def _cantor_open_at(system: CantorSystem, x: Fraction, constants) -> ExpansivityVerdict:
    if not system.contains_point(x):
        raise DomainError(f"{x} outside the depth-{system.depth} space")
    if x != 0:
        return ExpansivityVerdict("openOn", "certified", constants)
    # at the fixed point the image of any ball misses space points near 0
    witness = Fraction(-2, 3**system.depth)
    radius = Fraction(2, 3 ** min(4, system.depth))
    image = system.ball_image(radius, closed=True)
    if image.contains(witness):
        raise AssertionError("expected missing point is covered; construction changed?")
    counter = {
        "x": "0/1",
        "radius": rat_str(radius),
        "missingPoint": rat_str(witness),
        "statement": "the image of the ball about 0 misses space points arbitrarily close to f(0)=0",
    }
    return ExpansivityVerdict("openOn", "falsified", constants, counter)


def check_locally_injective(system: SystemSpec, region: RegionSpec) -> ExpansivityVerdict:
    """Holds exactly when the region avoids the critical set."""
    constants = {"margin": rat_str(region.margin)}
    crit = critical_set(system)
    carrier = region.interval_carrier()
    if carrier.is_empty:
        return ExpansivityVerdict("locallyInjective", "certified", constants)
    for c in crit:
        if carrier.contains(c):
            counter = {"criticalPoint": rat_str(c),
                       "statement": "the region contains a point with no injective neighbourhood"}
            return ExpansivityVerdict("locallyInjective", "falsified", constants, counter)
    return ExpansivityVerdict("locallyInjective", "certified", constants)


# ---------------------------------------------------------------------------
# positive expansivity (falsifier only)
# ---------------------------------------------------------------------------


def positively_expansive_falsify(system: SystemSpec, b, horizon: int, seed: int = 5) -> ExpansivityVerdict:
    """Searches for a distinct pair staying b-close for every step up to the
    horizon.  Success falsifies at that horizon; failure is ``undetermined``
    because the property quantifies over all iterates.
    """
    b = rat(b)
    if horizon < 1:
        raise ValueError("horizon must be >= 1")
    constants = {"b": rat_str(b), "horizon": horizon}
    pairs = []
    rng = random.Random(seed)
    if system.kind in ("pl", "quadratic"):
        for c in critical_set(system):
            for k in (3, 5, 8):
                s = b / 2**k
                x, y = c - s, c + s
                if system.contains_point(x) and system.contains_point(y):
                    pairs.append((x, y))
        space = space_set(system)
        for _ in range(32):
            part = space.parts[rng.randrange(len(space.parts))]
            u = part.lo + part.width * Fraction(rng.getrandbits(20), 1 << 20)
            v = u + b / 2 ** rng.randint(2, 8)
            if system.contains_point(v):
                pairs.append((u, v))
    elif system.kind == "odometer":
        w = tuple(rng.randint(0, 1) for _ in range(system.depth))
        v = list(w)
        v[-1] ^= 1
        pairs.append((w, tuple(v)))
    elif system.kind == "sft":
        a0 = system.alphabet[0]
        from .systems import SymbolicPoint

        base = SymbolicPoint((), (a0,))
        for k in range(2, 8):
            pre = tuple(a0 for _ in range(k))
            alt = pre[:-1] + (system.alphabet[-1],)
            cand = SymbolicPoint(alt, (a0,))
            if system.contains_point(cand):
                pairs.append((base, cand))
    else:
        raise DomainError(f"unsupported system kind {system.kind}")

    for x, y in pairs:
        if x == y:
            continue
        u, v = x, y
        ok = True
        for _ in range(horizon + 1):
            if distance(system, u, v) >= b:
                ok = False
                break
            u, v = evaluate(system, u), evaluate(system, v)
        if ok:
            counter = {
                "x": _pt(x),
                "y": _pt(y),
                "statement": f"orbits stay within {rat_str(b)} for {horizon} steps",
            }
            return ExpansivityVerdict("positivelyExpansive", "falsified", constants, counter)
    return ExpansivityVerdict("positivelyExpansive", "undetermined", constants)


def _pt(p):
    return rat_str(p) if isinstance(p, Fraction) else str(p)


# ---------------------------------------------------------------------------
# Schwarzian derivative and inverse-image nets
# ---------------------------------------------------------------------------


def schwarzian(system: QuadraticFamilyMap, x) -> Fraction:
    """f‴/f′ − (3/2)(f″/f′)², exact from the family's closed-form derivatives."""
    x = rat(x)
    d1 = system.derivative(x)
    if d1 == 0:
        raise ValueError("Schwarzian undefined at a critical point")
    d2 = system.second_derivative(x)
    d3 = system.third_derivative(x)
    return d3 / d1 - Fraction(3, 2) * (d2 / d1) ** 2


@dataclass(frozen=True)
class EpsNetResult:
    is_net: bool
    max_gap: Fraction
    undetermined: bool = False


def eps_net_check(system: SystemSpec, target_points: Sequence, m: int, epsilon,
                  cap: int = 200000) -> EpsNetResult:
    """Enumerates the m-fold inverse images of the target points and reports
    the largest distance from a space point to that set; net-ness means the
    gap stays below ε.  End gaps count in full."""
    epsilon = rat(epsilon)
    if m < 0:
        raise ValueError("m must be >= 0")
    pts = sorted({rat(p) for p in target_points})
    undetermined = False
    if system.kind == "pl":
        level = list(pts)
        for _ in range(m):
            nxt = set()
            for p in level:
                nxt.update(system.point_preimages(p))
            level = sorted(nxt)
            if len(level) > cap:
                undetermined = True
                break
        net = level
    elif system.kind == "quadratic":
        encl = [(p, p) for p in pts]
        for _ in range(m):
            nxt = []
            for lo, hi in encl:
                pre = system.preimage_outer(RationalIntervalSet((ClosedInterval(lo, hi),)), 96)
                nxt.extend((q.lo, q.hi) for q in pre.parts)
            encl = nxt
            if len(encl) > cap:
                undetermined = True
                break
        net = sorted(set((lo + hi) / 2 for lo, hi in encl))
    else:
        raise DomainError(f"net check unsupported for {system.kind}")

    hull = space_set(system).hull()
    if not net:
        return EpsNetResult(False, hull.width, undetermined)
    gaps = [net[0] - hull.lo, hull.hi - net[-1]]
    gaps.extend((q - p) / 2 for p, q in zip(net, net[1:]))
    max_gap = max(gaps)
    return EpsNetResult(max_gap < epsilon, max_gap, undetermined)


# ---------------------------------------------------------------------------
# two-characterization crosscheck
# ---------------------------------------------------------------------------


def _inflate(carrier: RationalIntervalSet, margin: Fraction, space: RationalIntervalSet) -> RationalIntervalSet:
    if margin == 0:
        return carrier
    grown = normalize([ClosedInterval(p.lo - margin, p.hi + margin) for p in carrier.parts])
    return intersect(grown, space)


def crosscheck_expanding_characterizations(system: SystemSpec, region: RegionSpec,
                                           eps_grid_size: int = 10) -> dict:
    """Runs the two equivalent characterizations on a margin-inflated region:
    (1) open + expanding, (2) ball expanding + locally one-to-one, and
    reports whether the verdicts are consistent (mismatches through
    ``undetermined`` are tolerated)."""
    space = space_set(system)
    carrier = region.interval_carrier()
    margin = region.margin
    if margin == 0 and system.kind in ("pl", "quadratic"):
        crit = critical_set(system)
        if crit and not carrier.is_empty:
            dist = min(carrier.distance_to(c) for c in crit)
            margin = dist / 2
    inflated = RegionSpec(_inflate(carrier, margin, space), ZERO)

    probes = []
    for part in inflated.interval_carrier().parts:
        probes.extend([part.lo, part.hi, (part.lo + part.hi) / 2])
    open_verdicts = [check_open_at(system, p) for p in sorted(set(probes))]
    if any(v.falsified for v in open_verdicts):
        open_side = "falsified"
    elif all(v.certified for v in open_verdicts):
        open_side = "certified"
    else:
        open_side = "undetermined"

    mu = None
    if system.kind == "pl":
        mu = system.min_slope_modulus()
    elif system.kind == "cantor":
        mu = Fraction(3)
    if mu is None or mu <= 1:
        expanding_side = "undetermined"
        exp_verdict = None
    else:
        delta = margin if margin > 0 else Fraction(1, 9)
        exp_verdict = check_expanding(system, inflated, delta, mu)
        expanding_side = exp_verdict.holds

    found = search_ball_expanding_constants(system, inflated, eps_grid_size) \
        if system.kind == "pl" else None
    if found is not None:
        ball_side = "certified"
    elif system.kind == "cantor":
        ball_grid = [Fraction(1, 3**k) for k in range(4, min(7, system.depth + 1))]
        ball_verdict = check_ball_expanding(system, inflated, Fraction(3), Fraction(1, 27), ball_grid)
        ball_side = ball_verdict.holds if ball_verdict.holds != "undetermined" else "undetermined"
    else:
        ball_side = "undetermined"

    inj = check_locally_injective(system, inflated) if system.kind in ("pl", "quadratic") else None
    if inj is None:
        # middle-thirds system: injectivity near the carrier is piece-level exact
        inj_side = "certified"
    else:
        inj_side = inj.holds

    side1 = _conjoin(open_side, expanding_side)
    side2 = _conjoin(ball_side, inj_side)
    consistent = not (
        (side1 == "certified" and side2 == "falsified")
        or (side1 == "falsified" and side2 == "certified")
    )
    return {
        "open": open_side,
        "expanding": expanding_side,
        "ballExpanding": ball_side,
        "locallyInjective": inj_side,
        "side1": side1,
        "side2": side2,
        "consistent": consistent,
    }


def _conjoin(a: str, b: str) -> str:
    if "falsified" in (a, b):
        return "falsified"
    if a == b == "certified":
        return "certified"
    return "undetermined"
