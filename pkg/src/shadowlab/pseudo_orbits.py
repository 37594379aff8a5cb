"""Construction, perturbation, splicing and verification of pseudo-orbits.

A pseudo-orbit is a finite point sequence whose consecutive jumps
d(f(x_i), x_{i+1}) stay below a claimed bound; an asymptotic variant carries
a per-index decay schedule.  Deviation reports measure how well a candidate
point traces the sequence, including whether it lands on the final entry
exactly.
"""

from __future__ import annotations

import csv
import io
import json
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .numerics import RationalIntervalSet, closed_ball, intersect, rat, rat_str
from .systems import (
    INTERVAL_KINDS,
    DomainError,
    Point,
    SymbolicPoint,
    SystemSpec,
    distance,
    evaluate,
    point_from_str,
    point_to_str,
    space_set,
)

ZERO = Fraction(0)

# sampling radius shrink keeps strict jump bounds valid under closed-ball arithmetic
INSIDE = Fraction(1023, 1024)


@dataclass(frozen=True)
class PseudoOrbit:
    points: tuple
    claimed_delta: Optional[Fraction] = None
    decay_schedule: Optional[tuple[Fraction, ...]] = None

    def __post_init__(self):
        if len(self.points) < 1:
            raise ValueError("a pseudo-orbit has at least one point")
        if self.decay_schedule is not None and len(self.decay_schedule) < len(self.points) - 1:
            raise ValueError("decay schedule shorter than the jump list")

    def __len__(self):
        return len(self.points)

    @property
    def last_index(self) -> int:
        return len(self.points) - 1


@dataclass(frozen=True)
class DeviationReport:
    max_deviation: Fraction
    per_step: tuple[Fraction, ...]
    exact_hit: bool

    def to_json(self) -> dict:
        return {
            "maxDeviation": rat_str(self.max_deviation),
            "perStep": [rat_str(d) for d in self.per_step],
            "exactHit": self.exact_hit,
        }


def verify_jumps(system: SystemSpec, orbit: PseudoOrbit) -> Fraction:
    """Exact maximum of d(f(x_i), x_{i+1}); zero for a genuine orbit."""
    if len(orbit.points) == 0:
        raise ValueError("empty orbit")
    worst = ZERO
    for a, b in zip(orbit.points, orbit.points[1:]):
        jump = distance(system, evaluate(system, a), b)
        if jump > worst:
            worst = jump
    return worst


def checked_orbit(system: SystemSpec, points: Sequence[Point], claimed_delta=None,
                  decay_schedule=None) -> PseudoOrbit:
    """Build a PseudoOrbit and verify its claimed bounds against the system."""
    orbit = PseudoOrbit(tuple(points), claimed_delta, decay_schedule)
    if claimed_delta is not None and verify_jumps(system, orbit) >= claimed_delta:
        raise ValueError("claimed delta not satisfied by the jump sequence")
    if decay_schedule is not None:
        for i, (a, b) in enumerate(zip(points, points[1:])):
            if distance(system, evaluate(system, a), b) > decay_schedule[i]:
                raise ValueError(f"decay schedule violated at index {i}")
    return orbit


def deviation(system: SystemSpec, y: Point, orbit: PseudoOrbit) -> DeviationReport:
    """Per-step distances d(f^i(y), x_i) plus the exact-terminal-hit flag."""
    per = []
    z = y
    for i, x in enumerate(orbit.points):
        per.append(distance(system, z, x))
        if i < orbit.last_index:
            z = evaluate(system, z)
    exact = z == orbit.points[-1] if orbit.last_index > 0 else y == orbit.points[0]
    return DeviationReport(max(per), tuple(per), exact)


def splice(prefix: Sequence[Point], suffix: PseudoOrbit, system: Optional[SystemSpec] = None) -> PseudoOrbit:
    """Concatenate a point list with an orbit; re-verify the bound if possible."""
    points = tuple(prefix) + suffix.points
    orbit = PseudoOrbit(points)
    if system is not None and len(points) > 1:
        worst = verify_jumps(system, orbit)
        # the recomputed bound is closed; report the smallest strict bound seen
        return PseudoOrbit(points, claimed_delta=None if worst == 0 else worst * Fraction(1025, 1024))
    return orbit


_SAMPLE_GRID = 1 << 48


def _sample_in_set(sset: RationalIntervalSet, rng: random.Random) -> Fraction:
    """Seeded rational sample, measure-weighted, from a nonempty interval set.

    Samples snap down to the 2^−48 grid (staying inside their part) so that
    repeated sampling never compounds denominators across orbit steps.
    """
    if sset.is_empty:
        raise ValueError("cannot sample the empty set")
    total = sset.measure
    if total == 0:
        parts = sset.parts
        return parts[rng.randrange(len(parts))].lo
    ticket = Fraction(rng.getrandbits(32), 1 << 32) * total
    for p in sset.parts:
        if ticket <= p.width:
            raw = p.lo + ticket
            snapped = Fraction(int(raw * _SAMPLE_GRID), _SAMPLE_GRID)
            return snapped if snapped >= p.lo else p.lo
        ticket -= p.width
    return sset.parts[-1].hi


def perturbed_orbit(system: SystemSpec, x0: Point, length: int, delta, seed: int,
                    region: Optional[RationalIntervalSet] = None) -> PseudoOrbit:
    """Seeded δ-pseudo-orbit: each step lands inside the closed ball of radius
    δ·(1−2⁻¹⁰) around the true image, intersected with the space (and with
    ``region`` when given).  The orbit truncates if the constraint set empties.
    """
    delta = rat(delta)
    if delta <= 0:
        raise ValueError("delta must be positive")
    if length < 1:
        raise ValueError("length must be >= 1")
    rng = random.Random(seed)
    radius = delta * INSIDE

    if system.kind in INTERVAL_KINDS:
        space = space_set(system)
        if region is not None:
            space = intersect(space, region)
        pts = [x0]
        for _ in range(length - 1):
            target = evaluate(system, pts[-1])
            ball = intersect(closed_ball(target, radius), space)
            if ball.is_empty:
                break
            pts.append(_sample_in_set(ball, rng))
        return PseudoOrbit(tuple(pts), claimed_delta=delta)

    if system.kind == "odometer":
        level = _ball_prefix_length(radius, system.depth)
        pts = [x0]
        for _ in range(length - 1):
            target = evaluate(system, pts[-1])
            word = list(target)
            for i in range(level, system.depth):
                word[i] = rng.randint(0, 1)
            pts.append(tuple(word))
        return PseudoOrbit(tuple(pts), claimed_delta=delta)

    if system.kind == "sft":
        level = _ball_prefix_length(radius, 64)
        pts = [x0]
        for _ in range(length - 1):
            target = evaluate(system, pts[-1])
            prefix = list(target.prefix(level))
            tail = system.follower_continuation(prefix, rng, 6)
            cycle = system.admissible_cycle_from(prefix + tail)
            candidate = SymbolicPoint(tuple(prefix + tail), cycle)
            if not system.contains_point(candidate):
                raise DomainError("generated continuation is not admissible")
            pts.append(candidate)
        return PseudoOrbit(tuple(pts), claimed_delta=delta)

    raise DomainError(f"unsupported system kind {system.kind}")


def _ball_prefix_length(radius: Fraction, cap: int) -> int:
    """Smallest k with 2^−k ≤ radius (capped), so prefix-k agreement implies
    distance ≤ radius in the 2^−lcp metric."""
    k = 0
    value = Fraction(1)
    while value > radius and k < cap:
        value /= 2
        k += 1
    return k


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------


def orbit_to_csv(system: SystemSpec, orbit: PseudoOrbit) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    for p in orbit.points:
        writer.writerow([point_to_str(system, p)])
    return buf.getvalue()


def orbit_from_csv(system: SystemSpec, text: str) -> PseudoOrbit:
    pts = [point_from_str(system, row[0]) for row in csv.reader(io.StringIO(text)) if row]
    return PseudoOrbit(tuple(pts))


def orbit_to_json(system: SystemSpec, orbit: PseudoOrbit) -> dict:
    data = {"points": [point_to_str(system, p) for p in orbit.points]}
    if orbit.claimed_delta is not None:
        data["claimedDelta"] = rat_str(orbit.claimed_delta)
    if orbit.decay_schedule is not None:
        data["decaySchedule"] = [rat_str(b) for b in orbit.decay_schedule]
    return data


def orbit_from_json(system: SystemSpec, data) -> PseudoOrbit:
    if isinstance(data, str):
        data = json.loads(data)
    pts = tuple(point_from_str(system, t) for t in data["points"])
    delta = rat(data["claimedDelta"]) if "claimedDelta" in data else None
    sched = tuple(rat(b) for b in data["decaySchedule"]) if "decaySchedule" in data else None
    return PseudoOrbit(pts, delta, sched)
