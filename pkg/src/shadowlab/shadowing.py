"""Decision procedures and constructive solvers for pseudo-orbit tracing.

The exact oracle decides, for piecewise-affine interval systems and for the
symbolic systems, whether a finite pseudo-orbit admits a point whose orbit
stays inside the closed ε-tubes around it; the exact-hit solver additionally
demands that the tracer land exactly on the final orbit point.  On top of
those sit the iterate reduction, the staged construction for decaying
pseudo-orbits, and the witness builders for the counterexample scenarios.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .numerics import (
    EMPTY_SET,
    RationalIntervalSet,
    closed_ball,
    intersect,
    rat,
    rat_str,
)
from .pseudo_orbits import (
    INSIDE,
    DeviationReport,
    PseudoOrbit,
    _sample_in_set,
    deviation,
    verify_jumps,
)
from .systems import (
    DomainError,
    OdometerSystem,
    PiecewiseLinearMap,
    Point,
    QuadraticFamilyMap,
    ShiftSystem,
    SLimitSystem,
    SymbolicPoint,
    SystemSpec,
    distance,
    evaluate,
    iterate,
    iterate_pl,
    space_set,
    tent_map,
)

ZERO = Fraction(0)
ONE = Fraction(1)
HALF = Fraction(1, 2)


@dataclass(frozen=True)
class ShadowCertificate:
    """Outcome of a tracing query.

    On plain-oracle certificates ``feasible_set`` is the exact set of
    initial points whose forward orbit stays in every closed ε-tube, and
    ``feasible`` is equivalent to it being nonempty.  Exact-hit certificates
    leave it None (that set can have exponentially many components and the
    exact-hit question does not need it; ask the oracle when you want it)
    and ``feasible`` refers to the terminal-hit question.  Symbolic systems
    carry the merged constraint word in ``cylinder`` instead.
    """

    feasible: bool
    feasible_set: Optional[RationalIntervalSet]
    witness: Optional[Point]
    report: Optional[DeviationReport]
    constants: dict
    transcript: tuple = ()
    cylinder: Optional[str] = None
    infeasible_reason: Optional[str] = None

    def to_json(self) -> dict:
        return {
            "feasible": self.feasible,
            "feasibleSet": self.feasible_set.to_json() if self.feasible_set is not None else None,
            "witness": None if self.witness is None else _point_json(self.witness),
            "report": None if self.report is None else self.report.to_json(),
            "constants": {k: str(v) for k, v in sorted(self.constants.items())},
            "transcript": [s.to_json() if isinstance(s, RationalIntervalSet) else str(s) for s in self.transcript],
            "cylinder": self.cylinder,
            "infeasibleReason": self.infeasible_reason,
        }


def _point_json(p):
    if isinstance(p, Fraction):
        return rat_str(p)
    if isinstance(p, SymbolicPoint):
        return str(p)
    return "".join(str(b) for b in p)


# ---------------------------------------------------------------------------
# constants from the expansion data
# ---------------------------------------------------------------------------


def ball_expanding_delta(mu, nu, epsilon) -> tuple[Fraction, Fraction]:
    """Tube radius ε′ = min(ε, ν) and jump bound δ = (μ−1)·ε′."""
    mu, nu, epsilon = rat(mu), rat(nu), rat(epsilon)
    if mu <= 1:
        raise ValueError("mu must exceed 1")
    if nu <= 0 or epsilon <= 0:
        raise ValueError("nu and epsilon must be positive")
    eps_prime = min(epsilon, nu)
    return eps_prime, (mu - 1) * eps_prime


def finite_horizon_delta(lipschitz, n: int, epsilon) -> Fraction:
    """Jump-and-start bound that keeps a length-(n+1) block within ε.

    With e_0 < δ and e_{k+1} ≤ L·e_k + δ, the geometric sum stays below ε
    when δ = ε(L−1)/(L^{n+1}−1); for L = 1 the accumulation is additive.
    """
    L = max(rat(lipschitz), ONE)
    epsilon = rat(epsilon)
    if n < 1:
        raise ValueError("n must be >= 1")
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    if L == 1:
        return epsilon / (n + 1)
    return epsilon * (L - 1) / (L ** (n + 1) - 1)


# ---------------------------------------------------------------------------
# exact oracle and exact-hit solver for interval systems
# ---------------------------------------------------------------------------


def _tube(system, x: Fraction, epsilon: Fraction) -> RationalIntervalSet:
    return intersect(closed_ball(x, epsilon), space_set(system))


def _backward_tube_sets(system, orbit: PseudoOrbit, epsilon: Fraction) -> list[RationalIntervalSet]:
    """T_i = tube_i ∩ f⁻¹(T_{i+1}); T_0 is the full ε-tracing set."""
    pts = orbit.points
    sets = [None] * len(pts)
    sets[-1] = _tube(system, pts[-1], epsilon)
    for i in range(len(pts) - 2, -1, -1):
        if sets[i + 1].is_empty:
            sets[i] = EMPTY_SET
            continue
        sets[i] = intersect(_tube(system, pts[i], epsilon), system.preimage(sets[i + 1]))
    return sets


def _forward_tube_sets(system, orbit: PseudoOrbit, epsilon: Fraction) -> list[RationalIntervalSet]:
    """F_i = exact set of i-th iterates of tube-respecting tracers."""
    pts = orbit.points
    sets = [_tube(system, pts[0], epsilon)]
    for x in pts[1:]:
        if sets[-1].is_empty:
            sets.append(EMPTY_SET)
            continue
        sets.append(intersect(system.forward_image(sets[-1]), _tube(system, x, epsilon)))
    return sets


def shadow_oracle(system: SystemSpec, orbit: PseudoOrbit, epsilon) -> ShadowCertificate:
    """Exact decision: does some point ε-trace the orbit in closed tubes?

    Piecewise-affine interval systems get the full initial feasible set by
    branchwise constraint propagation; the witness is the leftmost feasible
    point.  The interval-plus-tail homeomorphism is decided through exact
    forward image sets (its inverse has irrational branch endpoints, so no
    initial set is reported).  Symbolic systems reduce to cylinder-constraint
    merging.  Quadratic maps are rejected here; use
    :func:`quadratic_shadow_verdict`.
    """
    epsilon = rat(epsilon)
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    if system.kind == "quadratic":
        raise DomainError("quadratic systems use the three-valued enclosure oracle")
    if system.kind in ("sft", "odometer"):
        return _symbolic_solve(system, orbit, epsilon, require_exact_hit=False)
    if system.kind == "slimit":
        return _slimit_oracle(system, orbit, epsilon)

    sets = _backward_tube_sets(system, orbit, epsilon)
    feasible_set = sets[0]
    constants = {"epsilon": rat_str(epsilon)}
    if feasible_set.is_empty:
        return ShadowCertificate(False, feasible_set, None, None, constants, tuple(sets),
                                 infeasible_reason="no point stays inside every closed tube")
    witness = feasible_set.leftmost()
    report = deviation(system, witness, orbit)
    return ShadowCertificate(True, feasible_set, witness, report, constants, tuple(sets))


def h_shadow_solve(system: SystemSpec, orbit: PseudoOrbit, epsilon) -> ShadowCertificate:
    """Exact-hit variant: the tracer must satisfy f^m(y) = x_m exactly.

    Solved by exact forward image sets followed by a backward point-preimage
    walk from x_m; infeasibility of the exact hit is reported separately
    from emptiness of the tubes.
    """
    epsilon = rat(epsilon)
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    if system.kind == "quadratic":
        raise DomainError("quadratic systems use the three-valued enclosure oracle")
    if system.kind in ("sft", "odometer"):
        return _symbolic_solve(system, orbit, epsilon, require_exact_hit=True)
    if system.kind == "slimit":
        raise DomainError("exact-hit solving is not supported on this system (irrational inverse)")

    pts = orbit.points
    forward = _forward_tube_sets(system, orbit, epsilon)
    constants = {"epsilon": rat_str(epsilon)}
    if forward[-1].is_empty:
        return ShadowCertificate(False, None, None, None, constants, tuple(forward),
                                 infeasible_reason="no point stays inside every closed tube")
    if not forward[-1].contains(pts[-1]):
        return ShadowCertificate(False, None, None, None, constants, tuple(forward),
                                 infeasible_reason="final orbit point unreachable inside the tubes")
    # walk the target backwards through the forward sets, leftmost preimage first
    w = pts[-1]
    chain = [w]
    for i in range(len(pts) - 2, -1, -1):
        candidates = [c for c in system.point_preimages(w) if forward[i].contains(c)]
        if not candidates:
            raise AssertionError("reachable point lost its preimage; forward sets inconsistent")
        w = candidates[0]
        chain.append(w)
    witness = chain[-1]
    report = deviation(system, witness, orbit)
    if not report.exact_hit:
        raise AssertionError("reconstructed witness misses the terminal point")
    return ShadowCertificate(True, None, witness, report, constants, tuple(forward))


def _slimit_oracle(system: SLimitSystem, orbit: PseudoOrbit, epsilon: Fraction) -> ShadowCertificate:
    # the squaring branch has irrational inverse branches, so the initial
    # feasible set is not rationally representable; feasibility itself is
    # still exact through forward image sets
    forward = _forward_tube_sets(system, orbit, epsilon)
    constants = {"epsilon": rat_str(epsilon)}
    if forward[-1].is_empty:
        return ShadowCertificate(False, None, None, None, constants, tuple(forward),
                                 infeasible_reason="no point stays inside every closed tube")
    # a rational witness may still exist, try tube points
    candidates = []
    for part in forward[0].parts:
        candidates.extend({part.lo, part.hi, (part.lo + part.hi) / 2})
    for cand in sorted(candidates):
        rep = deviation(system, cand, orbit)
        if rep.max_deviation <= epsilon:
            return ShadowCertificate(True, None, cand, rep, constants, tuple(forward))
    return ShadowCertificate(True, None, None, None, constants, tuple(forward))


# ---------------------------------------------------------------------------
# symbolic solver
# ---------------------------------------------------------------------------


def _cylinder_length(epsilon: Fraction, cap: int = 256) -> int:
    """Smallest k ≥ 0 with 2^−k ≤ ε: prefix-k agreement ⟺ distance ≤ ε."""
    k = 0
    v = ONE
    while v > epsilon and k < cap:
        v /= 2
        k += 1
    return k


def _symbolic_solve(system, orbit: PseudoOrbit, epsilon: Fraction, require_exact_hit: bool) -> ShadowCertificate:
    if isinstance(system, OdometerSystem):
        return _odometer_solve(system, orbit, epsilon, require_exact_hit)
    return _shift_solve(system, orbit, epsilon, require_exact_hit)


def _shift_solve(system: ShiftSystem, orbit: PseudoOrbit, epsilon: Fraction,
                 require_exact_hit: bool) -> ShadowCertificate:
    pts = orbit.points
    m = len(pts) - 1
    k = _cylinder_length(epsilon)
    constants = {"epsilon": rat_str(epsilon), "cylinder": k}
    merged: dict[int, str] = {}
    for i, x in enumerate(pts):
        for j in range(k):
            want = x.symbol(j)
            if merged.setdefault(i + j, want) != want:
                return ShadowCertificate(False, None, None, None, constants,
                                         infeasible_reason=f"conflicting symbol constraints at position {i + j}")
    prefix = tuple(merged.get(p, pts[min(p, m)].symbol(p - min(p, m))) for p in range(m))
    witness = SymbolicPoint(prefix + pts[-1].preamble, pts[-1].cycle)
    if not system.contains_point(witness):
        # complete only when forbidden words fit inside the constraint
        # window (k+1 symbols); coarser tubes would need a completion search
        return ShadowCertificate(False, None, None, None, constants,
                                 infeasible_reason="merged constraint word contains a forbidden factor")
    report = deviation(system, witness, orbit)
    if report.max_deviation > epsilon:
        return ShadowCertificate(False, None, None, None, constants,
                                 infeasible_reason="canonical completion leaves the tubes")
    cyl = "".join(merged.get(p, "·") for p in range(m + k))
    return ShadowCertificate(True, None, witness, report, constants, cylinder=cyl)


def _odometer_solve(system: OdometerSystem, orbit: PseudoOrbit, epsilon: Fraction,
                    require_exact_hit: bool) -> ShadowCertificate:
    pts = orbit.points
    m = len(pts) - 1
    constants = {"epsilon": rat_str(epsilon)}
    y = system.iterate_inverse(pts[-1], m)
    report = deviation(system, y, orbit)
    if report.max_deviation <= epsilon:
        return ShadowCertificate(True, None, y, report, constants)
    # the canonical inverse-image point failed; fall back to exhaustive search
    best = None
    for value in range(1 << system.depth):
        cand = system.int_to_word(value)
        if require_exact_hit and iterate(system, cand, m) != pts[-1]:
            continue
        rep = deviation(system, cand, orbit)
        if rep.max_deviation <= epsilon:
            best = (cand, rep)
            break
    if best is None:
        return ShadowCertificate(False, None, None, None, constants,
                                 infeasible_reason="no word traces the orbit at this radius")
    return ShadowCertificate(True, None, best[0], best[1], constants)


# ---------------------------------------------------------------------------
# three-valued oracle for the quadratic families
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class QuadraticShadowVerdict:
    value: str  # "yes" | "no" | "unknown"
    witness: Optional[Fraction]
    report: Optional[DeviationReport]
    bits_used: int

    def to_json(self) -> dict:
        return {
            "value": self.value,
            "witness": None if self.witness is None else rat_str(self.witness),
            "report": None if self.report is None else self.report.to_json(),
            "bitsUsed": self.bits_used,
        }


def quadratic_shadow_verdict(system: QuadraticFamilyMap, orbit: PseudoOrbit, epsilon,
                             bits: int = 64, max_bits: int = 512) -> QuadraticShadowVerdict:
    """YES/NO/UNKNOWN tracing verdict for the smooth families.

    YES is certified by an explicit rational witness iterated exactly; NO by
    emptiness of an outward-rounded backward enclosure of the tube sets;
    anything else escalates precision and finally reports UNKNOWN.
    """
    epsilon = rat(epsilon)
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    pts = orbit.points
    space = space_set(system)

    grid = 32
    while True:
        # outer backward propagation: tubes relaxed by the enclosure width
        outer0 = intersect(closed_ball(pts[-1], epsilon), space)
        empty = False
        for x in reversed(pts[:-1]):
            pre = system.preimage_outer(outer0, bits)
            outer0 = intersect(intersect(closed_ball(x, epsilon), space), pre)
            if outer0.is_empty:
                empty = True
                break
        if empty:
            return QuadraticShadowVerdict("no", None, None, bits)
        witness = _quadratic_witness_search(system, orbit, epsilon, outer0, grid)
        if witness is not None:
            report = deviation(system, witness, orbit)
            return QuadraticShadowVerdict("yes", witness, report, bits)
        if bits >= max_bits:
            return QuadraticShadowVerdict("unknown", None, None, bits)
        bits *= 2
        grid *= 4


def _quadratic_witness_search(system, orbit: PseudoOrbit, epsilon: Fraction,
                              outer0: RationalIntervalSet, grid: int) -> Optional[Fraction]:
    """Exact forward verification of candidates drawn from the outer
    enclosure of the tracing set (dense where it matters)."""
    pts = orbit.points
    tube0 = intersect(closed_ball(pts[0], epsilon), space_set(system))
    candidates = [pts[0]]
    for part in outer0.parts:
        candidates.extend([part.lo, part.hi, (part.lo + part.hi) / 2])
        for j in range(1, grid):
            candidates.append(part.lo + part.width * Fraction(j, grid))
    seen = set()
    for cand in candidates:
        if cand in seen or not tube0.contains(cand):
            continue
        seen.add(cand)
        rep = deviation(system, cand, orbit)
        if rep.max_deviation <= epsilon:
            return cand
    return None


# ---------------------------------------------------------------------------
# iterate reduction
# ---------------------------------------------------------------------------


def region_surjectivity_sample(system: PiecewiseLinearMap, region: RationalIntervalSet,
                               seed: int = 0, samples: int = 16) -> bool:
    """Sampled check that every region point has a map preimage in the region."""
    rng = random.Random(seed)
    probes = []
    for part in region.parts:
        probes.extend([part.lo, part.hi])
    for _ in range(samples):
        probes.append(_sample_in_set(region, rng))
    for p in probes:
        if not any(region.contains(q) for q in system.point_preimages(p)):
            return False
    return True


def _backward_point_chain(system, target: Fraction, steps: int,
                          region: RationalIntervalSet) -> Optional[list[Fraction]]:
    """Points z, f(z), …, f^steps(z)=target all inside the region (DFS, leftmost)."""
    if steps == 0:
        return [target]
    for cand in system.point_preimages(target):
        if region.contains(cand):
            rest = _backward_point_chain(system, cand, steps - 1, region)
            if rest is not None:
                return rest + [target]
    return None


def h_shadow_via_iterate(system: PiecewiseLinearMap, n: int, region: RationalIntervalSet,
                         orbit: PseudoOrbit, epsilon, nu=Fraction(1, 4)) -> ShadowCertificate:
    """Exact-hit tracing of an orbit of f obtained by solving for fⁿ.

    Prepends a backward extension z with f^{n−r}(z) = x_0 inside the region,
    downsamples the extended sequence through n-blocks, solves the exact-hit
    problem for the composed map, and pushes the solution forward.
    """
    epsilon = rat(epsilon)
    if n < 1:
        raise ValueError("n must be >= 1")
    if n == 1:
        return h_shadow_solve(system, orbit, epsilon)
    if not region_surjectivity_sample(system, region):
        raise DomainError("region fails the surjectivity sample: f(region) does not cover it")
    for p in orbit.points:
        if not region.contains(p):
            raise DomainError("orbit leaves the declared region")

    composed = iterate_pl(system, n)
    L = system.lipschitz()
    eps_prime = finite_horizon_delta(L, n, epsilon)
    mu_n = composed.min_slope_modulus()
    solve_radius, delta_certified = (
        ball_expanding_delta(mu_n, nu, eps_prime) if mu_n > 1 else (eps_prime, None)
    )

    m = orbit.last_index
    j, r = divmod(m, n)
    ext = _backward_point_chain(system, orbit.points[0], n - r, region)
    if ext is None:
        raise DomainError("no backward extension of the start point inside the region")
    extended = list(ext[:-1]) + list(orbit.points)  # y_0 … y_{(j+1)n}
    downsampled = PseudoOrbit(tuple(extended[k * n] for k in range(j + 2)))
    worst = verify_jumps(composed, downsampled)
    if delta_certified is not None and worst >= delta_certified:
        raise DomainError("downsampled jumps exceed the bound certified for the composed map")

    inner = h_shadow_solve(composed, downsampled, solve_radius)
    constants = {
        "epsilon": rat_str(epsilon),
        "epsilonPrime": rat_str(eps_prime),
        "solveRadius": rat_str(solve_radius),
        "n": n,
        "r": r,
        "downsampledJump": rat_str(worst),
    }
    if not inner.feasible:
        return ShadowCertificate(False, inner.feasible_set, None, None, constants,
                                 inner.transcript, infeasible_reason=inner.infeasible_reason)
    witness = iterate(system, inner.witness, n - r)
    report = deviation(system, witness, orbit)
    if not report.exact_hit:
        raise AssertionError("iterate-route witness misses the terminal point")
    return ShadowCertificate(True, inner.feasible_set, witness, report, constants, inner.transcript)


# ---------------------------------------------------------------------------
# staged construction for decaying pseudo-orbits
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class StagedShadowLog:
    stage_points: tuple
    stage_horizons: tuple[int, ...]
    stage_bounds: tuple[Fraction, ...]
    condition_checks: tuple[dict, ...]
    completed: bool
    failed_stage: Optional[int] = None

    def all_conditions_hold(self) -> bool:
        return self.completed and all(all(c.values()) for c in self.condition_checks)

    def to_json(self) -> dict:
        return {
            "stagePoints": [rat_str(p) for p in self.stage_points],
            "stageHorizons": list(self.stage_horizons),
            "stageBounds": [rat_str(b) for b in self.stage_bounds],
            "conditionChecks": [dict(c) for c in self.condition_checks],
            "completed": self.completed,
            "failedStage": self.failed_stage,
        }


def asymptotic_shadow(system: PiecewiseLinearMap, orbit: PseudoOrbit, region: RationalIntervalSet,
                      epsilon, stages: int = 5, mu=None, nu=Fraction(1, 4)) -> StagedShadowLog:
    """Stage-wise tracing of a decaying pseudo-orbit with halving accuracy.

    Stage i re-traces the splice of the previous tracer's true orbit with the
    tail of the input at accuracy ε_i = ε·2^{−i−1}, demanding an exact hit at
    each stage horizon.  Horizons are chosen greedily as the first index from
    which the remaining jumps fit the stage's jump bound.
    """
    epsilon = rat(epsilon)
    if orbit.decay_schedule is None:
        raise ValueError("a decay schedule is required")
    if mu is None:
        mu = system.min_slope_modulus()
    mu = rat(mu)
    if mu <= 1:
        raise DomainError("staged tracing needs a slope modulus above 1")

    jumps = [distance(system, evaluate(system, a), b) for a, b in zip(orbit.points, orbit.points[1:])]
    if all(jump == 0 for jump in jumps):
        check = {"a": True, "b": True, "c": True, "d": True}
        return StagedShadowLog((orbit.points[0],), (orbit.last_index,), (epsilon / 2,), (check,), True)

    bounds = [epsilon * Fraction(1, 2 ** (i + 1)) for i in range(stages + 1)]
    solve_radii = [min(b, nu) * INSIDE for b in bounds]
    deltas = [(mu - 1) * r for r in solve_radii]

    # greedy horizons: k_i = first index whose tail jumps all stay below δ_i
    horizons = [0]
    for i in range(1, stages + 1):
        k = horizons[-1] + 1
        while k <= len(jumps) and any(jp >= deltas[i] for jp in jumps[k:]):
            k += 1
        if k > orbit.last_index - 1:
            return StagedShadowLog((), tuple(horizons), tuple(bounds), (), False, failed_stage=i)
        horizons.append(k)
    horizons.append(orbit.last_index)

    stage_points = []
    checks = []
    prev = None
    for i in range(stages + 1):
        k_lo, k_hi = horizons[i], horizons[i + 1]
        if i == 0:
            spliced = PseudoOrbit(tuple(orbit.points[: k_hi + 1]))
        else:
            head = [prev]
            for _ in range(k_lo):
                head.append(evaluate(system, head[-1]))
            spliced = PseudoOrbit(tuple(head) + tuple(orbit.points[k_lo + 1 : k_hi + 1]))
        cert = h_shadow_solve(system, spliced, solve_radii[i])
        if not cert.feasible:
            return StagedShadowLog(tuple(stage_points), tuple(horizons[: i + 2]),
                                   tuple(bounds[: i + 1]), tuple(checks), False, failed_stage=i)
        z = cert.witness
        cond = _stage_conditions(system, prev, z, orbit, k_lo, k_hi, bounds[i], epsilon, region)
        stage_points.append(z)
        checks.append(cond)
        prev = z
    return StagedShadowLog(tuple(stage_points), tuple(horizons), tuple(bounds[: stages + 1]),
                           tuple(checks), True)


def _stage_conditions(system, prev, z, orbit, k_lo, k_hi, bound, epsilon, region) -> dict:
    orbit_prev = []
    if prev is not None:
        p = prev
        for _ in range(k_lo + 1):
            orbit_prev.append(p)
            p = evaluate(system, p)
    cond_a = True
    w = z
    for jdx in range(k_hi + 1):
        if prev is not None and jdx <= k_lo:
            if distance(system, orbit_prev[jdx], w) >= bound:
                cond_a = False
        w = evaluate(system, w)
    cond_b = True
    w = z
    for jdx in range(k_hi + 1):
        lo = 0 if prev is None else k_lo + 1
        if jdx >= lo and distance(system, w, orbit.points[jdx]) >= bound:
            cond_b = False
        if jdx < k_hi:
            w = evaluate(system, w)
    cond_c = iterate(system, z, k_hi) == orbit.points[k_hi]
    cond_d = True
    w = z
    for jdx in range(k_hi + 1):
        if region.distance_to(w) >= epsilon:
            cond_d = False
        if jdx < k_hi:
            w = evaluate(system, w)
    return {"a": cond_a, "b": cond_b, "c": cond_c, "d": cond_d}


def make_decaying_orbit(system: PiecewiseLinearMap, x0: Fraction, epsilon, stages: int,
                        block: int, seed: int, mu=None, nu=Fraction(1, 4)) -> PseudoOrbit:
    """Seeded pseudo-orbit whose block-i jumps fit the stage-(i+1) bound,
    with a decay schedule attached; companion input for asymptotic_shadow."""
    epsilon = rat(epsilon)
    if mu is None:
        mu = system.min_slope_modulus()
    mu = rat(mu)
    bounds = [epsilon * Fraction(1, 2 ** (i + 1)) for i in range(stages + 3)]
    deltas = [(mu - 1) * min(b, nu) * INSIDE for b in bounds]
    rng = random.Random(seed)
    space = space_set(system)
    pts = [x0]
    schedule = []
    total = block * (stages + 2)
    for idx in range(total):
        stage = min(idx // block + 1, stages + 2)
        radius = deltas[stage] * HALF
        target = evaluate(system, pts[-1])
        ball = intersect(closed_ball(target, radius), space)
        pts.append(_sample_in_set(ball, rng))
        schedule.append(deltas[stage])
    return PseudoOrbit(tuple(pts), decay_schedule=tuple(schedule))


# ---------------------------------------------------------------------------
# witness builders for the counterexample scenarios
# ---------------------------------------------------------------------------


def tent_critical_orbit_gap(lam, horizon: int) -> Fraction:
    """min_{0<n≤horizon} |T_λⁿ(c) − c|, exact."""
    system = tent_map(lam)
    c = HALF
    x = c
    best = None
    for _ in range(horizon):
        x = system.evaluate(x)
        d = abs(x - c)
        if best is None or d < best:
            best = d
    return best


def nonshadow_witness_tent(lam, epsilon, delta, horizon: int = 200,
                           length: Optional[int] = None) -> tuple[PseudoOrbit, ShadowCertificate]:
    """Deflected pseudo-orbit through the kink of a slope-λ tent map,
    together with the oracle verdict on it; success means an empty feasible
    set.  Requires 1 < λ < 2 and a critical orbit staying more than 2ε away
    from the kink up to the horizon.
    """
    lam, epsilon, delta = rat(lam), rat(epsilon), rat(delta)
    if not (1 < lam < 2):
        raise ValueError("tent slope must satisfy 1 < lambda < 2")
    gap = tent_critical_orbit_gap(lam, horizon)
    if gap <= 2 * epsilon:
        raise DomainError(
            f"critical-orbit gap {gap} is not above 2*epsilon at horizon {horizon}")
    system = tent_map(lam)
    c = HALF
    if length is None:
        # enough steps for the deflection to outgrow the tube radius
        need = (4 * epsilon) / delta if delta > 0 else 1
        length = 3 + math.ceil(math.log(float(need)) / math.log(float(lam))) + 6 if delta > 0 else 12

    best = None
    for sign in (-1, 1):
        pts = [c, system.evaluate(c)]
        x2 = system.evaluate(pts[-1]) + sign * delta / 2
        pts.append(x2)
        for _ in range(length - 3):
            pts.append(system.evaluate(pts[-1]))
        orbit = PseudoOrbit(tuple(pts), claimed_delta=delta if delta > 0 else None)
        cert = shadow_oracle(system, orbit, epsilon)
        cert = ShadowCertificate(cert.feasible, cert.feasible_set, cert.witness, cert.report,
                                 {**cert.constants, "delta": rat_str(delta), "lambda": rat_str(lam),
                                  "deflectionSide": "down" if sign < 0 else "up"},
                                 cert.transcript, cert.cylinder, cert.infeasible_reason)
        if not cert.feasible:
            return orbit, cert
        if best is None:
            best = (orbit, cert)
    return best


def slimit_minimal_tail_index(delta) -> int:
    """Smallest N with both g^N(1/2) = 2^(−2^N) < δ and 2^(−N) < δ."""
    delta = rat(delta)
    if delta <= 0:
        raise ValueError("delta must be positive")
    N = 1
    while not (Fraction(1, 2 ** (2**N)) < delta and Fraction(1, 2**N) < delta):
        N += 1
        if N > 64:
            raise ValueError("delta too small for a practical tail index")
    return N


def slimit_counterexample_check(system: SLimitSystem, N: int, epsilon, delta,
                                tail_repeats: int = 5) -> dict:
    """Builds the squeeze-to-zero-then-jump-to-the-tail pseudo-orbit and
    verifies exactly that (i) it is a δ-pseudo-orbit, (ii) the only point
    whose orbit converges to its constant tail is the tail point itself,
    and (iii) that point fails ε-tracing already at step 0.
    """
    epsilon, delta = rat(epsilon), rat(delta)
    if N > system.tail_depth:
        raise ValueError("N exceeds the tail depth of the space")
    gN = Fraction(1, 2 ** (2**N))
    tail = Fraction(-1, 2**N)
    if not (gN < delta and -tail < delta):
        raise ValueError("preconditions g^N(1/2) < delta and 2^-N < delta fail")

    pts = [HALF]
    for _ in range(N):
        pts.append(system.evaluate(pts[-1]))
    pts.append(ZERO)
    pts.extend([tail] * tail_repeats)
    orbit = PseudoOrbit(tuple(pts))

    worst = verify_jumps(system, orbit)
    is_delta_orbit = worst < delta

    # every point at or below 0 is fixed and isolated, and (0,1) slides down,
    # so the constant tail attracts exactly its own point
    tail_fixed = all(system.evaluate(p) == p for p in system.tail_points() + [ZERO, ONE])
    rng = random.Random(20)
    decreasing = all(
        system.evaluate(x) < x
        for x in (Fraction(rng.randint(1, 999), 1000) for _ in range(64))
        if 0 < x < 1
    )
    nonneg_stay_away = all(abs(x - tail) >= Fraction(1, 2**N) for x in (ZERO, ONE))
    unique_converger = tail_fixed and decreasing and nonneg_stay_away

    report = deviation(system, tail, orbit)
    step0 = report.per_step[0]

    return {
        "orbit": orbit,
        "N": N,
        "maxJump": worst,
        "isDeltaPseudoOrbit": is_delta_orbit,
        "uniqueTailConverger": unique_converger,
        "step0Deviation": step0,
        "step0Expected": HALF + Fraction(1, 2**N),
        "maxDeviation": report.max_deviation,
        "exceedsEpsilon": report.max_deviation >= HALF and HALF > epsilon,
        "passed": is_delta_orbit and unique_converger
        and step0 == HALF + Fraction(1, 2**N) and report.max_deviation > epsilon,
    }
