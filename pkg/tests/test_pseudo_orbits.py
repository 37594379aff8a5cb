import random
from fractions import Fraction as F

import pytest

from shadowlab.pseudo_orbits import (
    PseudoOrbit,
    checked_orbit,
    deviation,
    orbit_from_csv,
    orbit_from_json,
    orbit_to_csv,
    orbit_to_json,
    perturbed_orbit,
    splice,
    verify_jumps,
)
from shadowlab.shadowing import finite_horizon_delta
from shadowlab.systems import (
    OdometerSystem,
    SLimitSystem,
    evaluate,
    golden_mean_shift,
    iterate,
    iterate_pl,
    random_zigzag_map,
    tent_map,
)


def true_orbit(system, x0, length):
    pts = [x0]
    for _ in range(length - 1):
        pts.append(evaluate(system, pts[-1]))
    return PseudoOrbit(tuple(pts))


def test_true_orbit_has_zero_jumps():
    t2 = tent_map(2)
    orbit = true_orbit(t2, F(1, 3), 6)
    assert verify_jumps(t2, orbit) == 0
    rep = deviation(t2, F(1, 3), orbit)
    assert rep.max_deviation == 0 and rep.exact_hit


def test_single_jump_is_measured_exactly():
    t2 = tent_map(2)
    orbit = PseudoOrbit((F(1, 4), F(1, 2) + F(1, 100)))
    assert verify_jumps(t2, orbit) == F(1, 100)


def test_slimit_squeeze_orbit_jump_bound():
    system = SLimitSystem(10)
    n = 4
    pts = [F(1, 2)]
    for _ in range(n):
        pts.append(evaluate(system, pts[-1]))
    pts.append(F(0))
    pts.extend([F(-1, 2**n)] * 3)
    orbit = PseudoOrbit(tuple(pts))
    assert verify_jumps(system, orbit) < F(1, 10)


def test_deviation_per_step():
    t2 = tent_map(2)
    orbit = PseudoOrbit((F(0), F(1, 10)))
    rep = deviation(t2, F(0), orbit)
    assert rep.per_step == (F(0), F(1, 10))
    assert not rep.exact_hit


def test_slimit_tail_point_misses_badly():
    system = SLimitSystem(10)
    n = 4
    orbit = PseudoOrbit((F(1, 2), F(1, 4)))
    rep = deviation(system, F(-1, 2**n), orbit)
    assert rep.per_step[0] == F(1, 2) + F(1, 2**n)
    assert rep.per_step[0] > F(1, 4)


def test_checked_orbit_validates_claims():
    t2 = tent_map(2)
    pts = (F(1, 4), F(1, 2) + F(1, 100))
    assert checked_orbit(t2, pts, claimed_delta=F(1, 50)).claimed_delta == F(1, 50)
    with pytest.raises(ValueError):
        checked_orbit(t2, pts, claimed_delta=F(1, 200))


def test_perturbed_orbit_respects_delta():
    t2 = tent_map(2)
    orbit = perturbed_orbit(t2, F(1, 3), 50, F(1, 100), seed=1)
    assert len(orbit) == 50
    assert verify_jumps(t2, orbit) < F(1, 100)


def test_perturbed_orbit_rejects_bad_delta():
    with pytest.raises(ValueError):
        perturbed_orbit(tent_map(2), F(1, 3), 10, 0, seed=1)


def test_perturbed_orbit_deterministic():
    t2 = tent_map(2)
    a = perturbed_orbit(t2, F(1, 3), 30, F(1, 64), seed=99)
    b = perturbed_orbit(t2, F(1, 3), 30, F(1, 64), seed=99)
    assert a.points == b.points
    c = perturbed_orbit(t2, F(1, 3), 30, F(1, 64), seed=100)
    assert a.points != c.points


def test_perturbed_orbit_symbolic_kinds():
    gm = golden_mean_shift()
    from shadowlab.systems import SymbolicPoint

    x0 = SymbolicPoint(("0", "1"), ("0",))
    orbit = perturbed_orbit(gm, x0, 12, F(1, 32), seed=4)
    assert verify_jumps(gm, orbit) < F(1, 32)
    assert all(gm.contains_point(p) for p in orbit.points)

    od = OdometerSystem(8)
    orbit = perturbed_orbit(od, (0,) * 8, 12, F(1, 16), seed=4)
    assert verify_jumps(od, orbit) < F(1, 16)


def test_splice_identity_and_bound():
    t2 = tent_map(2)
    orbit = true_orbit(t2, F(2, 5), 5)
    assert splice([], orbit).points == orbit.points
    # prefix point maps 1/128 away from the suffix start
    glued = splice([F(1, 5) + F(1, 256)], orbit, system=t2)
    assert verify_jumps(t2, glued) == F(1, 128)


def test_splice_backward_extension_keeps_bound():
    # extending a pseudo-orbit by a true-orbit prefix that lands exactly on
    # its first point never worsens the jump bound
    t2 = tent_map(2)
    rng = random.Random(7)
    for trial in range(20):
        orbit = perturbed_orbit(t2, F(1, 3), 8, F(1, 40), seed=trial)
        z = orbit.points[0] / 2  # tent preimage on the left lap
        prefix = [z]
        glued = splice(prefix, orbit, system=t2)
        assert verify_jumps(t2, glued) == verify_jumps(t2, orbit)


def test_block_downsampling_amplification_bound():
    # jumps of the n-block downsampled orbit stay within the geometric bound,
    # cross-checked against direct simulation of the composed map
    rng = random.Random(3)
    for seed in range(8):
        system = random_zigzag_map(seed)
        L = system.lipschitz()
        n = rng.choice((2, 3))
        composed = iterate_pl(system, n)
        delta = F(1, 200)
        orbit = perturbed_orbit(system, F(1, 3), 3 * n + 1, delta, seed=seed)
        downsampled = PseudoOrbit(orbit.points[::n])
        bound = delta * sum(L**i for i in range(n))
        assert verify_jumps(composed, downsampled) <= bound


def test_finite_horizon_delta_consistency_with_downsampling():
    system = tent_map(2)
    n, eps = 3, F(1, 8)
    delta = finite_horizon_delta(system.lipschitz(), n, eps)
    for seed in range(10):
        orbit = perturbed_orbit(system, F(1, 3), n + 1, delta, seed=seed)
        # starting exactly on the first point keeps every step within eps
        rep = deviation(system, orbit.points[0], orbit)
        assert rep.max_deviation < eps


def test_orbit_serialization_round_trips():
    t2 = tent_map(2)
    orbit = perturbed_orbit(t2, F(1, 3), 10, F(1, 50), seed=2)
    assert orbit_from_csv(t2, orbit_to_csv(t2, orbit)).points == orbit.points
    again = orbit_from_json(t2, orbit_to_json(t2, orbit))
    assert again.points == orbit.points and again.claimed_delta == orbit.claimed_delta

    scheduled = PseudoOrbit(orbit.points, decay_schedule=tuple(F(1, 2**k) for k in range(1, 10)))
    again = orbit_from_json(t2, orbit_to_json(t2, scheduled))
    assert again.decay_schedule == scheduled.decay_schedule

    gm = golden_mean_shift()
    from shadowlab.systems import SymbolicPoint

    sym = perturbed_orbit(gm, SymbolicPoint(("0",), ("0", "1")), 6, F(1, 16), seed=3)
    assert orbit_from_csv(gm, orbit_to_csv(gm, sym)).points == sym.points
