import random
from fractions import Fraction as F

import pytest

from shadowlab.expansivity import (
    RegionSpec,
    check_ball_expanding,
    check_expanding,
    check_locally_injective,
    check_open_at,
    check_star,
    crosscheck_expanding_characterizations,
    eps_net_check,
    positively_expansive_falsify,
    region_of,
    schwarzian,
    search_ball_expanding_constants,
    whole_space_region,
)
from shadowlab.numerics import closed_ball, from_pairs, intersect, point_set
from shadowlab.systems import (
    CantorSystem,
    PiecewiseLinearMap,
    distance,
    evaluate,
    full_shift,
    logistic_map,
    quadratic_map,
    random_zigzag_map,
    tent_map,
)

T2 = tent_map(2)


# -- expanding ----------------------------------------------------------------


def test_cantor_expanding_certified_with_printed_constants():
    system = CantorSystem(6, "mirror")
    verdict = check_expanding(system, whole_space_region(system), F(1, 9), F(3))
    assert verdict.certified


def test_cantor_fold_convention_contracts_across_zero():
    system = CantorSystem(6, "fold")
    verdict = check_expanding(system, whole_space_region(system), F(1, 9), F(3))
    assert verdict.falsified
    x, y = F(verdict.counterexample["x"]), F(verdict.counterexample["y"])
    lhs = distance(system, evaluate(system, x), evaluate(system, y))
    assert lhs < 3 * distance(system, x, y)


def test_tent_not_expanding_symmetric_pair():
    verdict = check_expanding(T2, whole_space_region(T2), F(1, 10), F(2))
    assert verdict.falsified
    x, y = F(verdict.counterexample["x"]), F(verdict.counterexample["y"])
    assert x + y == 1  # symmetric about the kink


def test_tent_expanding_on_left_band():
    verdict = check_expanding(T2, region_of((0, "2/5")), F(1, 10), F(2))
    assert verdict.certified


def test_pair_engine_against_dense_sampling():
    # the vertex analysis over one cell pair agrees with dense rational
    # sampling of the two affine graphs, including straddle configurations
    from shadowlab.expansivity import _pair_violation
    from shadowlab.numerics import ClosedInterval

    rng = random.Random(44)
    for trial in range(120):
        a1 = F(rng.randint(0, 60), 100)
        cell_x = (ClosedInterval(a1, a1 + F(rng.randint(1, 20), 100)),
                  F(rng.choice((-5, -3, -2, 2, 3, 4)), rng.choice((1, 2))),
                  F(rng.randint(-200, 200), 100))
        b1 = a1 + F(rng.randint(0, 25), 100)
        cell_y = (ClosedInterval(b1, b1 + F(rng.randint(1, 20), 100)),
                  F(rng.choice((-5, -3, -2, 2, 3, 4)), rng.choice((1, 2))),
                  F(rng.randint(-200, 200), 100))
        delta = F(rng.randint(2, 15), 100)
        mu = F(rng.choice((3, 2, 5)), 2)
        hit = _pair_violation(cell_x, cell_y, delta, mu)
        if hit is not None:
            x, y = hit
            (ix, sx, ox), (iy, sy, oy) = cell_x, cell_y
            assert ix.lo <= x <= ix.hi and iy.lo <= y <= iy.hi
            assert 0 < y - x < delta
            assert abs((sx * x + ox) - (sy * y + oy)) < mu * (y - x)
        else:
            (ix, sx, ox), (iy, sy, oy) = cell_x, cell_y
            for _ in range(300):
                x = ix.lo + ix.width * F(rng.getrandbits(10), 1 << 10)
                y = iy.lo + iy.width * F(rng.getrandbits(10), 1 << 10)
                if 0 < y - x < delta:
                    assert abs((sx * x + ox) - (sy * y + oy)) >= mu * (y - x)


def test_expanding_brute_force_cross_validation():
    # dense pair sampling agrees with the exact verdict on random maps/regions
    rng = random.Random(31)
    for seed in range(6):
        system = random_zigzag_map(seed)
        lo = F(rng.randint(0, 40), 100)
        hi = lo + F(rng.randint(5, 30), 100)
        region = region_of((lo, min(hi, F(1))))
        delta, mu = F(1, 10), F(2)
        verdict = check_expanding(system, region, delta, mu)
        carrier = region.interval_carrier()
        violations = []
        for _ in range(400):
            part = carrier.parts[rng.randrange(len(carrier.parts))]
            x = part.lo + part.width * F(rng.getrandbits(12), 1 << 12)
            y = part.lo + part.width * F(rng.getrandbits(12), 1 << 12)
            if x != y and abs(x - y) < delta:
                if abs(evaluate(system, x) - evaluate(system, y)) < mu * abs(x - y):
                    violations.append((x, y))
        if violations:
            assert verdict.falsified
        # certified verdicts must never coexist with sampled violations
        if verdict.certified:
            assert not violations


# -- one-sided variant ----------------------------------------------------------


def test_star_certified_at_noncritical_point():
    x = F(1, 5)
    verdict = check_star(T2, RegionSpec(point_set(x)), F(1, 10), F(2))
    assert verdict.certified


def test_star_at_kink_matches_slope_bound():
    # pairs anchored at the kink stretch by exactly the slope modulus, so the
    # one-sided property holds at mu=2 and fails just above it
    at_kink = RegionSpec(point_set(F(1, 2)))
    assert check_star(T2, at_kink, F(1, 10), F(2)).certified
    verdict = check_star(T2, at_kink, F(1, 10), F(5, 2))
    assert verdict.falsified
    assert F(verdict.counterexample["x"]) == F(1, 2)


def test_star_implies_expanding_on_same_region():
    rng = random.Random(12)
    for seed in range(8):
        system = random_zigzag_map(seed)
        lo = F(rng.randint(0, 50), 100)
        region = region_of((lo, min(lo + F(1, 5), F(1))))
        delta, mu = F(1, 20), F(2)
        star = check_star(system, region, delta, mu)
        if star.certified:
            assert check_expanding(system, region, delta, mu).certified


# -- ball expanding ---------------------------------------------------------------


def test_tent_ball_expanding_certified():
    grid = [F(1, 4) * F(j, 51) for j in range(1, 51)]
    verdict = check_ball_expanding(T2, whole_space_region(T2), F(2), F(1, 4), grid)
    assert verdict.certified


def test_tent_kink_ball_containment_exact():
    # at the kink the image of the ε-ball is [1−2ε, 1], which covers the
    # clipped 2ε-ball around the image point
    eps = F(1, 20)
    img = T2.forward_image(intersect(closed_ball(F(1, 2), eps), from_pairs([(0, 1)])))
    assert img == from_pairs([(1 - 2 * eps, 1)])
    target = intersect(closed_ball(F(1), 2 * eps), from_pairs([(0, 1)]))
    assert target.subset_of(img)


def test_cantor_ball_expanding_fails_at_zero():
    for mode in ("fold", "mirror"):
        system = CantorSystem(6, mode)
        verdict = check_ball_expanding(system, RegionSpec(point_set(F(0))), F(3), F(1, 27),
                                       [F(1, 81), F(1, 243)])
        assert verdict.falsified
        missing = F(verdict.counterexample["missingPoint"])
        eps = F(verdict.counterexample["epsilon"])
        image = system.ball_image(eps, closed=True)
        assert not image.contains(missing)


def test_ball_expanding_falsifier_on_interior_peak():
    # an interior local max with value 1/2 breaks the covering immediately
    peak = PiecewiseLinearMap((F(0), F(1, 4), F(1)), (F(0), F(1, 2), F(0)))
    grid = [F(1, 40), F(1, 50)]
    verdict = check_ball_expanding(peak, whole_space_region(peak), F(3, 2), F(1, 10), grid)
    assert verdict.falsified


def test_ball_expanding_rejects_mu_one():
    with pytest.raises(ValueError):
        check_ball_expanding(T2, whole_space_region(T2), 1, F(1, 4), [F(1, 8)])


def test_constant_search_finds_tent_constants():
    found = search_ball_expanding_constants(T2, whole_space_region(T2))
    assert found is not None
    mu, nu = found
    assert mu == 2


# -- openness -------------------------------------------------------------------


def test_tent_open_at_kink_and_endpoints():
    assert check_open_at(T2, F(1, 2)).certified
    assert check_open_at(T2, F(0)).certified
    assert check_open_at(T2, F(1)).certified
    assert check_open_at(T2, F(1, 3)).certified


def test_interior_peak_not_open():
    peak = PiecewiseLinearMap((F(0), F(1, 4), F(1)), (F(0), F(1, 2), F(0)))
    verdict = check_open_at(peak, F(1, 4))
    assert verdict.falsified


def test_shifted_endpoint_map_not_open_at_zero():
    # value 1/2 at the left endpoint with positive slope: the image misses a
    # half-neighbourhood below 1/2
    m = PiecewiseLinearMap((F(0), F(1, 8), F(1)), (F(1, 2), F(11, 16), F(0)))
    assert m.slopes[0] == F(3, 2)
    verdict = check_open_at(m, F(0))
    assert verdict.falsified


def test_cantor_not_open_at_zero_only():
    system = CantorSystem(6)
    assert check_open_at(system, F(0)).falsified
    assert check_open_at(system, F(2, 27)).certified


def test_quadratic_openness():
    assert check_open_at(logistic_map(4), F(1, 2)).certified  # peak maps to 1
    assert check_open_at(logistic_map(3), F(1, 2)).falsified  # peak maps to 3/4
    assert check_open_at(quadratic_map(F(3, 2)), F(0)).certified


# -- local injectivity ------------------------------------------------------------


def test_locally_injective_verdicts():
    assert check_locally_injective(T2, whole_space_region(T2)).falsified
    assert check_locally_injective(T2, region_of((0, "2/5"))).certified
    assert check_locally_injective(T2, RegionSpec(from_pairs([]))).certified


# -- positive expansivity falsifier -------------------------------------------------


def test_tent_merging_pair_falsifies():
    verdict = positively_expansive_falsify(T2, F(1, 10), horizon=12)
    assert verdict.falsified


def test_full_shift_stays_undetermined():
    verdict = positively_expansive_falsify(full_shift(2), F(1, 2), horizon=20)
    assert verdict.holds == "undetermined"


def test_odometer_is_not_positively_expansive():
    from shadowlab.systems import OdometerSystem

    verdict = positively_expansive_falsify(OdometerSystem(8), F(1, 4), horizon=30)
    assert verdict.falsified


# -- Schwarzian ---------------------------------------------------------------------


def test_schwarzian_closed_form():
    rng = random.Random(23)
    for _ in range(100):
        x = F(rng.randint(-999, 999), 1000)
        if x == 0:
            continue
        for mu_num in (10, 12, 15, 17, 20):
            system = quadratic_map(F(mu_num, 10))
            assert schwarzian(system, x) == F(-3, 2) / (x * x)


def test_schwarzian_at_half():
    assert schwarzian(quadratic_map(F(3, 2)), F(1, 2)) == -6


def test_schwarzian_rejects_critical_point():
    with pytest.raises(ValueError):
        schwarzian(quadratic_map(F(3, 2)), 0)


def test_logistic_schwarzian_negative():
    rng = random.Random(3)
    g4 = logistic_map(4)
    for _ in range(40):
        x = F(rng.randint(1, 999), 1000)
        if x == F(1, 2):
            continue
        assert schwarzian(g4, x) == F(-6) / (1 - 2 * x) ** 2
        assert schwarzian(g4, x) < 0


# -- inverse-image nets ----------------------------------------------------------------


def test_dyadic_net_from_kink_preimages():
    result = eps_net_check(T2, [F(1, 2)], 3, F(1, 10))
    assert result.is_net and result.max_gap == F(1, 16)


def test_single_point_is_not_a_quarter_net():
    result = eps_net_check(T2, [F(1, 2)], 0, F(1, 4))
    assert not result.is_net and result.max_gap == F(1, 2)


def test_net_gap_matches_brute_force():
    # oracle: enumerate the dyadic preimages directly
    m = 4
    level = {F(1, 2)}
    for _ in range(m):
        level = {q for p in level for q in T2.point_preimages(p)}
    pts = sorted(level)
    gaps = [pts[0], 1 - pts[-1]] + [(b - a) / 2 for a, b in zip(pts, pts[1:])]
    result = eps_net_check(T2, [F(1, 2)], m, F(1, 10))
    assert result.max_gap == max(gaps)


def test_monotone_map_net_degenerates_to_target():
    m = PiecewiseLinearMap((F(0), F(1)), (F(0), F(1)))  # identity
    result = eps_net_check(m, [F(1, 4), F(3, 4)], 2, F(3, 10))
    assert result.is_net and result.max_gap == F(1, 4)


# -- characterization crosscheck -----------------------------------------------------


def test_crosscheck_consistent_on_tent_band():
    out = crosscheck_expanding_characterizations(T2, region_of(("1/10", "2/5")))
    assert out["consistent"]
    assert out["side1"] == "certified"
    assert out["side2"] == "certified"


def test_crosscheck_consistent_on_whole_tent():
    out = crosscheck_expanding_characterizations(T2, whole_space_region(T2))
    assert out["consistent"]
    assert out["expanding"] == "falsified"
    assert out["locallyInjective"] == "falsified"


def test_crosscheck_consistent_at_cantor_fixed_point():
    out = crosscheck_expanding_characterizations(CantorSystem(6), RegionSpec(point_set(F(0))))
    assert out["consistent"]
    assert out["open"] == "falsified"
    assert out["ballExpanding"] == "falsified"


def test_hierarchy_implapplication_on_random_maps():
    # certified expanding + open on a band implies ball-expanding constants
    # can be found by search; a failure here would be a hard error
    rng = random.Random(14)
    for seed in range(6):
        system = random_zigzag_map(seed)
        crit = system.critical_points()
        lo = F(rng.randint(2, 30), 100)
        region = region_of((lo, lo + F(1, 10)))
        carrier = region.interval_carrier()
        if any(carrier.distance_to(c) < F(1, 50) for c in crit):
            continue
        margin = min(carrier.distance_to(c) for c in crit) / 2 if crit else F(1, 20)
        exp = check_expanding(system, region, margin, system.min_slope_modulus())
        opens = all(check_open_at(system, p).certified
                    for part in carrier.parts for p in (part.lo, part.hi))
        if exp.certified and opens:
            assert search_ball_expanding_constants(system, region) is not None
