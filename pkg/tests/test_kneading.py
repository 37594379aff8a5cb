import random
from fractions import Fraction as F

import pytest

from shadowlab.kneading import (
    KneadingWord,
    critical_orbit_separation,
    find_parameter,
    is_recurrent_prefix,
    itinerary,
    kneading_word,
    parity_lex_compare,
    staircase_symbol,
    staircase_word,
    word,
)
from shadowlab.systems import logistic_map, quadratic_map, tent_map


# -- itineraries -----------------------------------------------------------


def test_logistic_itinerary_of_one():
    got = itinerary(logistic_map(4), 1, 4)
    assert got.symbols == "RLLL"


def test_tent_itinerary_of_one():
    assert itinerary(tent_map(2), 1, 3).symbols == "RLL"


def test_itinerary_stops_at_critical_hit():
    got = itinerary(tent_map(2), F(1, 2), 5)
    assert got.symbols == "C"
    assert got.horizon == 5


def test_kneading_word_starts_at_critical_value():
    # the critical value of the even family is 1, so words start with R
    for mu in (F(11, 10), F(3, 2), F(2)):
        assert kneading_word(quadratic_map(mu), 6).symbols[0] == "R"
    assert kneading_word(quadratic_map(2), 8).symbols == "RLLLLLLL"


# -- the staircase sequence --------------------------------------------------


def test_staircase_prefix_and_blocks():
    assert staircase_word(15).symbols == "RLLRRLRRRLRRRRL"
    assert [staircase_symbol(n) for n in range(15, 21)] == ["R", "R", "R", "R", "R", "L"]


def test_staircase_run_lengths_increase_by_one():
    text = staircase_word(600).symbols
    runs = []
    count = 0
    for s in text[3:]:
        if s == "R":
            count += 1
        else:
            runs.append(count)
            count = 0
    assert runs == list(range(2, 2 + len(runs)))


def test_staircase_no_adjacent_l_after_prefix():
    text = staircase_word(600).symbols
    assert "LL" not in text[2:]


def test_recurrence_scan():
    target = staircase_word(500)
    assert not is_recurrent_prefix(target, 3)
    assert is_recurrent_prefix(word("RLRLRL"), 2)
    assert is_recurrent_prefix(word("RLR"), 0)


def test_recurrence_window_bound():
    with pytest.raises(ValueError):
        is_recurrent_prefix(word("RL"), 3)


# -- signed order -------------------------------------------------------------


def test_signed_order_examples():
    assert parity_lex_compare(word("RL"), word("RR")) == 1  # flipped after one R
    assert parity_lex_compare(word("L"), word("R")) == -1
    assert parity_lex_compare(word("RLL"), word("RLL")) == 0


def test_signed_order_matches_point_order_on_tent_grid():
    # itineraries ordered by the signed comparison agree with the order of
    # the points themselves (away from ties), the defining property
    system = tent_map(F(19, 10))
    rng = random.Random(6)
    pts = sorted(F(rng.randint(1, 999), 1000) for _ in range(60))
    for a, b in zip(pts, pts[1:]):
        if a == b:
            continue
        wa, wb = itinerary(system, a, 12), itinerary(system, b, 12)
        cmp = parity_lex_compare(wa, wb)
        assert cmp in (-1, 0)


def test_kneading_monotone_in_parameter():
    horizon = 10
    words = [kneading_word(quadratic_map(1 + F(k, 100)), horizon) for k in range(0, 101)]
    for a, b in zip(words, words[1:]):
        assert parity_lex_compare(a, b) <= 0


# -- parameter search -----------------------------------------------------------


def test_find_parameter_matches_staircase_prefix():
    result = find_parameter(staircase_word(15), 15, 40)
    assert result.matched
    assert result.achieved.symbols == "RLLRRLRRRLRRRRL"
    assert result.bracket[1] - result.bracket[0] <= F(1, 2**30)
    assert result.bracket[0] <= result.parameter <= result.bracket[1]
    assert kneading_word(quadratic_map(result.parameter), 15).symbols == "RLLRRLRRRLRRRRL"


def test_find_parameter_rl_tail_drives_to_two():
    target = word("R" + "L" * 14)
    result = find_parameter(target, 15, 45)
    assert result.matched
    assert abs(result.parameter - 2) < F(1, 2**10)


def test_find_parameter_zero_steps_returns_bracket_midpoint():
    result = find_parameter(staircase_word(15), 15, 0)
    assert result.parameter == F(3, 2)
    assert result.achieved == kneading_word(quadratic_map(F(3, 2)), 15)


# -- certified separation ----------------------------------------------------------


def test_critical_orbit_separation_positive_for_staircase_parameter():
    result = find_parameter(staircase_word(15), 15, 40)
    sep = critical_orbit_separation(result.parameter, 2, 200)
    assert sep is not None and sep > 0


def test_critical_orbit_separation_detects_zero_hits():
    # at parameter 1 the second image of the critical point is exactly 0
    assert critical_orbit_separation(F(1), 2, 4) is None


def test_word_validation():
    with pytest.raises(ValueError):
        KneadingWord("RCX", 3)
    with pytest.raises(ValueError):
        KneadingWord("CR", 2)  # critical hit must terminate
