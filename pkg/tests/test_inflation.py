import math

import pytest

from services import inflation
from services.errors import PatchTooSmallError, UnknownTileTypeError
from services.exactnum import quad


def test_fibonacci_word():
    assert inflation.fibonacci_word(5) == "ABAABABAABAAB"
    assert len(inflation.fibonacci_word(8)) == 55


def test_fibonacci_inflation_spells_the_word():
    patch = inflation.inflate("fibonacci", "A", 5)
    assert inflation.patch_word(patch) == "ABAABABAABAAB"
    assert patch.meta["steps"] == 5


@pytest.mark.parametrize("name, matrix", [
    ("fibonacci", [[1, 1], [1, 0]]),
    ("ab", [[3, 4], [2, 3]]),
    ("penrose", [[2, 1], [1, 1]]),
])
def test_substitution_matrices(name, matrix):
    rule = inflation.get_rule(name)
    sm = inflation.substitution_matrix(rule)
    assert sm.tolist() == matrix
    assert sm.is_primitive()
    assert inflation.perron_matches_factor(rule)


@pytest.mark.parametrize("name", ["fibonacci", "ab", "penrose"])
def test_rules_are_sound(name):
    report = inflation.verify_rule(inflation.get_rule(name))
    for kind, checks in report.items():
        assert checks["area_conserved"], kind
        assert checks["children_inside"], kind
        assert checks["interiors_disjoint"], kind
        assert checks["children_congruent_size"], kind


def test_fibonacci_frequencies():
    freqs = inflation.tile_frequencies(inflation.get_rule("fibonacci"))
    assert freqs == {"A": quad(-1, 1, 5), "B": quad(2, -1, 5)}


def test_ab_frequencies_sum_to_one():
    freqs = inflation.tile_frequencies(inflation.get_rule("ab"))
    assert sum(freqs.values(), quad(0, 0, 2)) == 1


def test_rule_round_trip_keeps_checks():
    rule = inflation.get_rule("ab")
    again = inflation.rule_from_dict(inflation.rule_to_dict(rule))
    assert again.factor == rule.factor
    assert inflation.substitution_matrix(again).tolist() == [[3, 4], [2, 3]]


def test_rule_with_unknown_child_rejected():
    data = inflation.rule_to_dict(inflation.get_rule("fibonacci"))
    data["images"]["B"][0]["kind"] = "C"
    with pytest.raises(UnknownTileTypeError):
        inflation.rule_from_dict(data)


def test_unknown_seed_rejected():
    with pytest.raises(UnknownTileTypeError):
        inflation.inflate("ab", "pinwheel", 1)


def test_tile_counts_follow_the_matrix():
    patch = inflation.inflate("ab", "triangle", 2)
    # [[3, 4], [2, 3]] squared applied to (1, 0)
    assert patch.kinds() == {"triangle": 17, "rhomb": 12}


def test_penrose_halves_pair_into_decorated_rhombs(penrose_sun):
    assert set(penrose_sun.kinds()) == {"thick", "thin"}
    assert all(t.decoration is not None for t in penrose_sun.tiles)
    assert penrose_sun.meta["paired"] is True


def test_ab_star_pairs_triangles_into_squares():
    patch = inflation.pair_halves(inflation.inflate("ab", "star", 2))
    assert set(patch.kinds()) == {"square", "rhomb"}


def test_repetitivity_needs_a_large_patch():
    with pytest.raises(PatchTooSmallError):
        inflation.repetitivity_check(inflation.inflate("ab", "star", 0), 1.0)


def test_kind_counts_match_the_geometry():
    rule = inflation.get_rule("ab")
    assert inflation.kind_counts(rule, "triangle", 2) == inflation.inflate("ab", "triangle", 2).kinds()


def test_ab_ratio_after_seven_steps():
    counts = inflation.kind_counts(inflation.get_rule("ab"), "star", 7)
    assert counts["triangle"] / counts["rhomb"] == pytest.approx(math.sqrt(2), rel=0.01)


def test_penrose_halves_after_eight_steps():
    rule = inflation.get_rule("penrose")
    counts = inflation.kind_counts(rule, "sun", 8)
    assert counts["thick-half"] / counts["thin-half"] == pytest.approx((1 + math.sqrt(5)) / 2, rel=0.01)
    assert counts == {k: inflation.inflate("penrose", "sun", 8).kinds().get(k, 0) for k in rule.kinds}


def test_kind_counts_unknown_seed():
    with pytest.raises(UnknownTileTypeError):
        inflation.kind_counts(inflation.get_rule("penrose"), "star", 1)
