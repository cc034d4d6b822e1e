import math

import pytest

from services import verify
from services.errors import InvalidJobConfigError
from services.verify import CheckOptions, run_checks, verify_patch


def test_default_suite_passes_for_ab():
    result = run_checks("ab")
    assert result["passed"]
    assert set(result["checks"]) == set(verify.DEFAULT_CHECKS)


def test_restriction_orders():
    report = run_checks("fibonacci", ["crystallographic-restriction"])["checks"]["crystallographic-restriction"]
    assert report["orders"] == [1, 2, 3, 4, 6]
    assert report["minimal_dimension"] == {"5": 4, "8": 4, "10": 4, "12": 4}


def test_unknown_check_rejected():
    with pytest.raises(InvalidJobConfigError):
        run_checks("ab", ["pinwheel"])


def test_check_outside_its_tilings_rejected():
    with pytest.raises(InvalidJobConfigError):
        run_checks("fibonacci", ["legality"])


def test_cut_agrees_with_section():
    report = verify.check_cut_vs_section("ab", CheckOptions(radius=5.0))
    assert report["passed"], report
    assert report["cut_vertices"] > 0


def test_cut_agrees_with_section_at_default_radius():
    report = verify.check_cut_vs_section("ab", CheckOptions())
    assert report["radius"] == 20.0
    assert report["passed"], report
    assert report["only_cut"] == report["only_section"] == 0


def test_inflated_star_stays_in_window():
    report = verify.check_inflation_in_window("ab", CheckOptions(steps=1))
    assert report["passed"]
    assert report["outside"] == []


def test_legality_detects_every_sampled_mutation():
    report = verify.check_legality("penrose", CheckOptions())
    assert report["passed"], report
    assert report["mutation_trials"] == verify.MUTATION_TRIALS
    assert report["mutations_missed"] == []


def test_legality_on_small_sun_samples_what_it_has():
    report = verify.check_legality("penrose", CheckOptions(steps=3))
    assert 0 < report["mutation_trials"] <= verify.MUTATION_TRIALS
    assert report["mutations_missed"] == []


def test_fibonacci_density():
    report = verify.check_density("fibonacci", CheckOptions(radius=200.0))
    assert report["passed"], report


def test_saved_patch_verifies(penrose_sun, ab_patch):
    decorated = verify_patch(penrose_sun)
    assert decorated["passed"]
    assert decorated["legality"]["legal"]
    plain = verify_patch(ab_patch)
    assert plain["passed"] and "legality" not in plain


def test_ab_frequencies_after_seven_steps():
    report = verify.check_frequencies("ab", CheckOptions())
    assert report["passed"], report
    assert report["expected_ratio"] == pytest.approx(math.sqrt(2))
    assert report["ratio_step_7"] == pytest.approx(math.sqrt(2), rel=0.01)
    assert report["measured_ratio"] == pytest.approx(math.sqrt(2), rel=0.01)


def test_penrose_frequencies_after_eight_steps():
    report = verify.check_frequencies("penrose", CheckOptions())
    assert report["steps"] == 8
    assert report["passed"], report
    golden = (1 + math.sqrt(5)) / 2
    assert report["measured_ratio"] == pytest.approx(golden, rel=0.01)


def test_long_fibonacci_section():
    report = verify.check_fibonacci_section("fibonacci", CheckOptions())
    assert report["length"] == 1e4
    assert report["passed"], report
    assert not report["has_bb"]
    assert report["aligned"] and report["offset_in_fixed_point"] >= 0
    assert report["letters"] > 7000


def test_repetitivity_on_large_ab_patch():
    report = verify.check_repetitivity("ab", CheckOptions())
    assert report["tiles"] >= 10_000
    assert report["singletons"] == 0
    assert report["passed"]


def test_new_checks_registered():
    assert verify.CHECKS["frequencies"][1] == ("ab", "penrose")
    assert verify.CHECKS["fibonacci-section"][1] == ("fibonacci",)
    with pytest.raises(InvalidJobConfigError):
        run_checks("ttt", ["frequencies"])
