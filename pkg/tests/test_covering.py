import pytest

from services import covering, cutproject, inflation
from services.errors import DimensionMismatchError
from services.exactnum import PENROSE_FRAME, TAU
from services.patch import empty_patch


def test_decagon_cluster_holds_ten_rhombs():
    decagon = covering.decagon_cluster()
    assert len(decagon.shape) == 10
    assert decagon.template == {"thick": 5, "thin": 5}
    assert all(PENROSE_FRAME.norm_sq(p) == TAU * TAU for p in decagon.shape)
    assert decagon.diameter == pytest.approx(2 * float(TAU))


def test_two_pentagon_classes():
    pentagons = covering.pentagon_clusters()
    assert [p.name for p in pentagons] == ["pentagon-1", "pentagon-2"]
    for p in pentagons:
        assert len(p.shape) == 5
        assert p.template
        assert set(p.template) == {"golden", "gnomon"}


def test_template_counts_reject_dependent_areas():
    area = covering.decagon_cluster().area
    assert covering.template_counts(PENROSE_FRAME, area, {"thick": area}) == {}


def test_unknown_covering_rejected():
    with pytest.raises(DimensionMismatchError):
        covering.get_clusters("hexagons")


def test_decagons_found_in_penrose_patch(penrose_patch):
    placements = covering.find_cluster_centers(penrose_patch, covering.decagon_cluster())
    assert placements
    for p in placements:
        assert len(p.tiles) == 10
        kinds = sorted(penrose_patch.tiles[ti].kind for ti in p.tiles)
        assert kinds.count("thick") == 5 and kinds.count("thin") == 5


def test_cover_report_shape(penrose_patch):
    placements, report = covering.cover(penrose_patch, "decagon")
    assert report["placements"] == len(placements)
    assert report["clusters"]["decagon"]["template"] == {"thick": 5, "thin": 5}
    assert report["margin"] == pytest.approx(2 * float(TAU))
    assert 0.0 <= report["covered_fraction"] <= 1.0


def test_nothing_covered_without_placements(penrose_patch):
    report = covering.verify_covering(penrose_patch, [], margin=0.0)
    assert report["covered_interior"] == 0
    assert report["uncovered"]
    assert report["max_overlap"] == 0


def test_empty_patch_has_no_placements():
    assert covering.find_cluster_centers(empty_patch(PENROSE_FRAME, "section"), covering.decagon_cluster()) == []


@pytest.fixture(scope="module")
def wide_penrose():
    return cutproject.penrose_tiling(15.0)


@pytest.fixture(scope="module")
def wide_triangles():
    return cutproject.triangle_tiling(15.0)


def test_decagon_template_read_off_inflated_sun():
    sun = inflation.pair_halves(inflation.inflate("penrose", "sun", 5))
    found = covering.extract_template(sun, covering.decagon_cluster())
    assert found["occurrences"] > 0
    assert found["consistent"]
    assert found["template"] == covering.decagon_cluster().template


def test_pentagon_templates_agree_with_area_counts(wide_triangles):
    for cluster in covering.pentagon_clusters():
        found = covering.extract_template(wide_triangles, cluster)
        assert found["occurrences"] > 0
        assert found["template"] == cluster.template


def test_decagons_cover_wide_penrose_patch(wide_penrose):
    placements, report = covering.cover(wide_penrose, "decagon")
    assert report["interior_tiles"] > 0
    assert report["covered_fraction"] == 1.0
    assert {len(p.tiles) for p in placements} == {10}
    assert report["template_mismatches"] == 0
    assert report["dominant_class_covered_fraction"] == 1.0


def test_pentagons_cover_wide_triangle_patch(wide_triangles):
    _, report = covering.cover(wide_triangles, "pentagons")
    assert report["interior_tiles"] > 0
    assert report["covered_fraction"] == 1.0
    assert report["template_mismatches"] == 0
    assert set(report["class_purity"]) == {"pentagon-1", "pentagon-2"}


def test_class_purity_counts_center_classes():
    origin = PENROSE_FRAME.origin()
    placements = [
        covering.Placement(cluster="decagon", rotation=0, shift=origin, center=origin, tiles=[], center_class=c)
        for c in (2, 2, 3)
    ]
    purity = covering.class_purity(placements)
    assert purity["decagon"] == {"classes": {"2": 2, "3": 1}, "dominant": "2", "pure": False}
