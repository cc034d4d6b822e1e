import json
from fractions import Fraction

import pytest

from services import cutproject
from services.errors import DimensionMismatchError, MissingWindowError
from services.exactnum import AB_FRAME, GOLDEN_LINE, PENROSE_FRAME, TAU, quad
from services.lattice import get_scheme, penrose_scheme
from services.polygon import is_convex, measure


def test_octagon_window():
    window = cutproject.octagon()
    assert len(window) == 8
    assert is_convex(AB_FRAME, window)
    assert measure(AB_FRAME, window) == quad(2, 2, 2)
    assert {AB_FRAME.norm_sq(window[(i + 1) % 8] - window[i]) for i in range(8)} == {quad(1, 0, 2)}


def test_ab_acceptance():
    spec = cutproject.ab_spec()
    assert cutproject.is_accepted(spec, [0, 0, 0, 0])
    assert cutproject.is_accepted(spec, [1, 0, 0, 0])
    assert not cutproject.is_accepted(spec, [2, 0, 0, 0])


def test_model_set_needs_positive_radius():
    with pytest.raises(DimensionMismatchError):
        cutproject.model_set(cutproject.ab_spec(), 0)


def test_missing_window_reported():
    spec = cutproject.CutProjectSpec(scheme=penrose_scheme())
    with pytest.raises(MissingWindowError):
        spec.require([1, 2])


def test_ab_vertices_sit_at_unit_spacing(ab_patch):
    assert set(ab_patch.kinds()) <= {"square", "rhomb"}
    assert ab_patch.kinds()["square"] > 0 and ab_patch.kinds()["rhomb"] > 0
    for tile in ab_patch.tiles:
        for a, b in tile.edges:
            assert AB_FRAME.norm_sq(ab_patch.points[b] - ab_patch.points[a]) == 1


def test_ab_vertex_set_is_deterministic():
    first = cutproject.ab_vertex_set(3.0)
    second = cutproject.ab_vertex_set(3.0, threads=2)
    assert first.points == second.points
    assert first.lifts == second.lifts


def test_penrose_vertex_classes():
    patch = cutproject.penrose_vertex_set(4.0)
    assert set(patch.meta["vertex_classes"]) == {"1", "2", "3", "4"}
    assert all(cutproject.lift_class(PENROSE_FRAME, p) != 0 for p in patch.points)


def test_penrose_tiling_uses_two_rhombs(penrose_patch):
    assert set(penrose_patch.kinds()) == {"thick", "thin"}


def test_fibonacci_intervals():
    patch = cutproject.fibonacci_tiling(20.0)
    assert set(patch.kinds()) == {"A", "B"}
    for tile in patch.tiles:
        a, b = patch.tile_points(tile)
        assert abs(b[0] - a[0]) in (TAU, quad(1, 0, 5))


def test_fibonacci_section_of_zero_length_is_empty():
    patch = cutproject.fibonacci_section(0)
    assert patch.tiles == [] and patch.points == []
    assert patch.meta["length"] == 0


def test_window_overrides_from_file(tmp_path):
    path = tmp_path / "windows.json"
    square = [[["1/2", "0"], ["1/2", "0"]], [["-1/2", "0"], ["1/2", "0"]],
              [["-1/2", "0"], ["-1/2", "0"]], [["1/2", "0"], ["-1/2", "0"]]]
    path.write_text(json.dumps({"frame": "decagonal", "windows": [{"label": 1, "polygon": square}]}))
    windows = cutproject.load_window_overrides(str(path))
    assert list(windows) == [1]
    assert len(windows[1].polygon) == 4
    assert windows[1].offset == PENROSE_FRAME.origin()


@pytest.mark.parametrize("coeffs", [(1, 0, 0, 0), (2, -1, 3, 0), (0, 1, 1, -2)])
def test_ab_module_lift(coeffs):
    par, _ = get_scheme("ab").project(list(coeffs))
    assert cutproject.module_lift(AB_FRAME, par) == list(coeffs)


def test_decagonal_module_lift_is_normalised():
    point = PENROSE_FRAME.unit(0) + PENROSE_FRAME.unit(4).scale(2)
    assert cutproject.module_lift(PENROSE_FRAME, point) == [1, 0, 2, 0, 0]
    assert cutproject.lift_class(PENROSE_FRAME, point) == 3


def test_golden_line_lift():
    assert cutproject.module_lift(GOLDEN_LINE, GOLDEN_LINE.point(quad(2, -1, 5))) == [2, -1]


def test_point_outside_module_rejected():
    with pytest.raises(DimensionMismatchError):
        cutproject.module_lift(AB_FRAME, AB_FRAME.point(Fraction(1, 2), 0))
