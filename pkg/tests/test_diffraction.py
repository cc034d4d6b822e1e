import math
from fractions import Fraction

import numpy as np
import pytest

from services import cutproject, diffraction
from services.errors import EmptyPatchError, InvalidJobConfigError
from services.exactnum import AB_FRAME, GOLDEN_LINE
from services.polygon import convex_hull
from services.patch import empty_patch


@pytest.fixture(scope="module")
def ab_pattern():
    return diffraction.predict_peaks(cutproject.ab_spec(), cutoff=1e-2, k_max=6.0)


@pytest.fixture(scope="module")
def fibonacci_pattern():
    return diffraction.predict_peaks(cutproject.fibonacci_spec(), cutoff=1e-2, k_max=8.0)


def test_window_transform_at_origin_is_area():
    value = diffraction.window_ft(AB_FRAME, cutproject.ab_window(), [0.0, 0.0])
    assert value == pytest.approx(2 * (1 + math.sqrt(2)))


def test_square_window_transform():
    half = [(-0.5, -0.5), (0.5, -0.5), (0.5, 0.5), (-0.5, 0.5)]
    square = convex_hull(AB_FRAME, [AB_FRAME.point(*[Fraction(str(c)) for c in p]) for p in half])
    window = cutproject.Window(polygon=square, offset=AB_FRAME.origin())
    k = np.array([1.3, 0.7])
    expected = np.sinc(k[0] / (2 * np.pi)) * np.sinc(k[1] / (2 * np.pi))
    assert diffraction.window_ft(AB_FRAME, window, k) == pytest.approx(expected, abs=1e-12)


def test_tiny_wave_vector_uses_the_series():
    window = cutproject.ab_window()
    near = diffraction.window_ft(AB_FRAME, window, [1e-9, 0.0])
    assert near == pytest.approx(diffraction.window_ft(AB_FRAME, window, [0.0, 0.0]), rel=1e-8)


def test_vertex_densities():
    assert diffraction.vertex_density(cutproject.ab_spec()) == pytest.approx((1 + math.sqrt(2)) / 2)
    golden = (1 + math.sqrt(5)) / 2
    assert diffraction.vertex_density(cutproject.fibonacci_spec()) == pytest.approx(golden / math.sqrt(5))


def test_origin_peak_is_strongest(ab_pattern):
    first = ab_pattern.peaks[0]
    assert first.indices == (0, 0, 0, 0)
    assert first.intensity == pytest.approx(1.0)
    assert all(0 <= p.intensity <= 1 + 1e-9 for p in ab_pattern.peaks)


def test_ab_pattern_has_eightfold_symmetry(ab_pattern):
    assert len(ab_pattern.peaks) > 1
    assert diffraction.symmetry_defect(ab_pattern, 8) < 1e-9


def test_penrose_pattern_has_tenfold_symmetry():
    pattern = diffraction.predict_peaks(cutproject.penrose_spec(), cutoff=1e-2, k_max=5.0)
    assert pattern.peaks[0].intensity == pytest.approx(1.0)
    assert diffraction.symmetry_defect(pattern, 10) < 1e-9


def test_peaks_respect_cutoff_and_k_max(fibonacci_pattern):
    assert all(p.intensity >= 1e-2 for p in fibonacci_pattern.peaks)
    assert all(abs(p.k_par[0]) <= 8.0 + 1e-9 for p in fibonacci_pattern.peaks)
    assert fibonacci_pattern.normalization["cutoff"] == 1e-2


@pytest.mark.parametrize("cutoff, k_max", [(0.0, 5.0), (1.5, 5.0), (1e-3, -1.0)])
def test_bad_arguments_rejected(cutoff, k_max):
    with pytest.raises(InvalidJobConfigError):
        diffraction.predict_peaks(cutproject.ab_spec(), cutoff=cutoff, k_max=k_max)


def test_direct_sums_agree_with_prediction(fibonacci_pattern):
    patch = cutproject.fibonacci_vertex_set(400.0)
    table = diffraction.compare_with_direct(fibonacci_pattern, patch, top=5)
    assert list(table.columns) == ["indices", "predicted", "direct", "relative_error"]
    assert len(table) == 5
    assert (table["relative_error"] < 0.05).all()


def test_direct_sum_at_origin_is_one():
    patch = cutproject.fibonacci_vertex_set(50.0)
    assert diffraction.direct_pattern(patch, [[0.0]])[0] == pytest.approx(1.0)


def test_direct_sum_needs_vertices():
    with pytest.raises(EmptyPatchError):
        diffraction.direct_pattern(empty_patch(GOLDEN_LINE, "cutproject"), [[1.0]])


def test_pattern_table(ab_pattern):
    frame = ab_pattern.to_frame()
    assert {"indices", "kx", "ky", "k_norm", "intensity"} <= set(frame.columns)
    assert len(frame) == len(ab_pattern.peaks)


def test_ab_strongest_peaks_match_direct_sums(ab_pattern):
    patch = cutproject.ab_vertex_set(57.0)
    assert len(patch.points) >= 10_000
    table = diffraction.compare_with_direct(ab_pattern, patch, top=10)
    assert len(table) == 10
    assert (table["relative_error"] < 0.05).all()
