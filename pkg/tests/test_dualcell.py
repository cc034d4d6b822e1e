from fractions import Fraction

import pytest

from services import dualcell, lattice
from services.errors import OutsideRegionError, UnsupportedDimensionError
from services.exactnum import quad


def test_square_lattice_cell():
    z2 = lattice.get_lattice("Z2")
    assert sorted(dualcell.relevant_vectors(z2)) == [(-1, 0), (0, -1), (0, 1), (1, 0)]
    cx = dualcell.voronoi_complex(z2)
    assert len(cx.faces_of_dim(0)) == 4
    assert len(cx.faces_of_dim(1)) == 4
    assert len(cx.hole_classes) == 1


def test_hexagonal_cell_has_two_triangle_classes():
    a2 = lattice.get_lattice("A2")
    cx = dualcell.voronoi_complex(a2)
    assert len(cx.relevant) == 6
    assert len(cx.faces_of_dim(0)) == 6
    cells = dualcell.delone_cells(a2)
    assert {c.hole_class for c in cells} == {0, 1}
    assert all(len(c.points) == 3 and c.dim == 2 for c in cells)


def test_a4_cell_has_twenty_facets():
    a4 = lattice.get_lattice("A4")
    assert len(dualcell.relevant_vectors(a4)) == 20


@pytest.mark.parametrize("name", ["Z2", "A2", "Z4", "A4"])
def test_duality_holds(name):
    assert dualcell.duality_defects(lattice.get_lattice(name)) == []


def test_six_dimensional_lattice_rejected():
    with pytest.raises(UnsupportedDimensionError):
        dualcell.voronoi_complex(lattice.get_lattice("D6"))


def test_voronoi_domain_contains_center_only_half_way():
    domain = dualcell.voronoi_domain(lattice.get_lattice("Z2"), center=[2, 0])
    assert domain.contains([Fraction(5, 2), 0])
    assert not domain.contains([Fraction(3, 2) - Fraction(1, 10), 0])


@pytest.mark.parametrize("scheme_name", ["fibonacci", "ab", "penrose"])
@pytest.mark.parametrize("kind", ["T", "T*"])
def test_product_tiles_partition_the_torus(scheme_name, kind):
    total, covolume = dualcell.volume_partition(lattice.get_scheme(scheme_name), kind)
    assert total == covolume


def test_ab_product_tiles_are_square_and_rhomb():
    tiles = dualcell.product_tiles(lattice.get_scheme("ab"), "T")
    assert sorted({t.label for t in tiles}) == ["rhomb", "square"]


def test_fibonacci_section_covers_its_interval():
    scheme = lattice.get_scheme("fibonacci")
    frame = scheme.par_frame
    lower, upper = frame.point(0), frame.point(20)
    patch = dualcell.section_tiling(scheme, "T*", None, lower, upper)
    covered, box = dualcell.section_coverage(patch, lower, upper)
    assert covered == box
    assert {t.kind for t in patch.tiles} == {"A", "B"}


def test_ab_section_has_no_gaps():
    scheme = lattice.get_scheme("ab")
    frame = scheme.par_frame
    lower, upper = frame.point(-3, -3), frame.point(3, 3)
    patch = dualcell.section_tiling(scheme, "T*", None, lower, upper)
    covered, box = dualcell.section_coverage(patch, lower, upper)
    assert covered == box == quad(36, 0, 2)


def test_empty_region_gives_empty_section():
    scheme = lattice.get_scheme("ab")
    frame = scheme.par_frame
    patch = dualcell.section_tiling(scheme, "T", None, frame.point(1, 1), frame.point(1, 2))
    assert patch.tiles == []


def test_compatible_function_reads_tile_profiles():
    scheme = lattice.get_scheme("fibonacci")
    values = {"A": lambda r: 1.0, "B": lambda r: 2.0}
    assert dualcell.compatible_function_eval(scheme, "T*", values, [0.25]) in (1.0, 2.0)


def test_compatible_function_outside_region():
    scheme = lattice.get_scheme("fibonacci")
    frame = scheme.par_frame
    with pytest.raises(OutsideRegionError):
        dualcell.compatible_function_eval(scheme, "T*", {}, [50.0], region=(frame.point(0), frame.point(10)))
