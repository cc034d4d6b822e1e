import xml.etree.ElementTree as ET

from services import covering, cutproject, diffraction, render
from services.exactnum import AB_FRAME, GOLDEN_LINE
from services.patch import empty_patch

SVG = "{http://www.w3.org/2000/svg}"


def _parse(text):
    return ET.fromstring(text.split("\n", 1)[1])


def test_every_tile_becomes_a_polygon(ab_patch):
    root = _parse(render.patch_svg(ab_patch))
    assert root.tag == SVG + "svg"
    classes = [p.get("class") for p in root.iter(SVG + "polygon") if p.get("class")]
    assert len(classes) == len(ab_patch.tiles)
    assert set(classes) == {"square", "rhomb"}


def test_svg_is_deterministic(ab_patch):
    assert render.patch_svg(ab_patch) == render.patch_svg(ab_patch)


def test_decorations_drawn_as_arrowheads(penrose_sun):
    with_marks = _parse(render.patch_svg(penrose_sun))
    without = _parse(render.patch_svg(penrose_sun, decorations=False))
    assert len(list(with_marks.iter(SVG + "polygon"))) > len(list(without.iter(SVG + "polygon")))


def test_empty_patch_still_renders():
    root = _parse(render.patch_svg(empty_patch(AB_FRAME, "section")))
    assert list(root.iter(SVG + "polygon")) == []
    assert root.get("viewBox")


def test_vertex_set_drawn_as_dots():
    patch = cutproject.penrose_vertex_set(2.0)
    root = _parse(render.patch_svg(patch))
    assert len(list(root.iter(SVG + "circle"))) == len(patch.points)


def test_fibonacci_chain_drawn_as_segments():
    patch = cutproject.fibonacci_section(10.0)
    root = _parse(render.patch_svg(patch))
    assert len(list(root.iter(SVG + "line"))) == len(patch.tiles)
    assert render.patch_svg(empty_patch(GOLDEN_LINE, "section"))


def test_pattern_disks():
    pattern = diffraction.predict_peaks(cutproject.ab_spec(), cutoff=5e-2, k_max=4.0)
    root = _parse(render.pattern_svg(pattern))
    assert len(list(root.iter(SVG + "circle"))) == len(pattern.peaks)
    assert root.find(SVG + "rect").get("fill") == "#000"


def test_overlays_outline_placements(penrose_patch):
    placements = covering.find_cluster_centers(penrose_patch, covering.decagon_cluster())
    overlays = render.placement_overlays(penrose_patch, [p.tiles for p in placements])
    assert all(len(o) == 10 for o in overlays)
    root = _parse(render.patch_svg(penrose_patch, overlays=overlays))
    assert len(list(root.iter(SVG + "polygon"))) >= len(penrose_patch.tiles) + len(overlays)
