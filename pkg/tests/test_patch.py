import json

import pytest
from pydantic import ValidationError

from schemas.tiling import PatchSchema
from services.errors import DimensionMismatchError
from services.exactnum import AB_FRAME, PENROSE_FRAME
from services.patch import Patch, boundary_radius, classify_shape, patch_from_schema, patch_to_schema


def test_schema_round_trip_is_exact(ab_patch):
    again = patch_from_schema(PatchSchema(**json.loads(patch_to_schema(ab_patch).json())))
    assert again.points == ab_patch.points
    assert again.lifts == ab_patch.lifts
    assert [(t.kind, t.vertices) for t in again.tiles] == [(t.kind, t.vertices) for t in ab_patch.tiles]
    assert again.frame is AB_FRAME


def test_decorations_survive_the_round_trip(penrose_sun):
    again = patch_from_schema(patch_to_schema(penrose_sun))
    assert [t.decoration for t in again.tiles] == [t.decoration for t in penrose_sun.tiles]


def test_schema_version_checked():
    with pytest.raises(ValidationError):
        PatchSchema(schema_version=2, provenance="section", ring="octagonal")


def test_bad_decoration_rejected():
    with pytest.raises(ValidationError):
        PatchSchema(provenance="section", ring="decagonal", vertices=[], tiles=[
            {"kind": "thin", "vertices": [0, 1, 2, 3], "decoration": [{"kind": "triple", "direction": 1}]},
        ])


def test_dangling_tile_rejected():
    data = PatchSchema(provenance="section", ring="octagonal",
                       vertices=[{"index": 0, "coords": [["0", "0"], ["0", "0"]]}],
                       tiles=[{"kind": "rhomb", "vertices": [0, 1]}])
    with pytest.raises(DimensionMismatchError):
        patch_from_schema(data)


def test_vertices_must_be_consecutive():
    data = PatchSchema(provenance="section", ring="octagonal", vertices=[
        {"index": 0, "coords": [["0", "0"], ["0", "0"]]},
        {"index": 2, "coords": [["1", "0"], ["0", "0"]]},
    ])
    with pytest.raises(DimensionMismatchError):
        patch_from_schema(data)


@pytest.mark.parametrize("frame, steps, kind", [
    (AB_FRAME, 2, "square"),
    (AB_FRAME, 1, "rhomb"),
    (PENROSE_FRAME, 2, "thick"),
    (PENROSE_FRAME, 1, "thin"),
])
def test_classify_rhombs(frame, steps, kind):
    o, a, b = frame.origin(), frame.unit(0), frame.unit(steps)
    assert classify_shape(frame, [o, a, a + b, b]) == kind


def test_kinds_are_counted():
    patch = Patch(AB_FRAME, "section")
    o, a, b = AB_FRAME.origin(), AB_FRAME.unit(0), AB_FRAME.unit(2)
    patch.add_tile("square", [o, a, a + b, b])
    patch.add_tile("square", [a, a + a, a + a + b, a + b])
    assert patch.kinds() == {"square": 2}
    assert len(patch.points) == 6
    assert boundary_radius(patch) == pytest.approx(0.0)
