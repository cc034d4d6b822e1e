import pytest

from services import matching
from services.exactnum import PENROSE_FRAME
from services.errors import DecorationInconsistencyError, UndecoratedTileError


def _interior(patch):
    shared = {}
    for edge, uses in patch.edge_map().items():
        for ti, _ in uses:
            shared.setdefault(ti, []).append(len(uses) == 2)
    return next(ti for ti, flags in sorted(shared.items()) if len(flags) == 4 and all(flags))


def test_inflated_sun_is_legal(penrose_sun):
    report = matching.check_legality(penrose_sun)
    assert report["legal"], report["violations"][:3]
    assert report["interior_edges"] > 0


def test_mirrored_rhomb_breaks_legality(penrose_sun):
    broken = matching.reflect_tile(penrose_sun, _interior(penrose_sun))
    report = matching.check_legality(broken)
    assert not report["legal"]
    assert any(v["type"] == "decoration" for v in report["violations"])


def test_section_tiling_can_be_decorated(penrose_patch):
    decorated = matching.decorate(penrose_patch)
    assert decorated.meta["decorated"] is True
    assert matching.check_legality(decorated)["legal"]


def test_undecorated_patch_rejected(penrose_patch):
    with pytest.raises(UndecoratedTileError):
        matching.check_legality(penrose_patch)


def test_squares_cannot_be_decorated(ab_patch):
    with pytest.raises(DecorationInconsistencyError):
        matching.decorate(ab_patch)


def test_rhomb_decoration_pattern():
    f = PENROSE_FRAME
    pts = [f.origin(), f.unit(0), f.unit(0) + f.unit(3), f.unit(3)]
    decoration = matching.rhomb_decoration(f, "thick", pts)
    assert [d.kind for d in decoration] == ["single", "single", "double", "double"]
