"""
Cluster coverings: overlapping decagons over the Penrose rhombs and two pentagon
types over the triangle tiling. Cluster shapes come from the geometry (the decagon)
or from projected Delone cells of A4 (the pentagons).
"""
import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from services import dualcell
from services.cutproject import hole_label, lift_class
from services.errors import DimensionMismatchError
from services.exactnum import PENROSE_FRAME, Frame, QuadPoint, QuadValue, quad
from services.lattice import penrose_scheme
from services.patch import Patch, boundary_radius
from services.polygon import (
    Polytope,
    circumradius,
    contains,
    convex_hull,
    measure,
    points_in_convex,
    to_xy,
    translate,
)
from services.workers import map_ordered

logger = logging.getLogger(__name__)

ROUND = 7


@dataclass(frozen=True)
class CoveringCluster:
    name: str
    frame: Frame
    shape: Polytope
    center: QuadPoint
    anchor: str
    template: Dict[str, int] = field(default_factory=dict)

    @property
    def area(self) -> QuadValue:
        return measure(self.frame, self.shape)

    @property
    def diameter(self) -> float:
        return 2 * circumradius(self.frame, self.shape, self.center)


@dataclass
class Placement:
    cluster: str
    rotation: int
    shift: QuadPoint
    center: QuadPoint
    tiles: List[int]
    center_class: Optional[int] = None

    def to_dict(self, frame: Frame) -> dict:
        return {
            "cluster": self.cluster,
            "rotation": self.rotation,
            "center": list(frame.to_floats(self.center)),
            "tiles": self.tiles,
            "center_class": self.center_class,
        }


def template_counts(frame: Frame, shape_area: QuadValue, tile_areas: Dict[str, QuadValue]) -> Dict[str, int]:
    """
    Tile counts filling an area, from the exact area equation over the ring. Two tile
    kinds with areas independent over Q give two rational equations with a unique solution.
    """
    if len(tile_areas) != 2:
        return {}
    (k1, a1), (k2, a2) = tile_areas.items()
    det = a1.a * a2.b - a1.b * a2.a
    if det == 0:
        return {}
    n1 = (shape_area.a * a2.b - shape_area.b * a2.a) / det
    n2 = (a1.a * shape_area.b - a1.b * shape_area.a) / det
    if n1.denominator != 1 or n2.denominator != 1 or n1 < 0 or n2 < 0:
        return {}
    return {k1: int(n1), k2: int(n2)}


def _unit_tile_areas(kinds: Sequence[str]) -> Dict[str, QuadValue]:
    f = PENROSE_FRAME
    o = f.origin()
    shapes = {
        "thick": (o, f.unit(0), f.unit(0) + f.unit(2), f.unit(2)),
        "thin": (o, f.unit(0), f.unit(0) + f.unit(1), f.unit(1)),
    }
    # triangles over projected roots: edges 2 sin 36 (a) and tau * a
    a = f.unit(0) - f.unit(2)
    b = f.unit(0) - f.unit(4)
    shapes["gnomon"] = (o, a, f.rotate(a, 3))
    shapes["golden"] = (o, b, f.rotate(b, 1))
    return {k: abs(measure(f, shapes[k])) for k in kinds}


@lru_cache(maxsize=None)
def decagon_cluster() -> CoveringCluster:
    """
    Parallel projection of the A4 Voronoi domain: a regular decagon of unit edge
    (circumradius tau) centred at the origin.
    """
    scheme = penrose_scheme()
    f = scheme.par_frame
    domain = dualcell.voronoi_complex(scheme.lattice)
    shape = convex_hull(f, [scheme.project(v)[0] for v in domain.vertices])
    area = measure(f, shape)
    return CoveringCluster(
        name="decagon", frame=f, shape=shape, center=f.origin(), anchor="lattice point",
        template=template_counts(f, area, _unit_tile_areas(["thick", "thin"])),
    )


@lru_cache(maxsize=None)
def pentagon_clusters() -> Tuple[CoveringCluster, ...]:
    """Parallel projections of the Delone cells around holes of classes 1 and 2."""
    scheme = penrose_scheme()
    f = scheme.par_frame
    found: Dict[int, CoveringCluster] = {}
    for cell in dualcell.delone_cells(scheme.lattice):
        label = hole_label(scheme, cell.hole)
        if label not in (1, 2) or label in found:
            continue
        shape = convex_hull(f, [scheme.project(p)[0] for p in cell.points])
        center = scheme.project(cell.hole)[0]
        found[label] = CoveringCluster(
            name=f"pentagon-{label}", frame=f, shape=shape, center=center, anchor=f"hole class {label}",
            template=template_counts(f, measure(f, shape), _unit_tile_areas(["golden", "gnomon"])),
        )
    return tuple(found[k] for k in sorted(found))


CLUSTERS = {"decagon": lambda: (decagon_cluster(),), "pentagons": pentagon_clusters}


def get_clusters(name: str) -> Tuple[CoveringCluster, ...]:
    if name not in CLUSTERS:
        raise DimensionMismatchError(f"Unknown covering {name}", covering=name)
    return CLUSTERS[name]()


# --- occurrence search ---

def _rotations(cluster: CoveringCluster) -> List[Tuple[int, Polytope, QuadPoint]]:
    f = cluster.frame
    seen = set()
    out = []
    for r in range(f.angle_steps):
        shape = tuple(f.rotate(p, r) for p in cluster.shape)
        center = f.rotate(cluster.center, r)
        key = frozenset((p - center).key() for p in shape)
        if key in seen:
            continue
        seen.add(key)
        out.append((r, convex_hull(f, list(shape)), center))
    return out


def _rounded(xy: np.ndarray) -> List[tuple]:
    return [tuple(row) for row in np.round(xy, ROUND)]


def find_cluster_centers(patch: Patch, cluster: CoveringCluster, threads: Optional[int] = None) -> List[Placement]:
    """
    Every translate and rotation of the cluster whose corners are patch vertices and which
    is exactly the union of the patch tiles inside it.
    """
    if not patch.tiles:
        return []
    f = patch.frame
    xy = patch.vertex_array()
    vertex_keys = set(_rounded(xy))
    centroids = np.array([xy[list(t.vertices)].mean(axis=0) for t in patch.tiles])
    tile_areas = [patch.tile_area(t) for t in patch.tiles]
    target = cluster.area

    def search(rotation):
        r, shape, center = rotation
        sxy = to_xy(f, shape)
        anchor = sxy[0]
        shifts = xy - anchor
        corners = shifts[:, None, :] + sxy[None, :, :]
        keys = np.round(corners, ROUND)
        ok = np.array([all(tuple(k) in vertex_keys for k in row) for row in keys])
        placements = []
        for vi in np.nonzero(ok)[0]:
            z = patch.points[vi] - shape[0]
            placed = translate(shape, z)
            near = np.nonzero(points_in_convex(sxy + shifts[vi], centroids, tol=1e-7))[0]
            inside = [int(ti) for ti in near
                      if all(contains(f, placed, p) for p in patch.tile_points(patch.tiles[ti]))]
            total = sum((tile_areas[ti] for ti in inside), quad(0, 0, f.d))
            if total != target:
                continue
            c = center + z
            try:
                # class of the translation, sums being additive mod 5
                cls = lift_class(f, z)
            except DimensionMismatchError:
                cls = None
            placements.append(Placement(cluster=cluster.name, rotation=r, shift=z, center=c, tiles=inside,
                                        center_class=cls))
        return placements

    results = map_ordered(search, _rotations(cluster), threads)
    placements = [p for group in results for p in group]
    placements.sort(key=lambda p: (tuple(round(v, 9) for v in f.to_floats(p.center)), p.rotation))
    logger.info("Found %d %s placements in %s", len(placements), cluster.name, patch.name)
    return placements


def verify_covering(patch: Patch, placements: Sequence[Placement], margin: Optional[float] = None,
                    center: Optional[Sequence[float]] = None) -> dict:
    """
    Membership counts of the interior tiles (all vertices farther than `margin` from the
    patch rim) in the placed clusters.
    """
    xy = patch.vertex_array()
    c = np.zeros(2) if center is None else np.asarray(center, dtype=float)
    rim = boundary_radius(patch, c) if patch.tiles else 0.0
    if margin is None:
        margin = 0.0
    counts = np.zeros(len(patch.tiles), dtype=int)
    for p in placements:
        counts[p.tiles] += 1
    interior = [
        ti for ti, t in enumerate(patch.tiles)
        if np.all(np.hypot(*(xy[list(t.vertices)] - c).T) <= rim - margin)
    ]
    covered = [ti for ti in interior if counts[ti] > 0]
    uncovered = [ti for ti in interior if counts[ti] == 0]
    inner = counts[interior] if interior else np.zeros(0, dtype=int)
    classes: Dict[str, int] = {}
    for p in placements:
        classes[str(p.center_class)] = classes.get(str(p.center_class), 0) + 1
    report = {
        "tiles": len(patch.tiles),
        "placements": len(placements),
        "interior_tiles": len(interior),
        "covered_interior": len(covered),
        "covered_fraction": (len(covered) / len(interior)) if interior else 1.0,
        "uncovered": uncovered,
        "max_overlap": int(inner.max()) if len(inner) else 0,
        "mean_overlap": float(inner.mean()) if len(inner) else 0.0,
        "center_classes": dict(sorted(classes.items())),
        "margin": margin,
    }
    logger.info("Covering of %s: %d/%d interior tiles covered", patch.name, len(covered), len(interior))
    return report


def placement_counts(patch: Patch, placement: Placement) -> Dict[str, int]:
    counts: Dict[str, int] = {}
    for ti in placement.tiles:
        kind = patch.tiles[ti].kind
        counts[kind] = counts.get(kind, 0) + 1
    return dict(sorted(counts.items()))


def extract_template(patch: Patch, cluster: CoveringCluster, threads: Optional[int] = None) -> dict:
    """
    Tile counts read off every occurrence of the cluster in a patch, grouped by center
    class. `template` is the count found at the most frequent class.
    """
    placements = find_cluster_centers(patch, cluster, threads)
    by_class: Dict[str, List[Dict[str, int]]] = {}
    for p in placements:
        by_class.setdefault(str(p.center_class), []).append(placement_counts(patch, p))
    if not by_class:
        return {"template": {}, "occurrences": 0, "center_class": None, "consistent": False}
    cls, found = max(sorted(by_class.items()), key=lambda item: len(item[1]))
    template = found[0]
    return {
        "template": template,
        "occurrences": len(placements),
        "center_class": cls,
        "consistent": all(c == template for group in by_class.values() for c in group),
    }


def class_purity(placements: Sequence[Placement]) -> Dict[str, dict]:
    """Center classes met by each cluster, with the most frequent one."""
    seen: Dict[str, Dict[str, int]] = {}
    for p in placements:
        classes = seen.setdefault(p.cluster, {})
        classes[str(p.center_class)] = classes.get(str(p.center_class), 0) + 1
    return {
        name: {"classes": dict(sorted(classes.items())),
               "dominant": max(sorted(classes.items()), key=lambda item: item[1])[0],
               "pure": len(classes) == 1}
        for name, classes in sorted(seen.items())
    }


def cover(patch: Patch, covering: str, threads: Optional[int] = None) -> Tuple[List[Placement], dict]:
    """
    Find all placements of the named clusters and verify with a one-diameter margin.
    The report also covers with the dominant center class of each cluster alone, and
    compares the tiles of every placement with the cluster template.
    """
    clusters = get_clusters(covering)
    placements = []
    for cluster in clusters:
        placements += find_cluster_centers(patch, cluster, threads)
    margin = max(c.diameter for c in clusters)
    report = verify_covering(patch, placements, margin=margin)
    purity = class_purity(placements)
    dominant = [p for p in placements if str(p.center_class) == purity.get(p.cluster, {}).get("dominant")]
    report["class_purity"] = purity
    report["dominant_class_covered_fraction"] = verify_covering(patch, dominant, margin=margin)["covered_fraction"]
    templates = {c.name: c.template for c in clusters}
    mismatches = [i for i, p in enumerate(placements) if placement_counts(patch, p) != templates[p.cluster]]
    report["template_mismatches"] = len(mismatches)
    report["clusters"] = {c.name: {"anchor": c.anchor, "template": c.template} for c in clusters}
    return placements, report
