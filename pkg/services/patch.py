"""
Patch: the common output of every construction route.

Vertices are exact points (deduplicated) with an optional lift to the ambient lattice;
tiles are typed index lists in counter-clockwise (or half-tile) order.
"""
import logging
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from schemas.tiling import DecorationSchema, PatchSchema, TileResponse, VertexResponse
from services.errors import DimensionMismatchError
from services.exactnum import Frame, QuadPoint, QuadValue, frame_by_name, lex_compare, quad
from services.polygon import measure

logger = logging.getLogger(__name__)

PROVENANCES = ("cutproject", "inflation", "section")


@dataclass(frozen=True)
class EdgeDecoration:
    kind: str  # "single" | "double"
    direction: int  # +1 when the arrow runs from the lexicographically smaller endpoint


@dataclass
class Tile:
    kind: str
    vertices: Tuple[int, ...]
    orientation: int = 0
    decoration: Optional[Tuple[EdgeDecoration, ...]] = None
    cls: Optional[int] = None
    anchor: Optional[QuadPoint] = None

    @property
    def edges(self) -> List[Tuple[int, int]]:
        n = len(self.vertices)
        if n == 2:
            return [(self.vertices[0], self.vertices[1])]
        return [(self.vertices[i], self.vertices[(i + 1) % n]) for i in range(n)]


class Patch:
    def __init__(self, frame: Frame, provenance: str, name: str = ""):
        self.frame = frame
        self.provenance = provenance
        self.name = name
        self.points: List[QuadPoint] = []
        self.lifts: List[Optional[Tuple]] = []
        self.tiles: List[Tile] = []
        self._index: Dict[QuadPoint, int] = {}
        self.meta: Dict[str, object] = {}

    def __len__(self):
        return len(self.tiles)

    @property
    def d(self) -> int:
        return self.frame.d

    def add_vertex(self, point: QuadPoint, lift: Optional[Sequence] = None) -> int:
        idx = self._index.get(point)
        if idx is None:
            idx = len(self.points)
            self._index[point] = idx
            self.points.append(point)
            self.lifts.append(tuple(lift) if lift is not None else None)
        elif lift is not None and self.lifts[idx] is None:
            self.lifts[idx] = tuple(lift)
        return idx

    def vertex_index(self, point: QuadPoint) -> Optional[int]:
        return self._index.get(point)

    def add_tile(self, kind: str, points: Sequence[QuadPoint], lifts: Optional[Sequence] = None,
                 decoration=None, cls: Optional[int] = None, anchor: Optional[QuadPoint] = None,
                 orientation: Optional[int] = None) -> Tile:
        lifts = lifts or [None] * len(points)
        ids = tuple(self.add_vertex(p, l) for p, l in zip(points, lifts))
        if orientation is None:
            orientation = self.frame.direction_index(points[1] - points[0]) if self.frame.dim == 2 else 0
        tile = Tile(kind=kind, vertices=ids, orientation=orientation, decoration=decoration, cls=cls, anchor=anchor)
        self.tiles.append(tile)
        return tile

    def tile_points(self, tile: Tile) -> List[QuadPoint]:
        return [self.points[i] for i in tile.vertices]

    def tile_area(self, tile: Tile) -> QuadValue:
        return abs(measure(self.frame, tuple(self.tile_points(tile))))

    def kinds(self) -> Dict[str, int]:
        counts: Dict[str, int] = {}
        for t in self.tiles:
            counts[t.kind] = counts.get(t.kind, 0) + 1
        return dict(sorted(counts.items()))

    def vertex_array(self) -> np.ndarray:
        if not self.points:
            return np.zeros((0, self.frame.dim))
        return np.array([self.frame.to_floats(p) for p in self.points], dtype=float)

    def used_vertices(self) -> List[int]:
        return sorted({i for t in self.tiles for i in t.vertices})

    def edge_map(self) -> Dict[Tuple[int, int], List[Tuple[int, int]]]:
        """Undirected edge -> list of (tile index, edge position)."""
        edges: Dict[Tuple[int, int], List[Tuple[int, int]]] = {}
        for ti, tile in enumerate(self.tiles):
            for ei, (a, b) in enumerate(tile.edges):
                edges.setdefault((min(a, b), max(a, b)), []).append((ti, ei))
        return edges

    def lex_less(self, i: int, j: int) -> bool:
        return lex_compare(self.points[i], self.points[j]) < 0

    def copy(self) -> "Patch":
        other = Patch(self.frame, self.provenance, self.name)
        other.points = list(self.points)
        other.lifts = list(self.lifts)
        other._index = dict(self._index)
        other.tiles = [replace(t) for t in self.tiles]
        other.meta = dict(self.meta)
        return other

    def subpatch(self, tile_ids: Iterable[int]) -> "Patch":
        other = Patch(self.frame, self.provenance, self.name)
        for ti in tile_ids:
            t = self.tiles[ti]
            other.add_tile(t.kind, self.tile_points(t), [self.lifts[i] for i in t.vertices],
                           decoration=t.decoration, cls=t.cls, anchor=t.anchor, orientation=t.orientation)
        return other

    def canonicalize(self, keep_isolated: bool = True) -> "Patch":
        """Vertices sorted by coordinates, tiles sorted by their vertices."""
        order = sorted(range(len(self.points)), key=lambda i: _point_sort_key(self.frame, self.points[i]))
        if not keep_isolated:
            used = set(self.used_vertices())
            order = [i for i in order if i in used]
        remap = {old: new for new, old in enumerate(order)}
        other = Patch(self.frame, self.provenance, self.name)
        for old in order:
            other.add_vertex(self.points[old], self.lifts[old])
        tiles = [replace(t, vertices=tuple(remap[i] for i in t.vertices)) for t in self.tiles]
        tiles.sort(key=lambda t: (min(t.vertices), t.kind, t.vertices))
        other.tiles = tiles
        other.meta = dict(self.meta)
        return other


def _point_sort_key(frame: Frame, p: QuadPoint):
    floats = tuple(round(v, 9) for v in frame.to_floats(p))
    return floats + (p.key(),)


def empty_patch(frame: Frame, provenance: str, name: str = "") -> Patch:
    return Patch(frame, provenance, name)


def boundary_radius(patch: Patch, center=None) -> float:
    """Distance from `center` to the nearest vertex on an edge used by a single tile."""
    xy = patch.vertex_array()
    if len(xy) == 0:
        return 0.0
    c = np.zeros(xy.shape[1]) if center is None else np.asarray(center, dtype=float)
    rel = xy - c
    boundary = sorted({i for (a, b), uses in patch.edge_map().items() if len(uses) == 1 for i in (a, b)})
    pts = rel[boundary] if boundary else rel
    dist = np.sqrt(np.sum(pts ** 2, axis=1))
    return float(dist.min() if boundary else dist.max())


# --- shape names ---

def _ratio_equals(value: QuadValue, target: QuadValue) -> bool:
    return (value - target).is_zero()


def classify_shape(frame: Frame, pts: Sequence[QuadPoint]) -> str:
    """Name a tile from its exact geometry."""
    d = frame.d
    if frame.dim == 1:
        length = abs(pts[1][0] - pts[0][0])
        if length == quad(0, 1, 5):
            return "A"
        if length == 1:
            return "B"
        return "interval"
    n = len(pts)
    sides = [frame.norm_sq(pts[(i + 1) % n] - pts[i]) for i in range(n)]
    if n == 3:
        s = sorted(sides, key=lambda v: float(v))
        if _ratio_equals(s[0] + s[1], s[2]) and s[0] == s[1]:
            return "triangle"
        if s[0] == s[1] and s[2] != s[1]:
            return "gnomon"
        if s[1] == s[2] and s[0] != s[1]:
            return "golden"
        return "triangle-other"
    if n == 4 and all(x == sides[0] for x in sides):
        e1, e2 = pts[1] - pts[0], pts[3] - pts[0]
        dot = frame.dot(e1, e2)
        if dot.is_zero():
            return "square"
        if d == 2:
            return "rhomb"
        cos_sq = (dot * dot) / (sides[0] * sides[0])
        # cos^2 36 = (tau + 1) / 4, cos^2 72 = (2 - tau) / 4
        if cos_sq == quad(Fraction(1, 4), Fraction(1, 4), 5):
            return "thin"
        if cos_sq == quad(Fraction(1, 2), Fraction(-1, 4), 5):
            return "thick"
        return "rhomb-other"
    return f"polygon{n}"


def edge_lengths_by_kind(patch: Patch) -> Dict[str, List[QuadValue]]:
    result: Dict[str, set] = {}
    for t in patch.tiles:
        pts = patch.tile_points(t)
        lengths = result.setdefault(t.kind, set())
        if patch.frame.dim == 1:
            lengths.add(abs(pts[1][0] - pts[0][0]))
            continue
        for a, b in t.edges:
            lengths.add(patch.frame.norm_sq(patch.points[b] - patch.points[a]))
    return {k: sorted(v, key=float) for k, v in result.items()}


# --- serialization ---

def _pairs(p: QuadPoint) -> List[List[str]]:
    return [list(c.to_pair()) for c in p.coords]


def patch_to_schema(patch: Patch) -> PatchSchema:
    vertices = [
        VertexResponse(index=i, coords=_pairs(p), lift=[str(x) for x in lift] if lift is not None else None)
        for i, (p, lift) in enumerate(zip(patch.points, patch.lifts))
    ]
    tiles = [
        TileResponse(
            kind=t.kind,
            vertices=list(t.vertices),
            orientation=t.orientation,
            decoration=[DecorationSchema(kind=d.kind, direction=d.direction) for d in t.decoration]
            if t.decoration is not None else None,
            cls=t.cls,
            anchor=_pairs(t.anchor) if t.anchor is not None else None,
        )
        for t in patch.tiles
    ]
    return PatchSchema(name=patch.name, provenance=patch.provenance, ring=patch.frame.name,
                       vertices=vertices, tiles=tiles, meta=patch.meta)


def patch_from_schema(data: PatchSchema) -> Patch:
    frame = frame_by_name(data.ring)
    patch = Patch(frame, data.provenance, data.name)
    unpair = lambda raw: QuadPoint(tuple(QuadValue.from_pair(c, frame.d) for c in raw))
    for v in sorted(data.vertices, key=lambda v: v.index):
        idx = patch.add_vertex(unpair(v.coords), [Fraction(x) for x in v.lift] if v.lift is not None else None)
        if idx != v.index:
            raise DimensionMismatchError("Patch vertices are not distinct and consecutive", index=v.index)
    for t in data.tiles:
        if any(i < 0 or i >= len(patch.points) for i in t.vertices):
            raise DimensionMismatchError("Tile refers to a missing vertex", vertices=t.vertices)
        decoration = tuple(EdgeDecoration(d.kind, d.direction) for d in t.decoration) if t.decoration else None
        patch.tiles.append(Tile(kind=t.kind, vertices=tuple(t.vertices), orientation=t.orientation,
                                decoration=decoration, cls=t.cls,
                                anchor=unpair(t.anchor) if t.anchor is not None else None))
    patch.meta = dict(data.meta)
    return patch
