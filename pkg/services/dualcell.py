"""
Voronoi and Delone complexes of a lattice, product tiles and section tilings.

All cell geometry is done in lattice coefficient coordinates with the rational Gram
matrix, so every predicate is exact over Q. Projections into the parallel and
perpendicular frames go through the projection scheme.
"""
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

import numpy as np

from services import linalg
from services.errors import (
    DegenerateProjectionError,
    DimensionMismatchError,
    OutsideRegionError,
    SingularOffsetError,
    UnsupportedDimensionError,
)
from services.exactnum import Frame, QuadPoint, QuadValue, to_float, zero
from services.lattice import EmbeddedLattice, ProjectionScheme
from services.patch import Patch, classify_shape
from services.polygon import (
    Polytope,
    clip_to_box,
    contains,
    convex_hull,
    measure,
)
from services.workers import map_ordered

logger = logging.getLogger(__name__)

MAX_DIMENSION = 4
FLOAT_TOL = 1e-9
# truncations of 1/pi and 1/(2 pi)
GENERIC_OFFSET = (Fraction(31830988618, 10 ** 11), Fraction(15915494309, 10 ** 11))

Vector = Tuple[Fraction, ...]
IntVector = Tuple[int, ...]


def generic_offset(frame: Frame) -> QuadPoint:
    return frame.point(*GENERIC_OFFSET[: frame.dim])


def _check_dimension(lattice: EmbeddedLattice) -> None:
    if lattice.dim > MAX_DIMENSION:
        raise UnsupportedDimensionError(
            f"Cell complexes are computed up to dimension {MAX_DIMENSION}", lattice=lattice.name, dim=lattice.dim
        )


def _norm(gram, v: Sequence) -> Fraction:
    n = len(v)
    total = Fraction(0)
    for i in range(n):
        if v[i]:
            row = gram[i]
            total += v[i] * sum((row[j] * v[j] for j in range(n) if v[j]), Fraction(0))
    return total


def _sub(u: Sequence, v: Sequence) -> Vector:
    return tuple(Fraction(a) - b for a, b in zip(u, v))


def short_vectors(lattice: EmbeddedLattice, radius_sq: Fraction) -> List[IntVector]:
    """Nonzero lattice vectors (coefficients) with squared norm <= radius_sq."""
    gram = lattice.gram
    n = lattice.dim
    g_inv = linalg.inverse(gram)
    bounds = [int(math.floor(math.sqrt(float(g_inv[j][j] * radius_sq)) + 1e-9)) for j in range(n)]
    axes = [np.arange(-b, b + 1) for b in bounds]
    grid = np.stack([g.ravel() for g in np.meshgrid(*axes, indexing="ij")], axis=1)
    gf = linalg.to_float_array(gram)
    norms = np.einsum("ij,jk,ik->i", grid, gf, grid)
    cand = grid[(norms <= float(radius_sq) + 1e-7) & np.any(grid != 0, axis=1)]
    result = []
    for row in cand:
        v = tuple(int(x) for x in row)
        if _norm(gram, v) <= radius_sq:
            result.append(v)
    return sorted(result)


def _relevant(lattice: EmbeddedLattice, shell_factor: int) -> List[IntVector]:
    gram = lattice.gram
    radius = shell_factor * max(gram[i][i] for i in range(lattice.dim))
    shell = short_vectors(lattice, radius)
    classes: Dict[IntVector, List[IntVector]] = {}
    for v in shell:
        classes.setdefault(tuple(x % 2 for x in v), []).append(v)
    relevant = []
    for members in classes.values():
        norms = [_norm(gram, v) for v in members]
        low = min(norms)
        minimal = [v for v, nv in zip(members, norms) if nv == low]
        if len(minimal) == 2:
            relevant += minimal
    return sorted(relevant)


def relevant_vectors(lattice: EmbeddedLattice, shell_factor: int = 4, validate: bool = True) -> List[IntVector]:
    """
    Voronoi-relevant vectors: v is relevant when +v and -v are the only shortest vectors
    of the coset v + 2L. The search shell is shell_factor * max Gram diagonal; with
    `validate` the result is recomputed on a doubled shell.
    """
    _check_dimension(lattice)
    found = _relevant(lattice, shell_factor)
    if validate:
        doubled = _relevant(lattice, 2 * shell_factor)
        if doubled != found:
            logger.warning("Relevant vectors of %s changed under shell doubling (%d -> %d)",
                           lattice.name, len(found), len(doubled))
            found = doubled
    return found


# --- Voronoi complex ---

@dataclass(frozen=True, eq=False)
class Face:
    """A p-boundary of the Voronoi domain at the origin."""
    dim: int
    vertex_ids: FrozenSet[int]
    vertices: Tuple[Vector, ...]
    centroid: Vector
    incident: Tuple[IntVector, ...]
    translation_class: int = -1


PBoundary = Face


@dataclass(frozen=True)
class VoronoiDomain:
    lattice: EmbeddedLattice
    center: IntVector
    facet_normals: Tuple[IntVector, ...]
    vertices: Tuple[Vector, ...]

    def contains(self, point: Sequence) -> bool:
        gram = self.lattice.gram
        rel = _sub(point, self.center)
        for t in self.facet_normals:
            if _bilinear(gram, rel, t) > _norm(gram, t) / 2:
                return False
        return True


@dataclass(frozen=True)
class DualBoundary:
    boundary: Face
    points: Tuple[IntVector, ...]
    dim: int


@dataclass(frozen=True)
class DeloneCell:
    hole: Vector
    hole_class: int
    points: Tuple[IntVector, ...]
    dim: int


@dataclass(eq=False)
class VoronoiComplex:
    lattice: EmbeddedLattice
    relevant: List[IntVector]
    vertices: List[Vector]
    faces: List[Face]
    hole_classes: Dict[Vector, int]

    def faces_of_dim(self, p: int) -> List[Face]:
        return [f for f in self.faces if f.dim == p]

    def vertex_face(self, index: int) -> Face:
        return next(f for f in self.faces if f.dim == 0 and index in f.vertex_ids)


def _bilinear(gram, u: Sequence, v: Sequence) -> Fraction:
    n = len(u)
    return sum((u[i] * gram[i][j] * v[j] for i in range(n) if u[i] for j in range(n) if v[j]), Fraction(0))


def _voronoi_vertices(lattice: EmbeddedLattice, relevant: List[IntVector]) -> List[Vector]:
    gram = lattice.gram
    n = lattice.dim
    normals = [[sum((gram[k][j] * v[j] for j in range(n)), Fraction(0)) for k in range(n)] for v in relevant]
    rhs = [_norm(gram, v) / 2 for v in relevant]
    a = linalg.to_float_array(normals)
    b = np.array([float(x) for x in rhs])
    idx = np.array(list(combinations(range(len(relevant)), n)))
    mats = a[idx]
    regular = np.abs(np.linalg.det(mats)) > 1e-9
    idx, mats = idx[regular], mats[regular]
    sols = np.linalg.solve(mats, b[idx][..., None])[..., 0]
    feasible = np.all(sols @ a.T <= b[None, :] + 1e-7, axis=1)
    groups: Dict[tuple, np.ndarray] = {}
    for combo, sol in zip(idx[feasible], sols[feasible]):
        groups.setdefault(tuple(np.round(sol, 7)), combo)
    vertices = []
    for combo in groups.values():
        x = linalg.solve([normals[i] for i in combo], [rhs[i] for i in combo])
        if x is None:
            continue
        if all(sum((nr[k] * x[k] for k in range(n)), Fraction(0)) <= r for nr, r in zip(normals, rhs)):
            vertices.append(tuple(x))
    return sorted(set(vertices))


def _incident_points(gram, centroid: Vector, candidates: List[IntVector]) -> Tuple[IntVector, ...]:
    target = _norm(gram, centroid)
    return tuple(t for t in candidates if _norm(gram, _sub(centroid, t)) == target)


@lru_cache(maxsize=None)
def voronoi_complex(lattice: EmbeddedLattice) -> VoronoiComplex:
    """
    Every face of the Voronoi domain at the origin with its dimension, incident lattice
    points and translation class; faces are the closure of the facets under intersection.
    """
    _check_dimension(lattice)
    n = lattice.dim
    gram = lattice.gram
    relevant = relevant_vectors(lattice)
    vertices = _voronoi_vertices(lattice, relevant)

    facets = []
    for v in relevant:
        level = _norm(gram, v) / 2
        ids = frozenset(i for i, x in enumerate(vertices) if _bilinear(gram, x, v) == level)
        facets.append(ids)
    face_sets = set(facets) | {frozenset(range(len(vertices)))}
    frontier = set(facets)
    while frontier:
        fresh = set()
        for f in frontier:
            for g in facets:
                h = f & g
                if h and h not in face_sets:
                    fresh.add(h)
        face_sets |= fresh
        frontier = fresh

    radius_sq = max(_norm(gram, x) for x in vertices)
    candidates = [tuple([0] * n)] + short_vectors(lattice, 4 * radius_sq)

    raw = []
    for ids in face_sets:
        pts = tuple(vertices[i] for i in sorted(ids))
        dim = linalg.affine_rank([list(p) for p in pts])
        centroid = tuple(sum(p[k] for p in pts) / len(pts) for k in range(n))
        incident = _incident_points(gram, centroid, candidates)
        raw.append((dim, ids, pts, centroid, incident))

    def class_key(pts, incident):
        return min(tuple(sorted(_sub(p, t) for p in pts)) for t in incident)

    keys = [class_key(r[2], r[4]) for r in raw]
    classes_by_dim: Dict[int, List[tuple]] = {}
    for r, key in zip(raw, keys):
        classes_by_dim.setdefault(r[0], []).append(key)
    class_index = {d: {k: i for i, k in enumerate(sorted(set(ks)))} for d, ks in classes_by_dim.items()}

    faces = [
        Face(dim=r[0], vertex_ids=r[1], vertices=r[2], centroid=r[3], incident=r[4],
             translation_class=class_index[r[0]][key])
        for r, key in zip(raw, keys)
    ]
    faces.sort(key=lambda f: (f.dim, f.translation_class, tuple(sorted(f.vertex_ids))))

    hole_keys = sorted({tuple(x % 1 for x in v) for v in vertices})
    hole_classes = {k: i for i, k in enumerate(hole_keys)}
    cx = VoronoiComplex(lattice=lattice, relevant=relevant, vertices=vertices, faces=faces, hole_classes=hole_classes)
    logger.info(
        "Voronoi complex of %s: %d facets, %d vertices, %d faces, %d hole classes",
        lattice.name, len(relevant), len(vertices), len(faces), len(hole_classes),
    )
    return cx


def voronoi_domain(lattice: EmbeddedLattice, center: Optional[Sequence[int]] = None) -> VoronoiDomain:
    cx = voronoi_complex(lattice)
    center = tuple(int(c) for c in (center or [0] * lattice.dim))
    if len(center) != lattice.dim:
        raise DimensionMismatchError("Center has the wrong dimension", expected=lattice.dim)
    shifted = tuple(tuple(x + c for x, c in zip(v, center)) for v in cx.vertices)
    return VoronoiDomain(lattice=lattice, center=center, facet_normals=tuple(cx.relevant), vertices=shifted)


def hole_class_of(cx: VoronoiComplex, hole: Vector) -> int:
    return cx.hole_classes[tuple(x % 1 for x in hole)]


def delone_cells(lattice: EmbeddedLattice) -> List[DeloneCell]:
    """Delone cells around the vertices (holes) of the Voronoi domain at the origin."""
    cx = voronoi_complex(lattice)
    cells = []
    for f in cx.faces_of_dim(0):
        hole = f.vertices[0]
        dim = linalg.affine_rank([list(p) for p in f.incident])
        cells.append(DeloneCell(hole=hole, hole_class=hole_class_of(cx, hole), points=f.incident, dim=dim))
    return cells


def dual_boundary(boundary: Face) -> DualBoundary:
    if not boundary.incident:
        raise DimensionMismatchError("Boundary has no incident lattice points", dim=boundary.dim)
    dim = linalg.affine_rank([list(p) for p in boundary.incident])
    return DualBoundary(boundary=boundary, points=boundary.incident, dim=dim)


def duality_defects(lattice: EmbeddedLattice) -> List[Tuple[int, int]]:
    """(dim X, dim X*) pairs violating dim X + dim X* = n; empty when the complex is sound."""
    cx = voronoi_complex(lattice)
    out = []
    for f in cx.faces:
        d = dual_boundary(f).dim
        if f.dim + d != lattice.dim:
            out.append((f.dim, d))
    return out


# --- product tiles ---

@dataclass(frozen=True, eq=False)
class ProductTile:
    kind: str
    translation_class: int
    par: Polytope
    perp: Polytope
    par_lifts: Dict[QuadPoint, Vector]
    label: str
    par_measure: QuadValue
    perp_measure: QuadValue

    @property
    def volume(self) -> QuadValue:
        return self.par_measure * self.perp_measure


def _hull_with_lifts(frame: Frame, scheme: ProjectionScheme, sources: Sequence[Vector], which: int):
    projected = {}
    for src in sources:
        projected.setdefault(scheme.project(src)[which], src)
    hull = convex_hull(frame, list(projected))
    return hull, {p: projected[p] for p in hull}


@lru_cache(maxsize=None)
def product_tiles(scheme: ProjectionScheme, kind: str) -> List[ProductTile]:
    """
    One product tile per translation class. Kind "T" pairs Voronoi m-boundaries (parallel)
    with their duals (perpendicular); kind "T*" pairs Delone m-cells (parallel) with the
    Voronoi (n-m)-boundaries they are dual to (perpendicular).
    """
    if kind not in ("T", "T*"):
        raise DimensionMismatchError(f"Unknown product tile kind {kind}", kind=kind)
    cx = voronoi_complex(scheme.lattice)
    n, m = scheme.n, scheme.m
    face_dim = m if kind == "T" else n - m
    representatives: Dict[int, Face] = {}
    for f in cx.faces_of_dim(face_dim):
        representatives.setdefault(f.translation_class, f)
    tiles = []
    for cls in sorted(representatives):
        face = representatives[cls]
        par_src = face.vertices if kind == "T" else face.incident
        perp_src = face.incident if kind == "T" else face.vertices
        par, lifts = _hull_with_lifts(scheme.par_frame, scheme, par_src, 0)
        perp, _ = _hull_with_lifts(scheme.perp_frame, scheme, perp_src, 1)
        par_measure, perp_measure = measure(scheme.par_frame, par), measure(scheme.perp_frame, perp)
        if par_measure.sign() <= 0 or perp_measure.sign() <= 0:
            raise DegenerateProjectionError(
                "Product tile factor projects to a lower-dimensional set",
                kind=kind, translation_class=cls, face=[[str(x) for x in v] for v in face.vertices],
            )
        tiles.append(ProductTile(
            kind=kind, translation_class=cls, par=par, perp=perp, par_lifts=lifts,
            label=classify_shape(scheme.par_frame, par), par_measure=par_measure, perp_measure=perp_measure,
        ))
    logger.info("Product tiles of %s kind %s: %d classes %s", scheme.name, kind, len(tiles),
                sorted({t.label for t in tiles}))
    return tiles


def covolume(scheme: ProjectionScheme) -> QuadValue:
    """|det| of the combined projection in frame units."""
    return abs(linalg.det(scheme.exact_matrix()))


def volume_partition(scheme: ProjectionScheme, kind: str) -> Tuple[QuadValue, QuadValue]:
    total = zero(scheme.par_frame.d)
    for t in product_tiles(scheme, kind):
        total = total + t.volume
    return total, covolume(scheme)


def vertex_windows(scheme: ProjectionScheme, kind: str, c_perp: Optional[QuadPoint] = None) -> List[dict]:
    """
    Windows for the vertex classes of a section tiling. Kind "T" vertices are projected
    holes h + t, accepted when (h + t)_perp lies in c - (D_h - h)_perp; kind "T*" vertices
    are lattice points accepted when t_perp lies in c - (Voronoi domain)_perp.
    """
    c = c_perp if c_perp is not None else generic_offset(scheme.perp_frame)
    cx = voronoi_complex(scheme.lattice)
    frame = scheme.perp_frame
    n = scheme.n
    if kind == "T*":
        pts = [c - scheme.project(v)[1] for v in cx.vertices]
        return [{"label": 0, "shift": tuple(Fraction(0) for _ in range(n)), "window": convex_hull(frame, pts)}]
    windows = []
    seen = set()
    for index, v in enumerate(cx.vertices):
        cls = hole_class_of(cx, v)
        if cls in seen:
            continue
        seen.add(cls)
        face = cx.vertex_face(index)
        pts = [c - scheme.project(_sub(s, v))[1] for s in face.incident]
        windows.append({"label": cls, "shift": v, "window": convex_hull(frame, pts)})
    windows.sort(key=lambda w: w["label"])
    return windows


# --- section tilings ---

def _frame_floats(p: QuadPoint) -> List[float]:
    return [to_float(c) for c in p.coords]


def _bbox(poly: Sequence[QuadPoint]) -> Tuple[np.ndarray, np.ndarray]:
    xy = np.array([_frame_floats(p) for p in poly])
    return xy.min(axis=0), xy.max(axis=0)


def float_window_mask(frame: Frame, window: Polytope, points: np.ndarray, margin: float = FLOAT_TOL) -> np.ndarray:
    """Points (frame units) that may lie in the closed window; certainly-outside ones are False."""
    wxy = np.array([_frame_floats(p) for p in window])
    if frame.dim == 1:
        return (points[:, 0] >= wxy[0, 0] - margin) & (points[:, 0] <= wxy[1, 0] + margin)
    mask = np.ones(len(points), dtype=bool)
    for i in range(len(wxy)):
        a, b = wxy[i], wxy[(i + 1) % len(wxy)]
        cross = (b[0] - a[0]) * (points[:, 1] - a[1]) - (b[1] - a[1]) * (points[:, 0] - a[0])
        mask &= cross >= -margin
    return mask


def suggest_offset(c: QuadPoint) -> QuadPoint:
    bump = [Fraction(p.numerator, p.denominator * 10 ** 6) for p in GENERIC_OFFSET[: c.dim]]
    return QuadPoint(tuple(x + b for x, b in zip(c.coords, bump)))


def _section_class(scheme: ProjectionScheme, tile: ProductTile, c: QuadPoint,
                   lower: QuadPoint, upper: QuadPoint) -> List[dict]:
    m = scheme.m
    mat = scheme.frame_matrix()
    lo_f, up_f = np.array(_frame_floats(lower)), np.array(_frame_floats(upper))
    c_f = np.array(_frame_floats(c))
    par_min, par_max = _bbox(tile.par)
    win_min, win_max = _bbox(tile.perp)
    box_lo = np.concatenate([lo_f - par_max, c_f - win_max])
    box_hi = np.concatenate([up_f - par_min, c_f - win_min])
    cands = linalg.lattice_points_in_box(mat, box_lo, box_hi, m)
    if len(cands) == 0:
        return []
    q = c_f[None, :] - cands @ mat[m:, :].T
    cands = cands[float_window_mask(scheme.perp_frame, tile.perp, q)]

    lattice = scheme.lattice
    placed = []
    for row in cands:
        k = [int(x) for x in row]
        t_par, t_perp = scheme.project(k)
        q_exact = c - t_perp
        if not contains(scheme.perp_frame, tile.perp, q_exact, closed=True):
            continue
        if not contains(scheme.perp_frame, tile.perp, q_exact, closed=False):
            raise SingularOffsetError(
                "Section plane meets the boundary of a product tile",
                suggested_offset=[list(x.to_pair()) for x in suggest_offset(c).coords],
                translation=k,
                translation_class=tile.translation_class,
            )
        pts = [v + t_par for v in tile.par]
        if not _overlaps_region(scheme.par_frame, pts, lower, upper):
            continue
        lifts = [lattice.to_ambient([s + ki for s, ki in zip(tile.par_lifts[v], k)]) for v in tile.par]
        placed.append({"points": pts, "lifts": lifts, "cls": tile.translation_class,
                       "anchor": t_par, "kind": tile.label})
    return placed


def _overlaps_region(frame: Frame, pts: List[QuadPoint], lower: QuadPoint, upper: QuadPoint) -> bool:
    lo_f, up_f = np.array(_frame_floats(lower)), np.array(_frame_floats(upper))
    pmin, pmax = _bbox(pts)
    if np.all(pmin > lo_f + FLOAT_TOL) and np.all(pmax < up_f - FLOAT_TOL):
        return True
    if np.any(pmax < lo_f - FLOAT_TOL) or np.any(pmin > up_f + FLOAT_TOL):
        return False
    poly = tuple(pts) if frame.dim == 2 else (pts[0], pts[-1])
    clipped = clip_to_box(frame, poly, lower, upper)
    return bool(clipped) and measure(frame, clipped).sign() > 0


def section_tiling(scheme: ProjectionScheme, kind: str, c_perp: Optional[QuadPoint], lower: QuadPoint,
                   upper: QuadPoint, threads: Optional[int] = None) -> Patch:
    """
    Tiles of the section E_par + c_perp through the periodic product tiling, kept when they
    meet the region box [lower, upper] (parallel frame coordinates) with positive measure.
    """
    c = c_perp if c_perp is not None else generic_offset(scheme.perp_frame)
    patch = Patch(scheme.par_frame, "section", name=f"{scheme.name}-{kind}")
    patch.meta.update({"kind": kind, "c_perp": [list(x.to_pair()) for x in c.coords]})
    if any((u - l).sign() <= 0 for u, l in zip(upper.coords, lower.coords)):
        return patch
    tiles = product_tiles(scheme, kind)
    results = map_ordered(lambda t: _section_class(scheme, t, c, lower, upper), tiles, threads)
    for placed in results:
        for item in placed:
            patch.add_tile(item["kind"], item["points"], item["lifts"], cls=item["cls"], anchor=item["anchor"])
    logger.info("Section tiling %s kind %s: %d tiles, %d vertices", scheme.name, kind, len(patch.tiles),
                len(patch.points))
    return patch.canonicalize()


def section_coverage(patch: Patch, lower: QuadPoint, upper: QuadPoint) -> Tuple[QuadValue, QuadValue]:
    """(sum of tile measures clipped to the box, box measure), both exact."""
    frame = patch.frame
    covered = zero(frame.d)
    for t in patch.tiles:
        pts = patch.tile_points(t)
        poly = tuple(pts)
        clipped = clip_to_box(frame, poly, lower, upper)
        if clipped:
            covered = covered + measure(frame, clipped)
    box = (upper - lower)
    box_measure = box[0] if frame.dim == 1 else box[0] * box[1]
    return covered, box_measure


# --- compatible functions ---

def compatible_function_eval(scheme: ProjectionScheme, kind: str, tile_values: Dict,
                             x_par: Sequence[float], c_perp: Optional[QuadPoint] = None,
                             region: Optional[Tuple[QuadPoint, QuadPoint]] = None):
    """
    Value at x_par of the function that applies tile_values[class] to the position of
    x_par relative to the anchor of the section tile containing it. Profiles may also be
    keyed by tile shape name.
    """
    frame = scheme.par_frame
    x = np.asarray(x_par, dtype=float).reshape(-1)
    if len(x) != frame.dim:
        raise DimensionMismatchError("Point has the wrong dimension", expected=frame.dim)
    x_frame = x.copy()
    if frame.dim == 2:
        x_frame[1] /= frame.y_scale
    if region is not None:
        lo, up = np.array(_frame_floats(region[0])), np.array(_frame_floats(region[1]))
        if np.any(x_frame < lo) or np.any(x_frame > up):
            raise OutsideRegionError("Point lies outside the computed region", point=x.tolist())
    else:
        reach = max(float(np.max(np.abs(_bbox(t.par)[1] - _bbox(t.par)[0]))) for t in product_tiles(scheme, kind))
        lo_f, up_f = np.floor(x_frame - 2 * reach), np.ceil(x_frame + 2 * reach)
        region = (frame.point(*[Fraction(int(v)) for v in lo_f]), frame.point(*[Fraction(int(v)) for v in up_f]))
    patch = section_tiling(scheme, kind, c_perp, region[0], region[1], threads=1)
    for t in patch.tiles:
        xy = np.array([_frame_floats(p) for p in patch.tile_points(t)])
        if frame.dim == 1:
            inside = xy.min() - FLOAT_TOL <= x_frame[0] <= xy.max() + FLOAT_TOL
        else:
            inside = bool(float_window_mask(frame, tuple(patch.tile_points(t)), x_frame[None, :])[0])
        if not inside:
            continue
        profile = tile_values.get(t.cls, tile_values.get(t.kind))
        if profile is None:
            raise DimensionMismatchError("No profile for tile class", translation_class=t.cls, kind=t.kind)
        anchor = np.array(frame.to_floats(t.anchor))
        return profile(x - anchor)
    raise OutsideRegionError("No section tile contains the point", point=x.tolist())
