"""
Cut-and-project vertex sets and tiling assembly.

A vertex class is a coefficient shift h (zero for lattice points, a hole otherwise)
with a window W in E_perp: the class contributes (t + h)_par for every lattice vector t
with (t + h)_perp in W. Windows are half-open convex polygons.
"""
import json
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from services import dualcell, linalg
from services.errors import DimensionMismatchError, FaceAssemblyError, MissingWindowError
from services.exactnum import (
    AB_FRAME,
    GOLDEN_LINE,
    PENROSE_FRAME,
    Frame,
    QuadPoint,
    QuadValue,
    frame_by_name,
    quad,
)
from services.lattice import (
    ProjectionScheme,
    ammann_beenker_scheme,
    fibonacci_scheme,
    penrose_scheme,
)
from services.patch import Patch, classify_shape
from services.polygon import (
    Polytope,
    contains_half_open,
    convex_hull,
    distance_to_hull_boundary,
    measure,
    to_xy,
    translate,
)
from services.workers import map_ordered

logger = logging.getLogger(__name__)

CERTIFIED_MARGIN = 1e-9
AB_EDGE_SQ = quad(1, 0, 2)


@dataclass(frozen=True)
class Window:
    polygon: Polytope
    offset: QuadPoint
    boundary_policy: str = "half-open"
    label: int = 0
    shift: Tuple[Fraction, ...] = ()

    @property
    def placed(self) -> Polytope:
        return translate(self.polygon, self.offset)

    def contains(self, frame: Frame, point: QuadPoint) -> bool:
        return contains_half_open(frame, self.placed, point)


@dataclass
class CutProjectSpec:
    scheme: ProjectionScheme
    windows: Dict[int, Window] = field(default_factory=dict)

    def require(self, labels: Sequence[int]) -> None:
        missing = [k for k in labels if k not in self.windows]
        if missing:
            raise MissingWindowError("No window installed for vertex class", scheme=self.scheme.name, classes=missing)


# --- windows ---

def octagon() -> Polytope:
    """Regular octagon of unit edge centred at the origin."""
    s = quad(Fraction(1, 2), Fraction(1, 2), 2)
    h = quad(Fraction(1, 2), 0, 2)
    pts = [AB_FRAME.point(sx * h if i == 0 else sx * s, sy * s if i == 0 else sy * h)
           for i in range(2) for sx in (1, -1) for sy in (1, -1)]
    return convex_hull(AB_FRAME, pts)


def ab_window(offset: Optional[QuadPoint] = None) -> Window:
    c = offset if offset is not None else dualcell.generic_offset(AB_FRAME)
    return Window(polygon=octagon(), offset=c, shift=(Fraction(0),) * 4)


def ab_spec(offset: Optional[QuadPoint] = None) -> CutProjectSpec:
    return CutProjectSpec(scheme=ammann_beenker_scheme(), windows={0: ab_window(offset)})


def hole_label(scheme: ProjectionScheme, shift: Sequence[Fraction]) -> int:
    """Residue k with ambient(shift) + (k/5)(1,...,1) integral; 0 for lattice points."""
    ambient = scheme.lattice.to_ambient(shift)
    if scheme.null_direction is None:
        return 0
    return int(5 * ((-ambient[0]) % 1))


def _dualcell_spec(scheme: ProjectionScheme, kind: str, offset: Optional[QuadPoint]) -> CutProjectSpec:
    frame = scheme.perp_frame
    spec = CutProjectSpec(scheme=scheme)
    for w in dualcell.vertex_windows(scheme, kind, offset):
        shift = tuple(Fraction(x) for x in w["shift"])
        label = hole_label(scheme, shift)
        spec.windows[label] = Window(polygon=w["window"], offset=frame.origin(), label=label, shift=shift)
    return spec


def penrose_spec(offset: Optional[QuadPoint] = None, overrides: Optional[Dict[int, Window]] = None) -> CutProjectSpec:
    spec = _dualcell_spec(penrose_scheme(), "T", offset)
    if overrides:
        spec.windows.update(overrides)
    return spec


def fibonacci_spec(offset: Optional[QuadPoint] = None) -> CutProjectSpec:
    return _dualcell_spec(fibonacci_scheme(), "T*", offset)


def triangle_spec(offset: Optional[QuadPoint] = None, overrides: Optional[Dict[int, Window]] = None) -> CutProjectSpec:
    spec = _dualcell_spec(penrose_scheme(), "T*", offset)
    if overrides:
        spec.windows.update(overrides)
    return spec


def load_window_overrides(path: str) -> Dict[int, Window]:
    """
    Windows from JSON: {"frame": name, "windows": [{"label": k, "shift": [..],
    "polygon": [[[a, b], [a, b]], ...], "offset": [[a, b], [a, b]]}]}.
    Coordinates are (rational, irrational) pairs in the named frame.
    """
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    frame = frame_by_name(data.get("frame", PENROSE_FRAME.name))
    result = {}
    for entry in data["windows"]:
        pts = [QuadPoint(tuple(QuadValue.from_pair(c, frame.d) for c in p)) for p in entry["polygon"]]
        offset = entry.get("offset")
        offset = QuadPoint(tuple(QuadValue.from_pair(c, frame.d) for c in offset)) if offset else frame.origin()
        label = int(entry["label"])
        result[label] = Window(
            polygon=convex_hull(frame, pts), offset=offset, label=label,
            shift=tuple(Fraction(x) for x in entry.get("shift", [])),
        )
    logger.info("Loaded %d window overrides from %s", len(result), path)
    return result


# --- enumeration ---

def _disk_box(frame: Frame, radius: float) -> Tuple[np.ndarray, np.ndarray]:
    r = np.full(frame.dim, float(radius))
    if frame.dim == 2:
        r[1] /= frame.y_scale
    return -r, r


def _enumerate_class(spec: CutProjectSpec, window: Window, radius: float) -> List[Tuple[QuadPoint, list]]:
    scheme = spec.scheme
    par_frame, perp_frame = scheme.par_frame, scheme.perp_frame
    m = scheme.m
    shift = window.shift or (Fraction(0),) * scheme.n
    h_par, h_perp = scheme.project(shift)
    hp = np.array([float(x) for x in h_par.coords])
    hq = np.array([float(x) for x in h_perp.coords])

    placed = window.placed
    wxy = np.array([[float(x) for x in p.coords] for p in placed])
    lo, up = _disk_box(par_frame, radius)
    box_lo = np.concatenate([lo - hp, wxy.min(axis=0) - hq])
    box_hi = np.concatenate([up - hp, wxy.max(axis=0) - hq])
    mat = scheme.frame_matrix()
    cands = linalg.lattice_points_in_box(mat, box_lo, box_hi, m)
    if len(cands) == 0:
        return []
    euclid = scheme.euclidean_matrix()
    par_xy = cands @ euclid[:m, :].T + np.array(par_frame.to_floats(h_par))
    perp_xy = cands @ euclid[m:, :].T + np.array(perp_frame.to_floats(h_perp))
    r2 = float(radius) ** 2
    dist2 = np.sum(par_xy ** 2, axis=1)
    near = dist2 <= r2 + 1e-7
    cands, perp_xy, dist2 = cands[near], perp_xy[near], dist2[near]

    if perp_frame.dim == 2:
        depth = distance_to_hull_boundary(to_xy(perp_frame, placed), perp_xy)
    else:
        w = to_xy(perp_frame, placed)[:, 0]
        depth = np.minimum(perp_xy[:, 0] - w.min(), w.max() - perp_xy[:, 0])

    radius_sq = Fraction(radius) ** 2
    found = []
    for row, d, r in zip(cands, depth, dist2):
        if d < -CERTIFIED_MARGIN:
            continue
        coeffs = [s + int(k) for s, k in zip(shift, row)]
        x_par, x_perp = scheme.project(coeffs)
        if d <= CERTIFIED_MARGIN and not window.contains(perp_frame, x_perp):
            continue
        if abs(r - r2) <= 1e-7 and par_frame.norm_sq(x_par) > radius_sq:
            continue
        found.append((x_par, scheme.lattice.to_ambient(coeffs)))
    return found


def model_set(spec: CutProjectSpec, radius: float, name: str = "", threads: Optional[int] = None) -> Patch:
    """Vertices of every class within `radius` of the origin (parallel space)."""
    if radius <= 0:
        raise DimensionMismatchError("Radius must be positive", radius=radius)
    labels = sorted(spec.windows)
    results = map_ordered(lambda k: _enumerate_class(spec, spec.windows[k], radius), labels, threads)
    patch = Patch(spec.scheme.par_frame, "cutproject", name=name or spec.scheme.name)
    for found in results:
        for x_par, lift in found:
            patch.add_vertex(x_par, lift)
    patch = patch.canonicalize()
    patch.meta.update({
        "radius": radius,
        "vertex_classes": {str(k): len(found) for k, found in zip(labels, results)},
    })
    logger.info("Model set %s: %d vertices within radius %s", patch.name, len(patch.points), radius)
    return patch


def ab_vertex_set(radius: float, offset: Optional[QuadPoint] = None, threads: Optional[int] = None) -> Patch:
    return model_set(ab_spec(offset), radius, name="ab", threads=threads)


def fibonacci_vertex_set(radius: float, offset: Optional[QuadPoint] = None, threads: Optional[int] = None) -> Patch:
    return model_set(fibonacci_spec(offset), radius, name="fibonacci", threads=threads)


def penrose_vertex_set(radius: float, offset: Optional[QuadPoint] = None,
                       overrides: Optional[Dict[int, Window]] = None, threads: Optional[int] = None) -> Patch:
    spec = penrose_spec(offset, overrides)
    spec.require([1, 2, 3, 4])
    return model_set(spec, radius, name="penrose", threads=threads)


def triangle_vertex_set(radius: float, offset: Optional[QuadPoint] = None,
                        overrides: Optional[Dict[int, Window]] = None, threads: Optional[int] = None) -> Patch:
    spec = triangle_spec(offset, overrides)
    spec.require([0])
    return model_set(spec, radius, name="triangle", threads=threads)


def is_accepted(spec: CutProjectSpec, coeffs: Sequence[int]) -> bool:
    """Exact acceptance of a single lattice vector in any vertex class."""
    scheme = spec.scheme
    for window in spec.windows.values():
        shift = window.shift or (Fraction(0),) * scheme.n
        _, x_perp = scheme.project([s + k for s, k in zip(shift, coeffs)])
        if window.contains(scheme.perp_frame, x_perp):
            return True
    return False


# --- tiling assembly ---

def _neighbours(frame: Frame, points: List[QuadPoint], edge_sq: QuadValue) -> Dict[int, List[int]]:
    xy = np.array([frame.to_floats(p) for p in points], dtype=float)
    edge = math.sqrt(float(edge_sq))
    cells: Dict[Tuple[int, int], List[int]] = {}
    keys = np.floor(xy / edge).astype(np.int64)
    for i, (a, b) in enumerate(keys):
        cells.setdefault((int(a), int(b)), []).append(i)
    adjacency: Dict[int, List[int]] = {i: [] for i in range(len(points))}
    for i, (a, b) in enumerate(keys):
        for da in (-1, 0, 1):
            for db in (-1, 0, 1):
                for j in cells.get((int(a) + da, int(b) + db), ()):
                    if j <= i:
                        continue
                    if abs(np.hypot(*(xy[j] - xy[i])) - edge) > 1e-7:
                        continue
                    if frame.norm_sq(points[j] - points[i]) == edge_sq:
                        adjacency[i].append(j)
                        adjacency[j].append(i)
    for i, nbrs in adjacency.items():
        nbrs.sort(key=lambda j: math.atan2(xy[j][1] - xy[i][1], xy[j][0] - xy[i][0]))
    return adjacency


def assemble_faces(frame: Frame, points: List[QuadPoint], lifts: List, edge_sq: QuadValue,
                   allowed: Sequence[str], name: str = "") -> Patch:
    """
    Trace the bounded faces of the graph joining points at squared distance edge_sq.
    Each bounded face must be one of the allowed prototiles.
    """
    adjacency = _neighbours(frame, points, edge_sq)
    position = {i: {j: k for k, j in enumerate(nbrs)} for i, nbrs in adjacency.items()}
    patch = Patch(frame, "cutproject", name=name)
    for p, lift in zip(points, lifts):
        patch.add_vertex(p, lift)
    visited = set()
    for u, nbrs in adjacency.items():
        for v in nbrs:
            if (u, v) in visited:
                continue
            cycle = []
            a, b = u, v
            while (a, b) not in visited:
                visited.add((a, b))
                cycle.append(a)
                ring = adjacency[b]
                # neighbour of b just clockwise from a
                a, b = b, ring[(position[b][a] - 1) % len(ring)]
            if len(cycle) < 3:
                continue
            pts = [points[i] for i in cycle]
            if measure(frame, tuple(pts)).sign() <= 0:
                continue
            kind = classify_shape(frame, pts)
            if kind not in allowed:
                raise FaceAssemblyError(
                    "Bounded face is not a prototile",
                    kind=kind, vertices=[p.to_pairs() for p in pts],
                )
            patch.add_tile(kind, pts, [lifts[i] for i in cycle])
    return patch.canonicalize()


def ab_tiling(radius: float, offset: Optional[QuadPoint] = None, threads: Optional[int] = None) -> Patch:
    vertices = ab_vertex_set(radius, offset, threads)
    patch = assemble_faces(AB_FRAME, vertices.points, vertices.lifts, AB_EDGE_SQ, ("square", "rhomb"), name="ab")
    patch.meta.update(vertices.meta)
    logger.info("Ammann-Beenker tiling radius %s: %s", radius, patch.kinds())
    return patch


def disk_region(frame: Frame, radius: float) -> Tuple[QuadPoint, QuadPoint]:
    bound = [Fraction(math.ceil(radius)), Fraction(math.ceil(radius / frame.y_scale))][: frame.dim]
    return frame.point(*[-b for b in bound]), frame.point(*bound)


def inside_disk(patch: Patch, radius: float) -> Patch:
    r_sq = Fraction(radius) ** 2
    xy = patch.vertex_array()
    keep = []
    for ti, t in enumerate(patch.tiles):
        d2 = np.sum(xy[list(t.vertices)] ** 2, axis=1)
        if np.all(d2 < r_sq - 1e-7):
            keep.append(ti)
        elif np.all(d2 <= r_sq + 1e-7) and all(patch.frame.norm_sq(p) <= r_sq for p in patch.tile_points(t)):
            keep.append(ti)
    out = patch.subpatch(keep).canonicalize()
    out.provenance = patch.provenance
    out.meta = dict(patch.meta, radius=radius)
    return out


def penrose_tiling(radius: float, offset: Optional[QuadPoint] = None, threads: Optional[int] = None) -> Patch:
    scheme = penrose_scheme()
    lower, upper = disk_region(PENROSE_FRAME, radius)
    section = dualcell.section_tiling(scheme, "T", offset, lower, upper, threads)
    patch = inside_disk(section, radius)
    patch.name = "penrose"
    logger.info("Penrose tiling radius %s: %s", radius, patch.kinds())
    return patch


def triangle_tiling(radius: float, offset: Optional[QuadPoint] = None, threads: Optional[int] = None) -> Patch:
    scheme = penrose_scheme()
    lower, upper = disk_region(PENROSE_FRAME, radius)
    section = dualcell.section_tiling(scheme, "T*", offset, lower, upper, threads)
    patch = inside_disk(section, radius)
    patch.name = "triangle"
    logger.info("Triangle tiling radius %s: %s", radius, patch.kinds())
    return patch


def ab_section_tiling(radius: float, offset: Optional[QuadPoint] = None, threads: Optional[int] = None) -> Patch:
    """Section of the Z4 dual-boundary tiling; same vertices as ab_tiling for the same offset."""
    lower, upper = disk_region(AB_FRAME, radius)
    section = dualcell.section_tiling(ammann_beenker_scheme(), "T*", offset, lower, upper, threads)
    patch = inside_disk(section, radius)
    patch.name = "ab"
    return patch


def fibonacci_tiling(radius: float, offset: Optional[QuadPoint] = None, threads: Optional[int] = None) -> Patch:
    """Intervals between consecutive Fibonacci model-set points in [-radius, radius]."""
    vertices = fibonacci_vertex_set(radius, offset, threads)
    patch = Patch(GOLDEN_LINE, "cutproject", name="fibonacci")
    pts = sorted(vertices.points, key=lambda p: float(p[0]))
    lifts = {p: vertices.lifts[vertices.vertex_index(p)] for p in pts}
    for a, b in zip(pts, pts[1:]):
        patch.add_tile(classify_shape(GOLDEN_LINE, [a, b]), [a, b], [lifts[a], lifts[b]])
    patch = patch.canonicalize()
    patch.meta.update(vertices.meta)
    return patch


def fibonacci_section(length: float, offset: Optional[QuadPoint] = None, threads: Optional[int] = None) -> Patch:
    """Section tiling of Z2 over [0, length]; empty for length 0."""
    lower, upper = GOLDEN_LINE.point(0), GOLDEN_LINE.point(Fraction(length))
    patch = dualcell.section_tiling(fibonacci_scheme(), "T*", offset, lower, upper, threads)
    patch.name = "fibonacci"
    patch.meta["length"] = length
    return patch


# --- module lifts ---

def _integral(values: Sequence[Fraction], point: QuadPoint) -> List[int]:
    if any(v.denominator != 1 for v in values):
        raise DimensionMismatchError("Point does not lie in the projected module", point=point.to_pairs())
    return [int(v) for v in values]


def module_lift(frame: Frame, point: QuadPoint) -> List[int]:
    """
    Integer index vector n with sum n_k e_k = point, where e_k are the module generators
    of the frame: (1, tau) on the golden line, unit(k) k < 4 in the octagonal frame and
    unit(2k) k < 5 in the decagonal frame (normalised to 0 <= sum n < 5).
    """
    if frame == GOLDEN_LINE:
        x = point[0]
        return _integral([x.a, x.b], point)
    if frame == AB_FRAME:
        x, y = point[0], point[1]
        return _integral([x.a, x.b + y.b, y.a, y.b - x.b], point)
    if frame == PENROSE_FRAME:
        x, y = point[0], point[1]
        p = -2 * x.a
        q = p - 2 * x.b
        u, v = y.b, y.a
        n = _integral([Fraction(0), (p + u) / 2, (q + v) / 2, (q - v) / 2, (p - u) / 2], point)
        shift = -(sum(n) // 5)
        return [k + shift for k in n]
    raise DimensionMismatchError(f"No module lift for frame {frame.name}", frame=frame.name)


def lift_class(frame: Frame, point: QuadPoint) -> int:
    """Vertex class sum(n) mod 5 of a decagonal module point (0 for other frames)."""
    if frame != PENROSE_FRAME:
        return 0
    return sum(module_lift(frame, point)) % 5
