"""
Substitution rules: inflate by the factor, dissect into unit tiles.

Children are stored as affine coordinates on the parent's control frame
(v0, v1 - v0, v_last - v0), so a mirrored parent yields the mirrored dissection.
"""
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import sympy

from services.errors import (
    DegeneratePolygonError,
    NonPrimitiveMatrixError,
    PatchTooSmallError,
    UnknownTileTypeError,
)
from services.exactnum import (
    AB_FRAME,
    GOLDEN_LINE,
    PENROSE_FRAME,
    Frame,
    QuadPoint,
    QuadValue,
    frame_by_name,
    quad,
    zero,
)
from services.matching import rhomb_decoration
from services.patch import Patch, boundary_radius
from services.polygon import contains, convex_hull, measure
from services.workers import map_ordered

logger = logging.getLogger(__name__)

Coords = Tuple[QuadValue, ...]


@dataclass(frozen=True)
class ChildPlacement:
    kind: str
    coords: Tuple[Coords, ...]


@dataclass(frozen=True)
class Prototile:
    kind: str
    reference: Tuple[QuadPoint, ...]
    pair_kind: Optional[str] = None


@dataclass
class SubstitutionRule:
    name: str
    frame: Frame
    factor: QuadValue
    prototiles: Dict[str, Prototile]
    images: Dict[str, List[ChildPlacement]]
    seeds: Dict[str, List[Tuple[str, Tuple[QuadPoint, ...]]]] = field(default_factory=dict)

    @property
    def kinds(self) -> List[str]:
        return list(self.prototiles)

    def prototile(self, kind: str) -> Prototile:
        if kind not in self.prototiles:
            raise UnknownTileTypeError(f"Rule {self.name} has no prototile {kind}", rule=self.name, kind=kind)
        return self.prototiles[kind]


def _c(*values) -> Coords:
    return tuple(values)


def place_children(rule: SubstitutionRule, kind: str, vertices: Sequence[QuadPoint]) -> List[Tuple[str, List[QuadPoint]]]:
    """Children of one tile after inflation about the origin."""
    if kind not in rule.images:
        raise UnknownTileTypeError(f"Rule {rule.name} has no image for {kind}", rule=rule.name, kind=kind)
    inflated = [v.scale(rule.factor) for v in vertices]
    origin = inflated[0]
    axes = [inflated[1] - origin] if rule.frame.dim == 1 else [inflated[1] - origin, inflated[-1] - origin]
    out = []
    for child in rule.images[kind]:
        pts = []
        for coords in child.coords:
            p = origin
            for c, axis in zip(coords, axes):
                if c:
                    p = p + axis.scale(c)
            pts.append(p)
        out.append((child.kind, pts))
    return out


# --- shipped rules ---

@lru_cache(maxsize=None)
def fibonacci_rule() -> SubstitutionRule:
    inv = quad(-1, 1, 5)
    one, nil = quad(1, 0, 5), quad(0, 0, 5)
    f = GOLDEN_LINE
    return SubstitutionRule(
        name="fibonacci",
        frame=f,
        factor=quad(0, 1, 5),
        prototiles={
            "A": Prototile("A", (f.point(0), f.point(quad(0, 1, 5)))),
            "B": Prototile("B", (f.point(0), f.point(1))),
        },
        images={
            "A": [ChildPlacement("A", (_c(nil), _c(inv))), ChildPlacement("B", (_c(inv), _c(one)))],
            "B": [ChildPlacement("A", (_c(nil), _c(one)))],
        },
        seeds={"A": [("A", (f.point(0), f.point(quad(0, 1, 5))))], "B": [("B", (f.point(0), f.point(1)))]},
    )


@lru_cache(maxsize=None)
def ammann_beenker_rule() -> SubstitutionRule:
    """
    Half-square triangles (right angle, acute, acute) with legs oriented out of the right
    angle, and 45 degree rhombs (acute vertex first) with edges oriented cyclically. Every
    unit edge splits into a unit piece at its tail and a sqrt 2 piece at its head; the
    hypotenuse splits 1, sqrt 2, 1.
    """
    f = AB_FRAME
    q = lambda a, b=0: quad(a, b, 2)
    mu, c, cc, two = q(-1, 1), q(0, Fraction(1, 2)), q(1, Fraction(-1, 2)), q(2, -1)
    o, i = q(0), q(1)
    # triangle (O, X, Y)
    t_x3, t_cc, t_y3 = _c(c, cc), _c(cc, cc), _c(cc, c)
    t_10, t_01 = _c(mu, o), _c(o, mu)
    triangle = [
        ChildPlacement("triangle", (t_x3, t_10, _c(i, o))),
        ChildPlacement("triangle", (t_y3, t_01, _c(o, i))),
        ChildPlacement("triangle", (t_cc, t_x3, t_y3)),
        ChildPlacement("rhomb", (_c(o, o), t_cc, t_x3, t_10)),
        ChildPlacement("rhomb", (_c(o, o), t_cc, t_y3, t_01)),
    ]
    # rhomb (P0, P1, P2, P3), P0 acute
    p1, p2, p3 = _c(i, o), _c(i, i), _c(o, i)
    a10, qq, r1, r2, r3, a01 = _c(mu, o), _c(mu, mu), _c(i, mu), _c(two, i), _c(two, two), _c(o, two)
    rhomb = [
        ChildPlacement("triangle", (qq, a10, p1)),
        ChildPlacement("triangle", (r2, r1, p2)),
        ChildPlacement("triangle", (r3, r2, p3)),
        ChildPlacement("triangle", (a10, _c(o, o), a01)),
        ChildPlacement("rhomb", (p1, r3, r2, r1)),
        ChildPlacement("rhomb", (p1, r3, p3, qq)),
        ChildPlacement("rhomb", (a10, a01, p3, qq)),
    ]
    origin = f.origin()
    tri_ref = (origin, f.point(1, 0), f.point(0, 1))
    rhomb_ref = (origin, f.unit(0), f.unit(0) + f.unit(1), f.unit(1))
    star = []
    for k in range(8):
        a, b = (f.unit(k), f.unit(k + 1)) if k % 2 == 0 else (f.unit(k + 1), f.unit(k))
        star.append(("rhomb", (origin, a, a + b, b)))
    square = [("triangle", tri_ref), ("triangle", (f.point(1, 1), f.point(0, 1), f.point(1, 0)))]
    return SubstitutionRule(
        name="ab",
        frame=f,
        factor=q(1, 1),
        prototiles={
            "triangle": Prototile("triangle", tri_ref, pair_kind="square"),
            "rhomb": Prototile("rhomb", rhomb_ref),
        },
        images={"triangle": triangle, "rhomb": rhomb},
        seeds={"triangle": [("triangle", tri_ref)], "rhomb": [("rhomb", rhomb_ref)], "square": square, "star": star},
    )


@lru_cache(maxsize=None)
def penrose_rule() -> SubstitutionRule:
    """
    Robinson halves (A, B, C) of the rhombs, A the apex: thick halves have a 108 degree
    apex, thin halves a 36 degree apex. Two halves sharing B and C form a rhomb.
    """
    f = PENROSE_FRAME
    q = lambda a, b=0: quad(a, b, 5)
    inv, inv2, o, i = q(-1, 1), q(2, -1), q(0), q(1)
    a, b, c = _c(o, o), _c(i, o), _c(o, i)
    p = _c(inv, o)
    qv, r = _c(inv2, o), _c(inv2, inv)
    origin = f.origin()
    thick_ref = (origin, f.unit(0), f.unit(3))
    thin_ref = (origin, f.unit(0), f.unit(1))
    sun = []
    for k in range(5):
        left, right = f.unit(2 * k + 1), f.unit(2 * k - 1)
        tip = left + right
        sun += [("thick-half", (left, origin, tip)), ("thick-half", (right, origin, tip))]
    return SubstitutionRule(
        name="penrose",
        frame=f,
        factor=q(0, 1),
        prototiles={
            "thick-half": Prototile("thick-half", thick_ref, pair_kind="thick"),
            "thin-half": Prototile("thin-half", thin_ref, pair_kind="thin"),
        },
        images={
            "thin-half": [ChildPlacement("thin-half", (c, p, b)), ChildPlacement("thick-half", (p, c, a))],
            "thick-half": [
                ChildPlacement("thick-half", (r, c, a)),
                ChildPlacement("thick-half", (qv, r, b)),
                ChildPlacement("thin-half", (r, qv, a)),
            ],
        },
        seeds={
            "thick": [("thick-half", thick_ref), ("thick-half", (f.unit(0) + f.unit(3), f.unit(0), f.unit(3)))],
            "thin": [("thin-half", thin_ref), ("thin-half", (f.unit(0) + f.unit(1), f.unit(0), f.unit(1)))],
            "sun": sun,
        },
    )


RULES = {"fibonacci": fibonacci_rule, "ab": ammann_beenker_rule, "penrose": penrose_rule}


def get_rule(name: str) -> SubstitutionRule:
    if name not in RULES:
        raise UnknownTileTypeError(f"Unknown substitution rule {name}", rule=name)
    return RULES[name]()


# --- serialization ---

def _pt(p: QuadPoint) -> list:
    return [list(c.to_pair()) for c in p.coords]


def _unpt(raw, d: int) -> QuadPoint:
    return QuadPoint(tuple(QuadValue.from_pair(c, d) for c in raw))


def rule_to_dict(rule: SubstitutionRule) -> dict:
    return {
        "name": rule.name,
        "frame": rule.frame.name,
        "factor": list(rule.factor.to_pair()),
        "prototiles": [
            {"kind": p.kind, "reference": [_pt(v) for v in p.reference], "pair_kind": p.pair_kind}
            for p in rule.prototiles.values()
        ],
        "images": {
            kind: [{"kind": ch.kind, "coords": [[list(x.to_pair()) for x in c] for c in ch.coords]} for ch in children]
            for kind, children in rule.images.items()
        },
        "seeds": {
            name: [{"kind": k, "vertices": [_pt(v) for v in pts]} for k, pts in tiles]
            for name, tiles in rule.seeds.items()
        },
    }


def rule_from_dict(data: dict) -> SubstitutionRule:
    frame = frame_by_name(data["frame"])
    d = frame.d
    prototiles = {
        p["kind"]: Prototile(p["kind"], tuple(_unpt(v, d) for v in p["reference"]), p.get("pair_kind"))
        for p in data["prototiles"]
    }
    images = {
        kind: [
            ChildPlacement(ch["kind"], tuple(tuple(QuadValue.from_pair(x, d) for x in c) for c in ch["coords"]))
            for ch in children
        ]
        for kind, children in data["images"].items()
    }
    for kind, children in images.items():
        for ch in children:
            if ch.kind not in prototiles or kind not in prototiles:
                raise UnknownTileTypeError("Rule image uses an unknown prototile", kind=ch.kind)
    seeds = {
        name: [(t["kind"], tuple(_unpt(v, d) for v in t["vertices"])) for t in tiles]
        for name, tiles in data.get("seeds", {}).items()
    }
    return SubstitutionRule(
        name=data["name"], frame=frame, factor=QuadValue.from_pair(data["factor"], d),
        prototiles=prototiles, images=images, seeds=seeds,
    )


# --- rule checks ---

def _interiors_disjoint(frame: Frame, p: Sequence[QuadPoint], q: Sequence[QuadPoint]) -> bool:
    if frame.dim == 1:
        lo_p, hi_p = sorted([p[0][0], p[-1][0]], key=float)
        lo_q, hi_q = sorted([q[0][0], q[-1][0]], key=float)
        return hi_p <= lo_q or hi_q <= lo_p
    hp, hq = convex_hull(frame, p), convex_hull(frame, q)
    for a, b in ((hp, hq), (hq, hp)):
        n = len(a)
        for i in range(n):
            edge = a[(i + 1) % n] - a[i]
            if all(frame.cross(edge, v - a[i]).sign() <= 0 for v in b):
                return True
    return False


def _size(frame: Frame, pts: Sequence[QuadPoint]) -> QuadValue:
    if frame.dim == 1:
        return abs(pts[-1][0] - pts[0][0])
    return abs(measure(frame, tuple(pts)))


def verify_rule(rule: SubstitutionRule) -> dict:
    """Exact area conservation, containment and pairwise interior-disjointness per prototile."""
    frame = rule.frame
    scale = rule.factor ** frame.dim
    report = {}
    for kind, proto in rule.prototiles.items():
        parent = [v.scale(rule.factor) for v in proto.reference]
        children = place_children(rule, kind, proto.reference)
        child_total = zero(frame.d)
        for _, pts in children:
            child_total = child_total + _size(frame, pts)
        area_ok = child_total == scale * _size(frame, proto.reference)
        hull = convex_hull(frame, parent)
        inside = all(contains(frame, hull, v) for _, pts in children for v in pts)
        disjoint = all(
            _interiors_disjoint(frame, children[i][1], children[j][1])
            for i in range(len(children)) for j in range(i + 1, len(children))
        )
        shapes = all(_size(frame, pts) == _size(frame, rule.prototile(k).reference) for k, pts in children)
        report[kind] = {
            "area_conserved": bool(area_ok),
            "children_inside": bool(inside),
            "interiors_disjoint": bool(disjoint),
            "children_congruent_size": bool(shapes),
            "children": len(children),
        }
    return report


# --- substitution ---

def seed_patch(rule: SubstitutionRule, seed: str) -> Patch:
    if seed not in rule.seeds:
        raise UnknownTileTypeError(f"Rule {rule.name} has no seed {seed}", rule=rule.name, seed=seed)
    patch = Patch(rule.frame, "inflation", name=f"{rule.name}-{seed}")
    for kind, pts in rule.seeds[seed]:
        rule.prototile(kind)
        patch.add_tile(kind, pts, orientation=0)
    patch.meta.update({"rule": rule.name, "seed": seed, "steps": 0})
    return patch


def substitute(rule: SubstitutionRule, patch: Patch, steps: int = 1, threads: Optional[int] = None) -> Patch:
    """Apply the rule `steps` times; the result is canonical."""
    if steps < 0:
        raise DegeneratePolygonError("Number of substitution steps must be nonnegative", steps=steps)
    for t in patch.tiles:
        rule.prototile(t.kind)
    current = patch
    for step in range(steps):
        tiles = [(t.kind, current.tile_points(t)) for t in current.tiles]
        results = map_ordered(lambda item: place_children(rule, item[0], item[1]), tiles, threads)
        nxt = Patch(rule.frame, "inflation", name=patch.name)
        for children in results:
            for kind, pts in children:
                nxt.add_tile(kind, pts, orientation=0)
        current = nxt.canonicalize()
        logger.info("Substitution %s step %d: %d tiles", rule.name, step + 1, len(current.tiles))
    out = current if steps else patch.copy()
    out.meta = dict(patch.meta, rule=rule.name, steps=int(patch.meta.get("steps", 0)) + steps)
    return out


def inflate(rule_name: str, seed: str, steps: int, threads: Optional[int] = None) -> Patch:
    rule = get_rule(rule_name)
    return substitute(rule, seed_patch(rule, seed), steps, threads)


def kind_counts(rule: SubstitutionRule, seed: str, steps: int) -> Dict[str, int]:
    """Tile counts after `steps` substitutions of a named seed, following child kinds only."""
    if seed not in rule.seeds:
        raise UnknownTileTypeError(f"Rule {rule.name} has no seed {seed}", rule=rule.name, seed=seed)
    counts = {k: 0 for k in rule.kinds}
    for kind, _ in rule.seeds[seed]:
        counts[kind] += 1
    for _ in range(steps):
        nxt = {k: 0 for k in rule.kinds}
        for kind, n in counts.items():
            for child in rule.images[kind]:
                nxt[child.kind] += n
        counts = nxt
    return counts


def pair_halves(patch: Patch, rule: Optional[SubstitutionRule] = None) -> Patch:
    """
    Merge two halves sharing their second and last vertex into one tile [v0, v1, v0', v_last].
    Unpaired halves (patch boundary) are dropped and counted in meta["unpaired"].
    Penrose rhombs carry their arrow decorations.
    """
    rule = rule or get_rule(str(patch.meta.get("rule", "penrose")))
    groups: Dict[frozenset, List[int]] = {}
    for ti, t in enumerate(patch.tiles):
        proto = rule.prototile(t.kind)
        if proto.pair_kind is None:
            continue
        groups.setdefault(frozenset((t.vertices[1], t.vertices[-1])), []).append(ti)
    out = Patch(patch.frame, patch.provenance, name=patch.name)
    paired = set()
    for key, members in groups.items():
        if len(members) != 2:
            continue
        first, second = patch.tiles[members[0]], patch.tiles[members[1]]
        if first.kind != second.kind:
            continue
        paired.update(members)
        a, b, c = first.vertices[0], first.vertices[1], first.vertices[-1]
        a2 = second.vertices[0]
        ids = [a, b, a2, c]
        pts = [patch.points[i] for i in ids]
        kind = rule.prototile(first.kind).pair_kind
        decoration = rhomb_decoration(patch.frame, kind, pts) if kind in ("thick", "thin") else None
        out.add_tile(kind, pts, [patch.lifts[i] for i in ids], decoration=decoration)
    for ti, t in enumerate(patch.tiles):
        if rule.prototile(t.kind).pair_kind is None:
            out.add_tile(t.kind, patch.tile_points(t), [patch.lifts[i] for i in t.vertices])
    unpaired = sum(1 for ti, t in enumerate(patch.tiles)
                   if rule.prototile(t.kind).pair_kind is not None and ti not in paired)
    out = out.canonicalize(keep_isolated=False)
    out.meta = dict(patch.meta, paired=True, unpaired=unpaired)
    return out


def fibonacci_word(steps: int, seed: str = "A") -> str:
    word = seed
    for _ in range(steps):
        word = "".join("AB" if ch == "A" else "A" for ch in word)
    return word


def patch_word(patch: Patch) -> str:
    """Tile letters of a one-dimensional patch in order along the line."""
    tiles = sorted(patch.tiles, key=lambda t: min(float(patch.points[i][0]) for i in t.vertices))
    return "".join(t.kind for t in tiles)


# --- substitution matrix ---

def _to_sympy(x: QuadValue):
    w = sympy.sqrt(2) if x.d == 2 else (1 + sympy.sqrt(5)) / 2
    return sympy.Rational(x.a.numerator, x.a.denominator) + sympy.Rational(x.b.numerator, x.b.denominator) * w


def _from_sympy(expr, d: int) -> QuadValue:
    expr = sympy.nsimplify(sympy.radsimp(sympy.expand(expr)))
    root = sympy.sqrt(d)
    b = sympy.expand(expr).coeff(root)
    a = sympy.expand(expr - b * root)
    if not (a.is_Rational and b.is_Rational):
        raise NonPrimitiveMatrixError("Value is not in the quadratic ring", value=str(expr), d=d)
    fa, fb = Fraction(int(a.p), int(a.q)), Fraction(int(b.p), int(b.q))
    if d == 5:
        # sqrt 5 = 2 tau - 1
        return QuadValue(fa - fb, 2 * fb, 5)
    return QuadValue(fa, fb, 2)


@dataclass
class SubstitutionMatrix:
    kinds: List[str]
    matrix: sympy.Matrix
    d: int

    def is_primitive(self) -> bool:
        k = len(self.kinds)
        power = sympy.eye(k)
        for _ in range((k - 1) ** 2 + 1):
            power = power * self.matrix
        return all(x > 0 for x in power)

    def perron_eigenvalue(self):
        eigen = list(self.matrix.eigenvals())
        return max(eigen, key=lambda e: float(sympy.re(sympy.N(e))))

    def characteristic_polynomial(self):
        x = sympy.Symbol("x")
        return self.matrix.charpoly(x).as_expr()

    def tolist(self) -> List[List[int]]:
        return [[int(v) for v in row] for row in self.matrix.tolist()]


def substitution_matrix(rule: SubstitutionRule) -> SubstitutionMatrix:
    kinds = rule.kinds
    index = {k: i for i, k in enumerate(kinds)}
    counts = [[0] * len(kinds) for _ in kinds]
    for j, kind in enumerate(kinds):
        for child in rule.images[kind]:
            counts[index[child.kind]][j] += 1
    return SubstitutionMatrix(kinds=kinds, matrix=sympy.Matrix(counts), d=rule.frame.d)


def perron_matches_factor(rule: SubstitutionRule) -> bool:
    """Perron eigenvalue equals factor**dim, checked on the characteristic polynomial."""
    sm = substitution_matrix(rule)
    x = sympy.Symbol("x")
    target = _to_sympy(rule.factor ** rule.frame.dim)
    if sympy.simplify(sm.characteristic_polynomial().subs(x, target)) != 0:
        return False
    return sympy.simplify(sm.perron_eigenvalue() - target) == 0


def tile_frequencies(rule: SubstitutionRule) -> Dict[str, QuadValue]:
    """Normalised right Perron eigenvector, exact in the rule's ring."""
    sm = substitution_matrix(rule)
    if not sm.is_primitive():
        raise NonPrimitiveMatrixError("Substitution matrix is not primitive", rule=rule.name, matrix=sm.tolist())
    theta = sm.perron_eigenvalue()
    vec = (sm.matrix - theta * sympy.eye(len(sm.kinds))).nullspace(simplify=True)[0]
    total = sum(vec)
    freqs = [_from_sympy(v / total, sm.d) for v in vec]
    if any(f.sign() <= 0 for f in freqs):
        raise NonPrimitiveMatrixError("Perron eigenvector is not positive", rule=rule.name)
    return dict(zip(sm.kinds, freqs))


# --- repetitivity ---

def _neighbourhood_key(patch: Patch, center: int, members: Sequence[int], tiles_at: Dict[int, List[int]],
                       radius_sq: Fraction) -> tuple:
    c = patch.points[center]
    frame = patch.frame
    inside = {j for j in members if frame.norm_sq(patch.points[j] - c) <= radius_sq}
    verts = sorted((patch.points[j] - c).key() for j in inside)
    tiles = set()
    for j in inside:
        for ti in tiles_at.get(j, ()):
            t = patch.tiles[ti]
            if all(v in inside for v in t.vertices):
                tiles.add((t.kind, tuple(sorted((patch.points[v] - c).key() for v in t.vertices))))
    return tuple(verts), tuple(sorted(tiles))


def repetitivity_check(patch: Patch, probe_radius: float, center: Optional[Sequence[float]] = None) -> dict:
    """
    Classify the probe-radius neighbourhoods of vertices up to translation and report,
    per class, the largest distance from an occurrence to its nearest other occurrence.
    Classes are read off a core disk; recurrences are searched in the full interior.
    """
    if patch.frame.dim != 2:
        raise PatchTooSmallError("Repetitivity is checked on planar patches", dim=patch.frame.dim)
    xy = patch.vertex_array()
    c = np.zeros(2) if center is None else np.asarray(center, dtype=float)
    radius = boundary_radius(patch, c)
    if radius < 10 * probe_radius:
        raise PatchTooSmallError(
            "Patch is too small for the probe radius", patch_radius=radius, probe_radius=probe_radius
        )
    interior_r = radius - probe_radius
    core_r = interior_r / 2
    dist = np.hypot(xy[:, 0] - c[0], xy[:, 1] - c[1])
    interior = np.nonzero(dist <= interior_r)[0]

    cell = max(probe_radius, 1e-9)
    grid: Dict[Tuple[int, int], List[int]] = {}
    for i, (x, y) in enumerate(xy):
        grid.setdefault((int(math.floor(x / cell)), int(math.floor(y / cell))), []).append(i)
    tiles_at: Dict[int, List[int]] = {}
    for ti, t in enumerate(patch.tiles):
        for v in t.vertices:
            tiles_at.setdefault(v, []).append(ti)
    radius_sq = Fraction(probe_radius) ** 2

    def key_of(i: int) -> tuple:
        gx, gy = int(math.floor(xy[i][0] / cell)), int(math.floor(xy[i][1] / cell))
        members = [j for dx in (-1, 0, 1) for dy in (-1, 0, 1) for j in grid.get((gx + dx, gy + dy), ())
                   if math.hypot(*(xy[j] - xy[i])) <= probe_radius + 1e-7]
        return _neighbourhood_key(patch, i, members, tiles_at, radius_sq)

    keys = map_ordered(key_of, [int(i) for i in interior])
    occurrences: Dict[tuple, List[int]] = {}
    for i, k in zip(interior, keys):
        occurrences.setdefault(k, []).append(int(i))
    core_classes = {k for k, occ in occurrences.items() if any(dist[i] <= core_r for i in occ)}

    classes = []
    singletons = 0
    for idx, k in enumerate(sorted(core_classes, key=lambda k: (len(k[0]), k))):
        occ = occurrences[k]
        if len(occ) < 2:
            singletons += 1
            classes.append({"class": idx, "occurrences": 1, "max_gap": None})
            continue
        pts = xy[occ]
        core_pts = pts[dist[occ] <= core_r]
        gaps = []
        for p in core_pts:
            d = np.hypot(pts[:, 0] - p[0], pts[:, 1] - p[1])
            d = d[d > 1e-9]
            gaps.append(float(d.min()))
        classes.append({"class": idx, "occurrences": len(occ), "max_gap": max(gaps)})
    finite = [c["max_gap"] for c in classes if c["max_gap"] is not None]
    max_gap = max(finite) if finite else None
    report = {
        "probe_radius": probe_radius,
        "patch_radius": radius,
        "classes": len(classes),
        "singletons": singletons,
        "max_gap": max_gap,
        "gap_constant": max_gap / probe_radius if max_gap is not None else None,
        "per_class": classes,
    }
    logger.info("Repetitivity probe %.3f: %d classes, %d singletons, max gap %s",
                probe_radius, len(classes), singletons, max_gap)
    return report
