"""
Exact convex polytopes in one and two dimensions, plus float helpers for rendering.

A polytope is a tuple of QuadPoints: an interval (lo, hi) when frame.dim == 1,
a counter-clockwise convex polygon when frame.dim == 2.
"""
import math
from functools import cmp_to_key
from typing import List, Optional, Sequence, Tuple

import numpy as np

from services.errors import DegeneratePolygonError
from services.exactnum import Frame, QuadPoint, QuadValue, lex_compare, to_float, zero

Polytope = Tuple[QuadPoint, ...]


def convex_hull(frame: Frame, points: Sequence[QuadPoint]) -> Polytope:
    """Exact hull (monotone chain); collinear points are dropped."""
    pts = sorted(set(points), key=cmp_to_key(lex_compare))
    if frame.dim == 1:
        return (pts[0], pts[-1]) if pts else ()
    if len(pts) <= 2:
        return tuple(pts)

    def half(seq):
        chain: List[QuadPoint] = []
        for p in seq:
            while len(chain) >= 2 and frame.cross(chain[-1] - chain[-2], p - chain[-2]).sign() <= 0:
                chain.pop()
            chain.append(p)
        return chain

    lower, upper = half(pts), half(reversed(pts))
    return tuple(lower[:-1] + upper[:-1])


def measure(frame: Frame, poly: Polytope) -> QuadValue:
    """Length (dim 1) or area in frame units (dim 2)."""
    if frame.dim == 1:
        return abs(poly[1][0] - poly[0][0]) if len(poly) == 2 else zero(frame.d)
    total = zero(frame.d)
    for i, p in enumerate(poly):
        total = total + frame.cross(p, poly[(i + 1) % len(poly)])
    return total / 2


def true_area(frame: Frame, value: QuadValue) -> float:
    if frame.dim == 1:
        return to_float(value)
    return to_float(value) * frame.y_scale


def is_convex(frame: Frame, poly: Polytope) -> bool:
    if frame.dim == 1:
        return True
    n = len(poly)
    if n < 3:
        return False
    return all(
        frame.cross(poly[(i + 1) % n] - poly[i], poly[(i + 2) % n] - poly[(i + 1) % n]).sign() > 0
        for i in range(n)
    )


def require_full_dimensional(frame: Frame, poly: Polytope, what: str = "polygon") -> None:
    if measure(frame, poly).sign() <= 0:
        raise DegeneratePolygonError(f"Degenerate {what}", vertices=[p.to_pairs() for p in poly])


def contains(frame: Frame, poly: Polytope, p: QuadPoint, closed: bool = True) -> bool:
    if frame.dim == 1:
        lo, hi = poly[0][0], poly[1][0]
        return lo <= p[0] <= hi if closed else lo < p[0] < hi
    n = len(poly)
    for i in range(n):
        s = frame.cross(poly[(i + 1) % n] - poly[i], p - poly[i]).sign()
        if s < 0 or (s == 0 and not closed):
            return False
    return True


def _outward_normal_negative(frame: Frame, edge: QuadPoint) -> bool:
    # outward normal of a ccw edge (dx, dY) points along (dY, -dx)
    dx, dy = edge[0], edge[1]
    s = dy.sign()
    if s:
        return s < 0
    return dx.sign() > 0


def contains_half_open(frame: Frame, poly: Polytope, p: QuadPoint) -> bool:
    """
    Membership with half-open boundary: a boundary point belongs to the polytope only
    when every edge through it has a lexicographically negative outward normal.
    """
    if frame.dim == 1:
        return poly[0][0] <= p[0] < poly[1][0]
    n = len(poly)
    for i in range(n):
        edge = poly[(i + 1) % n] - poly[i]
        s = frame.cross(edge, p - poly[i]).sign()
        if s < 0:
            return False
        if s == 0 and not _outward_normal_negative(frame, edge):
            return False
    return True


def on_boundary(frame: Frame, poly: Polytope, p: QuadPoint) -> bool:
    return contains(frame, poly, p, closed=True) and not contains(frame, poly, p, closed=False)


def translate(poly: Polytope, shift: QuadPoint) -> Polytope:
    return tuple(v + shift for v in poly)


def negate(frame: Frame, poly: Polytope) -> Polytope:
    flipped = tuple(-v for v in poly)
    return convex_hull(frame, flipped)


def centroid(points: Sequence[QuadPoint]) -> QuadPoint:
    total = points[0]
    for p in points[1:]:
        total = total + p
    return total.scale(QuadValue.rational(1, points[0].d) / len(points))


def clip_to_box(frame: Frame, poly: Polytope, lower: QuadPoint, upper: QuadPoint) -> Polytope:
    """Sutherland-Hodgman clip against an axis-aligned box (frame coordinates)."""
    if frame.dim == 1:
        lo = max(poly[0][0], lower[0])
        hi = min(poly[1][0], upper[0])
        if hi <= lo:
            return ()
        return (QuadPoint((lo,)), QuadPoint((hi,)))
    out = list(poly)
    for axis in range(2):
        for bound, keep_above in ((lower[axis], True), (upper[axis], False)):
            out = _clip_half_plane(out, axis, bound, keep_above)
            if not out:
                return ()
    return tuple(out)


def _clip_half_plane(poly: List[QuadPoint], axis: int, bound: QuadValue, keep_above: bool) -> List[QuadPoint]:
    def inside(p):
        s = (p[axis] - bound).sign()
        return s >= 0 if keep_above else s <= 0

    result = []
    n = len(poly)
    for i in range(n):
        cur, nxt = poly[i], poly[(i + 1) % n]
        cur_in, nxt_in = inside(cur), inside(nxt)
        if cur_in:
            result.append(cur)
        if cur_in != nxt_in:
            t = (bound - cur[axis]) / (nxt[axis] - cur[axis])
            result.append(cur + (nxt - cur).scale(t))
    # drop repeated points produced by touching vertices
    deduped = []
    for p in result:
        if not deduped or p != deduped[-1]:
            deduped.append(p)
    if len(deduped) > 1 and deduped[0] == deduped[-1]:
        deduped.pop()
    return deduped if len(deduped) >= 3 else []


# --- float helpers ---

def to_xy(frame: Frame, poly: Sequence[QuadPoint]) -> np.ndarray:
    return np.array([frame.to_floats(p) for p in poly], dtype=float)


def float_hull(points: np.ndarray) -> np.ndarray:
    pts = np.unique(np.round(points, 12), axis=0)
    if len(pts) <= 2:
        return pts
    pts = pts[np.lexsort((pts[:, 1], pts[:, 0]))]

    def half(seq):
        chain = []
        for p in seq:
            while len(chain) >= 2:
                o, a = chain[-2], chain[-1]
                if (a[0] - o[0]) * (p[1] - o[1]) - (a[1] - o[1]) * (p[0] - o[0]) <= 0:
                    chain.pop()
                else:
                    break
            chain.append(p)
        return chain

    lower, upper = half(pts), half(pts[::-1])
    return np.array(lower[:-1] + upper[:-1])


def distance_to_hull_boundary(hull: np.ndarray, points: np.ndarray) -> np.ndarray:
    """Signed distance of each point to the boundary of a ccw convex hull (positive inside)."""
    a = hull
    b = np.roll(hull, -1, axis=0)
    edges = b - a
    lengths = np.hypot(edges[:, 0], edges[:, 1])
    normals = np.stack([edges[:, 1], -edges[:, 0]], axis=1) / lengths[:, None]
    # distance to each supporting line, inward positive
    d = -((points[:, None, :] - a[None, :, :]) * normals[None, :, :]).sum(axis=2)
    return d.min(axis=1)


def points_in_convex(hull: np.ndarray, points: np.ndarray, tol: float = 1e-9) -> np.ndarray:
    if len(hull) < 3:
        return np.zeros(len(points), dtype=bool)
    return distance_to_hull_boundary(hull, points) >= -tol


def circumradius(frame: Frame, poly: Polytope, center: Optional[QuadPoint] = None) -> float:
    xy = to_xy(frame, poly)
    c = xy.mean(axis=0) if center is None else np.array(frame.to_floats(center))
    return float(np.max(np.hypot(xy[:, 0] - c[0], xy[:, 1] - c[1]))) if frame.dim == 2 else float(
        np.max(np.abs(xy[:, 0] - c[0]))
    )


def angle_of(dx: float, dy: float) -> float:
    return math.atan2(dy, dx)
