"""
Arrow decorations of Penrose rhombs and local legality of decorated patches.

A decorated rhomb is stored as [A, B, A', C] where B and C are the ends of the
diagonal that splits it into halves (acute vertices of the thick rhomb, obtuse
vertices of the thin one). Single arrows run along A-B and A'-B, double arrows
run from A and A' into C.
"""
import logging
from collections import deque
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from services.errors import DecorationInconsistencyError, UndecoratedTileError
from services.exactnum import Frame, QuadPoint, lex_compare
from services.patch import EdgeDecoration, Patch, Tile

logger = logging.getLogger(__name__)

RHOMB_KINDS = ("thick", "thin")


def _arrow(kind: str, tail: QuadPoint, head: QuadPoint) -> EdgeDecoration:
    return EdgeDecoration(kind=kind, direction=1 if lex_compare(tail, head) < 0 else -1)


def rhomb_decoration(frame: Frame, kind: str, pts: Sequence[QuadPoint]) -> Tuple[EdgeDecoration, ...]:
    """Decorations of the edges A-B, B-A', A'-C, C-A of a rhomb given as [A, B, A', C]."""
    a, b, a2, c = pts
    if kind == "thick":
        singles = (_arrow("single", b, a), _arrow("single", b, a2))
    elif kind == "thin":
        singles = (_arrow("single", a, b), _arrow("single", a2, b))
    else:
        raise DecorationInconsistencyError(f"Tile kind {kind} carries no arrow decoration", kind=kind)
    return singles + (_arrow("double", a2, c), _arrow("double", a, c))


def _edge_key(a: int, b: int) -> Tuple[int, int]:
    return (a, b) if a < b else (b, a)


def tile_edge_decorations(tile: Tile) -> Dict[Tuple[int, int], EdgeDecoration]:
    if tile.decoration is None:
        raise UndecoratedTileError("Tile has no decoration", kind=tile.kind, vertices=list(tile.vertices))
    return {_edge_key(a, b): d for (a, b), d in zip(tile.edges, tile.decoration)}


# --- legality ---

def _t_junctions(patch: Patch) -> List[dict]:
    """Vertices lying strictly inside some tile edge."""
    xy = patch.vertex_array()
    if len(xy) == 0:
        return []
    cell = 1.0
    grid: Dict[Tuple[int, int], List[int]] = {}
    keys = np.floor(xy / cell).astype(np.int64)
    for i, (gx, gy) in enumerate(keys):
        grid.setdefault((int(gx), int(gy)), []).append(i)
    frame = patch.frame
    found = []
    for a, b in patch.edge_map():
        lo, hi = np.minimum(xy[a], xy[b]), np.maximum(xy[a], xy[b])
        cands = set()
        for gx in range(int(np.floor(lo[0] / cell)), int(np.floor(hi[0] / cell)) + 1):
            for gy in range(int(np.floor(lo[1] / cell)), int(np.floor(hi[1] / cell)) + 1):
                cands.update(grid.get((gx, gy), ()))
        d = xy[b] - xy[a]
        length_sq = float(d @ d)
        for v in cands - {a, b}:
            w = xy[v] - xy[a]
            t = float(w @ d) / length_sq
            if t <= 1e-9 or t >= 1 - 1e-9 or abs(d[0] * w[1] - d[1] * w[0]) > 1e-7:
                continue
            pa, pb, pv = patch.points[a], patch.points[b], patch.points[v]
            if frame.cross(pb - pa, pv - pa).is_zero():
                found.append({"type": "t-junction", "edge": [a, b], "vertex": v})
    return found


def check_legality(patch: Patch) -> dict:
    """
    Edge-to-edge adjacency and matching decorations on every shared edge. Legality is
    local; a legal patch need not extend to a tiling of the plane.
    """
    violations: List[dict] = []
    per_tile = [tile_edge_decorations(t) for t in patch.tiles]
    interior = 0
    for edge, uses in patch.edge_map().items():
        if len(uses) > 2:
            violations.append({"type": "overlap", "edge": list(edge), "tiles": [u[0] for u in uses]})
            continue
        if len(uses) < 2:
            continue
        interior += 1
        (t1, _), (t2, _) = uses
        d1, d2 = per_tile[t1][edge], per_tile[t2][edge]
        if d1 != d2:
            violations.append({
                "type": "decoration",
                "edge": list(edge),
                "tiles": [t1, t2],
                "decorations": [[d1.kind, d1.direction], [d2.kind, d2.direction]],
                "location": list(patch.frame.to_floats(patch.points[edge[0]])),
            })
    violations += _t_junctions(patch)
    report = {"legal": not violations, "interior_edges": interior, "violations": violations}
    if violations:
        logger.warning("Patch %s has %d matching violations", patch.name, len(violations))
    return report


# --- decoration ---

def _markings(patch: Patch, tile: Tile) -> List[Tuple[Tuple[int, ...], Tuple[EdgeDecoration, ...]]]:
    """Both arrow markings of an undecorated rhomb as (vertex order, decoration)."""
    if tile.kind not in RHOMB_KINDS or len(tile.vertices) != 4:
        raise DecorationInconsistencyError("Only thick and thin rhombs can be decorated", kind=tile.kind)
    frame = patch.frame
    v = tile.vertices
    p = [patch.points[i] for i in v]
    acute_at_0 = frame.dot(p[1] - p[0], p[3] - p[0]).sign() > 0
    # diagonal ends: acute pair for thick, obtuse pair for thin
    diag_at_0 = acute_at_0 if tile.kind == "thick" else not acute_at_0
    orders = [(v[1], v[2], v[3], v[0]), (v[3], v[0], v[1], v[2])] if diag_at_0 else \
        [(v[0], v[1], v[2], v[3]), (v[2], v[3], v[0], v[1])]
    return [(o, rhomb_decoration(frame, tile.kind, [patch.points[i] for i in o])) for o in orders]


def _edge_decorations(order: Sequence[int], decoration: Sequence[EdgeDecoration]) -> Dict[Tuple[int, int], EdgeDecoration]:
    n = len(order)
    return {_edge_key(order[i], order[(i + 1) % n]): decoration[i] for i in range(n)}


def decorate(patch: Patch) -> Patch:
    """
    Assign arrow decorations to an undecorated rhomb patch. A shared edge fixes the marking
    of the neighbour, so each connected component has at most two candidate decorations.
    """
    out = patch.copy()
    if not patch.tiles:
        return out
    options = [_markings(patch, t) for t in patch.tiles]
    tables = [[_edge_decorations(o, d) for o, d in opts] for opts in options]
    neighbours: Dict[int, List[Tuple[int, Tuple[int, int]]]] = {i: [] for i in range(len(patch.tiles))}
    for edge, uses in patch.edge_map().items():
        if len(uses) == 2:
            (t1, _), (t2, _) = uses
            neighbours[t1].append((t2, edge))
            neighbours[t2].append((t1, edge))

    chosen: Dict[int, int] = {}
    for start in range(len(patch.tiles)):
        if start in chosen:
            continue
        component: Optional[Dict[int, int]] = None
        for first in (0, 1):
            attempt = _propagate(start, first, tables, neighbours)
            if attempt is not None:
                component = attempt
                break
        if component is None:
            raise DecorationInconsistencyError(
                "No consistent arrow decoration exists", tile=start,
                vertices=[list(patch.frame.to_floats(patch.points[i])) for i in patch.tiles[start].vertices],
            )
        chosen.update(component)

    for ti, marking in chosen.items():
        order, decoration = options[ti][marking]
        tile = out.tiles[ti]
        tile.vertices = order
        tile.decoration = decoration
    out.meta = dict(patch.meta, decorated=True)
    return out


def _propagate(start: int, marking: int, tables, neighbours) -> Optional[Dict[int, int]]:
    assigned = {start: marking}
    queue = deque([start])
    while queue:
        t = queue.popleft()
        mine = tables[t][assigned[t]]
        for n, edge in neighbours[t]:
            if n in assigned:
                if tables[n][assigned[n]][edge] != mine[edge]:
                    return None
                continue
            fits = [m for m in (0, 1) if tables[n][m][edge] == mine[edge]]
            if not fits:
                return None
            assigned[n] = fits[0]
            queue.append(n)
    return assigned


def reflect_tile(patch: Patch, index: int) -> Patch:
    """Copy of the patch with one decorated rhomb's marking mirrored (B and C swapped)."""
    out = patch.copy()
    tile = out.tiles[index]
    if tile.decoration is None:
        raise UndecoratedTileError("Tile has no decoration", tile=index)
    a, b, a2, c = tile.vertices
    tile.vertices = (a, c, a2, b)
    tile.decoration = rhomb_decoration(out.frame, tile.kind, [out.points[i] for i in tile.vertices])
    return out
