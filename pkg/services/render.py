"""SVG 1.1 output for patches, covering overlays and diffraction patterns."""
import logging
import math
import xml.etree.ElementTree as ET
from typing import Iterable, List, Optional, Sequence

import numpy as np

from services.diffraction import DiffractionPattern
from services.patch import Patch
from services.polygon import convex_hull, to_xy

logger = logging.getLogger(__name__)

SVG_NS = "http://www.w3.org/2000/svg"
PADDING = 1.0

TILE_COLORS = {
    "thick": "#f2c14e",
    "thin": "#5b8e7d",
    "thick-half": "#f7d98b",
    "thin-half": "#9dc3b5",
    "square": "#c9d6ea",
    "triangle": "#dfe7f2",
    "rhomb": "#e8a87c",
    "golden": "#e6b89c",
    "gnomon": "#9cafb7",
    "A": "#3d5a80",
    "B": "#ee6c4d",
}


def _fmt(v: float) -> str:
    return f"{v:.4f}".rstrip("0").rstrip(".") if v != 0 else "0"


def _points_attr(xy: np.ndarray, scale: float) -> str:
    return " ".join(f"{_fmt(x * scale)},{_fmt(-y * scale)}" for x, y in xy)


def _root(lo: np.ndarray, hi: np.ndarray, scale: float, background: Optional[str] = None) -> ET.Element:
    width, height = (hi - lo) * scale
    root = ET.Element("svg", {
        "xmlns": SVG_NS,
        "version": "1.1",
        "width": _fmt(width),
        "height": _fmt(height),
        "viewBox": f"{_fmt(lo[0] * scale)} {_fmt(-hi[1] * scale)} {_fmt(width)} {_fmt(height)}",
    })
    if background:
        ET.SubElement(root, "rect", {
            "x": _fmt(lo[0] * scale), "y": _fmt(-hi[1] * scale),
            "width": _fmt(width), "height": _fmt(height), "fill": background,
        })
    return root


def _to_string(root: ET.Element) -> str:
    return '<?xml version="1.0" encoding="UTF-8"?>\n' + ET.tostring(root, encoding="unicode") + "\n"


def _arrowhead(tail: np.ndarray, head: np.ndarray, at: float, size: float) -> np.ndarray:
    d = head - tail
    length = float(np.hypot(*d))
    u = d / length
    n = np.array([-u[1], u[0]])
    tip = tail + d * at + u * size / 2
    base = tip - u * size
    return np.array([tip, base + n * size / 2, base - n * size / 2])


def _decoration_marks(patch: Patch, xy: np.ndarray, scale: float, group: ET.Element) -> None:
    drawn = set()
    for tile in patch.tiles:
        if tile.decoration is None:
            continue
        for (a, b), deco in zip(tile.edges, tile.decoration):
            key = (min(a, b), max(a, b))
            if key in drawn:
                continue
            drawn.add(key)
            small, big = (a, b) if patch.lex_less(a, b) else (b, a)
            tail, head = (small, big) if deco.direction > 0 else (big, small)
            p, q = xy[tail], xy[head]
            size = 0.12 * float(np.hypot(*(q - p)))
            spots = (0.5,) if deco.kind == "single" else (0.42, 0.58)
            for at in spots:
                ET.SubElement(group, "polygon", {
                    "points": _points_attr(_arrowhead(p, q, at, size), scale),
                    "fill": "#222" if deco.kind == "single" else "#b00",
                })


def patch_svg(patch: Patch, overlays: Optional[Iterable[np.ndarray]] = None, decorations: bool = True,
              scale: float = 20.0) -> str:
    """
    Thin outlines for tiles, heavy outlines for cluster overlays (float polygons), arrowheads
    for edge decorations. One-dimensional patches are drawn as coloured intervals.
    """
    xy = patch.vertex_array()
    overlays = [np.asarray(o, dtype=float) for o in (overlays or [])]
    if patch.frame.dim == 1:
        return _line_svg(patch, xy, scale)
    if len(xy) == 0:
        lo, hi = np.array([-PADDING, -PADDING]), np.array([PADDING, PADDING])
    else:
        every = np.vstack([xy] + overlays) if overlays else xy
        lo, hi = every.min(axis=0) - PADDING, every.max(axis=0) + PADDING
    root = _root(lo, hi, scale)
    tiles = ET.SubElement(root, "g", {"stroke": "#333", "stroke-width": _fmt(0.02 * scale), "stroke-linejoin": "round"})
    for tile in patch.tiles:
        ET.SubElement(tiles, "polygon", {
            "points": _points_attr(xy[list(tile.vertices)], scale),
            "fill": TILE_COLORS.get(tile.kind, "#ddd"),
            "class": tile.kind,
        })
    if not patch.tiles and len(xy):
        dots = ET.SubElement(root, "g", {"fill": "#333"})
        for x, y in xy:
            ET.SubElement(dots, "circle", {"cx": _fmt(x * scale), "cy": _fmt(-y * scale), "r": _fmt(0.06 * scale)})
    if decorations:
        _decoration_marks(patch, xy, scale, ET.SubElement(root, "g", {"stroke": "none"}))
    if overlays:
        heavy = ET.SubElement(root, "g", {"fill": "none", "stroke": "#111", "stroke-width": _fmt(0.08 * scale)})
        for poly in overlays:
            ET.SubElement(heavy, "polygon", {"points": _points_attr(poly, scale)})
    logger.debug("Rendered %s: %d tiles, %d overlays", patch.name, len(patch.tiles), len(overlays))
    return _to_string(root)


def _line_svg(patch: Patch, xy: np.ndarray, scale: float) -> str:
    xs = xy[:, 0] if len(xy) else np.zeros(1)
    lo, hi = np.array([xs.min() - PADDING, -PADDING]), np.array([xs.max() + PADDING, PADDING])
    root = _root(lo, hi, scale)
    group = ET.SubElement(root, "g", {"stroke-width": _fmt(0.2 * scale)})
    for tile in patch.tiles:
        a, b = xy[list(tile.vertices), 0]
        ET.SubElement(group, "line", {
            "x1": _fmt(a * scale), "y1": "0", "x2": _fmt(b * scale), "y2": "0",
            "stroke": TILE_COLORS.get(tile.kind, "#333"), "class": tile.kind,
        })
    ticks = ET.SubElement(root, "g", {"fill": "#111"})
    for x in xs if len(xy) else []:
        ET.SubElement(ticks, "circle", {"cx": _fmt(x * scale), "cy": "0", "r": _fmt(0.08 * scale)})
    return _to_string(root)


def pattern_svg(pattern: DiffractionPattern, scale: float = 20.0, max_radius: float = 0.35) -> str:
    """Peaks as white disks on black, disk area proportional to intensity."""
    k_max = float(pattern.normalization.get("k_max", 1.0))
    lo, hi = np.array([-k_max, -k_max]) - PADDING, np.array([k_max, k_max]) + PADDING
    root = _root(lo, hi, scale, background="#000")
    disks = ET.SubElement(root, "g", {"fill": "#fff"})
    for peak in pattern.peaks:
        k = peak.k_par if len(peak.k_par) == 2 else (peak.k_par[0], 0.0)
        r = max_radius * math.sqrt(peak.intensity)
        ET.SubElement(disks, "circle", {
            "cx": _fmt(k[0] * scale), "cy": _fmt(-k[1] * scale), "r": _fmt(r * scale),
        })
    return _to_string(root)


def placement_overlays(patch: Patch, tile_groups: Sequence[Sequence[int]]) -> List[np.ndarray]:
    """Outline (float polygon) of each group of tiles, taken from the hull of their vertices."""
    out = []
    for group in tile_groups:
        pts = [patch.points[v] for ti in group for v in patch.tiles[ti].vertices]
        out.append(to_xy(patch.frame, convex_hull(patch.frame, pts)))
    return out


def write_svg(path: str, content: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(content)
    logger.info("Wrote %s", path)

