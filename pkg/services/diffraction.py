"""
Diffraction of cut-and-project vertex sets.

Bragg peaks sit on the projection of the reciprocal lattice. A reciprocal vector q = K m
(K = 2 pi M^-T, M the Euclidean projection matrix) splits into (k_par, k_perp), and the
amplitude of the peak at k_par is

    A(m) = sum_c exp(-2 pi i m.h_c) FT(W_c, -k_perp) / sum_c area(W_c)

over the vertex classes c with shift h_c and placed window W_c. Intensities |A|^2 are
relative to the origin peak.
"""
import logging
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from services import linalg
from services.cutproject import CutProjectSpec, Window
from services.errors import DegeneratePolygonError, EmptyPatchError, InvalidJobConfigError
from services.exactnum import Frame
from services.patch import Patch
from services.polygon import to_xy
from services.workers import map_ordered

logger = logging.getLogger(__name__)

TAYLOR_THRESHOLD = 1e-6
DIRECT_CHUNK = 256


@dataclass(frozen=True)
class BraggPeak:
    indices: Tuple[int, ...]
    k_par: Tuple[float, ...]
    k_perp: Tuple[float, ...]
    intensity: float

    def to_dict(self) -> dict:
        return {
            "indices": list(self.indices),
            "k_par": list(self.k_par),
            "k_perp": list(self.k_perp),
            "intensity": self.intensity,
        }


@dataclass
class DiffractionPattern:
    scheme: str
    peaks: List[BraggPeak]
    normalization: Dict[str, object] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "scheme": self.scheme,
            "normalization": self.normalization,
            "peaks": [p.to_dict() for p in self.peaks],
        }

    def to_frame(self) -> pd.DataFrame:
        rows = []
        for p in self.peaks:
            row = {"indices": " ".join(str(i) for i in p.indices)}
            row.update({f"k{axis}": v for axis, v in zip("xy", p.k_par)})
            row["k_norm"] = float(np.hypot(*p.k_par)) if len(p.k_par) == 2 else abs(p.k_par[0])
            row["intensity"] = p.intensity
            rows.append(row)
        return pd.DataFrame(rows)


# --- window transforms ---

def _polygon_ft(xy: np.ndarray, ks: np.ndarray) -> np.ndarray:
    """Integral of exp(-i k.y) over a ccw convex polygon (rows of xy) for each row of ks."""
    ks = np.atleast_2d(np.asarray(ks, dtype=float))
    a = xy
    b = np.roll(xy, -1, axis=0)
    e = b - a
    area = 0.5 * float(np.sum(a[:, 0] * b[:, 1] - a[:, 1] * b[:, 0]))
    if area <= 0:
        raise DegeneratePolygonError("Window has no interior", vertices=xy.tolist())
    centroid = np.sum((a + b) * (a[:, 0] * b[:, 1] - a[:, 1] * b[:, 0])[:, None], axis=0) / (6 * area)
    diameter = float(np.max(np.hypot(*(xy[:, None, :] - xy[None, :, :]).reshape(-1, 2).T)))

    k_sq = np.sum(ks ** 2, axis=1)
    small = np.sqrt(k_sq) * diameter < TAYLOR_THRESHOLD
    out = np.empty(len(ks), dtype=complex)
    out[small] = area * np.exp(-1j * (ks[small] @ centroid))
    big = ~small
    if np.any(big):
        kb = ks[big]
        normals = np.stack([e[:, 1], -e[:, 0]], axis=1)
        mids = (a + b) / 2
        kn = kb @ normals.T
        half = (kb @ e.T) / 2
        terms = kn * np.exp(-1j * (kb @ mids.T)) * np.sinc(half / np.pi)
        out[big] = 1j * terms.sum(axis=1) / k_sq[big]
    return out


def _interval_ft(lo: float, hi: float, ks: np.ndarray) -> np.ndarray:
    ks = np.asarray(ks, dtype=float).reshape(-1)
    length = hi - lo
    if length <= 0:
        raise DegeneratePolygonError("Window has no interior", interval=[lo, hi])
    return length * np.exp(-1j * ks * (lo + hi) / 2) * np.sinc(ks * length / (2 * np.pi))


def window_ft(frame: Frame, window: Window, k_perp) -> complex:
    """
    Fourier transform of the placed window at k_perp (Euclidean internal-space
    coordinates); equals the window area at k_perp = 0.
    """
    return complex(window_ft_many(frame, window, np.atleast_2d(np.asarray(k_perp, dtype=float)))[0])


def window_ft_many(frame: Frame, window: Window, ks: np.ndarray) -> np.ndarray:
    xy = to_xy(frame, window.placed)
    if frame.dim == 1:
        return _interval_ft(float(xy[:, 0].min()), float(xy[:, 0].max()), ks)
    return _polygon_ft(xy, ks)


def _window_size(frame: Frame, window: Window) -> Tuple[float, float]:
    """(area, perimeter) in Euclidean units; an interval has two endpoints."""
    xy = to_xy(frame, window.placed)
    if frame.dim == 1:
        return float(xy[:, 0].max() - xy[:, 0].min()), 2.0
    b = np.roll(xy, -1, axis=0)
    area = 0.5 * float(np.sum(xy[:, 0] * b[:, 1] - xy[:, 1] * b[:, 0]))
    return area, float(np.sum(np.hypot(*(b - xy).T)))


# --- predicted pattern ---

def reciprocal_matrix(spec: CutProjectSpec) -> np.ndarray:
    """K = 2 pi M^-T; column j maps to (k_par, k_perp) of the j-th dual basis vector."""
    return 2 * math.pi * np.linalg.inv(spec.scheme.euclidean_matrix()).T


def vertex_density(spec: CutProjectSpec) -> float:
    """Vertices per unit parallel area (or length): total window measure over |det M|."""
    frame = spec.scheme.perp_frame
    total = sum(_window_size(frame, w)[0] for w in spec.windows.values())
    return total / abs(float(np.linalg.det(spec.scheme.euclidean_matrix())))


def amplitudes(spec: CutProjectSpec, indices: np.ndarray) -> np.ndarray:
    """Normalized complex amplitudes of the reciprocal vectors with integer coordinates `indices`."""
    indices = np.atleast_2d(np.asarray(indices, dtype=float))
    scheme = spec.scheme
    frame = scheme.perp_frame
    q = indices @ reciprocal_matrix(spec).T
    k_perp = q[:, scheme.m:]
    total = np.zeros(len(indices), dtype=complex)
    area = 0.0
    for label in sorted(spec.windows):
        w = spec.windows[label]
        shift = np.array([float(x) for x in (w.shift or (0,) * scheme.n)])
        phase = np.exp(-2j * math.pi * (indices @ shift))
        total += phase * window_ft_many(frame, w, -k_perp)
        area += _window_size(frame, w)[0]
    return total / area


def perp_bound(spec: CutProjectSpec, cutoff: float) -> float:
    """|FT(W, k)| <= perimeter / |k|, so peaks above `cutoff` have |k_perp| within this bound."""
    frame = spec.scheme.perp_frame
    sizes = [_window_size(frame, w) for w in spec.windows.values()]
    area = sum(s[0] for s in sizes)
    perimeter = sum(s[1] for s in sizes)
    return perimeter / (area * math.sqrt(cutoff))


def _peak_key(peak: BraggPeak):
    k = peak.k_par
    norm = math.hypot(*k) if len(k) == 2 else abs(k[0])
    angle = math.atan2(k[1], k[0]) % (2 * math.pi) if len(k) == 2 else (0.0 if k[0] >= 0 else math.pi)
    return (-round(peak.intensity, 10), round(norm, 9), round(angle, 9), peak.indices)


def predict_peaks(spec: CutProjectSpec, cutoff: float = 1e-3, k_max: float = 10.0,
                  threads: Optional[int] = None) -> DiffractionPattern:
    """Every projected reciprocal vector with |k_par| <= k_max and relative intensity >= cutoff."""
    if not 0 < cutoff <= 1 or k_max <= 0:
        raise InvalidJobConfigError("Cutoff must lie in (0, 1] and k_max must be positive",
                                    cutoff=cutoff, k_max=k_max)
    scheme = spec.scheme
    m, n = scheme.m, scheme.n
    bound = perp_bound(spec, cutoff)
    lower = np.concatenate([np.full(m, -k_max), np.full(n - m, -bound)])
    upper = -lower
    K = reciprocal_matrix(spec)
    cands = linalg.lattice_points_in_box(K, lower, upper, m)
    logger.info("Diffraction %s: %d reciprocal candidates (|k_perp| <= %.3f)", scheme.name, len(cands), bound)
    if len(cands) == 0:
        return DiffractionPattern(scheme=scheme.name, peaks=[], normalization=_normalization(spec, cutoff, k_max))
    q = cands @ K.T
    keep = np.sum(q[:, :m] ** 2, axis=1) <= k_max ** 2 + 1e-12
    cands, q = cands[keep], q[keep]

    chunks = [slice(i, i + DIRECT_CHUNK) for i in range(0, len(cands), DIRECT_CHUNK)]
    amps = np.concatenate(map_ordered(lambda s: amplitudes(spec, cands[s]), chunks, threads)) if chunks else \
        np.zeros(0, dtype=complex)
    intensity = np.abs(amps) ** 2
    peaks = [
        BraggPeak(
            indices=tuple(int(v) for v in row),
            k_par=tuple(float(v) for v in qq[:m]),
            k_perp=tuple(float(v) for v in qq[m:]),
            intensity=float(i),
        )
        for row, qq, i in zip(cands, q, intensity) if i >= cutoff
    ]
    peaks.sort(key=_peak_key)
    logger.info("Diffraction %s: %d peaks above %.2g", scheme.name, len(peaks), cutoff)
    return DiffractionPattern(scheme=scheme.name, peaks=peaks, normalization=_normalization(spec, cutoff, k_max))


def _normalization(spec: CutProjectSpec, cutoff: float, k_max: float) -> dict:
    return {
        "convention": "relative to the origin peak",
        "cutoff": cutoff,
        "k_max": k_max,
        "vertex_density": vertex_density(spec),
    }


def symmetry_defect(pattern: DiffractionPattern, steps: int) -> float:
    """
    Largest intensity mismatch between each peak and its image under rotation by
    2 pi / steps (1.0 when the image is missing, ignoring images beyond k_max).
    """
    if not pattern.peaks or len(pattern.peaks[0].k_par) != 2:
        return 0.0
    pts = np.array([p.k_par for p in pattern.peaks])
    vals = np.array([p.intensity for p in pattern.peaks])
    k_max = float(pattern.normalization.get("k_max", np.inf))
    cutoff = float(pattern.normalization.get("cutoff", 0.0))
    t = 2 * math.pi / steps
    rot = np.array([[math.cos(t), -math.sin(t)], [math.sin(t), math.cos(t)]])
    worst = 0.0
    for p, v in zip(pts @ rot.T, vals):
        d = np.hypot(*(pts - p).T)
        j = int(np.argmin(d))
        if d[j] < 1e-6:
            worst = max(worst, abs(vals[j] - v))
        elif np.hypot(*p) <= k_max - 1e-9 and v >= cutoff * (1 + 1e-9):
            worst = 1.0
    return worst


# --- direct sums ---

def direct_pattern(patch: Patch, k_list: Sequence[Sequence[float]], threads: Optional[int] = None) -> np.ndarray:
    """|N^-1 sum_x exp(-i k.x)|^2 over the patch vertices for each wave vector."""
    xy = patch.vertex_array()
    if len(xy) == 0:
        raise EmptyPatchError("Patch has no vertices", patch=patch.name)
    ks = np.atleast_2d(np.asarray(k_list, dtype=float))
    if ks.size == 0:
        return np.zeros(0)

    def chunk(s):
        phase = ks[s] @ xy.T
        re = np.cos(phase).sum(axis=1)
        im = np.sin(phase).sum(axis=1)
        return (re * re + im * im) / (len(xy) ** 2)

    chunks = [slice(i, i + DIRECT_CHUNK) for i in range(0, len(ks), DIRECT_CHUNK)]
    return np.concatenate(map_ordered(chunk, chunks, threads))


def compare_with_direct(pattern: DiffractionPattern, patch: Patch, top: int = 10,
                        threads: Optional[int] = None) -> pd.DataFrame:
    """Predicted against measured intensity for the strongest non-origin peaks."""
    peaks = [p for p in pattern.peaks if any(p.indices)][:top]
    measured = direct_pattern(patch, [p.k_par for p in peaks], threads) if peaks else np.zeros(0)
    rows = [
        {
            "indices": " ".join(str(i) for i in p.indices),
            "predicted": p.intensity,
            "direct": float(d),
            "relative_error": abs(float(d) - p.intensity) / p.intensity,
        }
        for p, d in zip(peaks, measured)
    ]
    return pd.DataFrame(rows, columns=["indices", "predicted", "direct", "relative_error"])
