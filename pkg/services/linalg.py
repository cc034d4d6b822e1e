"""
Exact linear algebra over Q, Q(sqrt 2) and Q(tau), plus a float lattice-point enumerator.

Matrices are lists of rows. Entries are Fraction or QuadValue (ints are promoted).
"""
import logging
from fractions import Fraction
from itertools import combinations
from typing import List, Optional, Sequence

import numpy as np

from services.exactnum import QuadValue, to_float

logger = logging.getLogger(__name__)

ENUMERATION_CHUNK = 400_000


def _field(x):
    if isinstance(x, int):
        return Fraction(x)
    return x


def _reciprocal(x):
    if isinstance(x, QuadValue):
        return x.inverse()
    return Fraction(1) / x


def _zero_like(x):
    return x * 0


def _one_like(x):
    return x * 0 + 1


def row_reduce(rows: Sequence[Sequence]) -> tuple:
    """Reduced row echelon form. Returns (rows, pivot columns)."""
    a = [[_field(x) for x in row] for row in rows]
    if not a:
        return a, []
    nr, nc = len(a), len(a[0])
    pivots: List[int] = []
    r = 0
    for c in range(nc):
        p = next((i for i in range(r, nr) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = _reciprocal(a[r][c])
        a[r] = [x * inv for x in a[r]]
        for i in range(nr):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == nr:
            break
    return a, pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(row_reduce(rows)[1])


def det(rows: Sequence[Sequence]):
    a = [[_field(x) for x in row] for row in rows]
    n = len(a)
    result = _one_like(a[0][0]) if n else Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c] != 0), None)
        if p is None:
            return _zero_like(result)
        if p != c:
            a[c], a[p] = a[p], a[c]
            result = -result
        pivot = a[c][c]
        result = result * pivot
        inv = _reciprocal(pivot)
        for i in range(c + 1, n):
            if a[i][c] != 0:
                f = a[i][c] * inv
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return result


def solve(rows: Sequence[Sequence], rhs: Sequence) -> Optional[list]:
    """Unique solution of A x = b, or None when A is singular."""
    n = len(rows)
    aug = [list(row) + [b] for row, b in zip(rows, rhs)]
    reduced, pivots = row_reduce(aug)
    if len(pivots) < n or pivots[-1] >= n:
        return None
    return [reduced[i][n] for i in range(n)]


def inverse(rows: Sequence[Sequence]) -> Optional[list]:
    n = len(rows)
    sample = _field(rows[0][0])
    one, zero = _one_like(sample), _zero_like(sample)
    aug = [list(row) + [one if i == j else zero for j in range(n)] for i, row in enumerate(rows)]
    reduced, pivots = row_reduce(aug)
    if len(pivots) < n or pivots[n - 1] >= n:
        return None
    return [row[n:] for row in reduced]


def nullspace(rows: Sequence[Sequence], ncols: int) -> List[list]:
    if not rows:
        return [[Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    reduced, pivots = row_reduce(rows)
    sample = reduced[0][0]
    zero, one = _zero_like(sample), _one_like(sample)
    basis = []
    for free in (c for c in range(ncols) if c not in pivots):
        v = [zero] * ncols
        v[free] = one
        for r, p in enumerate(pivots):
            v[p] = -reduced[r][free]
        basis.append(v)
    return basis


def mat_vec(rows: Sequence[Sequence], vec: Sequence) -> list:
    return [sum((x * y for x, y in zip(row, vec)), _zero_like(_field(row[0]))) for row in rows]


def affine_rank(points: Sequence[Sequence]) -> int:
    if len(points) <= 1:
        return 0
    base = points[0]
    return rank([[x - y for x, y in zip(p, base)] for p in points[1:]])


def to_float_array(rows: Sequence[Sequence]) -> np.ndarray:
    return np.array([[to_float(x) if isinstance(x, QuadValue) else float(x) for x in row] for row in rows])


# --- enumeration ---

def _best_columns(perp: np.ndarray, size: int) -> tuple:
    n = perp.shape[1]
    best, best_det = None, -1.0
    for cols in combinations(range(n), size):
        d = abs(np.linalg.det(perp[:, cols]))
        if d > best_det:
            best, best_det = cols, d
    return best


def lattice_points_in_box(matrix: np.ndarray, lower: np.ndarray, upper: np.ndarray, m: int,
                          margin: float = 1e-7) -> np.ndarray:
    """
    Integer vectors k with lower <= matrix @ k <= upper (up to `margin`).

    Rows [0, m) of `matrix` are the parallel coordinates, rows [m, n) the perpendicular
    ones. The perpendicular box is usually thin, so the last n - m coordinates are
    solved for from the first ones instead of being boxed.
    """
    matrix = np.asarray(matrix, dtype=float)
    lower = np.asarray(lower, dtype=float) - margin
    upper = np.asarray(upper, dtype=float) + margin
    n = matrix.shape[0]
    if np.any(upper < lower):
        return np.zeros((0, n), dtype=np.int64)
    inv = np.linalg.inv(matrix)
    center, half = (lower + upper) / 2, (upper - lower) / 2
    kc, kh = inv @ center, np.abs(inv) @ half
    kmin, kmax = np.floor(kc - kh).astype(np.int64), np.ceil(kc + kh).astype(np.int64)

    if m == 0 or m == n:
        ranges = [np.arange(kmin[i], kmax[i] + 1) for i in range(n)]
        grid = np.stack([g.ravel() for g in np.meshgrid(*ranges, indexing="ij")], axis=1)
        return _filter_box(grid, matrix, lower, upper)

    solved = _best_columns(matrix[m:, :], n - m)
    outer_cols = [c for c in range(n) if c not in solved]
    perp = matrix[m:, :]
    solved_inv = np.linalg.inv(perp[:, solved])
    inner_half = np.abs(solved_inv) @ half[m:]
    reach = np.ceil(inner_half).astype(np.int64) + 1
    offsets = np.stack(
        [g.ravel() for g in np.meshgrid(*[np.arange(-r, r + 1) for r in reach], indexing="ij")], axis=1
    )

    ranges = [np.arange(kmin[i], kmax[i] + 1) for i in outer_cols]
    outer = np.stack([g.ravel() for g in np.meshgrid(*ranges, indexing="ij")], axis=1)
    step = max(1, ENUMERATION_CHUNK // max(1, len(offsets)))
    found = []
    for start in range(0, len(outer), step):
        block = outer[start:start + step]
        inner_center = (center[m:][None, :] - block @ perp[:, outer_cols].T) @ solved_inv.T
        base = np.floor(inner_center).astype(np.int64)
        cand_inner = (base[:, None, :] + offsets[None, :, :]).reshape(-1, n - m)
        cand_outer = np.repeat(block, len(offsets), axis=0)
        cand = np.empty((len(cand_inner), n), dtype=np.int64)
        cand[:, outer_cols] = cand_outer
        cand[:, list(solved)] = cand_inner
        kept = _filter_box(cand, matrix, lower, upper)
        if len(kept):
            found.append(kept)
    if not found:
        return np.zeros((0, n), dtype=np.int64)
    result = np.unique(np.concatenate(found), axis=0)
    logger.debug("Enumerated %d lattice points in box", len(result))
    return result


def _filter_box(cand: np.ndarray, matrix: np.ndarray, lower: np.ndarray, upper: np.ndarray) -> np.ndarray:
    y = cand @ matrix.T
    ok = np.all((y >= lower) & (y <= upper), axis=1)
    return cand[ok]
