"""
Embedded lattices, projection schemes and point-group machinery.

Lattices live in a JSON catalogue (data/lattices.json) as rational bases of an ambient
space. A projection scheme sends every ambient unit vector to an exact image in the
parallel and in the perpendicular frame; lattice vectors project linearly.
"""
import json
import logging
import os
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import mpmath
import numpy as np
import sympy

from services import linalg
from services.errors import (
    DependentSpanError,
    DimensionMismatchError,
    InvalidOrderError,
    NonReciprocalVectorError,
)
from services.exactnum import (
    AB_FRAME,
    GOLDEN_LINE,
    PENROSE_FRAME,
    TAU,
    Frame,
    QuadPoint,
    QuadValue,
    quad,
    to_float,
)

logger = logging.getLogger(__name__)

CATALOGUE_PATH = Path(
    os.getenv("QUASITILE_CATALOGUE", Path(__file__).resolve().parent.parent / "data" / "lattices.json")
)
CATALOGUE_SCHEMA_VERSION = 1

Vector = Tuple[Fraction, ...]


def _to_fraction(value) -> Fraction:
    if isinstance(value, sympy.Basic):
        value = sympy.Rational(value)
        return Fraction(int(value.p), int(value.q))
    return Fraction(value)


def _dot(u: Sequence, v: Sequence):
    total = 0
    for x, y in zip(u, v):
        total = total + x * y
    return total


@dataclass(frozen=True, eq=False)
class EmbeddedLattice:
    name: str
    ambient_dim: int
    basis: Tuple[Vector, ...]
    generators: Dict[str, Tuple[Tuple[int, ...], ...]] = field(default_factory=dict)
    holes: Tuple[Vector, ...] = ()
    description: str = ""

    def __post_init__(self):
        for row in self.basis:
            if len(row) != self.ambient_dim:
                raise DimensionMismatchError(
                    f"Basis vector of {self.name} has {len(row)} coordinates",
                    expected=self.ambient_dim,
                )
        if linalg.det(self.gram) == 0:
            raise DependentSpanError(f"Basis of {self.name} is linearly dependent", lattice=self.name)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def gram(self) -> List[List[Fraction]]:
        return _gram(self)

    @property
    def reciprocal_basis(self) -> List[List[Fraction]]:
        """Rows b_i = sum_j (G^-1)_ij a_j, so <b_i, a_j> = delta_ij."""
        return _reciprocal(self)

    def to_ambient(self, coeffs: Sequence) -> list:
        return [sum((c * row[k] for c, row in zip(coeffs, self.basis)), Fraction(0)) for k in range(self.ambient_dim)]

    def to_coefficients(self, ambient: Sequence) -> list:
        return [_dot(b, ambient) for b in self.reciprocal_basis]

    def covolume_sq(self) -> Fraction:
        return linalg.det(self.gram)

    def point_group(self, name: str) -> "PointGroupRep":
        if name not in self.generators:
            raise InvalidOrderError(f"Lattice {self.name} has no generator {name}", lattice=self.name)
        ambient = self.generators[name]
        # coefficient matrix: column j holds the coordinates of g(a_j)
        images = [[_dot(row, a) for row in ambient] for a in self.basis]
        coeff = [[_dot(b, image) for image in images] for b in self.reciprocal_basis]
        matrix = sympy.Matrix(self.dim, self.dim, lambda i, j: sympy.Rational(coeff[i][j].numerator, coeff[i][j].denominator))
        gram = sympy.Matrix(self.dim, self.dim, lambda i, j: sympy.Rational(self.gram[i][j].numerator, self.gram[i][j].denominator))
        return PointGroupRep(group=name, generators=[matrix], gram=gram, lattice_name=self.name)


@lru_cache(maxsize=None)
def _gram(lattice: EmbeddedLattice) -> List[List[Fraction]]:
    return [[_dot(a, b) for b in lattice.basis] for a in lattice.basis]


@lru_cache(maxsize=None)
def _reciprocal(lattice: EmbeddedLattice) -> List[List[Fraction]]:
    g_inv = linalg.inverse(lattice.gram)
    return [
        [sum((g_inv[i][j] * lattice.basis[j][k] for j in range(lattice.dim)), Fraction(0)) for k in range(lattice.ambient_dim)]
        for i in range(lattice.dim)
    ]


# --- catalogue ---

def _lattice_from_entry(entry: dict) -> EmbeddedLattice:
    return EmbeddedLattice(
        name=entry["name"],
        ambient_dim=int(entry["ambient_dim"]),
        basis=tuple(tuple(Fraction(x) for x in row) for row in entry["basis"]),
        generators={k: tuple(tuple(int(x) for x in row) for row in v) for k, v in entry.get("generators", {}).items()},
        holes=tuple(tuple(Fraction(x) for x in row) for row in entry.get("holes", [])),
        description=entry.get("description", ""),
    )


@lru_cache(maxsize=4)
def load_catalogue(path: Optional[str] = None) -> Dict[str, EmbeddedLattice]:
    source = Path(path) if path else CATALOGUE_PATH
    with open(source, encoding="utf-8") as fh:
        data = json.load(fh)
    if data.get("schema_version") != CATALOGUE_SCHEMA_VERSION:
        raise DimensionMismatchError("Unsupported lattice catalogue version", version=data.get("schema_version"))
    lattices = {entry["name"]: _lattice_from_entry(entry) for entry in data["lattices"]}
    logger.info("Loaded %d lattices from %s", len(lattices), source)
    return lattices


def get_lattice(name: str) -> EmbeddedLattice:
    catalogue = load_catalogue()
    if name in catalogue:
        return catalogue[name]
    if name.startswith("Z") and name[1:].isdigit():
        return hypercubic_lattice(int(name[1:]))
    raise DimensionMismatchError(f"Unknown lattice {name}", lattice=name)


@lru_cache(maxsize=None)
def hypercubic_lattice(n: int) -> EmbeddedLattice:
    basis = tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))
    return EmbeddedLattice(name=f"Z{n}", ambient_dim=n, basis=basis)


def catalogue_entry(lattice: EmbeddedLattice) -> dict:
    fmt = lambda rows: [[str(x) for x in row] for row in rows]
    entry = {
        "name": lattice.name,
        "description": lattice.description,
        "ambient_dim": lattice.ambient_dim,
        "basis": fmt(lattice.basis),
        "gram": fmt(lattice.gram),
        "reciprocal_basis": fmt(lattice.reciprocal_basis),
        "generators": {k: [list(r) for r in v] for k, v in lattice.generators.items()},
        "generators_in_basis": {
            k: [[str(x) for x in row] for row in lattice.point_group(k).generators[0].tolist()]
            for k in lattice.generators
        },
        "holes": fmt(lattice.holes),
    }
    return entry


def export_catalogue(path: str) -> dict:
    payload = {
        "schema_version": CATALOGUE_SCHEMA_VERSION,
        "lattices": [catalogue_entry(lat) for lat in load_catalogue().values()],
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
    logger.info("Exported lattice catalogue to %s", path)
    return payload


# --- projection schemes ---

@dataclass(frozen=True, eq=False)
class ProjectionScheme:
    name: str
    lattice: EmbeddedLattice
    m: int
    par_frame: Frame
    perp_frame: Frame
    gen_par: Tuple[QuadPoint, ...]
    gen_perp: Tuple[QuadPoint, ...]
    null_direction: Optional[Tuple[int, ...]] = None

    @property
    def n(self) -> int:
        return self.lattice.dim

    @property
    def par_images(self) -> List[QuadPoint]:
        return _images(self, "par")

    @property
    def perp_images(self) -> List[QuadPoint]:
        return _images(self, "perp")

    def project(self, coeffs: Sequence) -> Tuple[QuadPoint, QuadPoint]:
        if len(coeffs) != self.n:
            raise DimensionMismatchError(
                f"Expected {self.n} lattice coordinates, got {len(coeffs)}", scheme=self.name
            )
        return _combine(self.par_frame, self.par_images, coeffs), _combine(self.perp_frame, self.perp_images, coeffs)

    def project_ambient(self, vector: Sequence) -> Tuple[QuadPoint, QuadPoint]:
        if len(vector) != self.lattice.ambient_dim:
            raise DimensionMismatchError(
                f"Expected {self.lattice.ambient_dim} ambient coordinates, got {len(vector)}", scheme=self.name
            )
        return _combine(self.par_frame, self.gen_par, vector), _combine(self.perp_frame, self.gen_perp, vector)

    def exact_matrix(self) -> List[List[QuadValue]]:
        """Rows: parallel then perpendicular frame coordinates; columns: basis vectors."""
        par, perp = self.par_images, self.perp_images
        rows = [[p[r] for p in par] for r in range(self.par_frame.dim)]
        rows += [[p[r] for p in perp] for r in range(self.perp_frame.dim)]
        return rows

    def frame_matrix(self) -> np.ndarray:
        return _frame_matrix(self)

    def euclidean_matrix(self) -> np.ndarray:
        mat = self.frame_matrix().copy()
        if self.par_frame.dim == 2:
            mat[1, :] *= self.par_frame.y_scale
        if self.perp_frame.dim == 2:
            mat[self.m + 1, :] *= self.perp_frame.y_scale
        return mat


def _combine(frame: Frame, images: Sequence[QuadPoint], coeffs: Sequence) -> QuadPoint:
    total = frame.origin()
    for c, image in zip(coeffs, images):
        if c:
            total = total + image.scale(c)
    return total


@lru_cache(maxsize=None)
def _images(scheme: ProjectionScheme, which: str) -> List[QuadPoint]:
    frame = scheme.par_frame if which == "par" else scheme.perp_frame
    gens = scheme.gen_par if which == "par" else scheme.gen_perp
    return [_combine(frame, gens, row) for row in scheme.lattice.basis]


@lru_cache(maxsize=None)
def _frame_matrix(scheme: ProjectionScheme) -> np.ndarray:
    return linalg.to_float_array(scheme.exact_matrix())


def module_project(scheme: ProjectionScheme, n_vec: Sequence[int]) -> Tuple[QuadPoint, QuadPoint]:
    return scheme.project(n_vec)


@lru_cache(maxsize=None)
def fibonacci_scheme() -> ProjectionScheme:
    one = quad(1, 0, 5)
    return ProjectionScheme(
        name="fibonacci",
        lattice=get_lattice("Z2"),
        m=1,
        par_frame=GOLDEN_LINE,
        perp_frame=GOLDEN_LINE,
        gen_par=(QuadPoint((one,)), QuadPoint((TAU,))),
        gen_perp=(QuadPoint((one,)), QuadPoint((one - TAU,))),
    )


@lru_cache(maxsize=None)
def ammann_beenker_scheme() -> ProjectionScheme:
    return ProjectionScheme(
        name="ab",
        lattice=get_lattice("Z4"),
        m=2,
        par_frame=AB_FRAME,
        perp_frame=AB_FRAME,
        gen_par=tuple(AB_FRAME.unit(k) for k in range(4)),
        gen_perp=tuple(AB_FRAME.unit(3 * k) for k in range(4)),
    )


@lru_cache(maxsize=None)
def penrose_scheme() -> ProjectionScheme:
    return ProjectionScheme(
        name="penrose",
        lattice=get_lattice("A4"),
        m=2,
        par_frame=PENROSE_FRAME,
        perp_frame=PENROSE_FRAME,
        gen_par=tuple(PENROSE_FRAME.unit(2 * k) for k in range(5)),
        gen_perp=tuple(PENROSE_FRAME.unit(4 * k) for k in range(5)),
        null_direction=(1, 1, 1, 1, 1),
    )


SCHEMES: Dict[str, Callable[[], ProjectionScheme]] = {
    "fibonacci": fibonacci_scheme,
    "ab": ammann_beenker_scheme,
    "penrose": penrose_scheme,
}


def get_scheme(name: str) -> ProjectionScheme:
    if name not in SCHEMES:
        raise DimensionMismatchError(f"Unknown projection scheme {name}", scheme=name)
    return SCHEMES[name]()


def check_projection_injective(scheme: ProjectionScheme, bound: int = 20) -> bool:
    """No nonzero integer vector in [-bound, bound]^n projects to zero in both spaces."""
    mat = scheme.frame_matrix()
    n = scheme.n
    axis = np.arange(-bound, bound + 1)
    head = np.stack([g.ravel() for g in np.meshgrid(*([axis] * (n - 1)), indexing="ij")], axis=1)
    for last in axis:
        cand = np.hstack([head, np.full((len(head), 1), last)])
        y = cand @ mat.T
        hits = cand[np.all(np.abs(y) < 1e-9, axis=1)]
        for vec in hits:
            if not any(vec):
                continue
            par, perp = scheme.project([int(v) for v in vec])
            if all(c.is_zero() for c in par) and all(c.is_zero() for c in perp):
                logger.warning("Projection of %s is not injective at %s", scheme.name, vec.tolist())
                return False
    return True


def check_scheme_equivariance(scheme: ProjectionScheme, rep: "PointGroupRep", par_steps: int, perp_steps: int) -> bool:
    """g acts as a rotation by par_steps frame angles in E_par and perp_steps in E_perp."""
    g = rep.generators[0]
    for j in range(scheme.n):
        image = [int(g[i, j]) for i in range(scheme.n)]
        unit = [int(i == j) for i in range(scheme.n)]
        par, perp = scheme.project(image)
        par0, perp0 = scheme.project(unit)
        if par != scheme.par_frame.rotate(par0, par_steps) or perp != scheme.perp_frame.rotate(perp0, perp_steps):
            return False
    return True


# --- rational subspaces ---

def is_rational_subspace(lattice: EmbeddedLattice, span_vectors: Sequence[Sequence]) -> bool:
    """
    True when rational combinations of the reciprocal basis annihilate the span and fill
    its orthogonal complement. Each pairing <b_i, w> = alpha + beta*omega gives two
    rational equations.
    """
    vectors = [list(v) for v in span_vectors]
    for v in vectors:
        if len(v) != lattice.ambient_dim:
            raise DimensionMismatchError("Span vector has the wrong length", expected=lattice.ambient_dim, got=len(v))
    if not vectors:
        return True
    if linalg.rank(vectors) < len(vectors):
        raise DependentSpanError("Span vectors are linearly dependent", count=len(vectors))
    equations = []
    for w in vectors:
        pairings = [_dot(b, w) for b in lattice.reciprocal_basis]
        alpha = [p.a if isinstance(p, QuadValue) else Fraction(p) for p in pairings]
        beta = [p.b if isinstance(p, QuadValue) else Fraction(0) for p in pairings]
        equations += [alpha, beta]
    system = sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in row] for row in equations])
    nullity = len(system.nullspace())
    projected_rank = _span_rank_in_lattice(lattice, vectors)
    return nullity == lattice.dim - projected_rank


def _span_rank_in_lattice(lattice: EmbeddedLattice, vectors: List[list]) -> int:
    coords = [[_dot(b, w) for b in lattice.reciprocal_basis] for w in vectors]
    return linalg.rank(coords)


# --- crystallographic restriction ---

_EXACT_COS = {
    1: quad(1, 0, 5),
    2: quad(-1, 0, 5),
    3: quad(Fraction(-1, 2), 0, 5),
    4: quad(0, 0, 5),
    5: quad(Fraction(-1, 2), Fraction(1, 2), 5),
    6: quad(Fraction(1, 2), 0, 5),
    8: quad(0, Fraction(1, 2), 2),
    10: quad(0, Fraction(1, 2), 5),
}
INTERVAL_DPS = 50


def restriction_report(n_fold: int) -> dict:
    """
    Place A=(0,0), B=(1,0) at minimal distance; rotate B about A by 2pi/n and A about B
    by -2pi/n. Rotated copies of B must stay at least 1 apart and the new pair A'B'
    (parallel to AB) must have integer length.
    """
    if n_fold < 1:
        raise InvalidOrderError("Rotation order must be at least 1", n_fold=n_fold)
    if n_fold in _EXACT_COS:
        c = _EXACT_COS[n_fold]
        chord_sq = 2 - 2 * c
        closer = n_fold > 1 and chord_sq < 1
        gap = abs(1 - 2 * c)
        integral = gap.b == 0 and gap.a.denominator == 1
        return {
            "n_fold": n_fold,
            "method": "exact",
            "chord_sq": float(chord_sq),
            "gap": float(gap),
            "closer_pair": bool(closer),
            "integral_gap": bool(integral),
            "compatible": bool(not closer and integral),
        }
    saved = mpmath.iv.dps
    mpmath.iv.dps = INTERVAL_DPS
    try:
        c = mpmath.iv.cos(2 * mpmath.iv.pi / n_fold)
        chord_sq = 2 - 2 * c
        gap = abs(1 - 2 * c)
        closer = chord_sq.b < 1
        if not closer and chord_sq.a < 1:
            raise InvalidOrderError("Interval comparison inconclusive", n_fold=n_fold)
        integral = mpmath.floor(gap.a) != mpmath.floor(gap.b) or gap.a == mpmath.floor(gap.a)
        return {
            "n_fold": n_fold,
            "method": "interval",
            "chord_sq": float(chord_sq.mid),
            "gap": float(gap.mid),
            "closer_pair": bool(closer),
            "integral_gap": bool(integral),
            "compatible": bool(not closer and integral),
        }
    finally:
        mpmath.iv.dps = saved


def crystallographic_restriction(n_fold: int) -> bool:
    return restriction_report(n_fold)["compatible"]


def minimal_embedding_dimension(n_fold: int) -> int:
    if n_fold < 1:
        raise InvalidOrderError("Rotation order must be at least 1", n_fold=n_fold)
    if n_fold <= 2:
        return 1
    return int(sympy.totient(n_fold))


# --- point groups ---

@dataclass
class PointGroupRep:
    group: str
    generators: List[sympy.Matrix]
    gram: sympy.Matrix
    lattice_name: str = ""

    def preserves_lattice(self) -> bool:
        return all(all(x.is_integer for x in g) for g in self.generators)

    def is_orthogonal(self) -> bool:
        return all(sympy.simplify(g.T * self.gram * g - self.gram) == sympy.zeros(*self.gram.shape) for g in self.generators)

    def order(self, limit: int = 120) -> Optional[int]:
        g = self.generators[0]
        power = g
        eye = sympy.eye(g.shape[0])
        for k in range(1, limit + 1):
            if power == eye:
                return k
            power = power * g
        return None


def regular_representation(n: int) -> PointGroupRep:
    if n < 1:
        raise InvalidOrderError("Group order must be at least 1", n=n)
    g = sympy.Matrix(n, n, lambda i, j: 1 if i == (j + 1) % n else 0)
    rep = PointGroupRep(group=f"C{n}", generators=[g], gram=sympy.eye(n), lattice_name=f"Z{n}")
    if not rep.preserves_lattice():
        raise InvalidOrderError("Permutation matrix does not preserve Z^n", n=n)
    return rep


@dataclass
class RotationBlock:
    angle: sympy.Expr
    basis: List[sympy.Matrix]
    matrix: sympy.Matrix

    @property
    def angle_float(self) -> float:
        return float(self.angle)

    @property
    def size(self) -> int:
        return len(self.basis)


@dataclass
class BlockReduction:
    blocks: List[RotationBlock]
    change_of_basis: sympy.Matrix

    def rotation_angles(self) -> List[sympy.Expr]:
        return [b.angle for b in self.blocks if b.size == 2]


def _is_zero(expr) -> bool:
    return sympy.simplify(expr) == 0


def _g_project_out(vec: sympy.Matrix, chosen: List[sympy.Matrix], gram: sympy.Matrix) -> sympy.Matrix:
    out = vec
    for v in chosen:
        coeff = (v.T * gram * out)[0, 0] / (v.T * gram * v)[0, 0]
        out = out - coeff * v
    return out.applyfunc(sympy.simplify)


def block_reduce_cyclic(rep: PointGroupRep) -> BlockReduction:
    """
    Split the action of a cyclic generator into 2D rotation blocks (angles 2 pi j / d for
    each cyclotomic factor Phi_d of the characteristic polynomial) and 1D blocks for the
    eigenvalues +1 and -1. Inside a block g acts as [[c, -s], [s, c]] exactly.
    """
    if len(rep.generators) != 1:
        raise InvalidOrderError("Block reduction needs a single cyclic generator", generators=len(rep.generators))
    g = rep.generators[0]
    order = rep.order()
    if order is None:
        raise InvalidOrderError("Generator has no finite order", group=rep.group)
    x = sympy.Symbol("x")
    n = g.shape[0]
    eye = sympy.eye(n)
    factors = sympy.factor_list(g.charpoly(x).as_expr(), x)[1]
    blocks: List[RotationBlock] = []
    for poly, mult in factors:
        d = next(
            (k for k in sympy.divisors(order) if sympy.expand(poly - sympy.cyclotomic_poly(k, x)) == 0),
            None,
        )
        if d is None:
            raise InvalidOrderError("Characteristic polynomial is not cyclotomic", group=rep.group)
        for j in range(0, d // 2 + 1):
            if gcd(j, d) != 1:
                continue
            angle = 2 * sympy.pi * j / d
            c, s = sympy.cos(angle), sympy.sin(angle)
            if d <= 2:
                kernel = (g - c * eye).nullspace(iszerofunc=_is_zero)
                chosen: List[sympy.Matrix] = []
                for vec in kernel:
                    vec = _g_project_out(vec, chosen, rep.gram)
                    chosen.append(vec)
                    blocks.append(RotationBlock(angle=angle, basis=[vec], matrix=sympy.Matrix([[c]])))
                continue
            kernel = (g * g - 2 * c * g + eye).applyfunc(sympy.nsimplify).nullspace(iszerofunc=_is_zero)
            chosen = []
            for vec in kernel:
                if len(chosen) == 2 * mult:
                    break
                u = _g_project_out(vec, chosen, rep.gram)
                if all(_is_zero(e) for e in u):
                    continue
                w = ((g * u - c * u) / s).applyfunc(sympy.simplify)
                chosen += [u, w]
                blocks.append(RotationBlock(angle=angle, basis=[u, w], matrix=sympy.Matrix([[c, -s], [s, c]])))
    blocks.sort(key=lambda b: (b.angle_float, -b.size))
    columns = [v for b in blocks for v in b.basis]
    change = sympy.Matrix.hstack(*columns) if columns else sympy.zeros(n, 0)
    logger.info("Block reduction of %s: angles %s", rep.group, [str(b.angle) for b in blocks])
    return BlockReduction(blocks=blocks, change_of_basis=change)


# --- Bohr restriction ---

@dataclass
class PeriodicFunction:
    """Finite Fourier series f(y) = sum A exp(2 pi i <b, y>) over ambient reciprocal vectors b."""
    modes: List[Tuple[Tuple[Fraction, ...], complex]]

    def __call__(self, ambient_points: np.ndarray) -> np.ndarray:
        pts = np.atleast_2d(np.asarray(ambient_points, dtype=float))
        total = np.zeros(len(pts), dtype=complex)
        for vec, amp in self.modes:
            total += amp * np.exp(2j * np.pi * (pts @ np.array([float(v) for v in vec])))
        return total


class QuasiperiodicFunction:
    """x_par -> f(lift(x_par, c_perp)) for a finite Fourier series on the lattice."""

    def __init__(self, scheme: ProjectionScheme, wavenumbers: np.ndarray, amplitudes: np.ndarray, c_perp: np.ndarray):
        self.scheme = scheme
        self.wavenumbers = wavenumbers
        self.amplitudes = amplitudes
        self.c_perp = c_perp
        self._inverse = np.linalg.inv(scheme.euclidean_matrix())

    def lift(self, x_par: np.ndarray) -> np.ndarray:
        pts = np.atleast_2d(np.asarray(x_par, dtype=float))
        full = np.hstack([pts, np.tile(self.c_perp, (len(pts), 1))])
        return full @ self._inverse.T

    @property
    def frequencies(self) -> np.ndarray:
        """Parallel frequencies (cycles per unit length) of the restricted modes."""
        return self.wavenumbers @ self._inverse[:, : self.scheme.m]

    def __call__(self, x_par: np.ndarray) -> np.ndarray:
        coeffs = self.lift(x_par)
        phases = 2j * np.pi * (coeffs @ self.wavenumbers.T)
        return np.exp(phases) @ self.amplitudes


def bohr_restrict(f_periodic: PeriodicFunction, scheme: ProjectionScheme, c_perp) -> QuasiperiodicFunction:
    lattice = scheme.lattice
    wavenumbers = []
    for vec, _ in f_periodic.modes:
        if len(vec) != lattice.ambient_dim:
            raise DimensionMismatchError("Fourier vector has the wrong length", expected=lattice.ambient_dim)
        ks = [_dot(vec, a) for a in lattice.basis]
        if any(Fraction(k).denominator != 1 for k in ks):
            raise NonReciprocalVectorError(
                "Fourier vector is not in the reciprocal lattice", vector=[str(v) for v in vec]
            )
        wavenumbers.append([int(k) for k in ks])
    if isinstance(c_perp, QuadPoint):
        c_perp = scheme.perp_frame.to_floats(c_perp)
    c = np.asarray(c_perp, dtype=float).reshape(-1)
    if len(c) != scheme.n - scheme.m:
        raise DimensionMismatchError("c_perp has the wrong dimension", expected=scheme.n - scheme.m)
    amps = np.array([complex(a) for _, a in f_periodic.modes], dtype=complex)
    k = np.array(wavenumbers, dtype=float).reshape(len(wavenumbers), scheme.n)
    return QuasiperiodicFunction(scheme, k, amps, c)
