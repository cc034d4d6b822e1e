"""
Exact arithmetic over Q(sqrt 2) and Q(tau), tau = (1 + sqrt 5) / 2.

A QuadValue a + b*w stores rational a, b and the ring tag d:
w = sqrt(2) when d == 2 and w = tau when d == 5.
"""
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Tuple, Union

import mpmath

from services.errors import DimensionMismatchError, MixedDiscriminantError

SUPPORTED_RINGS = (2, 5)
FLOAT_DPS = 50

Scalar = Union[int, Fraction, "QuadValue"]


def _sign_of(value: Fraction) -> int:
    return (value > 0) - (value < 0)


def _sign_surd(first: Fraction, second: Fraction, radicand: int) -> int:
    # sign of first + second * sqrt(radicand)
    sa, sb = _sign_of(first), _sign_of(second)
    if sb == 0:
        return sa
    if sa == 0 or sa == sb:
        return sb if sa == 0 else sa
    lhs, rhs = first * first, radicand * second * second
    if lhs > rhs:
        return sa
    if lhs < rhs:
        return sb
    return 0


@dataclass(frozen=True)
class QuadValue:
    a: Fraction
    b: Fraction
    d: int

    def __post_init__(self):
        if self.d not in SUPPORTED_RINGS:
            raise MixedDiscriminantError(f"Unsupported ring discriminant {self.d}", d=self.d)
        if type(self.a) is not Fraction:
            object.__setattr__(self, "a", Fraction(self.a))
        if type(self.b) is not Fraction:
            object.__setattr__(self, "b", Fraction(self.b))

    # --- construction helpers ---
    @classmethod
    def _raw(cls, a: Fraction, b: Fraction, d: int) -> "QuadValue":
        obj = object.__new__(cls)
        object.__setattr__(obj, "a", a)
        object.__setattr__(obj, "b", b)
        object.__setattr__(obj, "d", d)
        return obj

    @classmethod
    def rational(cls, value: Union[int, Fraction, str], d: int) -> "QuadValue":
        return cls(Fraction(value), Fraction(0), d)

    @classmethod
    def from_pair(cls, pair: Iterable[Union[str, int]], d: int) -> "QuadValue":
        a, b = pair
        return cls(Fraction(a), Fraction(b), d)

    def to_pair(self) -> Tuple[str, str]:
        return (str(self.a), str(self.b))

    def _coerce(self, other) -> "QuadValue":
        if isinstance(other, QuadValue):
            if other.d != self.d:
                raise MixedDiscriminantError(
                    "Operands live in different quadratic rings", left=self.d, right=other.d
                )
            return other
        if isinstance(other, (int, Fraction)):
            return QuadValue._raw(Fraction(other), Fraction(0), self.d)
        return NotImplemented

    # --- ring operations ---
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return QuadValue._raw(self.a + other.a, self.b + other.b, self.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadValue._raw(-self.a, -self.b, self.d)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return QuadValue._raw(self.a - other.a, self.b - other.b, self.d)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b, c, e = self.a, self.b, other.a, other.b
        if self.d == 2:
            return QuadValue._raw(a * c + 2 * b * e, a * e + b * c, 2)
        # tau^2 = tau + 1
        be = b * e
        return QuadValue._raw(a * c + be, a * e + b * c + be, 5)

    __rmul__ = __mul__

    def conjugate(self) -> "QuadValue":
        if self.d == 2:
            return QuadValue._raw(self.a, -self.b, 2)
        # tau -> 1 - tau
        return QuadValue._raw(self.a + self.b, -self.b, 5)

    def norm(self) -> Fraction:
        a, b = self.a, self.b
        if self.d == 2:
            return a * a - 2 * b * b
        return a * a + a * b - b * b

    def inverse(self) -> "QuadValue":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("QuadValue division by zero")
        conj = self.conjugate()
        return QuadValue._raw(conj.a / n, conj.b / n, self.d)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = QuadValue._raw(Fraction(1), Fraction(0), self.d)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    # --- order ---
    def sign(self) -> int:
        if self.d == 2:
            return _sign_surd(self.a, self.b, 2)
        # a + b*tau = (a + b/2) + (b/2)*sqrt(5)
        half = self.b / 2
        return _sign_surd(self.a + half, half, 5)

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, QuadValue):
            return self.d == other.d and self.a == other.a and self.b == other.b
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self):
        return hash((self.a, self.b, self.d))

    def _cmp(self, other) -> int:
        other = self._coerce(other)
        if other is NotImplemented:
            raise TypeError(f"Cannot compare QuadValue with {type(other).__name__}")
        return (self - other).sign()

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __abs__(self):
        return -self if self.sign() < 0 else self

    # --- conversion ---
    def __float__(self):
        return to_float(self)

    def __repr__(self):
        symbol = "√2" if self.d == 2 else "τ"
        return f"QuadValue({self.a} + {self.b}{symbol})"


def quad_add(x: QuadValue, y: QuadValue) -> QuadValue:
    return x + y


def quad_mul(x: QuadValue, y: QuadValue) -> QuadValue:
    return x * y


def quad_neg(x: QuadValue) -> QuadValue:
    return -x


def quad_sign(x: QuadValue) -> int:
    return x.sign()


def quad_conjugate(x: QuadValue) -> QuadValue:
    return x.conjugate()


def quad_norm(x: QuadValue) -> Fraction:
    return x.norm()


@lru_cache(maxsize=4)
def _omega(d: int):
    with mpmath.workdps(FLOAT_DPS):
        return mpmath.sqrt(2) if d == 2 else (1 + mpmath.sqrt(5)) / 2


def to_float(x: QuadValue) -> float:
    """Round a + b*w to the nearest double, computed at FLOAT_DPS digits."""
    with mpmath.workdps(FLOAT_DPS):
        a = mpmath.mpf(x.a.numerator) / x.a.denominator
        b = mpmath.mpf(x.b.numerator) / x.b.denominator
        return float(a + b * _omega(x.d))


def quad(a: Union[int, Fraction, str], b: Union[int, Fraction, str] = 0, d: int = 2) -> QuadValue:
    return QuadValue(Fraction(a), Fraction(b), d)


SQRT2 = quad(0, 1, 2)
TAU = quad(0, 1, 5)
SILVER = quad(1, 1, 2)


def zero(d: int) -> QuadValue:
    return QuadValue._raw(Fraction(0), Fraction(0), d)


def one(d: int) -> QuadValue:
    return QuadValue._raw(Fraction(1), Fraction(0), d)


@dataclass(frozen=True)
class QuadPoint:
    coords: Tuple[QuadValue, ...]

    def __post_init__(self):
        rings = {c.d for c in self.coords}
        if len(rings) > 1:
            raise MixedDiscriminantError("QuadPoint coordinates mix rings", rings=sorted(rings))

    @classmethod
    def of(cls, *coords: QuadValue) -> "QuadPoint":
        return cls(tuple(coords))

    @property
    def dim(self) -> int:
        return len(self.coords)

    @property
    def d(self) -> int:
        return self.coords[0].d

    def __add__(self, other: "QuadPoint") -> "QuadPoint":
        return QuadPoint(tuple(p + q for p, q in zip(self.coords, other.coords)))

    def __sub__(self, other: "QuadPoint") -> "QuadPoint":
        return QuadPoint(tuple(p - q for p, q in zip(self.coords, other.coords)))

    def __neg__(self) -> "QuadPoint":
        return QuadPoint(tuple(-p for p in self.coords))

    def scale(self, factor: Scalar) -> "QuadPoint":
        return QuadPoint(tuple(p * factor for p in self.coords))

    def __getitem__(self, index: int) -> QuadValue:
        return self.coords[index]

    def __iter__(self):
        return iter(self.coords)

    def __lt__(self, other: "QuadPoint") -> bool:
        return lex_compare(self, other) < 0

    def key(self) -> Tuple:
        return tuple((c.a, c.b) for c in self.coords)

    def to_pairs(self):
        return [c.to_pair() for c in self.coords]


def lex_compare(p: QuadPoint, q: QuadPoint) -> int:
    for u, v in zip(p.coords, q.coords):
        s = (u - v).sign()
        if s:
            return s
    return 0


@dataclass(frozen=True)
class Frame:
    """
    Planar (or linear) coordinate frame over one ring.
    Points are stored as (x, Y); the true ordinate is y = scale * Y with
    scale > 0 and scale^2 = y_scale_sq in the ring.
    """
    name: str
    d: int
    dim: int
    y_scale_sq: QuadValue
    y_scale: float
    angle_steps: int

    def point(self, *coords) -> QuadPoint:
        return QuadPoint(tuple(c if isinstance(c, QuadValue) else QuadValue.rational(c, self.d) for c in coords))

    def origin(self) -> QuadPoint:
        return QuadPoint(tuple(zero(self.d) for _ in range(self.dim)))

    def dot(self, p: QuadPoint, q: QuadPoint) -> QuadValue:
        if self.dim == 1:
            return p[0] * q[0]
        return p[0] * q[0] + self.y_scale_sq * p[1] * q[1]

    def norm_sq(self, p: QuadPoint) -> QuadValue:
        return self.dot(p, p)

    def cross(self, p: QuadPoint, q: QuadPoint) -> QuadValue:
        """Cross product in frame units (true value = y_scale * result)."""
        return p[0] * q[1] - p[1] * q[0]

    def cross_sign(self, p: QuadPoint, q: QuadPoint) -> int:
        return self.cross(p, q).sign()

    def rotate(self, p: QuadPoint, steps: int = 1) -> QuadPoint:
        steps %= self.angle_steps
        for _ in range(steps):
            p = self._rotate_once(p)
        return p

    def reflect_x(self, p: QuadPoint) -> QuadPoint:
        return QuadPoint((p[0], -p[1]))

    def _rotate_once(self, p: QuadPoint) -> QuadPoint:
        x, y = p[0], p[1]
        if self.d == 2:
            c = quad(0, Fraction(1, 2), 2)
            return QuadPoint((c * x - c * y, c * x + c * y))
        c = quad(0, Fraction(1, 2), 5)
        return QuadPoint((c * x - self.y_scale_sq * y, x + c * y))

    def unit(self, k: int) -> QuadPoint:
        return _unit_vector(self, k % self.angle_steps)

    def to_floats(self, p: QuadPoint) -> Tuple[float, ...]:
        if self.dim == 1:
            return (to_float(p[0]),)
        return (to_float(p[0]), to_float(p[1]) * self.y_scale)

    def direction_index(self, v: QuadPoint) -> int:
        """Index k of the frame direction nearest to v."""
        x, y = self.to_floats(v)
        return int(round(math.atan2(y, x) / (2 * math.pi / self.angle_steps))) % self.angle_steps


@lru_cache(maxsize=64)
def _unit_vector(frame: Frame, k: int) -> QuadPoint:
    p = frame.point(1, 0)
    for _ in range(k):
        p = frame._rotate_once(p)
    return p


AB_FRAME = Frame("octagonal", 2, 2, quad(1, 0, 2), 1.0, 8)
# s = sin 36 degrees, s^2 = (3 - tau) / 4
PENROSE_FRAME = Frame(
    "decagonal", 5, 2, quad(Fraction(3, 4), Fraction(-1, 4), 5),
    0.58778525229247312917, 10,
)
GOLDEN_LINE = Frame("golden-line", 5, 1, quad(1, 0, 5), 1.0, 2)


def frame_by_name(name: str) -> Frame:
    for frame in (AB_FRAME, PENROSE_FRAME, GOLDEN_LINE):
        if frame.name == name:
            return frame
    raise DimensionMismatchError(f"Unknown frame {name}", frame=name)
