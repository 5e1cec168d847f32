"""
Exact plane geometry for zonogons.

This module holds the direction vectors, the projection of the unit n-cube
onto the plane, the zonogon boundary, and the overlap and area predicates
used to validate tilings. Every coordinate is a fractions.Fraction; floats
only appear when a caller asks for drawing coordinates.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Protocol, Sequence, Tuple, Union

from ..core.models import InvalidInputError

LatticePoint = Tuple[int, ...]
Scalar = Union[int, Fraction, str]

DIRECTION_TABLE_VERSION = 1

# Version 1 default directions; angles strictly increase inside (0, pi).
_DEFAULT_DIRECTIONS = {
    1: ((0, 1),),
    2: ((1, 1), (-1, 1)),
    3: ((2, 1), (-1, 2), (-2, 1)),
    4: ((2, 1), (1, 2), (-1, 2), (-2, 1)),
    5: ((2, 1), (1, 1), (0, 1), (-1, 1), (-2, 1)),
    6: ((3, 1), (1, 1), (1, 3), (-1, 3), (-1, 1), (-3, 1)),
}


@dataclass(frozen=True, order=True)
class Rational2:
    """A point or vector of the plane with exact rational coordinates."""

    x: Fraction
    y: Fraction

    def __post_init__(self):
        object.__setattr__(self, 'x', Fraction(self.x))
        object.__setattr__(self, 'y', Fraction(self.y))

    def __add__(self, other: "Rational2") -> "Rational2":
        return Rational2(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "Rational2") -> "Rational2":
        return Rational2(self.x - other.x, self.y - other.y)

    def __mul__(self, s: Scalar) -> "Rational2":
        s = Fraction(s)
        return Rational2(self.x * s, self.y * s)

    __rmul__ = __mul__

    def __neg__(self) -> "Rational2":
        return Rational2(-self.x, -self.y)

    def cross(self, other: "Rational2") -> Fraction:
        return self.x * other.y - self.y * other.x

    def dot(self, other: "Rational2") -> Fraction:
        return self.x * other.x + self.y * other.y

    def as_floats(self) -> Tuple[float, float]:
        return float(self.x), float(self.y)

    def key(self) -> str:
        """Stable text key "X,Y" used by vertex-variable documents."""
        return f"{self.x},{self.y}"

    @classmethod
    def from_key(cls, text: str) -> "Rational2":
        parts = text.split(",")
        if len(parts) != 2:
            raise InvalidInputError(f"malformed point key {text!r}, expected 'X,Y'")
        try:
            return cls(Fraction(parts[0].strip()), Fraction(parts[1].strip()))
        except (ValueError, ZeroDivisionError) as e:
            raise InvalidInputError(f"malformed point key {text!r}: {e}") from e

    def __str__(self):
        return f"({self.x}, {self.y})"


ORIGIN = Rational2(0, 0)


@dataclass(frozen=True)
class DirectionSet:
    """
    Direction vectors v_1..v_n of a zonogon.

    Each vector has a positive y-component and v_i x v_j > 0 for i < j, so the
    angles increase strictly inside (0, pi). Vectors need not have unit length.
    """

    vectors: Tuple[Rational2, ...]

    def __post_init__(self):
        vectors = tuple(v if isinstance(v, Rational2) else Rational2(*v) for v in self.vectors)
        object.__setattr__(self, 'vectors', vectors)
        if not vectors:
            raise InvalidInputError("a direction set needs at least one vector")
        for i, v in enumerate(vectors, start=1):
            if v.y <= 0:
                raise InvalidInputError(f"direction {i} must have a positive y-component, got {v}")
        for i in range(len(vectors)):
            for j in range(i + 1, len(vectors)):
                if vectors[i].cross(vectors[j]) <= 0:
                    raise InvalidInputError(
                        f"directions {i + 1} and {j + 1} are not in strictly increasing angle"
                    )

    @property
    def n(self) -> int:
        return len(self.vectors)

    def vector(self, i: int) -> Rational2:
        """Direction v_i, 1-based."""
        return self.vectors[i - 1]

    @classmethod
    def from_integers(cls, pairs: Iterable[Sequence[int]]) -> "DirectionSet":
        return cls(tuple(Rational2(x, y) for x, y in pairs))


def default_direction_set(n: int, version: int = DIRECTION_TABLE_VERSION) -> DirectionSet:
    """
    Fixed direction set for n directions.

    Args:
        n: Number of directions.
        version: Table version; only version 1 exists.

    Returns:
        The versioned default DirectionSet.
    """
    if version != DIRECTION_TABLE_VERSION:
        raise InvalidInputError(f"unknown direction table version {version}")
    if n < 1:
        raise InvalidInputError(f"n must be positive, got {n}")
    if n in _DEFAULT_DIRECTIONS:
        return DirectionSet.from_integers(_DEFAULT_DIRECTIONS[n])
    return DirectionSet.from_integers((n + 1 - 2 * k, 1) for k in range(1, n + 1))


def check_lattice_point(p: Sequence[int], n: int) -> LatticePoint:
    """Validate a 0/1 point of length n and return it as a tuple."""
    point = tuple(int(c) for c in p)
    if len(point) != n:
        raise InvalidInputError(f"dimension mismatch: lattice point has length {len(point)}, expected {n}")
    if any(c not in (0, 1) for c in point):
        raise InvalidInputError(f"lattice point entries must be 0 or 1, got {list(point)}")
    return point


def project(d: DirectionSet, p: Sequence[int]) -> Rational2:
    """Image of a lattice point under x_1 e_1 + ... + x_n e_n -> sum x_i v_i."""
    if len(p) != d.n:
        raise InvalidInputError(f"dimension mismatch: point of length {len(p)} for {d.n} directions")
    x = Fraction(0)
    y = Fraction(0)
    for coord, v in zip(p, d.vectors):
        if coord:
            x += coord * v.x
            y += coord * v.y
    return Rational2(x, y)


def zonogon_boundary(d: DirectionSet) -> List[Rational2]:
    """
    The 2n vertices of the zonogon in counterclockwise order.

    Starts at the origin, walks v_1..v_n to the top vertex, then returns
    through -v_1..-v_n. Edge i and edge n+i are parallel with equal length.
    """
    n = d.n
    vertices = []
    point = [0] * n
    vertices.append(project(d, point))
    for i in range(n - 1):
        point[i] = 1
        vertices.append(project(d, point))
    point[n - 1] = 1
    for i in range(n - 1):
        vertices.append(project(d, point))
        point[i] = 0
    vertices.append(project(d, point))
    return vertices


def zonogon_area(d: DirectionSet) -> Fraction:
    """Area of the zonogon: sum over i < j of v_i x v_j."""
    total = Fraction(0)
    for i in range(d.n):
        for j in range(i + 1, d.n):
            total += d.vectors[i].cross(d.vectors[j])
    return total


def polygon_area(polygon: Sequence[Rational2]) -> Fraction:
    """Signed shoelace area; positive for counterclockwise polygons."""
    total = Fraction(0)
    for a, b in zip(polygon, list(polygon[1:]) + [polygon[0]]):
        total += a.cross(b)
    return total / 2


class RhombusLike(Protocol):
    base: LatticePoint
    pair: Tuple[int, int]


def rhombus_polygon(d: DirectionSet, r: RhombusLike) -> List[Rational2]:
    """Counterclockwise corners: base, base+v_i, base+v_i+v_j, base+v_j."""
    i, j = r.pair
    origin = project(d, r.base)
    vi = d.vector(i)
    vj = d.vector(j)
    return [origin, origin + vi, origin + vi + vj, origin + vj]


def rhombus_area(d: DirectionSet, r: RhombusLike) -> Fraction:
    i, j = r.pair
    return d.vector(i).cross(d.vector(j))


def convex_interiors_overlap(p: Sequence[Rational2], q: Sequence[Rational2]) -> bool:
    """
    True iff the open interiors of two counterclockwise convex polygons meet.

    Separating-axis test over the edges of both polygons; polygons that only
    share an edge or a vertex are separated.
    """
    for poly, other in ((p, q), (q, p)):
        for a, b in zip(poly, list(poly[1:]) + [poly[0]]):
            edge = b - a
            if all(edge.cross(c - a) <= 0 for c in other):
                return False
    return True


def rhombus_overlap(d: DirectionSet, r1: RhombusLike, r2: RhombusLike) -> bool:
    """True iff the projected open rhombus interiors intersect."""
    return convex_interiors_overlap(rhombus_polygon(d, r1), rhombus_polygon(d, r2))


def point_in_convex_polygon(polygon: Sequence[Rational2], point: Rational2) -> bool:
    """Strict interior test for a counterclockwise convex polygon."""
    for a, b in zip(polygon, list(polygon[1:]) + [polygon[0]]):
        if (b - a).cross(point - a) <= 0:
            return False
    return True


def hexagon_polygon(d: DirectionSet, base: Sequence[int], axes: Tuple[int, int, int]) -> List[Rational2]:
    """Counterclockwise outline of the projected cube at base spanned by axes j < k < l."""
    j, k, l = axes
    start = project(d, base)
    vj, vk, vl = d.vector(j), d.vector(k), d.vector(l)
    return [
        start,
        start + vj,
        start + vj + vk,
        start + vj + vk + vl,
        start + vk + vl,
        start + vl,
    ]
