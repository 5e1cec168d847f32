"""
Planar rhombile tilings of the 2n-zonogon.

A tiling is a set of 2-faces of the unit n-cube, one per pair of axes, whose
projections tile the zonogon. This module builds the canonical start tiling
from a wiring diagram, validates tilings exactly, finds the flippable cubes
and applies flips.
"""

import logging
from collections import defaultdict
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from ..core.models import FlipDirection, FlipNotApplicableError, InvalidInputError
from .zonogon_geometry import (
    DirectionSet,
    LatticePoint,
    check_lattice_point,
    default_direction_set,
    rhombus_area,
    rhombus_overlap,
    zonogon_area,
)

logger = logging.getLogger(__name__)

Triple = Tuple[int, int, int]


def toggle(point: LatticePoint, *axes: int) -> LatticePoint:
    """Flip the given 1-based coordinates of a 0/1 point."""
    coords = list(point)
    for axis in axes:
        coords[axis - 1] ^= 1
    return tuple(coords)


def zero_point(n: int) -> LatticePoint:
    return (0,) * n


def indicator(n: int, axes: Iterable[int]) -> LatticePoint:
    """0/1 point with ones exactly at the given 1-based axes."""
    wanted = set(axes)
    return tuple(1 if i in wanted else 0 for i in range(1, n + 1))


@dataclass(frozen=True, order=True)
class Rhombus:
    """A 2-face of the cube: spans axes i < j from a base with zeros at i and j."""

    pair: Tuple[int, int]
    base: LatticePoint

    def __post_init__(self):
        i, j = self.pair
        if not 1 <= i < j <= len(self.base):
            raise InvalidInputError(f"invalid pair {self.pair} for n={len(self.base)}")
        if self.base[i - 1] or self.base[j - 1]:
            raise InvalidInputError(f"base {list(self.base)} must be 0 on axes {i} and {j}")

    @classmethod
    def of(cls, base: Sequence[int], pair: Sequence[int]) -> "Rhombus":
        """Build from loose data, sorting the pair and checking the base."""
        if len(pair) != 2 or pair[0] == pair[1]:
            raise InvalidInputError(f"a rhombus pair needs two distinct axes, got {list(pair)}")
        point = check_lattice_point(base, len(base))
        return cls(tuple(sorted(int(a) for a in pair)), point)

    @property
    def n(self) -> int:
        return len(self.base)

    def corners(self) -> Tuple[LatticePoint, LatticePoint, LatticePoint, LatticePoint]:
        """Corners in counterclockwise order: base, +e_i, +e_i+e_j, +e_j."""
        i, j = self.pair
        return (self.base, toggle(self.base, i), toggle(self.base, i, j), toggle(self.base, j))


@dataclass(frozen=True)
class PlanarTiling:
    """A set of rhombi stored sorted by (pair, base)."""

    n: int
    rhombi: Tuple[Rhombus, ...]

    def __post_init__(self):
        object.__setattr__(self, 'rhombi', tuple(sorted(set(self.rhombi))))
        for r in self.rhombi:
            if r.n != self.n:
                raise InvalidInputError(f"rhombus {r} does not live in dimension {self.n}")

    @cached_property
    def faces(self) -> FrozenSet[Rhombus]:
        return frozenset(self.rhombi)

    @cached_property
    def by_pair(self) -> Dict[Tuple[int, int], List[Rhombus]]:
        index: Dict[Tuple[int, int], List[Rhombus]] = defaultdict(list)
        for r in self.rhombi:
            index[r.pair].append(r)
        return dict(index)

    def __contains__(self, r: Rhombus) -> bool:
        return r in self.faces

    def __len__(self) -> int:
        return len(self.rhombi)

    def vertices(self) -> List[LatticePoint]:
        """Lattice vertices of the tiling, sorted."""
        points = set()
        for r in self.rhombi:
            points.update(r.corners())
        return sorted(points)

    def replace(self, removed: Iterable[Rhombus], added: Iterable[Rhombus]) -> "PlanarTiling":
        remaining = self.faces.difference(removed)
        return PlanarTiling(self.n, tuple(remaining) + tuple(added))


@dataclass(frozen=True, order=True)
class CubeFlip:
    """
    Flip datum on the cube I + x e_j + y e_k + z e_l.

    Down replaces the top faces (those at I+e_j+e_l) by the bottom faces
    (those at I+e_k); Up does the converse.
    """

    axes: Triple
    base: LatticePoint
    direction: FlipDirection

    def __post_init__(self):
        j, k, l = self.axes
        if not 1 <= j < k < l <= len(self.base):
            raise InvalidInputError(f"invalid axes {self.axes} for n={len(self.base)}")
        if self.base[j - 1] or self.base[k - 1] or self.base[l - 1]:
            raise InvalidInputError(f"cube base {list(self.base)} must be 0 on axes {self.axes}")

    @classmethod
    def of(cls, base: Sequence[int], axes: Sequence[int], direction) -> "CubeFlip":
        if len(axes) != 3 or len(set(axes)) != 3:
            raise InvalidInputError(f"a cube needs three distinct axes, got {list(axes)}")
        point = check_lattice_point(base, len(base))
        return cls(tuple(sorted(int(a) for a in axes)), point, FlipDirection(direction))

    def inverse(self) -> "CubeFlip":
        opposite = FlipDirection.UP if self.direction == FlipDirection.DOWN else FlipDirection.DOWN
        return CubeFlip(self.axes, self.base, opposite)

    def removed_faces(self) -> Tuple[Rhombus, Rhombus, Rhombus]:
        if self.direction == FlipDirection.DOWN:
            return top_faces(self.base, self.axes)
        return bottom_faces(self.base, self.axes)

    def added_faces(self) -> Tuple[Rhombus, Rhombus, Rhombus]:
        if self.direction == FlipDirection.DOWN:
            return bottom_faces(self.base, self.axes)
        return top_faces(self.base, self.axes)

    def center(self) -> LatticePoint:
        """Interior vertex of the hexagon before the flip."""
        j, k, l = self.axes
        if self.direction == FlipDirection.DOWN:
            return toggle(self.base, j, l)
        return toggle(self.base, k)

    def new_center(self) -> LatticePoint:
        return self.inverse().center()

    def hexagon_boundary(self) -> Tuple[LatticePoint, ...]:
        """The six boundary vertices a..f in counterclockwise order; a/d, b/e, c/f are opposite."""
        j, k, l = self.axes
        b = self.base
        return (
            b,
            toggle(b, j),
            toggle(b, j, k),
            toggle(b, j, k, l),
            toggle(b, k, l),
            toggle(b, l),
        )

    def __str__(self):
        return f"{self.direction.value}{''.join(str(a) for a in self.axes)}@{''.join(str(c) for c in self.base)}"


def top_faces(base: LatticePoint, axes: Triple) -> Tuple[Rhombus, Rhombus, Rhombus]:
    """Faces of the cube containing I+e_j+e_l."""
    j, k, l = axes
    return (
        Rhombus((j, k), toggle(base, l)),
        Rhombus((j, l), base),
        Rhombus((k, l), toggle(base, j)),
    )


def bottom_faces(base: LatticePoint, axes: Triple) -> Tuple[Rhombus, Rhombus, Rhombus]:
    """Faces of the cube containing I+e_k."""
    j, k, l = axes
    return (
        Rhombus((j, k), base),
        Rhombus((j, l), toggle(base, k)),
        Rhombus((k, l), base),
    )


def tiling_from_reduced_word(n: int, word: Sequence[int]) -> PlanarTiling:
    """
    Tiling swept out by a reduced word of the longest permutation.

    The lattice path starts along e_1, ..., e_n; letter s_p swaps the steps at
    positions p and p+1 and records the rhombus they bound.
    """
    order = list(range(1, n + 1))
    rhombi = []
    for p in word:
        if not 1 <= p < n:
            raise InvalidInputError(f"letter s_{p} out of range for n={n}")
        a, b = order[p - 1], order[p]
        if a > b:
            raise InvalidInputError(f"word is not reduced: s_{p} uncrosses wires {b} and {a}")
        rhombi.append(Rhombus((a, b), indicator(n, order[:p - 1])))
        order[p - 1], order[p] = b, a
    if order != list(range(n, 0, -1)):
        raise InvalidInputError("word does not reach the longest permutation")
    return PlanarTiling(n, tuple(rhombi))


def base_tiling(n: int) -> PlanarTiling:
    """Canonical start tiling from the word s1 (s2 s1) (s3 s2 s1) ... (s_{n-1} ... s1)."""
    if n < 2:
        raise InvalidInputError(f"base_tiling needs n >= 2, got {n}")
    word = [p for m in range(1, n) for p in range(m, 0, -1)]
    return tiling_from_reduced_word(n, word)


def validate(t: PlanarTiling, d: Optional[DirectionSet] = None) -> bool:
    """
    True iff t is a rhombile tiling of the zonogon of d.

    Checks the rhombus count, one rhombus per pair, pairwise interior
    disjointness and that the areas add up to the zonogon area.
    """
    try:
        d = d or default_direction_set(t.n)
    except InvalidInputError:
        return False
    if d.n != t.n:
        return False
    n = t.n
    if len(t.rhombi) != n * (n - 1) // 2:
        return False
    pairs = [r.pair for r in t.rhombi]
    if len(set(pairs)) != len(pairs):
        return False
    for a, b in combinations(t.rhombi, 2):
        if rhombus_overlap(d, a, b):
            return False
    return sum((rhombus_area(d, r) for r in t.rhombi), 0) == zonogon_area(d)


def find_flips(t: PlanarTiling) -> List[CubeFlip]:
    """
    Every flip available in t, sorted by (axes, base, direction).

    Candidates come from the rhombi present: a {j,k} rhombus at B is the
    bottom face of the cube at B or the top face of the cube at B - e_l.
    """
    flips = set()
    n = t.n
    for (j, k), rhombi in t.by_pair.items():
        for r in rhombi:
            for l in range(k + 1, n + 1):
                if r.base[l - 1] == 0:
                    candidate = CubeFlip((j, k, l), r.base, FlipDirection.UP)
                else:
                    candidate = CubeFlip((j, k, l), toggle(r.base, l), FlipDirection.DOWN)
                if all(face in t for face in candidate.removed_faces()):
                    flips.add(candidate)
    return sorted(flips)


def is_applicable(t: PlanarTiling, f: CubeFlip) -> bool:
    return len(f.base) == t.n and all(face in t for face in f.removed_faces())


def apply_flip(t: PlanarTiling, f: CubeFlip) -> PlanarTiling:
    """
    Replace the three faces matched by f with the other three faces of its cube.

    Raises:
        FlipNotApplicableError: if the matched faces are not all in t.
    """
    if not is_applicable(t, f):
        logger.debug(f"Rejected flip {f}", extra={"graph_operation": "flip_rejected"})
        raise FlipNotApplicableError()
    return t.replace(f.removed_faces(), f.added_faces())


def rhombi_at(t: PlanarTiling, vertex: Sequence[int]) -> List[Rhombus]:
    """Rhombi of t having the lattice point as a corner."""
    point = check_lattice_point(vertex, t.n)
    return [r for r in t.rhombi if point in r.corners()]
