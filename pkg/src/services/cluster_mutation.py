"""
Vertex variables on tilings and the hexagon exchange relation.

A flip replaces the hexagon's center value x by x' = (ad + be + cf) / x,
where a..f are the six boundary values in cyclic order, so a/d, b/e and
c/f are opposite. Values are exact positive rationals keyed by the
projected vertex position.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterator, Mapping, Optional, Tuple, Union

from ..core.models import FlipNotApplicableError, MutationError, PathReplayError
from .flip_graph import FlipPath
from .tiling_core import CubeFlip, PlanarTiling, apply_flip, is_applicable
from .zonogon_geometry import DirectionSet, Rational2, default_direction_set, project

logger = logging.getLogger(__name__)

Value = Union[int, Fraction, str]


@dataclass(frozen=True)
class VertexVars:
    """Positive rational value per projected vertex."""

    values: Mapping[Rational2, Fraction]

    def __post_init__(self):
        object.__setattr__(self, 'values', {p: Fraction(v) for p, v in self.values.items()})

    def __getitem__(self, point: Rational2) -> Fraction:
        return self.values[point]

    def __contains__(self, point: Rational2) -> bool:
        return point in self.values

    def __iter__(self) -> Iterator[Rational2]:
        return iter(sorted(self.values))

    def __len__(self) -> int:
        return len(self.values)

    def items(self):
        return sorted(self.values.items())

    def replace(self, removed: Rational2, added: Rational2, value: Fraction) -> "VertexVars":
        values = dict(self.values)
        del values[removed]
        values[added] = value
        return VertexVars(values)

    def to_keys(self) -> Dict[str, str]:
        """{"X,Y": "p/q"} form used in JSON documents."""
        return {point.key(): str(value) for point, value in self.items()}

    @classmethod
    def from_keys(cls, data: Mapping[str, Value]) -> "VertexVars":
        try:
            return cls({Rational2.from_key(k): Fraction(v) for k, v in data.items()})
        except (ValueError, ZeroDivisionError) as e:
            raise MutationError(f"malformed vertex value: {e}") from e


def initial_vars(t: PlanarTiling, d: Optional[DirectionSet] = None, value: Value = 1) -> VertexVars:
    """The same value at every vertex of t."""
    d = d or default_direction_set(t.n)
    return VertexVars({project(d, p): Fraction(value) for p in t.vertices()})


def _check_complete(t: PlanarTiling, vars: VertexVars, d: DirectionSet) -> None:
    for p in t.vertices():
        point = project(d, p)
        if point not in vars:
            raise MutationError(f"no value at vertex {point}")
        if vars[point] <= 0:
            raise MutationError(f"value at vertex {point} is not positive: {vars[point]}")


def exchange(x: Fraction, ring: Tuple[Fraction, ...]) -> Fraction:
    """(ad + be + cf) / x for the six boundary values a..f."""
    a, b, c, d, e, f = ring
    return (a * d + b * e + c * f) / x


def mutate(t: PlanarTiling, vars: VertexVars, f: CubeFlip, d: Optional[DirectionSet] = None) -> VertexVars:
    """
    Values on apply_flip(t, f): only the hexagon center changes.

    Raises:
        FlipNotApplicableError: if f is not available in t.
        MutationError: if some vertex of t has no value or a nonpositive one.
    """
    if not is_applicable(t, f):
        raise FlipNotApplicableError()
    d = d or default_direction_set(t.n)
    _check_complete(t, vars, d)
    center = project(d, f.center())
    ring = tuple(vars[project(d, p)] for p in f.hexagon_boundary())
    value = exchange(vars[center], ring)
    return vars.replace(center, project(d, f.new_center()), value)


def transport(t: PlanarTiling, vars: VertexVars, p: FlipPath, d: Optional[DirectionSet] = None) -> VertexVars:
    """
    Fold mutate along p.

    Raises:
        PathReplayError: if p does not start at t or does not replay.
    """
    if p.start != t:
        raise PathReplayError("path does not start at the given tiling")
    d = d or default_direction_set(t.n)
    current = t
    for position, flip in enumerate(p.flips):
        try:
            vars = mutate(current, vars, flip, d)
        except FlipNotApplicableError as e:
            raise PathReplayError(f"flip {position} ({flip}) not applicable: {e.message}") from e
        current = apply_flip(current, flip)
    logger.debug(
        f"Transported {len(vars)} vertex values along {len(p)} flips",
        extra={"graph_operation": "transport"}
    )
    return vars
