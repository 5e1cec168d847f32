"""
Dual pseudoline diagrams and SVG rendering.

Arc i enters at the midpoint of lower boundary edge i, crosses every
rhombus whose pair contains i through the midpoints of its two i-edges, and
leaves through upper boundary edge i. Arcs i and j cross once, at the
center of the {i,j} rhombus; a flip is a triple point move of three arcs.
"""

import logging
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

import drawsvg as draw

from ..core.models import FlipNotApplicableError, InvalidInputError, RenderConfig
from .gn3_words import Generator, Triple
from .tiling_core import CubeFlip, PlanarTiling, Rhombus, indicator, is_applicable, toggle
from .zonogon_geometry import DirectionSet, Rational2, default_direction_set, project, rhombus_polygon, zonogon_boundary

logger = logging.getLogger(__name__)

Edge = Tuple[Tuple[int, ...], int]

HALF = Fraction(1, 2)


@dataclass(frozen=True, order=True)
class DualSegment:
    """Half of a rhombus midline: from an edge midpoint to the rhombus center."""

    label: int
    start: Rational2
    end: Rational2
    rhombus: Rhombus


@dataclass(frozen=True)
class DualDiagram:
    n: int
    arcs: Dict[int, Tuple[Rational2, ...]]
    crossings: Tuple[Tuple[Tuple[int, int], Rational2], ...]
    segments: Tuple[DualSegment, ...]


def _edges(r: Rhombus, axis: int) -> Tuple[Edge, Edge]:
    """The two edges of r along axis, as (lower endpoint, axis)."""
    i, j = r.pair
    other = j if axis == i else i
    return (r.base, axis), (toggle(r.base, other), axis)


def _midpoint(d: DirectionSet, edge: Edge) -> Rational2:
    point, axis = edge
    return project(d, point) + d.vector(axis) * HALF


def _center(d: DirectionSet, r: Rhombus) -> Rational2:
    i, j = r.pair
    return project(d, r.base) + (d.vector(i) + d.vector(j)) * HALF


def dual_of(t: PlanarTiling, d: Optional[DirectionSet] = None) -> DualDiagram:
    """
    Arcs as polylines through edge midpoints and rhombus centers.

    Raises:
        InvalidInputError: if an arc cannot be followed across t.
    """
    d = d or default_direction_set(t.n)
    n = t.n
    owners: Dict[Edge, List[Rhombus]] = defaultdict(list)
    for r in t.rhombi:
        for axis in r.pair:
            for edge in _edges(r, axis):
                owners[edge].append(r)

    arcs = {}
    segments = []
    for i in range(1, n + 1):
        edge: Edge = (indicator(n, range(1, i)), i)
        previous: Optional[Rhombus] = None
        points = [_midpoint(d, edge)]
        while True:
            ahead = [r for r in owners.get(edge, []) if r != previous]
            if not ahead:
                break
            if len(ahead) > 1:
                raise InvalidInputError(f"edge {edge} is shared by more than two rhombi")
            r = ahead[0]
            first, second = _edges(r, i)
            edge = second if edge == first else first
            center = _center(d, r)
            end = _midpoint(d, edge)
            segments.append(DualSegment(i, points[-1], center, r))
            segments.append(DualSegment(i, center, end, r))
            points.extend([center, end])
            previous = r
        arcs[i] = tuple(points)

    crossings = tuple((r.pair, _center(d, r)) for r in t.rhombi)
    return DualDiagram(n, arcs, crossings, tuple(sorted(segments)))


def arc_of(diagram: DualDiagram, i: int) -> Tuple[Rational2, ...]:
    if i not in diagram.arcs:
        raise InvalidInputError(f"no arc labeled {i} for n={diagram.n}")
    return diagram.arcs[i]


def triple_point_of_flip(
    t: PlanarTiling, f: CubeFlip, diagram: Optional[DualDiagram] = None
) -> Tuple[Triple, Generator]:
    """
    The three arcs meeting during the flip, and their generator.

    The arcs are read off the diagram: those running through the three
    rhombi of the flipped hexagon, which must cross there pairwise.
    """
    if not is_applicable(t, f):
        raise FlipNotApplicableError()
    diagram = diagram or dual_of(t)
    hexagon = set(f.removed_faces())
    inside = [segment for segment in diagram.segments if segment.rhombus in hexagon]
    labels = tuple(sorted({segment.label for segment in inside}))
    points = {p for segment in inside for p in (segment.start, segment.end)}
    crossed = {pair for pair, point in diagram.crossings if point in points}
    if len(labels) != 3 or crossed != {(a, b) for k, a in enumerate(labels) for b in labels[k + 1:]}:
        raise InvalidInputError(f"arcs {list(labels)} do not form a triple point at {f}")
    return labels, Generator(labels)


class SvgCanvas:
    """Maps exact plane coordinates to SVG pixels, y pointing down."""

    def __init__(self, d: DirectionSet, style: RenderConfig):
        outline = zonogon_boundary(d)
        xs = [p.x for p in outline]
        ys = [p.y for p in outline]
        self.style = style
        self.min_x = min(xs)
        self.max_y = max(ys)
        self.width = float(max(xs) - self.min_x) * style.scale + 2 * style.margin
        self.height = float(self.max_y - min(ys)) * style.scale + 2 * style.margin
        self.drawing = draw.Drawing(self.width, self.height)

    def xy(self, p: Rational2) -> Tuple[float, float]:
        return (
            round(float(p.x - self.min_x) * self.style.scale + self.style.margin, 3),
            round(float(self.max_y - p.y) * self.style.scale + self.style.margin, 3),
        )

    def flat(self, points) -> List[float]:
        coords: List[float] = []
        for p in points:
            coords.extend(self.xy(p))
        return coords


def render_svg(
    t: Optional[PlanarTiling] = None,
    diagram: Optional[DualDiagram] = None,
    style: Optional[RenderConfig] = None,
    d: Optional[DirectionSet] = None,
) -> str:
    """
    Deterministic SVG of a tiling, a dual diagram, or both overlaid.

    Rhombi, arcs, crossings and labels carry the classes "rhombus", "arc",
    "crossing" and "label".
    """
    if t is None and diagram is None:
        raise InvalidInputError("nothing to render")
    style = style or RenderConfig()
    n = t.n if t is not None else diagram.n
    d = d or default_direction_set(n)
    canvas = SvgCanvas(d, style)
    drawing = canvas.drawing

    if t is not None:
        for r in t.rhombi:
            drawing.append(draw.Lines(
                *canvas.flat(rhombus_polygon(d, r)),
                close=True,
                fill=style.rhombus_fill,
                stroke=style.rhombus_stroke,
                stroke_width=style.stroke_width,
                class_="rhombus",
            ))

    if diagram is not None:
        for i, points in sorted(diagram.arcs.items()):
            color = style.arc_colors[(i - 1) % len(style.arc_colors)]
            drawing.append(draw.Lines(
                *canvas.flat(points),
                close=False,
                fill="none",
                stroke=color,
                stroke_width=style.stroke_width,
                class_="arc",
            ))
            if style.show_labels:
                x, y = canvas.xy(points[0])
                drawing.append(draw.Text(
                    str(i), 12, x, y + 14,
                    fill=color,
                    text_anchor="middle",
                    class_="label",
                ))
        for _, point in sorted(diagram.crossings):
            x, y = canvas.xy(point)
            drawing.append(draw.Circle(x, y, style.crossing_radius, fill="#000000", class_="crossing"))

    logger.debug(
        f"Rendered SVG {canvas.width:.0f}x{canvas.height:.0f} for n={n}",
        extra={"service_operation": "render"}
    )
    return drawing.as_svg()
