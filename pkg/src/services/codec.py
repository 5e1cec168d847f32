"""
Conversions between library values and the JSON documents in core.models.
"""

import json
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, Type, TypeVar, Union

from pydantic import BaseModel, ValidationError

from ..core.models import (
    CubeFlipDocument,
    DirectionSetDocument,
    FlipGraphDocument,
    FlipPathDocument,
    GlueDocument,
    GraphEdgeDocument,
    InvalidInputError,
    RewriteMoveDocument,
    RhombusDocument,
    SurfaceFaceDocument,
    SurfacePathDocument,
    SurfaceStepDocument,
    SurfaceTilingDocument,
    TilingDocument,
)
from .cluster_mutation import VertexVars
from .flip_graph import FlipGraph, FlipPath
from .gn3_words import Generator, RewriteMove
from .surface_tiling import BoundaryLabeling, Glue, SurfaceFace, SurfacePath, SurfaceStep, SurfaceTiling
from .tiling_core import CubeFlip, PlanarTiling, Rhombus
from .zonogon_geometry import DirectionSet, Rational2, check_lattice_point

Document = TypeVar("Document", bound=BaseModel)


def _fraction_entry(value: Fraction) -> list:
    return [value.numerator, value.denominator]


def direction_set_to_document(d: DirectionSet) -> DirectionSetDocument:
    return DirectionSetDocument(
        n=d.n,
        vectors=[_fraction_entry(v.x) + _fraction_entry(v.y) for v in d.vectors],
    )


def direction_set_from_document(doc: DirectionSetDocument) -> DirectionSet:
    return DirectionSet(tuple(Rational2(Fraction(a, b), Fraction(c, e)) for a, b, c, e in doc.vectors))


def tiling_to_document(t: PlanarTiling) -> TilingDocument:
    return TilingDocument(
        n=t.n,
        rhombi=[RhombusDocument(base=list(r.base), pair=list(r.pair)) for r in t.rhombi],
    )


def tiling_from_document(doc: TilingDocument) -> PlanarTiling:
    rhombi = []
    for entry in doc.rhombi:
        check_lattice_point(entry.base, doc.n)
        rhombi.append(Rhombus.of(entry.base, entry.pair))
    return PlanarTiling(doc.n, tuple(rhombi))


def flip_to_document(f: CubeFlip) -> CubeFlipDocument:
    return CubeFlipDocument(base=list(f.base), axes=list(f.axes), direction=f.direction)


def flip_from_document(doc: CubeFlipDocument) -> CubeFlip:
    return CubeFlip.of(doc.base, doc.axes, doc.direction)


def path_to_document(p: FlipPath) -> FlipPathDocument:
    return FlipPathDocument(start=tiling_to_document(p.start), flips=[flip_to_document(f) for f in p.flips])


def path_from_document(doc: FlipPathDocument) -> FlipPath:
    start = tiling_from_document(doc.start)
    flips = tuple(flip_from_document(f) for f in doc.flips)
    for f in flips:
        if len(f.base) != start.n:
            raise InvalidInputError(f"flip {f} does not live in dimension {start.n}")
    return FlipPath(start, flips)


def graph_to_document(g: FlipGraph) -> FlipGraphDocument:
    return FlipGraphDocument(
        n=g.n,
        vertices=[tiling_to_document(t) for t in g.vertices],
        edges=[GraphEdgeDocument(source=s, target=t, flip=flip_to_document(f)) for s, t, f in g.edges],
    )


def surface_to_document(s: SurfaceTiling) -> SurfaceTilingDocument:
    return SurfaceTilingDocument(
        kind=s.kind,
        n=s.n,
        labeling=list(s.labeling.labels),
        faces=[
            SurfaceFaceDocument(directions=list(face.directions), corners=[list(c) for c in face.corners])
            for face in s.faces
        ],
        gluing=[GlueDocument(a=list(g.a), b=list(g.b), twisted=g.twisted) for g in s.gluing],
    )


def surface_from_document(doc: SurfaceTilingDocument) -> SurfaceTiling:
    faces = []
    for entry in doc.faces:
        if len(entry.directions) != 2:
            raise InvalidInputError("a face has exactly two directions")
        corners = tuple(check_lattice_point(c, doc.n) for c in entry.corners)
        faces.append(SurfaceFace(tuple(entry.directions), corners))
    gluing = []
    for entry in doc.gluing:
        if len(entry.a) != 2 or len(entry.b) != 2:
            raise InvalidInputError("glued sides are written [face, side]")
        gluing.append(Glue.of(tuple(entry.a), tuple(entry.b), entry.twisted))
    return SurfaceTiling(doc.kind, doc.n, BoundaryLabeling(tuple(doc.labeling)), tuple(faces), tuple(gluing))


def surface_path_to_document(p: SurfacePath) -> SurfacePathDocument:
    return SurfacePathDocument(
        start=surface_to_document(p.start),
        steps=[SurfaceStepDocument(center=list(step.center), triple=list(step.triple)) for step in p.steps],
    )


def surface_path_from_document(doc: SurfacePathDocument) -> SurfacePath:
    start = surface_from_document(doc.start)
    steps = tuple(
        SurfaceStep(check_lattice_point(step.center, start.n), tuple(sorted(step.triple))) for step in doc.steps
    )
    return SurfacePath(start, steps)


def vars_to_document(values: VertexVars) -> Dict[str, str]:
    return values.to_keys()


def vars_from_document(data: Dict[str, Any]) -> VertexVars:
    if not isinstance(data, dict):
        raise InvalidInputError("vertex values must be a JSON object")
    return VertexVars.from_keys(data)


def move_to_document(move: RewriteMove) -> RewriteMoveDocument:
    return RewriteMoveDocument(
        kind=move.kind,
        position=move.position,
        length=move.length,
        replacement=[Generator(t).text() for t in move.replacement],
    )


def parse_json(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InvalidInputError(f"malformed JSON: {e}") from e


def validate_document(data: Any, model: Type[Document]) -> Document:
    try:
        return model.model_validate(data)
    except ValidationError as e:
        raise InvalidInputError(f"invalid {model.__name__}: {e.errors()[0]['msg']}") from e


def load_document(path: Union[str, Path], model: Type[Document]) -> Document:
    """Read and validate a JSON file."""
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise InvalidInputError(f"cannot read {path}: {e.strerror}") from e
    return validate_document(parse_json(text), model)


def load_json(path: Union[str, Path]) -> Any:
    try:
        return parse_json(Path(path).read_text())
    except OSError as e:
        raise InvalidInputError(f"cannot read {path}: {e.strerror}") from e


def dump_document(doc: Union[BaseModel, Dict[str, Any], list]) -> str:
    """Stable JSON text: sorted keys, two-space indent."""
    data = doc.model_dump(mode="json") if isinstance(doc, BaseModel) else doc
    return json.dumps(data, sort_keys=True, indent=2)
