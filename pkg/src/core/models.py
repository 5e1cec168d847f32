"""
Core data models for rhombiflip.

This module defines the Pydantic documents used for JSON files, CLI output
and HTTP bodies, the enums shared by the services, the configuration models
and the exception hierarchy raised by the library.
"""

from enum import Enum
from typing import Any, Dict, List, Optional
from pydantic import BaseModel, Field, validator


class FlipDirection(str, Enum):
    """Orientation of a cube flip: Down replaces top faces, Up replaces bottom faces."""
    UP = "up"
    DOWN = "down"


class SurfaceKind(str, Enum):
    """Closed surfaces obtained from a labeled 2n-gon."""
    RP2 = "rp2"
    KLEIN = "klein"


class SearchKind(str, Enum):
    """Targets of the closed-path search; DISC is the unglued zonogon."""
    RP2 = "rp2"
    KLEIN = "klein"
    DISC = "disc"


class TwoCellKind(str, Enum):
    """2-cells attached to the flip graph."""
    SQUARE = "square"
    OCTAGON = "octagon"


class RewriteKind(str, Enum):
    """Relation applications understood by the word engine."""
    CANCEL_PAIR = "cancel_pair"
    INSERT_PAIR = "insert_pair"
    FAR_COMMUTE = "far_commute"
    OCTAGON = "octagon"


class EqualityVerdict(str, Enum):
    """Outcome of the bounded equality search."""
    EQUAL = "equal"
    UNKNOWN = "unknown"


class CommandStatus(str, Enum):
    """CLI command status."""
    OK = "ok"
    ERROR = "error"


# Configuration models

class EnumerationConfig(BaseModel):
    """Flip graph enumeration settings."""
    vertex_limit: int = Field(default=100000, gt=0, description="Maximum number of tilings kept by enumerate")
    jobs: int = Field(default=1, ge=1, description="Worker threads used to expand a BFS frontier")


class SearchConfig(BaseModel):
    """Budgets for the word search and the surface search."""
    max_states: int = Field(default=200000, gt=0, description="Maximum words visited by bounded_equal")
    extra_length: int = Field(default=4, ge=0, description="Allowed growth of the word over the input length")
    surface_max_len: int = Field(default=8, ge=0, description="Default closed path length bound for surface-search")
    surface_state_limit: int = Field(default=200000, gt=0, description="Maximum surface tilings explored per search")


class SamplingConfig(BaseModel):
    """Seeded sampling settings."""
    seed: int = Field(default=0, description="Default seed when neither --seed nor RHOMBIFLIP_SEED is given")


class RenderConfig(BaseModel):
    """SVG rendering style."""
    scale: float = Field(default=40.0, gt=0, description="Pixels per unit of the direction vectors")
    margin: float = Field(default=20.0, ge=0, description="Border around the zonogon in pixels")
    show_labels: bool = Field(default=True, description="Draw arc labels at the lower boundary")
    stroke_width: float = Field(default=1.5, gt=0, description="Line width for rhombi and arcs")
    rhombus_fill: str = Field(default="#f4efe1", description="Fill colour of rhombi")
    rhombus_stroke: str = Field(default="#333333", description="Outline colour of rhombi")
    crossing_radius: float = Field(default=3.0, gt=0, description="Radius of crossing markers")
    arc_colors: List[str] = Field(
        default_factory=lambda: ["#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf"],
        description="Arc colours, cycled by label"
    )

    @validator('arc_colors')
    def arc_colors_not_empty(cls, v):
        """At least one arc colour is required."""
        if not v:
            raise ValueError('arc_colors must not be empty')
        return v


class DirectionsConfig(BaseModel):
    """Default direction table selection."""
    version: int = Field(default=1, description="Version of the default direction tables")

    @validator('version')
    def version_supported(cls, v):
        """Only version 1 tables exist."""
        if v != 1:
            raise ValueError(f'Unsupported direction table version: {v}')
        return v


class RhombiflipConfig(BaseModel):
    """Complete application configuration."""
    enumeration: EnumerationConfig = Field(default_factory=EnumerationConfig, description="Enumeration settings")
    search: SearchConfig = Field(default_factory=SearchConfig, description="Search budgets")
    sampling: SamplingConfig = Field(default_factory=SamplingConfig, description="Sampling settings")
    rendering: RenderConfig = Field(default_factory=RenderConfig, description="SVG style")
    directions: DirectionsConfig = Field(default_factory=DirectionsConfig, description="Direction tables")


# JSON documents

class DirectionSetDocument(BaseModel):
    """Direction set as exact rationals [numx, denx, numy, deny]."""
    n: int = Field(..., ge=1, description="Number of directions")
    vectors: List[List[int]] = Field(..., description="One [numx, denx, numy, deny] entry per direction")

    @validator('vectors')
    def vectors_well_formed(cls, v, values):
        """Each vector has four integers with nonzero denominators; one per direction."""
        for entry in v:
            if len(entry) != 4:
                raise ValueError('each vector must be [numx, denx, numy, deny]')
            if entry[1] == 0 or entry[3] == 0:
                raise ValueError('denominators must be nonzero')
        if 'n' in values and len(v) != values['n']:
            raise ValueError(f"expected {values['n']} vectors, got {len(v)}")
        return v


class RhombusDocument(BaseModel):
    """A rhombus: lattice base point and the pair of axes it spans."""
    base: List[int] = Field(..., description="0/1 lattice point")
    pair: List[int] = Field(..., description="Axes i < j, 1-based")

    @validator('pair')
    def pair_has_two_entries(cls, v):
        """A pair has exactly two axes."""
        if len(v) != 2:
            raise ValueError('pair must have exactly two entries')
        return v


class TilingDocument(BaseModel):
    """Planar tiling in canonical (pair, base) order."""
    n: int = Field(..., ge=1, description="Number of directions")
    rhombi: List[RhombusDocument] = Field(default_factory=list, description="Rhombi sorted by (pair, base)")


class CubeFlipDocument(BaseModel):
    """A flip datum."""
    base: List[int] = Field(..., description="Cube base lattice point")
    axes: List[int] = Field(..., description="Axes j < k < l")
    direction: FlipDirection = Field(..., description="up or down")

    @validator('axes')
    def axes_has_three_entries(cls, v):
        """A cube has exactly three axes."""
        if len(v) != 3:
            raise ValueError('axes must have exactly three entries')
        return v


class FlipPathDocument(BaseModel):
    """A path in the flip graph."""
    start: TilingDocument = Field(..., description="Start tiling")
    flips: List[CubeFlipDocument] = Field(default_factory=list, description="Flips in order")


class GraphEdgeDocument(BaseModel):
    """Flip graph edge; the flip applies at source and lands at target."""
    source: int = Field(..., ge=0)
    target: int = Field(..., ge=0)
    flip: CubeFlipDocument


class FlipGraphDocument(BaseModel):
    """Serialized flip graph."""
    n: int = Field(..., ge=1)
    vertices: List[TilingDocument] = Field(default_factory=list)
    edges: List[GraphEdgeDocument] = Field(default_factory=list)


class SurfaceFaceDocument(BaseModel):
    """Abstract quadrilateral: direction of sides 0/2 and 1/3, corner names in cyclic order."""
    directions: List[int] = Field(..., description="[direction of sides 0 and 2, direction of sides 1 and 3]")
    corners: List[List[int]] = Field(..., description="Four corner vertex names")

    @validator('corners')
    def four_corners(cls, v):
        """Faces are quadrilaterals."""
        if len(v) != 4:
            raise ValueError('a face has exactly four corners')
        return v


class GlueDocument(BaseModel):
    """One identification of two face sides."""
    a: List[int] = Field(..., description="[face, side]")
    b: List[int] = Field(..., description="[face, side]")
    twisted: bool = Field(..., description="True when corner s meets corner r (same traversal direction)")


class SurfaceTilingDocument(BaseModel):
    """Abstract glued quad complex."""
    kind: SurfaceKind
    n: int = Field(..., ge=2)
    labeling: List[int] = Field(..., description="Boundary labels e_1..e_n")
    faces: List[SurfaceFaceDocument] = Field(default_factory=list)
    gluing: List[GlueDocument] = Field(default_factory=list)


class SurfaceStepDocument(BaseModel):
    """A surface flip identified by its center vertex name and direction triple."""
    center: List[int]
    triple: List[int]


class SurfacePathDocument(BaseModel):
    """A path of surface flips."""
    start: SurfaceTilingDocument
    steps: List[SurfaceStepDocument] = Field(default_factory=list)


class RewriteMoveDocument(BaseModel):
    """A single word rewrite: replace `length` letters at `position` by `replacement`."""
    kind: RewriteKind
    position: int = Field(..., ge=0)
    length: int = Field(..., ge=0)
    replacement: List[str] = Field(default_factory=list, description="Replacement letters in word text form")


class CommandResult(BaseModel):
    """Machine-parseable outcome of a CLI command."""
    status: CommandStatus = Field(..., description="ok or error")
    payload: Any = Field(default=None, description="JSON value produced by the command")
    diagnostics: List[str] = Field(default_factory=list, description="Human-readable notes")

    @property
    def exit_code(self) -> int:
        """0 iff the command succeeded."""
        return 0 if self.status == CommandStatus.OK else 1


# Exceptions

class RhombiflipError(Exception):
    """Base exception for library errors."""

    default_code = "RHOMBIFLIP_ERROR"
    default_status = 400

    def __init__(self, message: str, error_code: Optional[str] = None, status_code: Optional[int] = None):
        self.message = message
        self.error_code = error_code or self.default_code
        self.status_code = status_code or self.default_status
        super().__init__(self.message)

    def to_dict(self) -> Dict[str, Any]:
        """JSON body for the HTTP surface."""
        return {"error": self.error_code, "message": self.message}


class InvalidInputError(RhombiflipError, ValueError):
    """Malformed data: lattice points, triples, words, labelings, dimensions."""
    default_code = "INVALID_INPUT"
    default_status = 400


class FlipNotApplicableError(RhombiflipError):
    """The flip's matched faces are not all present."""
    default_code = "FLIP_NOT_APPLICABLE"
    default_status = 409

    def __init__(self, message: str = "flip not applicable", **kwargs):
        super().__init__(message, **kwargs)


class PathReplayError(RhombiflipError):
    """A path does not replay, or is not closed where a closed path is required."""
    default_code = "PATH_REPLAY_FAILED"
    default_status = 409


class PartialResultError(RhombiflipError):
    """Enumeration stopped at the vertex limit; carries the partial graph."""
    default_code = "LIMIT_EXCEEDED"
    default_status = 413

    def __init__(self, message: str, partial: Any = None, **kwargs):
        self.partial = partial
        super().__init__(message, **kwargs)


class SearchExhaustedError(RhombiflipError):
    """A bounded search found nothing where a result was required."""
    default_code = "SEARCH_EXHAUSTED"
    default_status = 422


class GluingError(RhombiflipError):
    """Surface identification or surface invariant failure."""
    default_code = "GLUING_MISMATCH"
    default_status = 422


class MutationError(RhombiflipError):
    """Vertex variables incomplete or nonpositive."""
    default_code = "MUTATION_FAILED"
    default_status = 422
