"""
Tiling endpoints: flip graph enumeration, flips, vertex values and SVG.
"""

from typing import Dict, Optional

from fastapi import APIRouter
from fastapi.responses import Response
from pydantic import BaseModel, Field, validator

from ..core.models import CubeFlipDocument, FlipPathDocument, InvalidInputError, TilingDocument
from ..services.codec import flip_from_document, path_from_document, tiling_from_document, vars_from_document
from ..services.rhombiflip_service import rhombiflip_service
from ..services.tiling_core import base_tiling

router = APIRouter(prefix="/tilings", tags=["tilings"])


# Request models
class EnumerateRequest(BaseModel):
    """Request model for flip graph enumeration."""
    n: int = Field(..., ge=2, le=8, description="Number of directions")
    limit: Optional[int] = Field(None, gt=0, description="Vertex limit (configuration default when omitted)")
    jobs: Optional[int] = Field(None, ge=1, description="Worker threads")
    cells: bool = Field(False, description="Count square and octagon 2-cells")
    include_graph: bool = Field(False, description="Return the full graph document")


class TilingRequest(BaseModel):
    """A tiling given explicitly or as the base tiling of the 2n-zonogon."""
    tiling: Optional[TilingDocument] = Field(None, description="Tiling document")
    n: Optional[int] = Field(None, ge=1, description="Use base_tiling(n) when no tiling is given")

    def resolve(self):
        if self.tiling is not None:
            return tiling_from_document(self.tiling)
        if self.n is None:
            raise InvalidInputError("either tiling or n is required")
        return base_tiling(self.n)


class FlipRequest(BaseModel):
    """Request model for applying one flip."""
    tiling: TilingDocument
    flip: CubeFlipDocument


class RenderRequest(TilingRequest):
    """Request model for SVG rendering."""
    dual: bool = Field(False, description="Overlay the dual diagram")
    dual_only: bool = Field(False, description="Draw only the dual diagram")
    labels: bool = Field(True, description="Label the arcs")


class MutateRequest(BaseModel):
    """Request model for transporting vertex values along a path."""
    tiling: TilingDocument
    path: FlipPathDocument
    vars: Optional[Dict[str, str]] = Field(None, description='{"X,Y": "p/q"}; all ones when omitted')

    @validator('vars')
    def vars_not_empty(cls, v):
        if v is not None and not v:
            raise ValueError('vars must not be empty')
        return v


@router.post("/enumerate", summary="Enumerate the flip graph")
def enumerate_graph(request: EnumerateRequest):
    """
    Breadth-first enumeration from the base tiling.

    Returns vertex and edge counts, connectivity and, on request, the
    2-cell counts and the full graph.
    """
    return rhombiflip_service.enumerate_graph(
        request.n,
        limit=request.limit,
        jobs=request.jobs,
        with_cells=request.cells,
        include_graph=request.include_graph,
    )


@router.post("/flips", summary="List available flips")
def list_flips(request: TilingRequest):
    return rhombiflip_service.list_flips(request.resolve())


@router.post("/flip", summary="Apply a flip")
def apply_flip(request: FlipRequest):
    return rhombiflip_service.apply(tiling_from_document(request.tiling), flip_from_document(request.flip))


@router.post("/render", summary="Render a tiling as SVG")
def render(request: RenderRequest):
    svg = rhombiflip_service.render(
        request.resolve(),
        dual=request.dual,
        dual_only=request.dual_only,
        labels=request.labels,
    )
    return Response(content=svg, media_type="image/svg+xml")


@router.post("/mutate", summary="Transport vertex values along a flip path")
def mutate(request: MutateRequest):
    values = vars_from_document(request.vars) if request.vars is not None else None
    return rhombiflip_service.mutate(
        tiling_from_document(request.tiling),
        path_from_document(request.path),
        values,
    )
