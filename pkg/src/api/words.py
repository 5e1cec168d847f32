"""
Word endpoints: phi of a path, the MN index, bounded equality and the
closed-path searches.
"""

from typing import List, Optional

from fastapi import APIRouter
from pydantic import BaseModel, Field, validator

from ..core.models import FlipPathDocument, SearchKind
from ..services.codec import path_from_document
from ..services.rhombiflip_service import rhombiflip_service

router = APIRouter(prefix="/words", tags=["words"])


# Request models
class PathRequest(BaseModel):
    """A flip path document."""
    path: FlipPathDocument


class MnIndexRequest(BaseModel):
    """Request model for the index invariant."""
    n: int = Field(..., ge=3, description="Number of indices")
    word: str = Field(..., description='Word text, e.g. "124.123.124.123"')
    triple: Optional[List[int]] = Field(None, description="Fixed triple; certificate search when omitted")

    @validator('triple')
    def triple_has_three_indices(cls, v):
        if v is not None and len(v) != 3:
            raise ValueError('triple must have exactly three indices')
        return v


class CheckEqualRequest(BaseModel):
    """Request model for bounded word equality."""
    n: int = Field(..., ge=3)
    w1: str
    w2: str
    max_states: Optional[int] = Field(None, gt=0, description="Maximum words visited")
    max_length: Optional[int] = Field(None, ge=0, description="Maximum intermediate word length")


class SurfaceSearchRequest(BaseModel):
    """Request model for the closed-path search on a glued surface."""
    n: int = Field(..., ge=3, le=6)
    kind: SearchKind
    max_len: Optional[int] = Field(None, ge=0, description="Path length bound")
    labeling: Optional[List[int]] = Field(None, description="Boundary labels e_1..e_n")


@router.post("/phi", summary="Word of a flip path")
def phi(request: PathRequest):
    return {"word": rhombiflip_service.path_to_word(path_from_document(request.path))}


@router.post("/mn-index", summary="MN index invariant")
def mn_index(request: MnIndexRequest):
    """
    With a triple, the reduced invariant text; without, the first triple
    certifying nontriviality (or null).
    """
    if request.triple is not None:
        return {"invariant": rhombiflip_service.mn_index(request.n, request.word, request.triple)}
    return {"certificate": rhombiflip_service.certificate(request.n, request.word)}


@router.post("/check-equal", summary="Bounded equality of two words")
def check_equal(request: CheckEqualRequest):
    return rhombiflip_service.check_equal(
        request.n, request.w1, request.w2, request.max_states, request.max_length
    )


@router.post("/check-closed", summary="Triviality of a closed flip path")
def check_closed(request: PathRequest):
    return rhombiflip_service.check_closed(path_from_document(request.path))


@router.post("/surface-search", summary="Nontrivial closed path on a glued surface")
def surface_search(request: SurfaceSearchRequest):
    return rhombiflip_service.surface_search(
        request.n, request.kind.value, request.max_len, request.labeling
    )
