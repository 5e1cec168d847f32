"""
Main FastAPI application for rhombiflip.

Exposes the tiling and word commands of the CLI over HTTP for notebook and
remote use.
"""

import logging
from contextlib import asynccontextmanager

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from src.api.tilings import router as tilings_router
from src.api.words import router as words_router
from src.core.config import config_manager
from src.core.logging_config import setup_logging_from_env
from src.core.models import RhombiflipError
from src.services.zonogon_geometry import DIRECTION_TABLE_VERSION

# Setup logging using environment variables or defaults
setup_logging_from_env(default_level="INFO")
logger = logging.getLogger(__name__)


@asynccontextmanager
async def lifespan(app: FastAPI):
    """
    Application lifespan manager for startup and shutdown events.
    """
    logger.info("Starting up rhombiflip service...", extra={"lifecycle_stage": "startup"})

    config = config_manager.config
    logger.info(
        f"Configuration loaded: max_states={config.search.max_states}, "
        f"vertex_limit={config.enumeration.vertex_limit}, jobs={config.enumeration.jobs}",
        extra={"lifecycle_stage": "config_loaded"}
    )
    if config.directions.version != DIRECTION_TABLE_VERSION:
        logger.warning(
            f"Configured direction table version {config.directions.version} is not available, "
            f"using version {DIRECTION_TABLE_VERSION}",
            extra={"lifecycle_stage": "config_loaded"}
        )

    yield

    logger.info("rhombiflip service shutdown completed", extra={"lifecycle_stage": "shutdown"})


# Create FastAPI application
app = FastAPI(
    title="rhombiflip",
    description="""
    ## Rhombile tilings, flips and G_n^3 words

    * **Tilings**: enumerate the flip graph of the 2n-zonogon, list and apply flips,
      transport vertex values, render tilings and dual diagrams as SVG
    * **Words**: map flip paths to words, compute the MN index invariant,
      decide bounded equality with a witness, search glued surfaces for
      nontrivial closed paths

    Every command is also available from the `rhombiflip` CLI with the same JSON formats.
    """,
    version="1.0.0",
    lifespan=lifespan,
    docs_url="/docs",
    redoc_url="/redoc",
    openapi_tags=[
        {"name": "tilings", "description": "Flip graph, flips, vertex values and rendering."},
        {"name": "words", "description": "Words in G_n^3, invariants and searches."},
        {"name": "info", "description": "Information endpoints."},
    ]
)

app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)

# Include routers
app.include_router(tilings_router)
app.include_router(words_router)


@app.exception_handler(RhombiflipError)
async def rhombiflip_exception_handler(request: Request, exc: RhombiflipError):
    """
    Library errors become JSON bodies with their own status code.
    """
    logger.info(
        f"{exc.error_code} in {request.method} {request.url.path}: {exc.message}",
        extra={"lifecycle_stage": "request_error"}
    )
    return JSONResponse(status_code=exc.status_code, content=exc.to_dict())


@app.exception_handler(Exception)
async def global_exception_handler(request: Request, exc: Exception):
    """
    Global exception handler for unhandled errors.
    """
    logger.error(
        f"Unhandled exception in {request.method} {request.url.path}: {exc}",
        exc_info=True
    )

    return JSONResponse(
        status_code=500,
        content={
            "error": "Internal server error",
            "message": "An unexpected error occurred",
        }
    )


@app.get("/", tags=["info"])
async def root():
    """
    Root endpoint with API information.
    """
    return {
        "name": "rhombiflip",
        "version": "1.0.0",
        "status": "operational",
        "features": [
            "Flip graph enumeration of zonogon tilings",
            "Map from flip paths to G_n^3 words",
            "MN index invariant and bounded word equality",
            "Closed-path search on RP2 and Klein bottle tilings",
            "Hexagon exchange relation and SVG rendering",
        ],
    }


@app.get("/health", tags=["info"])
async def health():
    """
    Liveness check with a configuration summary.
    """
    config = config_manager.config
    return {
        "status": "healthy",
        "config_path": config_manager.config_path,
        "search": config.search.model_dump(),
        "enumeration": config.enumeration.model_dump(),
        "direction_table_version": DIRECTION_TABLE_VERSION,
    }


if __name__ == "__main__":
    import uvicorn

    uvicorn.run(
        "main:app",
        host="0.0.0.0",
        port=8000,
        reload=True,
        log_level="info"
    )
