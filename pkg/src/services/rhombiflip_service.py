"""
Service facade shared by the CLI and the HTTP API.

Each method performs one command: it reads defaults from the configuration,
calls the library modules and returns a JSON-ready payload.
"""

import logging
from typing import Any, Dict, List, Optional, Sequence

from ..core.config import config_manager
from ..core.models import InvalidInputError, SearchKind
from .cluster_mutation import VertexVars, initial_vars, transport
from .codec import (
    flip_to_document,
    graph_to_document,
    move_to_document,
    path_to_document,
    surface_path_to_document,
    tiling_to_document,
    vars_to_document,
)
from .dual_diagram import dual_of, render_svg
from .flip_graph import FlipPath, enumerate_flip_graph, is_connected, two_cells_at
from .gn3_words import Gn3Word, WordBudget, bounded_equal
from .mn_index import certify_nontrivial, w_invariant
from .phi_map import ClosedPathReport, check_closed_path_trivial, phi, sample_realisable_elements
from .surface_tiling import BoundaryLabeling, search_nontrivial_closed_path
from .tiling_core import CubeFlip, PlanarTiling, apply_flip, base_tiling, find_flips

logger = logging.getLogger(__name__)


def _certificate_payload(certificate) -> Optional[Dict[str, Any]]:
    if certificate is None:
        return None
    triple, invariant = certificate
    return {"triple": list(triple), "invariant": invariant.text()}


def _report_payload(report: ClosedPathReport) -> Dict[str, Any]:
    return {
        "word": report.word.text(),
        "reduced": report.reduced.text(),
        "certificate": _certificate_payload(report.certificate),
        "verdict": report.equality.verdict.value,
        "states": report.equality.states,
        "trivial": report.trivial,
    }


class RhombiflipService:
    """One method per command."""

    def _budget(self, max_states: Optional[int] = None, max_length: Optional[int] = None) -> WordBudget:
        search = config_manager.config.search
        return WordBudget(
            max_length=max_length,
            max_states=max_states or search.max_states,
            extra_length=search.extra_length,
        )

    def default_seed(self) -> int:
        return config_manager.config.sampling.seed

    def enumerate_graph(
        self,
        n: int,
        limit: Optional[int] = None,
        jobs: Optional[int] = None,
        with_cells: bool = False,
        include_graph: bool = False,
    ) -> Dict[str, Any]:
        """Flip graph counts, connectivity and optionally the 2-cells and the full graph."""
        settings = config_manager.config.enumeration
        limit = limit or settings.vertex_limit
        jobs = jobs or settings.jobs
        logger.info(
            f"Enumerating flip graph for n={n} (limit {limit}, jobs {jobs})",
            extra={"service_operation": "enumerate_start", "n": n}
        )
        graph = enumerate_flip_graph(n, limit=limit, jobs=jobs)
        payload: Dict[str, Any] = {
            "n": n,
            "vertices": len(graph.vertices),
            "edges": len(graph.edges),
            "connected": is_connected(graph),
        }
        if with_cells:
            squares, octagons = set(), set()
            for t in graph.vertices:
                for cell in two_cells_at(graph, t):
                    tilings = frozenset(cell.boundary.replay())
                    (squares if len(cell.boundary) == 4 else octagons).add(tilings)
            payload["squares"] = len(squares)
            payload["octagons"] = len(octagons)
        if include_graph:
            payload["graph"] = graph_to_document(graph).model_dump(mode="json")
        return payload

    def list_flips(self, t: PlanarTiling) -> Dict[str, Any]:
        return {"flips": [flip_to_document(f).model_dump(mode="json") for f in find_flips(t)]}

    def flip(self, t: PlanarTiling, index: int) -> Dict[str, Any]:
        """Apply the index-th flip of find_flips(t)."""
        flips = find_flips(t)
        if not 0 <= index < len(flips):
            raise InvalidInputError(f"flip index {index} out of range: {len(flips)} flips available")
        chosen = flips[index]
        return {
            "flip": flip_to_document(chosen).model_dump(mode="json"),
            "tiling": tiling_to_document(apply_flip(t, chosen)).model_dump(mode="json"),
        }

    def apply(self, t: PlanarTiling, f: CubeFlip) -> Dict[str, Any]:
        """
        Apply an explicit flip.

        Raises:
            FlipNotApplicableError: if f is not available in t.
        """
        return {"tiling": tiling_to_document(apply_flip(t, f)).model_dump(mode="json")}

    def path_to_word(self, p: FlipPath) -> str:
        return phi(p).text()

    def mn_index(self, n: int, word: str, triple: Optional[Sequence[int]] = None) -> Any:
        """The reduced invariant as text for one triple, else the certificate (or None)."""
        w = Gn3Word.parse(word, n)
        if triple is not None:
            return w_invariant(w, triple).text()
        return _certificate_payload(certify_nontrivial(w))

    def certificate(self, n: int, word: str) -> Optional[Dict[str, Any]]:
        """First triple with a nonempty reduced invariant, or None."""
        return self.mn_index(n, word)

    def check_equal(
        self,
        n: int,
        w1: str,
        w2: str,
        max_states: Optional[int] = None,
        max_length: Optional[int] = None,
    ) -> Dict[str, Any]:
        result = bounded_equal(Gn3Word.parse(w1, n), Gn3Word.parse(w2, n), self._budget(max_states, max_length))
        logger.info(
            f"check-equal {w1!r} vs {w2!r}: {result.verdict.value} after {result.states} states",
            extra={"service_operation": "check_equal", "states": result.states}
        )
        return {
            "verdict": result.verdict.value,
            "states": result.states,
            "witness": [move_to_document(m).model_dump(mode="json") for m in result.witness],
            "separated_by": list(result.separated_by) if result.separated_by else None,
        }

    def check_closed(self, p: FlipPath, max_states: Optional[int] = None) -> Dict[str, Any]:
        return _report_payload(check_closed_path_trivial(p, self._budget(max_states)))

    def sample_closed(
        self, n: int, length: int, count: int, seed: Optional[int] = None, max_states: Optional[int] = None
    ) -> Dict[str, Any]:
        """Reports for count random closed paths at base_tiling(n) of even length up to length."""
        seed = self.default_seed() if seed is None else seed
        graph = enumerate_flip_graph(n, limit=config_manager.config.enumeration.vertex_limit)
        elements = sample_realisable_elements(graph, base_tiling(n), count, length, seed)
        reports = [check_closed_path_trivial(e.witness, self._budget(max_states)) for e in elements]
        return {
            "seed": seed,
            "paths": [_report_payload(r) for r in reports],
            "all_trivial": all(r.trivial for r in reports),
        }

    def surface_search(
        self,
        n: int,
        kind: str,
        max_len: Optional[int] = None,
        labeling: Optional[Sequence[int]] = None,
    ) -> Dict[str, Any]:
        settings = config_manager.config.search
        max_len = settings.surface_max_len if max_len is None else max_len
        e = BoundaryLabeling(tuple(labeling)) if labeling else None
        result = search_nontrivial_closed_path(
            n, SearchKind(kind), max_len, labeling=e, state_limit=settings.surface_state_limit
        )
        if result is None:
            return {"found": False, "kind": kind, "n": n, "max_len": max_len}
        payload: Dict[str, Any] = {
            "found": True,
            "kind": kind,
            "n": n,
            "max_len": max_len,
            "word": result.word.text(),
            "certificate": _certificate_payload(result.certificate),
        }
        if result.path is not None:
            payload["path"] = surface_path_to_document(result.path).model_dump(mode="json")
        if result.planar_path is not None:
            payload["path"] = path_to_document(result.planar_path).model_dump(mode="json")
        return payload

    def mutate(self, t: PlanarTiling, p: FlipPath, values: Optional[VertexVars] = None) -> Dict[str, Any]:
        values = values or initial_vars(t)
        result = transport(t, values, p)
        return {
            "tiling": tiling_to_document(p.end()).model_dump(mode="json"),
            "vars": vars_to_document(result),
        }

    def render(self, t: PlanarTiling, dual: bool = False, dual_only: bool = False, labels: Optional[bool] = None) -> str:
        style = config_manager.config.rendering.model_copy()
        if labels is not None:
            style.show_labels = labels
        diagram = dual_of(t) if (dual or dual_only) else None
        return render_svg(None if dual_only else t, diagram, style)


rhombiflip_service = RhombiflipService()


def parse_indices(text: str, expected: Optional[int] = None) -> List[int]:
    """Read "1,2,3" into [1, 2, 3]."""
    try:
        values = [int(part) for part in text.split(",")]
    except ValueError:
        raise InvalidInputError(f"malformed index list {text!r}") from None
    if expected is not None and len(values) != expected:
        raise InvalidInputError(f"expected {expected} indices, got {text!r}")
    return values
