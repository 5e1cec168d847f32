"""
The map phi from flip paths to G_n^3 words.

Each flip contributes the generator of its cube's axes, so the word of a
concatenation is the concatenation of the words. Closed paths in the
zonogon flip graph map to the identity; this module checks that with both
the MN certificate and the bounded rewriting search.
"""

import logging
import random
from dataclasses import dataclass
from typing import List, Optional, Tuple

from ..core.models import InvalidInputError, PathReplayError, TwoCellKind
from .flip_graph import FlipGraph, FlipPath, TwoCell, enumerate_flip_graph, iter_closed_walks, sample_closed_path
from .gn3_words import EqualityResult, Gn3Word, WordBudget, bounded_equal, free_reduce
from .mn_index import FWord, certify_nontrivial
from .tiling_core import CubeFlip, PlanarTiling, apply_flip, base_tiling, find_flips, is_applicable

logger = logging.getLogger(__name__)


def phi(p: FlipPath) -> Gn3Word:
    """
    One generator per flip, in path order.

    Raises:
        PathReplayError: if the path does not replay.
    """
    p.replay()
    return Gn3Word.from_triples(p.start.n, [f.axes for f in p.flips])


def replay(p: FlipPath) -> List[PlanarTiling]:
    return p.replay()


def concat(p1: FlipPath, p2: FlipPath) -> FlipPath:
    """p1 then p2; phi(concat(p1, p2)) == phi(p1) + phi(p2)."""
    return p1.concat(p2)


@dataclass(frozen=True)
class RealisableElement:
    word: Gn3Word
    witness: FlipPath


def sample_realisable_elements(
    g: FlipGraph, t0: PlanarTiling, count: int, max_length: int, seed: int
) -> List[RealisableElement]:
    """
    Images of random closed paths at t0, one per sample.

    Path lengths are even and drawn uniformly from 0..max_length; flip graphs
    are bipartite, so odd closed walks never exist.
    """
    if count < 0 or max_length < 0:
        raise InvalidInputError("count and max_length must be nonnegative")
    rng = random.Random(seed)
    start = g.vertex_of(t0)
    lengths = range(0, max_length + 1, 2) if g.adjacency[start] else [0]
    elements = []
    for _ in range(count):
        length = rng.choice(lengths)
        path = sample_closed_path(g, t0, length, rng.randrange(2 ** 32))
        elements.append(RealisableElement(phi(path), path))
    return elements


@dataclass(frozen=True)
class ClosedPathReport:
    """What is known about phi(p) for a closed path p."""

    word: Gn3Word
    reduced: Gn3Word
    certificate: Optional[Tuple[Tuple[int, int, int], FWord]]
    equality: EqualityResult

    @property
    def trivial(self) -> bool:
        return self.certificate is None and self.equality.equal


def check_closed_path_trivial(p: FlipPath, budget: Optional[WordBudget] = None) -> ClosedPathReport:
    """
    Certificate scan and bounded search for phi(p) = 1.

    Raises:
        PathReplayError: if p does not replay or does not return to its start.
    """
    if not p.is_closed():
        raise PathReplayError("path is not closed")
    word = phi(p)
    report = ClosedPathReport(
        word=word,
        reduced=free_reduce(word),
        certificate=certify_nontrivial(word),
        equality=bounded_equal(word, Gn3Word(word.n), budget),
    )
    if report.certificate is not None:
        logger.error(
            f"Closed path word {word.text()} has MN certificate {report.certificate[0]}",
            extra={"word_operation": "closed_path_certificate"}
        )
    return report


def homotopy_step_equal(p1: FlipPath, p2: FlipPath, budget: Optional[WordBudget] = None) -> bool:
    """True iff the bounded search proves phi(p1) = phi(p2)."""
    return bounded_equal(phi(p1), phi(p2), budget).equal


def square_homotopy(t: PlanarTiling, f1: CubeFlip, f2: CubeFlip) -> Tuple[FlipPath, FlipPath]:
    """
    The two sides (f1 f2, f2 f1) of a square at t.

    Raises:
        InvalidInputError: if the two orders do not both replay to the same tiling.
    """
    one = FlipPath(t, (f1, f2))
    other = FlipPath(t, (f2, f1))
    if not (is_applicable(t, f1) and is_applicable(t, f2)):
        raise InvalidInputError(f"flips {f1} and {f2} are not both available")
    try:
        if one.end() != other.end():
            raise InvalidInputError(f"flips {f1} and {f2} do not span a square")
    except PathReplayError:
        raise InvalidInputError(f"flips {f1} and {f2} do not commute") from None
    return one, other


def octagon_homotopy(cell: TwoCell, k: int = 4) -> Tuple[FlipPath, FlipPath]:
    """
    Split an octagon boundary after k flips into two paths with common ends.

    The first path follows the first k boundary flips; the second walks the
    remaining 8 - k flips backwards.
    """
    if cell.kind != TwoCellKind.OCTAGON:
        raise InvalidInputError("octagon_homotopy needs an octagon cell")
    flips = cell.boundary.flips
    if not 0 <= k <= len(flips):
        raise InvalidInputError(f"split point {k} outside 0..{len(flips)}")
    start = cell.boundary.start
    return FlipPath(start, flips[:k]), FlipPath(start, tuple(f.inverse() for f in reversed(flips[k:])))


def search_nontrivial_closed_planar_path(n: int, max_len: int, state_limit: Optional[int] = None):
    """
    Zonogon analogue of the surface search: a closed flip path from any
    tiling whose word carries an MN certificate. Closed paths in the
    zonogon flip graph map to 1, so the result is always None.
    """
    if max_len <= 0 or n < 3:
        return None
    graph = enumerate_flip_graph(n)

    def successors(t: PlanarTiling) -> List[Tuple[CubeFlip, PlanarTiling]]:
        return [(f, apply_flip(t, f)) for f in find_flips(t)]

    for start in graph.vertices:
        for flips in iter_closed_walks(start, successors, max_len, state_limit=state_limit):
            word = Gn3Word.from_triples(n, [f.axes for f in flips])
            if not free_reduce(word).letters:
                continue
            certificate = certify_nontrivial(word)
            if certificate is not None:
                logger.error(
                    f"Planar closed path with nontrivial word {word.text()}",
                    extra={"word_operation": "planar_certificate"}
                )
                return FlipPath(start, tuple(flips)), word, certificate
    return None


def sample_closed_paths(n: int, count: int, max_length: int, seed: int, t0: Optional[PlanarTiling] = None) -> List[FlipPath]:
    """Closed paths at t0 (default base_tiling(n)), reproducible per seed."""
    graph = enumerate_flip_graph(n)
    t0 = t0 or base_tiling(n)
    return [e.witness for e in sample_realisable_elements(graph, t0, count, max_length, seed)]
