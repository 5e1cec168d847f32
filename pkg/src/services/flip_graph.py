"""
The flip graph of zonogon tilings and its 2-cells.

Vertices are tilings, edges are flips. The graph is grown by breadth-first
search from the canonical base tiling; squares (commuting flip pairs) and
octagons (the eight flips inside a tesseract) are found by replaying flips.
Connectivity and shortest paths are delegated to networkx.
"""

import logging
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Dict, Hashable, Iterator, List, Optional, Sequence, Tuple, TypeVar

import networkx as nx

from ..core.models import (
    FlipNotApplicableError,
    InvalidInputError,
    PartialResultError,
    PathReplayError,
    SearchExhaustedError,
    TwoCellKind,
)
from .tiling_core import CubeFlip, PlanarTiling, apply_flip, base_tiling, find_flips, is_applicable

logger = logging.getLogger(__name__)

State = TypeVar("State")
Step = TypeVar("Step")


@dataclass(frozen=True)
class FlipPath:
    """A start tiling and a sequence of flips applied in order."""

    start: PlanarTiling
    flips: Tuple[CubeFlip, ...] = ()

    def __len__(self) -> int:
        return len(self.flips)

    def replay(self) -> List[PlanarTiling]:
        """
        Every tiling visited, start included.

        Raises:
            PathReplayError: if some flip is not applicable when reached.
        """
        tilings = [self.start]
        for position, flip in enumerate(self.flips):
            try:
                tilings.append(apply_flip(tilings[-1], flip))
            except FlipNotApplicableError as e:
                raise PathReplayError(f"flip {position} ({flip}) not applicable: {e.message}") from e
        return tilings

    def end(self) -> PlanarTiling:
        return self.replay()[-1]

    def is_closed(self) -> bool:
        return self.end() == self.start

    def reversed(self) -> "FlipPath":
        """The same walk traversed backwards."""
        return FlipPath(self.end(), tuple(f.inverse() for f in reversed(self.flips)))

    def concat(self, other: "FlipPath") -> "FlipPath":
        if self.end() != other.start:
            raise PathReplayError("paths do not compose: first path does not end where the second starts")
        return FlipPath(self.start, self.flips + other.flips)


@dataclass(frozen=True)
class TwoCell:
    """A square or octagon attached along a closed flip path."""

    kind: TwoCellKind
    boundary: FlipPath
    support: Tuple[int, ...]
    disjoint_rhombi: bool = False
    far_commuting: bool = False

    def edges(self) -> List[FlipPath]:
        """Boundary split into single-flip paths."""
        tilings = self.boundary.replay()
        return [FlipPath(t, (f,)) for t, f in zip(tilings, self.boundary.flips)]


@dataclass
class FlipGraph:
    """Tilings indexed in discovery order; each edge stored once with the flip applicable at its source."""

    n: int
    vertices: List[PlanarTiling] = field(default_factory=list)
    index: Dict[PlanarTiling, int] = field(default_factory=dict)
    edges: List[Tuple[int, int, CubeFlip]] = field(default_factory=list)
    adjacency: Dict[int, List[Tuple[CubeFlip, int]]] = field(default_factory=dict)
    complete: bool = True

    def add_vertex(self, t: PlanarTiling) -> int:
        v = len(self.vertices)
        self.vertices.append(t)
        self.index[t] = v
        self.adjacency[v] = []
        return v

    def add_edge(self, source: int, target: int, flip: CubeFlip) -> None:
        self.edges.append((source, target, flip))
        self.adjacency[source].append((flip, target))
        self.adjacency[target].append((flip.inverse(), source))

    def vertex_of(self, t: PlanarTiling) -> int:
        try:
            return self.index[t]
        except KeyError:
            raise InvalidInputError("tiling is not a vertex of this flip graph") from None

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(len(self.vertices)))
        for source, target, flip in self.edges:
            graph.add_edge(source, target, flip=flip, source=source)
        return graph


def _successors(t: PlanarTiling) -> List[Tuple[CubeFlip, PlanarTiling]]:
    return [(f, apply_flip(t, f)) for f in find_flips(t)]


def enumerate_flip_graph(n: int, limit: Optional[int] = None, jobs: int = 1) -> FlipGraph:
    """
    Breadth-first closure of base_tiling(n) under all flips.

    Args:
        n: Number of directions, at least 2.
        limit: Maximum number of vertices; None for no limit.
        jobs: Worker threads expanding each frontier. Results are merged in
            frontier order, so vertex indices do not depend on jobs.

    Returns:
        The complete flip graph.

    Raises:
        PartialResultError: when the vertex limit is reached; `.partial` holds
            the graph built so far.
    """
    if n < 2:
        raise InvalidInputError(f"enumerate needs n >= 2, got {n}")
    if jobs < 1:
        raise InvalidInputError(f"jobs must be positive, got {jobs}")

    graph = FlipGraph(n)
    graph.add_vertex(base_tiling(n))
    frontier = [0]
    level = 0
    executor = ThreadPoolExecutor(max_workers=jobs) if jobs > 1 else None

    try:
        while frontier:
            tilings = [graph.vertices[v] for v in frontier]
            if executor is not None:
                expansions = list(executor.map(_successors, tilings))
            else:
                expansions = [_successors(t) for t in tilings]

            next_frontier = []
            for v, successors in zip(frontier, expansions):
                for flip, tiling in successors:
                    u = graph.index.get(tiling)
                    if u is None:
                        if limit is not None and len(graph.vertices) >= limit:
                            graph.complete = False
                            logger.warning(
                                f"Vertex limit {limit} reached at BFS level {level}",
                                extra={"graph_operation": "limit_exceeded", "vertices": len(graph.vertices)}
                            )
                            raise PartialResultError(
                                f"vertex limit {limit} exceeded for n={n}", partial=graph
                            )
                        u = graph.add_vertex(tiling)
                        next_frontier.append(u)
                    if v < u:
                        graph.add_edge(v, u, flip)

            logger.debug(
                f"BFS level {level}: frontier {len(frontier)}, vertices {len(graph.vertices)}",
                extra={"graph_operation": "bfs_level", "level": level}
            )
            frontier = next_frontier
            level += 1
    finally:
        if executor is not None:
            executor.shutdown(wait=True)

    logger.info(
        f"Enumerated flip graph for n={n}: {len(graph.vertices)} vertices, {len(graph.edges)} edges",
        extra={"graph_operation": "enumerate_complete", "n": n}
    )
    return graph


def is_connected(g: FlipGraph) -> bool:
    """True iff the (complete) flip graph is connected."""
    if not g.complete:
        raise InvalidInputError("connectivity is only defined for a complete flip graph")
    return nx.is_connected(g.to_networkx())


def _path_from_vertices(g: FlipGraph, graph: nx.Graph, nodes: Sequence[int]) -> FlipPath:
    flips = []
    for a, b in zip(nodes, nodes[1:]):
        data = graph.edges[a, b]
        flips.append(data["flip"] if data["source"] == a else data["flip"].inverse())
    return FlipPath(g.vertices[nodes[0]], tuple(flips))


def find_path(g: FlipGraph, t1: PlanarTiling, t2: PlanarTiling) -> FlipPath:
    """
    A shortest flip path from t1 to t2.

    Raises:
        SearchExhaustedError: if no path exists in g.
    """
    source = g.vertex_of(t1)
    target = g.vertex_of(t2)
    graph = g.to_networkx()
    try:
        nodes = nx.shortest_path(graph, source, target)
    except nx.NetworkXNoPath:
        raise SearchExhaustedError(f"no flip path between vertices {source} and {target}") from None
    return _path_from_vertices(g, graph, nodes)


def sample_closed_path(g: FlipGraph, t0: PlanarTiling, length: int, seed: int) -> FlipPath:
    """
    Random closed walk of the given length from t0, reproducible per seed.

    Each step picks uniformly among neighbours from which t0 is still
    reachable in exactly the remaining number of steps.

    Raises:
        SearchExhaustedError: if no closed walk of that length exists.
    """
    if length < 0:
        raise InvalidInputError(f"length must be nonnegative, got {length}")
    start = g.vertex_of(t0)
    if length == 0:
        return FlipPath(t0, ())

    distance = nx.single_source_shortest_path_length(g.to_networkx(), start)
    rng = random.Random(seed)
    current = start
    flips = []
    for step in range(length):
        remaining = length - step - 1
        options = [
            (flip, u) for flip, u in g.adjacency[current]
            if distance.get(u, remaining + 1) <= remaining and (remaining - distance[u]) % 2 == 0
        ]
        if not options:
            raise SearchExhaustedError(f"no closed walk of length {length} through the start tiling")
        flip, current = rng.choice(options)
        flips.append(flip)
    return FlipPath(t0, tuple(flips))


def _square_cells(t: PlanarTiling, flips: Sequence[CubeFlip]) -> List[TwoCell]:
    cells = []
    for f1, f2 in combinations(flips, 2):
        t1 = apply_flip(t, f1)
        t2 = apply_flip(t, f2)
        if not (is_applicable(t1, f2) and is_applicable(t2, f1)):
            continue
        t12 = apply_flip(t1, f2)
        if t12 != apply_flip(t2, f1) or len(t12) != len(t):
            continue
        cube1 = set(f1.removed_faces()) | set(f1.added_faces())
        cube2 = set(f2.removed_faces()) | set(f2.added_faces())
        cells.append(TwoCell(
            kind=TwoCellKind.SQUARE,
            boundary=FlipPath(t, (f1, f2, f1.inverse(), f2.inverse())),
            support=tuple(sorted(set(f1.axes) | set(f2.axes))),
            disjoint_rhombi=not (cube1 & cube2),
            far_commuting=len(set(f1.axes) & set(f2.axes)) <= 1,
        ))
    return cells


def _in_tesseract(flip: CubeFlip, axes: Tuple[int, ...], base: Tuple[int, ...]) -> bool:
    if not set(flip.axes) <= set(axes):
        return False
    return all(flip.base[c - 1] == base[c - 1] for c in range(1, len(base) + 1) if c not in axes)


def _walk_octagon(t: PlanarTiling, axes: Tuple[int, ...], base: Tuple[int, ...]) -> Optional[Tuple[CubeFlip, ...]]:
    """Follow the tesseract's flips around from t; an octagon closes after exactly eight."""
    current = t
    previous: Optional[CubeFlip] = None
    walk = []
    for step in range(8):
        options = [
            f for f in find_flips(current)
            if _in_tesseract(f, axes, base) and (previous is None or f != previous.inverse())
        ]
        if len(options) != (2 if step == 0 else 1):
            return None
        previous = options[0]
        walk.append(previous)
        current = apply_flip(current, previous)
    return tuple(walk) if current == t else None


def _octagon_cells(t: PlanarTiling, flips: Sequence[CubeFlip]) -> List[TwoCell]:
    cells = []
    seen = set()
    for f in flips:
        for m in range(1, t.n + 1):
            if m in f.axes:
                continue
            axes = tuple(sorted(f.axes + (m,)))
            base = tuple(0 if c == m else f.base[c - 1] for c in range(1, t.n + 1))
            if (axes, base) in seen:
                continue
            seen.add((axes, base))
            walk = _walk_octagon(t, axes, base)
            if walk is not None:
                cells.append(TwoCell(kind=TwoCellKind.OCTAGON, boundary=FlipPath(t, walk), support=axes))
    return cells


def two_cells_at(g: FlipGraph, t: PlanarTiling) -> List[TwoCell]:
    """All squares and octagons whose boundary passes through t."""
    g.vertex_of(t)
    flips = find_flips(t)
    return _square_cells(t, flips) + _octagon_cells(t, flips)


def iter_closed_walks(
    start: State,
    successors: Callable[[State], Sequence[Tuple[Step, State]]],
    max_len: int,
    key: Callable[[State], Hashable] = lambda s: s,
    state_limit: Optional[int] = None,
) -> Iterator[Tuple[Step, ...]]:
    """
    Closed walks from start, by increasing length then in successor order.

    Only states within max_len // 2 steps of start can lie on such a walk, so
    the neighbourhood is explored once and the walks are enumerated on it
    with distance pruning.

    Args:
        start: Start state.
        successors: Ordered (step, next state) pairs of a state.
        max_len: Longest walk length.
        key: Identity of a state.
        state_limit: Stop exploring after this many states.
    """
    if max_len <= 0:
        return
    radius = max_len // 2
    start_key = key(start)
    ids = {start_key: 0}
    states = [start]
    distance = [0]
    adjacency: List[List[Tuple[Step, int]]] = []
    pending: List[List[Tuple[Step, Hashable, State]]] = []

    frontier = [0]
    truncated = False
    while frontier:
        next_frontier = []
        for v in frontier:
            moves = [(step, key(nxt), nxt) for step, nxt in successors(states[v])]
            pending.append(moves)
            if distance[v] >= radius:
                continue
            for step, nxt_key, nxt in moves:
                if nxt_key not in ids:
                    if state_limit is not None and len(states) >= state_limit:
                        truncated = True
                        continue
                    ids[nxt_key] = len(states)
                    states.append(nxt)
                    distance.append(distance[v] + 1)
                    next_frontier.append(ids[nxt_key])
        frontier = next_frontier
    if truncated:
        logger.warning(
            f"Closed path search truncated at {len(states)} states",
            extra={"graph_operation": "closed_walk_truncated"}
        )

    for v in range(len(states)):
        adjacency.append([(step, ids[k]) for step, k, _ in pending[v] if k in ids])

    logger.debug(
        f"Closed path search explored {len(states)} states within radius {radius}",
        extra={"graph_operation": "closed_walk_explored"}
    )

    def walk(v: int, depth: int, length: int, steps: List[Step]) -> Iterator[Tuple[Step, ...]]:
        if depth == length:
            if v == 0:
                yield tuple(steps)
            return
        remaining = length - depth - 1
        for step, u in adjacency[v]:
            if distance[u] <= remaining:
                steps.append(step)
                yield from walk(u, depth + 1, length, steps)
                steps.pop()

    for length in range(1, max_len + 1):
        yield from walk(0, 0, length, [])
