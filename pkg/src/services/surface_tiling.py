"""
Rhombile tilings of RP^2 and the Klein bottle.

A planar tiling of the 2n-gon with boundary labels e_1..e_n is glued along
its boundary into a closed surface. The result is kept as an abstract quad
complex: faces with four named corners, and a gluing that pairs face sides.
Side s of a face runs from corner s to corner s+1. A glue is twisted when
the two sides run the same way along the shared edge (corner s meets corner
r); an untwisted glue sends corner s to r+1.

Flips act on degree-3 vertices whose three faces carry the pairs
{a,b}, {a,c}, {b,c}; this includes hexagons that straddle the identified
boundary and have no planar counterpart.
"""

import logging
from collections import defaultdict, deque
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, Hashable, Iterable, List, Optional, Sequence, Tuple

from ..core.models import (
    FlipNotApplicableError,
    GluingError,
    InvalidInputError,
    PathReplayError,
    SearchKind,
    SurfaceKind,
)
from .flip_graph import FlipPath, enumerate_flip_graph, iter_closed_walks
from .gn3_words import Gn3Word, Triple, free_reduce
from .mn_index import FWord, certify_nontrivial
from .phi_map import search_nontrivial_closed_planar_path
from .tiling_core import PlanarTiling, indicator, toggle, validate
from .zonogon_geometry import LatticePoint

logger = logging.getLogger(__name__)

Corner = LatticePoint
Slot = Tuple[int, int]
Flag = Tuple[int, int, int]

EXPECTED_EULER = {SurfaceKind.RP2: 1, SurfaceKind.KLEIN: 0}


@dataclass(frozen=True)
class BoundaryLabeling:
    """Labels e_1..e_n of the boundary directions; a permutation of 1..n."""

    labels: Tuple[int, ...]

    def __post_init__(self):
        labels = tuple(int(x) for x in self.labels)
        object.__setattr__(self, 'labels', labels)
        if sorted(labels) != list(range(1, len(labels) + 1)):
            raise InvalidInputError(f"labeling must list 1..{len(labels)} once each, got {list(labels)}")

    @classmethod
    def identity(cls, n: int) -> "BoundaryLabeling":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def parse(cls, text: str) -> "BoundaryLabeling":
        try:
            return cls(tuple(int(part) for part in text.split(",")))
        except ValueError:
            raise InvalidInputError(f"malformed labeling {text!r}") from None

    @property
    def n(self) -> int:
        return len(self.labels)

    def label(self, direction: int) -> int:
        return self.labels[direction - 1]

    def letter(self, directions: Iterable[int]) -> Triple:
        return tuple(sorted(self.label(d) for d in directions))


@dataclass(frozen=True)
class SurfaceFace:
    """Quadrilateral with sides 0/2 along directions[0] and sides 1/3 along directions[1]."""

    directions: Tuple[int, int]
    corners: Tuple[Corner, Corner, Corner, Corner]

    def side_direction(self, side: int) -> int:
        return self.directions[side % 2]


@dataclass(frozen=True, order=True)
class Glue:
    a: Slot
    b: Slot
    twisted: bool

    @classmethod
    def of(cls, a: Slot, b: Slot, twisted: bool) -> "Glue":
        return cls(min(a, b), max(a, b), bool(twisted))


@dataclass(frozen=True)
class SurfaceTiling:
    kind: SurfaceKind
    n: int
    labeling: BoundaryLabeling
    faces: Tuple[SurfaceFace, ...]
    gluing: Tuple[Glue, ...]

    def __post_init__(self):
        object.__setattr__(self, 'gluing', tuple(sorted(self.gluing)))

    @cached_property
    def partners(self) -> Dict[Slot, Tuple[Slot, bool]]:
        table: Dict[Slot, Tuple[Slot, bool]] = {}
        for glue in self.gluing:
            table[glue.a] = (glue.b, glue.twisted)
            table[glue.b] = (glue.a, glue.twisted)
        return table

    @cached_property
    def corner_classes(self) -> Dict[Slot, Slot]:
        """Representative corner (face, corner) of the vertex each corner lies on."""
        parent = {(f, c): (f, c) for f in range(len(self.faces)) for c in range(4)}

        def find(x: Slot) -> Slot:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for glue in self.gluing:
            (f, s), (g, r) = glue.a, glue.b
            if glue.twisted:
                pairs = (((f, s), (g, r)), ((f, (s + 1) % 4), (g, (r + 1) % 4)))
            else:
                pairs = (((f, s), (g, (r + 1) % 4)), ((f, (s + 1) % 4), (g, r)))
            for x, y in pairs:
                rx, ry = find(x), find(y)
                if rx != ry:
                    parent[max(rx, ry)] = min(rx, ry)
        return {slot: find(slot) for slot in parent}

    def vertices(self) -> Dict[Slot, List[Slot]]:
        groups: Dict[Slot, List[Slot]] = defaultdict(list)
        for slot, root in sorted(self.corner_classes.items()):
            groups[root].append(slot)
        return dict(groups)


def complement(p: Corner) -> Corner:
    return tuple(1 - c for c in p)


def _canon(p: Corner) -> Corner:
    return min(p, complement(p))


def _seam_class(n: int) -> Tuple[Corner, ...]:
    """The four corners of the zonogon that the Klein gluing sends to one vertex."""
    zero = (0,) * n
    e_n = toggle(zero, n)
    return (zero, e_n, complement(e_n), complement(zero))


def _klein_canon(p: Corner) -> Corner:
    if p in _seam_class(len(p)):
        return (0,) * len(p)
    return _canon(p)


def _name(kind: SurfaceKind, p: Corner) -> Corner:
    return _canon(p) if kind == SurfaceKind.RP2 else _klein_canon(p)


def _boundary_image(kind: SurfaceKind, n: int, pair: int, p: Corner) -> Corner:
    """Where the identification of boundary pair `pair` sends the lattice point p."""
    image = complement(p)
    if kind == SurfaceKind.KLEIN and pair == n:
        image = toggle(image, n)
    return image


def _side_keys(face: SurfaceFace) -> List[Tuple[Corner, int]]:
    """Edges as (lower endpoint, direction), side by side."""
    i, j = face.directions
    b = face.corners[0]
    return [(b, i), (toggle(b, i), j), (toggle(b, j), i), (b, j)]


def _rename(s: SurfaceTiling, name) -> SurfaceTiling:
    faces = tuple(SurfaceFace(face.directions, tuple(name(f, c) for c in range(4))) for f, face in enumerate(s.faces))
    return SurfaceTiling(s.kind, s.n, s.labeling, faces, s.gluing)


def glue(t: PlanarTiling, e: BoundaryLabeling, kind: SurfaceKind) -> SurfaceTiling:
    """
    Identify boundary edge m of the 2n-gon with edge n+m.

    RP^2 uses the antipodal map on every pair. The Klein bottle uses it on
    pairs 1..n-1 and the reflected map (antipodal followed by toggling e_n)
    on pair n. Interior edges shared by two rhombi are glued untwisted.

    Corners are named by lattice points up to the antipodal map. On the
    Klein bottle the four corners 0, e_n, 1-e_n and 1 meet in one vertex,
    which is named 0.

    Raises:
        GluingError: if t is not a tiling of the whole zonogon or e has the wrong size.
    """
    kind = SurfaceKind(kind)
    n = t.n
    if e.n != n:
        raise GluingError(f"labeling has {e.n} labels for n={n}")
    if n < 2 or not validate(t):
        raise GluingError("only valid zonogon tilings can be glued")

    faces = []
    owners: Dict[Tuple[Corner, int], List[Slot]] = defaultdict(list)
    for f, r in enumerate(t.rhombi):
        face = SurfaceFace(r.pair, r.corners())
        faces.append(face)
        for side, key in enumerate(_side_keys(face)):
            owners[key].append((f, side))

    gluing = []
    boundary = {}
    for key, slots in owners.items():
        if len(slots) == 2:
            gluing.append(Glue.of(slots[0], slots[1], False))
        elif len(slots) == 1:
            boundary[key] = slots[0]
        else:
            raise GluingError(f"edge {key} is shared by {len(slots)} rhombi")

    for m in range(1, n + 1):
        lower = (indicator(n, range(1, m)), m)
        upper = (complement(indicator(n, range(1, m + 1))), m)
        if lower not in boundary or upper not in boundary:
            raise GluingError(f"boundary edge pair {m} is missing")
        (f, s), (g, r) = boundary.pop(lower), boundary.pop(upper)
        image = _boundary_image(kind, n, m, faces[f].corners[s])
        gluing.append(Glue.of((f, s), (g, r), image == faces[g].corners[r]))
    if boundary:
        raise GluingError(f"{len(boundary)} free edges left after gluing the boundary")

    raw = SurfaceTiling(kind, n, e, tuple(faces), tuple(gluing))
    surface = _rename(raw, lambda f, c: _name(kind, raw.faces[f].corners[c]))

    logger.debug(
        f"Glued {kind.value} surface: {len(faces)} faces, {len(surface.vertices())} vertices",
        extra={"surface_operation": "glue"}
    )
    return surface


def euler_characteristic(s: SurfaceTiling) -> int:
    glued = {slot for glue in s.gluing for slot in (glue.a, glue.b)}
    free = 4 * len(s.faces) - len(glued)
    return len(s.vertices()) - (len(s.gluing) + free) + len(s.faces)


def validate_surface(s: SurfaceTiling) -> List[str]:
    """Every violated surface invariant, as messages; empty when s is valid."""
    problems = []
    if s.labeling.n != s.n:
        problems.append(f"labeling has {s.labeling.n} labels for n={s.n}")
    pairs = []
    for f, face in enumerate(s.faces):
        a, b = face.directions
        if a == b or not (1 <= a <= s.n and 1 <= b <= s.n):
            problems.append(f"face {f} has invalid directions {face.directions}")
        pairs.append(frozenset(face.directions))
    if len(set(pairs)) != len(pairs):
        problems.append("some direction pair labels more than one face")

    seen = set()
    for glue in s.gluing:
        for f, side in (glue.a, glue.b):
            if not (0 <= f < len(s.faces) and 0 <= side < 4):
                problems.append(f"glue {glue} refers to a missing side")
                return problems
        if glue.a == glue.b:
            problems.append(f"side {glue.a} is glued to itself")
        for slot in (glue.a, glue.b):
            if slot in seen:
                problems.append(f"side {slot} is glued more than once")
            seen.add(slot)
        da = s.faces[glue.a[0]].side_direction(glue.a[1])
        db = s.faces[glue.b[0]].side_direction(glue.b[1])
        if da != db:
            problems.append(f"glue {glue} joins directions {da} and {db}")
    free = [(f, side) for f in range(len(s.faces)) for side in range(4) if (f, side) not in seen]
    if free:
        problems.append(f"free sides {free}")

    chi = euler_characteristic(s)
    if chi != EXPECTED_EULER[s.kind]:
        problems.append(f"Euler characteristic {chi}, expected {EXPECTED_EULER[s.kind]} for {s.kind.value}")
    return problems


@dataclass(frozen=True)
class OuterSide:
    """A hexagon boundary side: its slot, whether the hexagon walk runs along it, its direction and start corner."""

    slot: Slot
    agree: bool
    direction: int
    start: Corner


@dataclass(frozen=True)
class SurfaceHexagon:
    center: Corner
    triple: Triple
    labels: Triple
    flags: Tuple[Flag, Flag, Flag]
    outer: Tuple[OuterSide, ...]
    new_center: Corner


def _seam_lift(s: SurfaceTiling, face_id: int, corner: int) -> Optional[Corner]:
    """Which of 0 or e_n the seam vertex is at this corner, read off a neighbour along a side not parallel to e_n."""
    face = s.faces[face_id]
    zero = (0,) * s.n
    for side, neighbour in ((corner, (corner + 1) % 4), ((corner - 1) % 4, (corner - 1) % 4)):
        d = face.side_direction(side)
        if d == s.n:
            continue
        for lift in (zero, toggle(zero, s.n)):
            if _klein_canon(toggle(lift, d)) == face.corners[neighbour]:
                return lift
        return None
    return None


def _new_center(s: SurfaceTiling, flags: Sequence[Flag], triple: Triple) -> Optional[Corner]:
    f, c, _ = flags[0]
    center = s.faces[f].corners[c]
    if s.kind == SurfaceKind.RP2:
        return _canon(toggle(center, *triple))
    if center != (0,) * s.n:
        return _klein_canon(toggle(center, *triple))
    candidates = set()
    for face_id, corner, _ in flags:
        lift = _seam_lift(s, face_id, corner)
        if lift is None:
            return None
        candidates.add(_klein_canon(toggle(lift, *triple)))
    # the three faces must agree on the side of the seam the hexagon lies on
    return candidates.pop() if len(candidates) == 1 else None


def _hexagon_at(s: SurfaceTiling, f: int, c: int) -> Optional[SurfaceHexagon]:
    """Walk around the vertex at corner c of face f; None unless it is a flippable hexagon."""
    state: Flag = (f, c, 1)
    flags = []
    outer = []
    for _ in range(3):
        face_id, corner, sigma = state
        face = s.faces[face_id]
        flags.append(state)
        for k in (1, 2):
            side = (corner + k) % 4 if sigma == 1 else (corner - k - 1) % 4
            outer.append(OuterSide(
                (face_id, side), sigma == 1, face.side_direction(side), face.corners[(corner + k * sigma) % 4]
            ))
        exit_side, agree_exit = ((corner + 3) % 4, True) if sigma == 1 else (corner, False)
        partner = s.partners.get((face_id, exit_side))
        if partner is None:
            return None
        (g, r), twisted = partner
        partner_agree = agree_exit if twisted else not agree_exit
        state = (g, (r + 1) % 4, -1) if partner_agree else (g, r, 1)

    if state != flags[0] or len({flag[0] for flag in flags}) != 3:
        return None
    corners = {(flag[0], flag[1]) for flag in flags}
    root = s.corner_classes[(f, c)]
    if corners != {slot for slot, rep in s.corner_classes.items() if rep == root}:
        return None
    pairs = {frozenset(s.faces[flag[0]].directions) for flag in flags}
    directions = frozenset().union(*pairs)
    if len(pairs) != 3 or len(directions) != 3:
        return None
    triple = tuple(sorted(directions))
    new_center = _new_center(s, flags, triple)
    if new_center is None:
        return None
    return SurfaceHexagon(
        center=s.faces[f].corners[c],
        triple=triple,
        labels=s.labeling.letter(triple),
        flags=tuple(flags),
        outer=tuple(outer),
        new_center=new_center,
    )


def find_surface_flips(s: SurfaceTiling) -> List[SurfaceHexagon]:
    """All flippable hexagons, sorted by (triple, center)."""
    hexagons = []
    for root, corners in s.vertices().items():
        if len(corners) != 3:
            continue
        hexagon = _hexagon_at(s, *root)
        if hexagon is not None:
            hexagons.append(hexagon)
    return sorted(hexagons, key=lambda h: (h.triple, h.center, h.flags))


def _new_slot(face_ids: Sequence[int], position: int) -> Slot:
    if position % 2:
        return face_ids[(position - 1) // 2], 1
    return face_ids[((position - 2) // 2) % 3], 2


def apply_surface_flip(s: SurfaceTiling, h: SurfaceHexagon) -> SurfaceTiling:
    """
    Retile the hexagon around h.center with the other three rhombi.

    The new faces keep the face indices of the old ones; every other face
    and glue is unchanged.

    Raises:
        FlipNotApplicableError: if h is not a flippable hexagon of s.
    """
    f, c, _ = h.flags[0]
    if f >= len(s.faces) or _hexagon_at(s, f, c) != h:
        raise FlipNotApplicableError(f"no flippable hexagon {h.triple} at {h.center}")

    center = h.new_center
    face_ids = [flag[0] for flag in h.flags]
    names = [side.start for side in h.outer]
    directions = [side.direction for side in h.outer]

    faces = list(s.faces)
    for t in range(3):
        faces[face_ids[t]] = SurfaceFace(
            (directions[(2 * t + 2) % 6], directions[2 * t + 1]),
            (center, names[2 * t + 1], names[(2 * t + 2) % 6], names[(2 * t + 3) % 6]),
        )

    affected = set(face_ids)
    gluing = [g for g in s.gluing if g.a[0] not in affected and g.b[0] not in affected]
    gluing.extend(Glue.of((face_ids[t], 3), (face_ids[(t + 1) % 3], 0), False) for t in range(3))

    position_of = {side.slot: p for p, side in enumerate(h.outer)}
    done = set()
    for p, side in enumerate(h.outer):
        if p in done:
            continue
        done.add(p)
        partner, twisted = s.partners[side.slot]
        twisted ^= not side.agree
        if partner in position_of:
            q = position_of[partner]
            done.add(q)
            twisted ^= not h.outer[q].agree
            gluing.append(Glue.of(_new_slot(face_ids, p), _new_slot(face_ids, q), twisted))
        elif partner[0] in affected:
            raise GluingError(f"hexagon side {side.slot} is glued into its own interior")
        else:
            gluing.append(Glue.of(_new_slot(face_ids, p), partner, twisted))

    logger.debug(
        f"Surface flip {h.labels} at {h.center}",
        extra={"surface_operation": "flip"}
    )
    return SurfaceTiling(s.kind, s.n, s.labeling, tuple(faces), tuple(gluing))


def canonical_form(s: SurfaceTiling) -> Tuple:
    """
    Isomorphism-invariant encoding of s.

    From every starting flag (face, corner, orientation) the complex is read
    breadth first; each face contributes its four sides in reading order as
    (label, neighbour id, position in the neighbour's reading, same
    direction). The least reading wins.
    """
    best = None
    for f in range(len(s.faces)):
        for c in range(4):
            for sigma in (1, -1):
                code = _reading(s, (f, c, sigma))
                if best is None or code < best:
                    best = code
    return (s.kind.value, s.n, len(s.faces), best)


def _reading(s: SurfaceTiling, root: Flag) -> Tuple:
    frames = {root[0]: (root[1], root[2])}
    ids = {root[0]: 0}
    queue = deque([root[0]])
    rows = []
    while queue:
        f = queue.popleft()
        c, sigma = frames[f]
        face = s.faces[f]
        row = []
        for k in range(4):
            side, agree = ((c + k) % 4, True) if sigma == 1 else ((c - k - 1) % 4, False)
            label = s.labeling.label(face.side_direction(side))
            partner = s.partners.get((f, side))
            if partner is None:
                row.append((label, -1, 0, 0))
                continue
            (g, r), twisted = partner
            partner_agree = agree if twisted else not agree
            if g not in ids:
                ids[g] = len(ids)
                frames[g] = (r, 1) if partner_agree else ((r + 1) % 4, -1)
                queue.append(g)
            c2, s2 = frames[g]
            k2 = (r - c2) % 4 if s2 == 1 else (c2 - r - 1) % 4
            row.append((label, ids[g], k2, int(partner_agree == (s2 == 1))))
        rows.append(tuple(row))
    return tuple(rows)


def key(s: SurfaceTiling) -> Hashable:
    """
    Identity of a surface tiling along a search: each face as its direction
    pair and the names of its corners.

    Unlike canonical_form this tells apart isomorphic tilings that sit
    differently on the surface.
    """
    return tuple(sorted((tuple(sorted(face.directions)), tuple(sorted(face.corners))) for face in s.faces))


def permute_faces(s: SurfaceTiling, order: Sequence[int]) -> SurfaceTiling:
    """The same complex with face order[k] stored at index k."""
    if sorted(order) != list(range(len(s.faces))):
        raise InvalidInputError("order must be a permutation of the face indices")
    position = {old: new for new, old in enumerate(order)}
    faces = tuple(s.faces[old] for old in order)
    gluing = tuple(
        Glue.of((position[g.a[0]], g.a[1]), (position[g.b[0]], g.b[1]), g.twisted) for g in s.gluing
    )
    return SurfaceTiling(s.kind, s.n, s.labeling, faces, gluing)


@dataclass(frozen=True, order=True)
class SurfaceStep:
    """A surface flip named by its center vertex and direction triple."""

    center: Corner
    triple: Triple


@dataclass(frozen=True)
class SurfacePath:
    start: SurfaceTiling
    steps: Tuple[SurfaceStep, ...] = ()

    def __len__(self) -> int:
        return len(self.steps)

    def replay(self) -> List[SurfaceTiling]:
        """
        Raises:
            PathReplayError: if a step names no flippable hexagon.
        """
        tilings = [self.start]
        for position, step in enumerate(self.steps):
            current = tilings[-1]
            match = next(
                (h for h in find_surface_flips(current) if h.center == step.center and h.triple == step.triple),
                None,
            )
            if match is None:
                raise PathReplayError(f"step {position}: no hexagon {step.triple} at {step.center}")
            tilings.append(apply_surface_flip(current, match))
        return tilings

    def is_closed(self) -> bool:
        return key(self.replay()[-1]) == key(self.start)


def phi_S(path: SurfacePath) -> Gn3Word:
    """One generator per surface flip: the sorted labels of its directions."""
    path.replay()
    labeling = path.start.labeling
    return Gn3Word.from_triples(path.start.n, [labeling.letter(step.triple) for step in path.steps])


def surface_successors(s: SurfaceTiling) -> List[Tuple[SurfaceStep, SurfaceTiling]]:
    return [(SurfaceStep(h.center, h.triple), apply_surface_flip(s, h)) for h in find_surface_flips(s)]


@dataclass(frozen=True)
class SurfaceSearchResult:
    """A closed path whose word carries an MN certificate."""

    word: Gn3Word
    certificate: Tuple[Triple, FWord]
    path: Optional[SurfacePath] = None
    planar_path: Optional[FlipPath] = None


def search_nontrivial_closed_path(
    n: int,
    kind,
    max_len: int,
    labeling: Optional[BoundaryLabeling] = None,
    state_limit: Optional[int] = None,
) -> Optional[SurfaceSearchResult]:
    """
    First closed flip path, over the glued planar tilings in enumeration
    order and then by increasing length, whose word has an MN certificate.

    Kind DISC searches the unglued zonogon instead.

    Returns:
        The path, its word and certificate, or None if nothing is found
        within max_len.
    """
    kind = SearchKind(kind)
    if max_len <= 0 or n < 3:
        return None
    if kind == SearchKind.DISC:
        found = search_nontrivial_closed_planar_path(n, max_len, state_limit)
        if found is None:
            return None
        planar_path, word, certificate = found
        return SurfaceSearchResult(word, certificate, planar_path=planar_path)

    labeling = labeling or BoundaryLabeling.identity(n)
    surface_kind = SurfaceKind(kind.value)
    graph = enumerate_flip_graph(n)
    seen = set()
    for t in graph.vertices:
        start = glue(t, labeling, surface_kind)
        start_key = key(start)
        if start_key in seen:
            continue
        seen.add(start_key)
        for steps in iter_closed_walks(start, surface_successors, max_len, key=key, state_limit=state_limit):
            word = Gn3Word.from_triples(n, [labeling.letter(step.triple) for step in steps])
            if not free_reduce(word).letters:
                continue
            certificate = certify_nontrivial(word)
            if certificate is not None:
                logger.info(
                    f"Nontrivial closed path on {surface_kind.value}: {word.text()}",
                    extra={"surface_operation": "search_found", "starts": len(seen)}
                )
                return SurfaceSearchResult(word, certificate, path=SurfacePath(start, tuple(steps)))

    logger.info(
        f"No nontrivial closed path on {surface_kind.value} for n={n} within length {max_len}",
        extra={"surface_operation": "search_exhausted", "starts": len(seen)}
    )
    return None
