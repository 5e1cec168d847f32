"""
Words in the group G_n^3 and a bounded rewriting search.

G_n^3 has one involutive generator a_ijk per 3-subset of {1..n}, far
commutation a_ijk a_stu = a_stu a_ijk when the triples share at most one
index, and for every 4-set i<j<k<l the octagon relation
a_ijk a_ijl a_ikl a_jkl = a_jkl a_ikl a_ijl a_ijk.

Equality is decided only up to a budget: bounded_equal searches
free-reduced words from both ends and returns the rewrite moves it used.
"""

import logging
import random
from dataclasses import dataclass
from itertools import combinations
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from ..core.models import EqualityVerdict, InvalidInputError, RewriteKind

logger = logging.getLogger(__name__)

Triple = Tuple[int, int, int]
Letters = Tuple[Triple, ...]

DEFAULT_MAX_STATES = 200000
DEFAULT_EXTRA_LENGTH = 4
RELATOR_LENGTH = 8


@dataclass(frozen=True, order=True)
class Generator:
    """The involution a_ijk, stored with i < j < k."""

    triple: Triple

    def __post_init__(self):
        i, j, k = self.triple
        if not 1 <= i < j < k:
            raise InvalidInputError(f"generator indices must be distinct positive and sorted, got {self.triple}")

    @classmethod
    def of(cls, *indices: int) -> "Generator":
        if len(indices) != 3 or len(set(indices)) != 3:
            raise InvalidInputError(f"a generator needs three distinct indices, got {list(indices)}")
        return cls(tuple(sorted(int(i) for i in indices)))

    def text(self) -> str:
        if self.triple[2] < 10:
            return "".join(str(i) for i in self.triple)
        return ",".join(str(i) for i in self.triple)

    def __str__(self):
        return f"a{self.text()}"


@dataclass(frozen=True)
class Gn3Word:
    """A word a_{t1} a_{t2} ... in G_n^3."""

    n: int
    letters: Tuple[Generator, ...] = ()

    def __post_init__(self):
        if self.n < 1:
            raise InvalidInputError(f"n must be positive, got {self.n}")
        for g in self.letters:
            if g.triple[2] > self.n:
                raise InvalidInputError(f"generator {g} out of range for n={self.n}")

    @classmethod
    def from_triples(cls, n: int, triples: Iterable[Sequence[int]]) -> "Gn3Word":
        return cls(n, tuple(Generator.of(*t) for t in triples))

    @classmethod
    def parse(cls, text: str, n: int) -> "Gn3Word":
        """
        Read "124.123.124.123"; triples with an index of 10 or more are
        written with commas, e.g. "1,2,10.3,4,5". The empty string is the identity.
        """
        text = text.strip()
        if not text:
            return cls(n)
        triples = []
        for token in text.split("."):
            token = token.strip()
            try:
                if "," in token:
                    indices = [int(part) for part in token.split(",")]
                else:
                    indices = [int(ch) for ch in token]
            except ValueError:
                raise InvalidInputError(f"malformed word token {token!r}") from None
            if len(indices) != 3:
                raise InvalidInputError(f"word token {token!r} does not name three indices")
            triples.append(indices)
        return cls.from_triples(n, triples)

    def triples(self) -> Letters:
        return tuple(g.triple for g in self.letters)

    def text(self) -> str:
        return ".".join(g.text() for g in self.letters)

    def inverse(self) -> "Gn3Word":
        """Generators are involutions, so the inverse is the reversed word."""
        return Gn3Word(self.n, tuple(reversed(self.letters)))

    def __add__(self, other: "Gn3Word") -> "Gn3Word":
        if self.n != other.n:
            raise InvalidInputError(f"cannot concatenate words for n={self.n} and n={other.n}")
        return Gn3Word(self.n, self.letters + other.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self):
        return " ".join(str(g) for g in self.letters) or "1"


def _word(n: int, letters: Letters) -> Gn3Word:
    return Gn3Word(n, tuple(Generator(t) for t in letters))


@dataclass(frozen=True)
class RewriteMove:
    """Replace `length` letters at `position` by `replacement`."""

    kind: RewriteKind
    position: int
    length: int
    replacement: Letters = ()

    def __str__(self):
        replaced = ".".join("".join(map(str, t)) for t in self.replacement)
        return f"{self.kind.value}@{self.position}/{self.length}->{replaced or '1'}"


def far_commutes(g1: Generator, g2: Generator) -> bool:
    """True iff the triples share fewer than two indices."""
    return len(set(g1.triple) & set(g2.triple)) < 2


def _far(a: Triple, b: Triple) -> bool:
    return len(set(a) & set(b)) < 2


def octagon_block(indices: Sequence[int], n: Optional[int] = None) -> Tuple[Gn3Word, Gn3Word]:
    """Both sides of the octagon relation for a 4-set: (a_ijk a_ijl a_ikl a_jkl, its reverse)."""
    if len(indices) != 4 or len(set(indices)) != 4:
        raise InvalidInputError(f"octagon_block needs four distinct indices, got {list(indices)}")
    i, j, k, l = sorted(int(x) for x in indices)
    n = n or l
    left = Gn3Word.from_triples(n, [(i, j, k), (i, j, l), (i, k, l), (j, k, l)])
    return left, left.inverse()


def _block(quad: Sequence[int]) -> Letters:
    i, j, k, l = quad
    return ((i, j, k), (i, j, l), (i, k, l), (j, k, l))


def _is_relator(letters: Letters) -> bool:
    """True iff letters is a cyclic rotation of B.B or of reverse(B).reverse(B) for an octagon block B."""
    if len(letters) != RELATOR_LENGTH:
        return False
    indices = sorted(set().union(*letters))
    if len(indices) != 4:
        return False
    block = _block(indices)
    for cycle in (block, tuple(reversed(block))):
        for offset in range(4):
            if all(letters[p] == cycle[(offset + p) % 4] for p in range(RELATOR_LENGTH)):
                return True
    return False


def free_reduce_with_moves(letters: Letters) -> Tuple[Letters, List[RewriteMove]]:
    """
    Stack reduction of adjacent equal letters.

    Returns the reduced letters and the CANCEL_PAIR moves performed, with
    positions valid in the word as it is at each step.
    """
    stack: List[Triple] = []
    moves = []
    for letter in letters:
        if stack and stack[-1] == letter:
            moves.append(RewriteMove(RewriteKind.CANCEL_PAIR, len(stack) - 1, 2))
            stack.pop()
        else:
            stack.append(letter)
    return tuple(stack), moves


def free_reduce(w: Gn3Word) -> Gn3Word:
    """Delete adjacent equal letters until none remain."""
    reduced, _ = free_reduce_with_moves(w.triples())
    return _word(w.n, reduced)


def apply_move(w: Gn3Word, move: RewriteMove) -> Gn3Word:
    """
    Apply one relation to w.

    Raises:
        InvalidInputError: if the move is not an instance of a defining relation at its position.
    """
    return _word(w.n, _apply(w.triples(), move, w.n))


def _apply(letters: Letters, move: RewriteMove, n: int) -> Letters:
    p, m = move.position, move.length
    if p < 0 or p + m > len(letters):
        raise InvalidInputError(f"move {move} out of range for a word of length {len(letters)}")
    replaced = letters[p:p + m]
    r = tuple(move.replacement)
    if any(t[2] > n for t in r):
        raise InvalidInputError(f"move {move} uses indices beyond n={n}")

    if move.kind == RewriteKind.CANCEL_PAIR:
        ok = m == 2 and not r and replaced[0] == replaced[1]
    elif move.kind == RewriteKind.INSERT_PAIR:
        ok = m == 0 and len(r) == 2 and r[0] == r[1]
    elif move.kind == RewriteKind.FAR_COMMUTE:
        ok = m == 2 and r == (replaced[1], replaced[0]) and _far(*replaced)
    else:
        ok = _is_relator(replaced + tuple(reversed(r)))
    if not ok:
        raise InvalidInputError(f"move {move} is not applicable at position {p}")
    return letters[:p] + r + letters[p + m:]


def replay_witness(w: Gn3Word, moves: Iterable[RewriteMove]) -> Gn3Word:
    """Apply a sequence of moves, checking each one."""
    letters = w.triples()
    for move in moves:
        letters = _apply(letters, move, w.n)
    return _word(w.n, letters)


def _invert(letters: Letters, moves: Sequence[RewriteMove]) -> List[RewriteMove]:
    """Moves undoing `moves`, which start from `letters`."""
    inverse = []
    for move in moves:
        p, m = move.position, move.length
        replaced = letters[p:p + m]
        kind = {
            RewriteKind.CANCEL_PAIR: RewriteKind.INSERT_PAIR,
            RewriteKind.INSERT_PAIR: RewriteKind.CANCEL_PAIR,
        }.get(move.kind, move.kind)
        inverse.append(RewriteMove(kind, p, len(move.replacement), replaced))
        letters = letters[:p] + tuple(move.replacement) + letters[p + m:]
    return list(reversed(inverse))


def _relator_cycles(letter: Triple, n: int) -> List[Letters]:
    """Each relator through letter, unrolled to eight letters starting at it."""
    cycles = []
    for l in range(1, n + 1):
        if l in letter:
            continue
        block = _block(sorted(letter + (l,)))
        for cycle in (block, tuple(reversed(block))):
            offset = cycle.index(letter)
            cycles.append(tuple(cycle[(offset + p) % 4] for p in range(RELATOR_LENGTH)))
    return cycles


def _neighbors(letters: Letters, n: int, max_len: int) -> Iterable[Tuple[List[RewriteMove], Letters]]:
    size = len(letters)
    for p in range(size - 1):
        a, b = letters[p], letters[p + 1]
        if _far(a, b):
            reduced, cancels = free_reduce_with_moves(letters[:p] + (b, a) + letters[p + 2:])
            yield [RewriteMove(RewriteKind.FAR_COMMUTE, p, 2, (b, a))] + cancels, reduced

    for p in range(size):
        for cycle in _relator_cycles(letters[p], n):
            match = 1
            while match < RELATOR_LENGTH and p + match < size and letters[p + match] == cycle[match]:
                match += 1
            for m in range(1, match + 1):
                if size + RELATOR_LENGTH - 2 * m > max_len:
                    continue
                replacement = tuple(reversed(cycle[m:]))
                reduced, cancels = free_reduce_with_moves(letters[:p] + replacement + letters[p + m:])
                yield [RewriteMove(RewriteKind.OCTAGON, p, m, replacement)] + cancels, reduced


def neighbors(w: Gn3Word, max_len: Optional[int] = None) -> List[Tuple[Tuple[RewriteMove, ...], Gn3Word]]:
    """
    Free-reduced words one relation away from free_reduce(w).

    Moves are far-commute swaps and octagon substitutions: a factor u of a
    cyclic rotation u.v of an octagon relator (or its reverse) is replaced
    by v^-1. Cancellations that follow are part of the recorded moves.
    """
    start, _ = free_reduce_with_moves(w.triples())
    bound = max_len if max_len is not None else len(start) + DEFAULT_EXTRA_LENGTH
    return [(tuple(moves), _word(w.n, u)) for moves, u in _neighbors(start, w.n, bound)]


@dataclass
class WordBudget:
    """Limits for bounded_equal; max_length defaults to len(w1) + len(w2) + extra_length."""

    max_length: Optional[int] = None
    max_states: int = DEFAULT_MAX_STATES
    extra_length: int = DEFAULT_EXTRA_LENGTH


@dataclass(frozen=True)
class EqualityResult:
    """
    Outcome of bounded_equal.

    witness rewrites w1 into w2 when verdict is EQUAL. When separated_by is
    set, the MN invariant of that triple differs and the words are distinct.
    """

    verdict: EqualityVerdict
    witness: Tuple[RewriteMove, ...] = ()
    states: int = 0
    separated_by: Optional[Triple] = None

    @property
    def equal(self) -> bool:
        return self.verdict == EqualityVerdict.EQUAL


Parents = Dict[Letters, Optional[Tuple[Letters, List[RewriteMove]]]]


def _chain(parents: Parents, state: Letters) -> List[Tuple[Letters, List[RewriteMove]]]:
    steps = []
    while parents[state] is not None:
        previous, moves = parents[state]
        steps.append((previous, moves))
        state = previous
    return list(reversed(steps))


def _grow(front: List[Letters], side: Parents, other: Parents, n: int, max_len: int, max_states: int):
    """Expand one BFS level; returns (next level, meeting word, budget exhausted)."""
    next_front = []
    for state in front:
        for moves, u in _neighbors(state, n, max_len):
            if u in side:
                continue
            side[u] = (state, moves)
            if u in other:
                return next_front, u, False
            if len(side) + len(other) >= max_states:
                return next_front, None, True
            next_front.append(u)
    return next_front, None, False


def _search(start: Letters, goal: Letters, n: int, max_len: int, max_states: int):
    forward: Parents = {start: None}
    backward: Parents = {goal: None}
    if start == goal:
        return start, forward, backward
    front, back = [start], [goal]
    # moves are not symmetric (relator deletion has no inverse move), so both
    # sides run until each is exhausted
    while front or back:
        if front and (not back or len(front) <= len(back)):
            front, meet, exhausted = _grow(front, forward, backward, n, max_len, max_states)
        else:
            back, meet, exhausted = _grow(back, backward, forward, n, max_len, max_states)
        if meet is not None:
            return meet, forward, backward
        if exhausted:
            break
    return None, forward, backward


def _separating_triple(w1: Gn3Word, w2: Gn3Word) -> Optional[Triple]:
    from .mn_index import w_invariant

    for triple in combinations(range(1, w1.n + 1), 3):
        if w_invariant(w1, triple) != w_invariant(w2, triple):
            return triple
    return None


def bounded_equal(w1: Gn3Word, w2: Gn3Word, budget: Optional[WordBudget] = None) -> EqualityResult:
    """
    Search for a proof that w1 = w2 in G_n^3.

    Breadth-first search over free-reduced words, grown from both ends.
    Before searching, the MN invariants of the two words are compared;
    a difference proves inequality and the search is skipped.

    Args:
        w1: First word.
        w2: Second word over the same n.
        budget: Length and state limits.

    Returns:
        EQUAL with a witness turning w1 into w2, or UNKNOWN. UNKNOWN without
        separated_by is not a proof of inequality.
    """
    if w1.n != w2.n:
        raise InvalidInputError(f"words live in different groups: n={w1.n} and n={w2.n}")
    budget = budget or WordBudget()
    if w1.letters == w2.letters:
        return EqualityResult(EqualityVerdict.EQUAL, (), 1)

    separated = _separating_triple(w1, w2)
    if separated is not None:
        logger.debug(
            f"Words {w1.text()} and {w2.text()} separated by invariant {separated}",
            extra={"word_operation": "separated"}
        )
        return EqualityResult(EqualityVerdict.UNKNOWN, (), 0, separated)

    max_len = budget.max_length if budget.max_length is not None else len(w1) + len(w2) + budget.extra_length
    letters1, letters2 = w1.triples(), w2.triples()
    start, start_moves = free_reduce_with_moves(letters1)
    goal, goal_moves = free_reduce_with_moves(letters2)
    meet, forward, backward = _search(start, goal, w1.n, max_len, budget.max_states)
    states = len(forward) + len(backward)

    if meet is None:
        logger.info(
            f"bounded_equal gave up after {states} states (max length {max_len})",
            extra={"word_operation": "budget_exhausted", "states": states}
        )
        return EqualityResult(EqualityVerdict.UNKNOWN, (), states)

    witness = list(start_moves)
    for _, moves in _chain(forward, meet):
        witness.extend(moves)
    for previous, moves in reversed(_chain(backward, meet)):
        witness.extend(_invert(previous, moves))
    witness.extend(_invert(letters2, goal_moves))

    logger.debug(
        f"bounded_equal proved {w1.text() or '1'} = {w2.text() or '1'} with {len(witness)} moves",
        extra={"word_operation": "equal", "states": states}
    )
    return EqualityResult(EqualityVerdict.EQUAL, tuple(witness), states)


def all_triples(n: int) -> List[Triple]:
    return list(combinations(range(1, n + 1), 3))


def random_word(n: int, length: int, rng: random.Random, reduced: bool = False) -> Gn3Word:
    """Uniform random letters; with reduced=True no two adjacent letters are equal."""
    triples = all_triples(n)
    if not triples:
        raise InvalidInputError(f"G_n^3 has no generators for n={n}")
    letters: List[Triple] = []
    while len(letters) < length:
        letter = rng.choice(triples)
        if reduced and letters and letters[-1] == letter:
            continue
        letters.append(letter)
    return _word(n, tuple(letters))


def random_relation_application(w: Gn3Word, rng: random.Random) -> Tuple[RewriteMove, Gn3Word]:
    """
    Apply one randomly chosen defining relation somewhere in w.

    Octagon moves may replace any factor of a relator rotation found at the
    chosen position, including the empty factor (relator insertion).
    """
    n = w.n
    triples = all_triples(n)
    if not triples:
        raise InvalidInputError(f"G_n^3 has no generators for n={n}")
    letters = w.triples()
    size = len(letters)
    cancel = [p for p in range(size - 1) if letters[p] == letters[p + 1]]
    commute = [p for p in range(size - 1) if _far(letters[p], letters[p + 1])]

    kinds = [RewriteKind.INSERT_PAIR]
    if cancel:
        kinds.append(RewriteKind.CANCEL_PAIR)
    if commute:
        kinds.append(RewriteKind.FAR_COMMUTE)
    if n >= 4:
        kinds.append(RewriteKind.OCTAGON)
    kind = rng.choice(kinds)

    if kind == RewriteKind.INSERT_PAIR:
        letter = rng.choice(triples)
        move = RewriteMove(kind, rng.randint(0, size), 0, (letter, letter))
    elif kind == RewriteKind.CANCEL_PAIR:
        move = RewriteMove(kind, rng.choice(cancel), 2)
    elif kind == RewriteKind.FAR_COMMUTE:
        p = rng.choice(commute)
        move = RewriteMove(kind, p, 2, (letters[p + 1], letters[p]))
    else:
        p = rng.randint(0, size)
        block = _block(sorted(rng.sample(range(1, n + 1), 4)))
        if rng.random() < 0.5:
            block = tuple(reversed(block))
        offset = rng.randrange(4)
        cycle = tuple(block[(offset + q) % 4] for q in range(RELATOR_LENGTH))
        match = 0
        while match < RELATOR_LENGTH and p + match < size and letters[p + match] == cycle[match]:
            match += 1
        m = rng.randint(0, match)
        move = RewriteMove(kind, p, m, tuple(reversed(cycle[m:])))
    return move, apply_move(w, move)


def mn_length_lower_bound(w: Gn3Word) -> int:
    """
    Sum over all triples of the reduced length of the MN invariant.

    Each letter a_ijk contributes only to the invariant of its own triple,
    so the sum bounds the length of every word equal to w.
    """
    from .mn_index import w_invariant

    return sum(len(w_invariant(w, triple)) for triple in all_triples(w.n))
