"""
MN index invariants of G_n^3 words.

For an occurrence c of a_ijk in a word and an index l outside {i,j,k},

    i_c(l) = (N_jkl + N_ijl, N_ikl + N_ijl) mod 2

where N_t counts the letters a_t strictly before c. The occurrences of a_ijk
carry these assignments as letters of the free product F_n^3 of copies of
Z_2; the reduced product is an invariant of the group element.
"""

import logging
from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from typing import Optional, Sequence, Tuple

from ..core.models import InvalidInputError
from .gn3_words import Gn3Word, Triple

logger = logging.getLogger(__name__)

IndexPair = Tuple[int, int]


@dataclass(frozen=True, order=True)
class IndexLetter:
    """An assignment l -> (a, b) in Z_2 x Z_2 for every l outside the fixed triple."""

    assignment: Tuple[Tuple[int, IndexPair], ...]

    def __post_init__(self):
        for l, (a, b) in self.assignment:
            if a not in (0, 1) or b not in (0, 1):
                raise InvalidInputError(f"index values must be 0 or 1, got ({a},{b}) at l={l}")

    def value(self, l: int) -> IndexPair:
        for index, pair in self.assignment:
            if index == l:
                return pair
        raise InvalidInputError(f"index {l} is not in the domain of this letter")

    def text(self) -> str:
        parts = "".join(f"({a},{b})_{l}" for l, (a, b) in self.assignment)
        if len(self.assignment) == 1:
            return parts
        return f"({parts})"


@dataclass(frozen=True)
class FWord:
    """A word in the free product of Z_2's; reduced() cancels adjacent equal letters."""

    letters: Tuple[IndexLetter, ...] = ()

    def reduced(self) -> "FWord":
        stack = []
        for letter in self.letters:
            if stack and stack[-1] == letter:
                stack.pop()
            else:
                stack.append(letter)
        return FWord(tuple(stack))

    @property
    def is_identity(self) -> bool:
        return not self.reduced().letters

    def text(self) -> str:
        return " ".join(letter.text() for letter in self.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self):
        return self.text() or "1"


def _check_triple(triple: Sequence[int], n: int) -> Triple:
    if len(triple) != 3 or len(set(triple)) != 3:
        raise InvalidInputError(f"a triple needs three distinct indices, got {list(triple)}")
    i, j, k = sorted(int(x) for x in triple)
    if i < 1 or k > n:
        raise InvalidInputError(f"triple {list(triple)} out of range for n={n}")
    return i, j, k


def _key(*indices: int) -> Triple:
    return tuple(sorted(indices))


def _pair(counts: Counter, triple: Triple, l: int) -> IndexPair:
    i, j, k = triple
    n_ijl = counts[_key(i, j, l)]
    return (counts[_key(j, k, l)] + n_ijl) % 2, (counts[_key(i, k, l)] + n_ijl) % 2


def occurrence_index(w: Gn3Word, pos: int, l: int) -> IndexPair:
    """
    i_c(l) for the letter c at position pos, counting over the strict prefix.

    Raises:
        InvalidInputError: if pos is out of range or l belongs to the letter's triple.
    """
    if not 0 <= pos < len(w):
        raise InvalidInputError(f"position {pos} out of range for a word of length {len(w)}")
    triple = w.letters[pos].triple
    if l in triple or not 1 <= l <= w.n:
        raise InvalidInputError(f"index {l} must lie in 1..{w.n} outside {triple}")
    counts = Counter(w.triples()[:pos])
    return _pair(counts, triple, l)


def w_invariant(w: Gn3Word, triple: Sequence[int]) -> FWord:
    """The reduced product of the index letters at the occurrences of a_triple."""
    target = _check_triple(triple, w.n)
    others = [l for l in range(1, w.n + 1) if l not in target]
    counts: Counter = Counter()
    letters = []
    for letter in w.triples():
        if letter == target:
            letters.append(IndexLetter(tuple((l, _pair(counts, target, l)) for l in others)))
        counts[letter] += 1
    return FWord(tuple(letters)).reduced()


def certify_nontrivial(w: Gn3Word) -> Optional[Tuple[Triple, FWord]]:
    """
    First triple, in lexicographic order, whose invariant is not the identity.

    A result proves w != 1 in G_n^3; None is inconclusive.
    """
    for triple in combinations(range(1, w.n + 1), 3):
        invariant = w_invariant(w, triple)
        if invariant.letters:
            logger.debug(
                f"Word {w.text()} certified nontrivial by {triple}: {invariant.text()}",
                extra={"word_operation": "certificate"}
            )
            return triple, invariant
    return None
