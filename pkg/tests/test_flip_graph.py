"""
Unit tests for the flip graph, its 2-cells and closed walks.
"""

import pytest

from src.core.models import InvalidInputError, PartialResultError, PathReplayError, SearchExhaustedError, TwoCellKind
from src.services.flip_graph import (
    FlipPath,
    enumerate_flip_graph,
    find_path,
    is_connected,
    iter_closed_walks,
    sample_closed_path,
    two_cells_at,
)
from src.services.tiling_core import apply_flip, base_tiling, find_flips, validate


def commutation_classes(n):
    """
    Commutation classes of reduced words of the longest permutation of n
    letters, counted by their lexicographically least words.

    A word is least in its class when no letter could be commuted left past
    a larger one, so each letter appended must exceed every letter in the
    run of commuting letters just before it.
    """
    target = n * (n - 1) // 2

    def extend(perm, word):
        if len(word) == target:
            return 1
        total = 0
        for a in range(1, n):
            if perm[a - 1] > perm[a]:
                continue
            blocked = False
            for x in reversed(word):
                if abs(x - a) < 2:
                    break
                if x > a:
                    blocked = True
                    break
            if blocked:
                continue
            swapped = list(perm)
            swapped[a - 1], swapped[a] = swapped[a], swapped[a - 1]
            total += extend(tuple(swapped), word + [a])
        return total

    return extend(tuple(range(n)), [])


class TestEnumeration:
    """Test breadth-first enumeration."""

    @pytest.mark.parametrize("n,count", [(2, 1), (3, 2), (4, 8), (5, 62), (6, 908)])
    def test_vertex_counts(self, n, count):
        """Counts match the commutation classes of reduced words of the longest permutation."""
        g = enumerate_flip_graph(n)
        assert len(g.vertices) == count
        assert g.complete

    @pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
    def test_counts_agree_with_reduced_words(self, n):
        assert len(enumerate_flip_graph(n).vertices) == commutation_classes(n)

    def test_n6_is_connected(self):
        g = enumerate_flip_graph(6)
        assert len(g.vertices) == 908
        assert is_connected(g)

    def test_n4_is_an_octagon(self):
        g = enumerate_flip_graph(4)
        assert len(g.edges) == 8
        assert all(len(g.adjacency[v]) == 2 for v in g.adjacency)

    def test_vertices_are_valid_tilings(self):
        g = enumerate_flip_graph(4)
        assert g.vertices[0] == base_tiling(4)
        assert all(validate(t) for t in g.vertices)

    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    def test_connected(self, n):
        assert is_connected(enumerate_flip_graph(n))

    def test_jobs_do_not_change_the_result(self):
        """Worker threads merge results in frontier order."""
        single = enumerate_flip_graph(5, jobs=1)
        threaded = enumerate_flip_graph(5, jobs=4)
        assert single.vertices == threaded.vertices
        assert single.edges == threaded.edges

    def test_vertex_limit(self):
        with pytest.raises(PartialResultError, match="vertex limit 10 exceeded") as exc_info:
            enumerate_flip_graph(5, limit=10)
        partial = exc_info.value.partial
        assert len(partial.vertices) == 10
        assert not partial.complete
        with pytest.raises(InvalidInputError, match="complete flip graph"):
            is_connected(partial)

    def test_invalid_arguments(self):
        with pytest.raises(InvalidInputError, match="n >= 2"):
            enumerate_flip_graph(1)
        with pytest.raises(InvalidInputError, match="jobs must be positive"):
            enumerate_flip_graph(3, jobs=0)


class TestPaths:
    """Test shortest paths, replay and sampling."""

    @pytest.fixture
    def g4(self):
        return enumerate_flip_graph(4)

    def test_find_path_to_opposite_vertex(self, g4):
        """Opposite vertices of the octagon are four flips apart."""
        start = g4.vertices[0]
        for target in g4.vertices:
            p = find_path(g4, start, target)
            assert p.end() == target
        assert max(len(find_path(g4, start, t)) for t in g4.vertices) == 4

    def test_unknown_tiling(self, g4):
        with pytest.raises(InvalidInputError, match="not a vertex"):
            find_path(g4, g4.vertices[0], base_tiling(3))

    def test_replay_failure(self):
        t = base_tiling(3)
        f = find_flips(t)[0]
        with pytest.raises(PathReplayError, match="flip 1"):
            FlipPath(t, (f, f)).replay()

    def test_reversed_and_concat(self):
        t = base_tiling(4)
        f = find_flips(t)[0]
        p = FlipPath(t, (f,))
        loop = p.concat(p.reversed())
        assert loop.is_closed()
        assert len(loop) == 2
        with pytest.raises(PathReplayError, match="do not compose"):
            p.concat(p)

    def test_sample_closed_path_is_reproducible(self, g4):
        t0 = g4.vertices[0]
        p1 = sample_closed_path(g4, t0, 8, seed=11)
        p2 = sample_closed_path(g4, t0, 8, seed=11)
        assert p1 == p2
        assert len(p1) == 8
        assert p1.is_closed()

    def test_no_odd_closed_walks(self, g4):
        """Flip graphs are bipartite."""
        with pytest.raises(SearchExhaustedError):
            sample_closed_path(g4, g4.vertices[0], 3, seed=0)

    def test_empty_walk(self, g4):
        assert len(sample_closed_path(g4, g4.vertices[0], 0, seed=0)) == 0


class TestTwoCells:
    """Test squares and octagons."""

    def test_n4_has_one_octagon(self):
        g = enumerate_flip_graph(4)
        t = g.vertices[0]
        cells = two_cells_at(g, t)
        assert [c.kind for c in cells] == [TwoCellKind.OCTAGON]
        octagon = cells[0]
        assert len(octagon.boundary) == 8
        assert octagon.boundary.is_closed()
        assert octagon.support == (1, 2, 3, 4)
        assert len(octagon.edges()) == 8

    def test_n5_squares_commute(self):
        """Every square's two orders land on the same tiling."""
        g = enumerate_flip_graph(5)
        squares = [c for t in g.vertices for c in two_cells_at(g, t) if c.kind == TwoCellKind.SQUARE]
        assert squares
        for cell in squares:
            assert cell.boundary.is_closed()
            f1, f2 = cell.boundary.flips[:2]
            t = cell.boundary.start
            assert apply_flip(apply_flip(t, f1), f2) == apply_flip(apply_flip(t, f2), f1)

    def test_n3_has_no_cells(self):
        g = enumerate_flip_graph(3)
        assert two_cells_at(g, g.vertices[0]) == []


class TestClosedWalks:
    """Test the shared closed-walk enumerator."""

    def test_walks_on_a_cycle(self):
        """On a 4-cycle the shortest closed walks backtrack, then go around."""
        def successors(v):
            return [("+", (v + 1) % 4), ("-", (v - 1) % 4)]

        walks = list(iter_closed_walks(0, successors, 4))
        assert walks[:2] == [("+", "-"), ("-", "+")]
        assert ("+", "+", "+", "+") in walks
        assert all(len(w) % 2 == 0 for w in walks)

    def test_nonpositive_length(self):
        assert list(iter_closed_walks(0, lambda v: [("x", v)], 0)) == []


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
