"""
Unit tests for planar tilings and flips.
"""

import random
from itertools import combinations

import pytest

from src.core.models import FlipDirection, FlipNotApplicableError, InvalidInputError
from src.services.tiling_core import (
    CubeFlip,
    PlanarTiling,
    Rhombus,
    apply_flip,
    base_tiling,
    find_flips,
    rhombi_at,
    tiling_from_reduced_word,
    validate,
)
from src.services.zonogon_geometry import DirectionSet


class TestRhombus:
    """Test rhombus construction."""

    def test_of_sorts_pair(self):
        r = Rhombus.of([0, 0, 1], [2, 1])
        assert r.pair == (1, 2)
        assert r.base == (0, 0, 1)

    def test_base_must_be_zero_on_pair(self):
        with pytest.raises(InvalidInputError, match="must be 0 on axes"):
            Rhombus.of([1, 0, 0], [1, 2])

    def test_pair_needs_distinct_axes(self):
        with pytest.raises(InvalidInputError, match="two distinct axes"):
            Rhombus.of([0, 0, 0], [2, 2])


class TestBaseTiling:
    """Test the canonical start tiling."""

    def test_n3_rhombi(self):
        """s1 s2 s1 sweeps out three rhombi around the vertex e_2."""
        t = base_tiling(3)
        assert t.rhombi == (
            Rhombus((1, 2), (0, 0, 0)),
            Rhombus((1, 3), (0, 1, 0)),
            Rhombus((2, 3), (0, 0, 0)),
        )

    @pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
    def test_base_tiling_is_valid(self, n):
        t = base_tiling(n)
        assert len(t) == n * (n - 1) // 2
        assert validate(t)

    @pytest.mark.parametrize("n", [3, 4, 5])
    def test_vertex_count(self, n):
        """A tiling has 1 + C(n,2) + n vertices."""
        assert len(base_tiling(n).vertices()) == 1 + n * (n - 1) // 2 + n

    def test_n_too_small(self):
        with pytest.raises(InvalidInputError, match="n >= 2"):
            base_tiling(1)

    def test_rhombi_at(self):
        t = base_tiling(3)
        assert len(rhombi_at(t, (0, 1, 0))) == 3
        assert rhombi_at(t, (0, 0, 0)) == [Rhombus((1, 2), (0, 0, 0)), Rhombus((2, 3), (0, 0, 0))]


class TestReducedWords:
    """Test tilings built from wiring diagrams."""

    def test_other_word_gives_flipped_tiling(self):
        """s2 s1 s2 is the other tiling of the hexagon."""
        t = tiling_from_reduced_word(3, [2, 1, 2])
        assert validate(t)
        assert t != base_tiling(3)

    def test_not_reduced(self):
        with pytest.raises(InvalidInputError, match="not reduced"):
            tiling_from_reduced_word(3, [1, 1, 2])

    def test_wrong_permutation(self):
        with pytest.raises(InvalidInputError, match="longest permutation"):
            tiling_from_reduced_word(3, [1, 2])

    def test_letter_out_of_range(self):
        with pytest.raises(InvalidInputError, match="out of range"):
            tiling_from_reduced_word(3, [3])


class TestValidate:
    """Test exact tiling validation."""

    def test_missing_rhombus(self):
        t = base_tiling(3)
        assert not validate(PlanarTiling(3, t.rhombi[:2]))

    def test_overlapping_rhombi(self):
        """Replacing a rhombus by a shifted copy breaks the tiling."""
        t = base_tiling(3)
        broken = t.replace([Rhombus((1, 3), (0, 1, 0))], [Rhombus((1, 3), (0, 0, 0))])
        assert not validate(broken)

    def test_wrong_direction_count(self):
        assert not validate(base_tiling(3), DirectionSet.from_integers([(1, 1), (-1, 1)]))


class TestFlips:
    """Test finding and applying flips."""

    def test_single_flip_in_hexagon(self):
        flips = find_flips(base_tiling(3))
        assert flips == [CubeFlip((1, 2, 3), (0, 0, 0), FlipDirection.UP)]

    def test_flip_gives_other_hexagon_tiling(self):
        t = base_tiling(3)
        flipped = apply_flip(t, find_flips(t)[0])
        assert flipped == tiling_from_reduced_word(3, [2, 1, 2])
        assert find_flips(flipped) == [CubeFlip((1, 2, 3), (0, 0, 0), FlipDirection.DOWN)]

    def test_flip_is_involution(self):
        for n in (3, 4, 5):
            t = base_tiling(n)
            for f in find_flips(t):
                assert apply_flip(apply_flip(t, f), f.inverse()) == t

    def test_flips_preserve_validity(self):
        t = base_tiling(5)
        for f in find_flips(t):
            assert validate(apply_flip(t, f))

    def test_centers(self):
        f = CubeFlip((1, 2, 3), (0, 0, 0), FlipDirection.UP)
        assert f.center() == (0, 1, 0)
        assert f.new_center() == (1, 0, 1)
        assert len(set(f.hexagon_boundary())) == 6

    def test_inapplicable_flip(self):
        with pytest.raises(FlipNotApplicableError, match="flip not applicable"):
            apply_flip(base_tiling(3), CubeFlip((1, 2, 3), (0, 0, 0), FlipDirection.DOWN))

    def test_flip_datum_validation(self):
        with pytest.raises(InvalidInputError, match="three distinct axes"):
            CubeFlip.of([0, 0, 0], [1, 1, 2], "up")
        with pytest.raises(ValueError):
            CubeFlip.of([0, 0, 0], [1, 2, 3], "sideways")


def random_tiling(rng, n, steps):
    t = base_tiling(n)
    for _ in range(steps):
        t = apply_flip(t, rng.choice(find_flips(t)))
    return t


class TestFlipFuzz:
    """Seeded random tilings up to n=6."""

    @pytest.fixture(scope="class")
    def instances(self):
        rng = random.Random(20240611)
        cases = []
        for _ in range(1000):
            n = rng.choice([3, 4, 5, 6])
            t = random_tiling(rng, n, rng.randrange(0, 25))
            cases.append((t, rng.choice(find_flips(t))))
        return cases

    def test_flip_is_involution(self, instances):
        for t, f in instances:
            flipped = apply_flip(t, f)
            assert f.inverse() in find_flips(flipped)
            assert apply_flip(flipped, f.inverse()) == t

    def test_flips_keep_tilings_valid(self, instances):
        for t, f in instances[::10]:
            assert validate(apply_flip(t, f))

    def test_disjoint_flips_commute(self, instances):
        """Flips on hexagons with no rhombus in common can be done in either order."""
        checked = 0
        for t, _ in instances:
            for f, g in combinations(find_flips(t), 2):
                if set(f.removed_faces()) & set(g.removed_faces()):
                    continue
                assert apply_flip(apply_flip(t, f), g) == apply_flip(apply_flip(t, g), f)
                checked += 1
        assert checked > 0


class TestOctagon:
    """The eight flips inside a tesseract."""

    def test_octagon_cycle_returns_to_start(self):
        """Going round without backtracking reads each triple twice, in the same order."""
        start = base_tiling(4)
        t = start
        previous = None
        triples = []
        seen = []
        for _ in range(8):
            seen.append(t)
            f = next(g for g in find_flips(t) if previous is None or g != previous.inverse())
            triples.append(f.axes)
            previous = f
            t = apply_flip(t, f)

        assert t == start
        assert len(set(seen)) == 8
        assert triples[:4] == triples[4:]
        assert sorted(triples[:4]) == list(combinations(range(1, 5), 3))
        assert triples[:4] in (sorted(triples[:4]), sorted(triples[:4], reverse=True))


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
