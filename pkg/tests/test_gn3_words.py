"""
Unit tests for G_n^3 words and the bounded rewriting search.
"""

import random

import pytest

from src.core.models import EqualityVerdict, InvalidInputError, RewriteKind
from src.services.gn3_words import (
    Generator,
    Gn3Word,
    RewriteMove,
    WordBudget,
    all_triples,
    apply_move,
    bounded_equal,
    far_commutes,
    free_reduce,
    mn_length_lower_bound,
    neighbors,
    octagon_block,
    random_relation_application,
    random_word,
    replay_witness,
)
from src.services.mn_index import w_invariant


def word(text, n=4):
    return Gn3Word.parse(text, n)


class TestWordText:
    """Test parsing and printing."""

    def test_round_trip(self):
        assert word("124.123.124.123").text() == "124.123.124.123"

    def test_large_indices_use_commas(self):
        w = Gn3Word.parse("1,2,10.345", 10)
        assert w.triples() == ((1, 2, 10), (3, 4, 5))
        assert w.text() == "1,2,10.345"

    def test_empty_word(self):
        assert len(word("")) == 0
        assert str(word("")) == "1"

    def test_generator_sorting(self):
        g = Generator.of(3, 1, 2)
        assert g.triple == (1, 2, 3)
        assert str(g) == "a123"

    @pytest.mark.parametrize("text", ["12", "12a", "1234", "1,2"])
    def test_malformed_tokens(self, text):
        with pytest.raises(InvalidInputError):
            word(text)

    def test_index_out_of_range(self):
        with pytest.raises(InvalidInputError, match="out of range"):
            word("125")

    def test_repeated_index(self):
        with pytest.raises(InvalidInputError, match="three distinct indices"):
            word("112")

    def test_inverse_reverses(self):
        assert word("123.124").inverse().text() == "124.123"

    def test_concatenation_needs_same_n(self):
        with pytest.raises(InvalidInputError, match="cannot concatenate"):
            word("123", 3) + word("123", 4)


class TestRelations:
    """Test the defining relations and single moves."""

    def test_far_commutes(self):
        assert far_commutes(Generator.of(1, 2, 3), Generator.of(1, 4, 5))
        assert not far_commutes(Generator.of(1, 2, 3), Generator.of(1, 2, 4))

    def test_octagon_block(self):
        left, right = octagon_block([4, 2, 3, 1])
        assert left.text() == "123.124.134.234"
        assert right.text() == "234.134.124.123"

    def test_free_reduce(self):
        assert free_reduce(word("123.124.124.123")).text() == ""
        assert free_reduce(word("123.124.123")).text() == "123.124.123"

    def test_apply_cancel(self):
        move = RewriteMove(RewriteKind.CANCEL_PAIR, 1, 2)
        assert apply_move(word("123.124.124"), move).text() == "123"

    def test_apply_rejects_wrong_cancel(self):
        with pytest.raises(InvalidInputError, match="not applicable"):
            apply_move(word("123.124"), RewriteMove(RewriteKind.CANCEL_PAIR, 0, 2))

    def test_apply_rejects_near_commute(self):
        move = RewriteMove(RewriteKind.FAR_COMMUTE, 0, 2, ((1, 2, 4), (1, 2, 3)))
        with pytest.raises(InvalidInputError):
            apply_move(word("123.124"), move)

    def test_octagon_substitution(self):
        """A whole side of the octagon relation is replaced by the other side."""
        move = RewriteMove(RewriteKind.OCTAGON, 0, 4, ((2, 3, 4), (1, 3, 4), (1, 2, 4), (1, 2, 3)))
        assert apply_move(word("123.124.134.234"), move).text() == "234.134.124.123"

    def test_relator_deletion(self):
        move = RewriteMove(RewriteKind.OCTAGON, 0, 8, ())
        assert apply_move(word("123.124.134.234.123.124.134.234"), move).text() == ""

    def test_move_out_of_range(self):
        with pytest.raises(InvalidInputError, match="out of range"):
            apply_move(word("123"), RewriteMove(RewriteKind.CANCEL_PAIR, 0, 2))

    def test_neighbors_are_reduced(self):
        for moves, u in neighbors(word("123.124.134.234")):
            assert free_reduce(u) == u
            assert replay_witness(word("123.124.134.234"), moves) == u


class TestBoundedEqual:
    """Test the bidirectional search."""

    def test_identical_words(self):
        result = bounded_equal(word("123.124"), word("123.124"))
        assert result.equal
        assert result.witness == ()
        assert result.states == 1

    def test_octagon_sides_are_equal(self):
        left, right = octagon_block([1, 2, 3, 4])
        result = bounded_equal(left, right)
        assert result.verdict == EqualityVerdict.EQUAL
        assert replay_witness(left, result.witness) == right

    def test_relator_is_trivial(self):
        relator = word("123.124.134.234.123.124.134.234")
        result = bounded_equal(relator, word(""))
        assert result.equal
        assert replay_witness(relator, result.witness) == word("")

    def test_reversed_relator_is_trivial(self):
        relator = word("234.134.124.123.234.134.124.123")
        result = bounded_equal(relator, word(""))
        assert result.equal

    def test_cancellation_witness(self):
        result = bounded_equal(word("123.123"), word(""))
        assert result.equal
        assert [m.kind for m in result.witness] == [RewriteKind.CANCEL_PAIR]

    def test_insertion_witness(self):
        """Equality toward a longer word inserts letters."""
        result = bounded_equal(word(""), word("124.124"))
        assert result.equal
        assert replay_witness(word(""), result.witness) == word("124.124")

    def test_far_commutation(self):
        w1, w2 = word("123.145", 5), word("145.123", 5)
        result = bounded_equal(w1, w2)
        assert result.equal
        assert RewriteKind.FAR_COMMUTE in [m.kind for m in result.witness]
        assert replay_witness(w1, result.witness) == w2

    def test_separated_by_invariant(self):
        """Words with different MN invariants are not searched."""
        result = bounded_equal(word("123.124"), word("124.123"))
        assert result.verdict == EqualityVerdict.UNKNOWN
        assert result.separated_by == (1, 2, 3)
        assert result.states == 0

    def test_length_bound_blocks_the_proof(self):
        """Below the word length no octagon substitution fits, so the search gives up."""
        left, right = octagon_block([1, 2, 3, 4])
        result = bounded_equal(left, right, WordBudget(max_length=2))
        assert result.verdict == EqualityVerdict.UNKNOWN
        assert result.separated_by is None
        assert result.states == 2

    def test_state_budget(self):
        relator = word("123.124.134.234.123.124.134.234")
        result = bounded_equal(relator + relator, word(""), WordBudget(max_states=1))
        assert not result.equal

    def test_different_groups(self):
        with pytest.raises(InvalidInputError, match="different groups"):
            bounded_equal(word("123", 3), word("123", 4))


class TestRandomWords:
    """Seeded fuzz tests for relation applications."""

    def test_random_word_reduced(self):
        rng = random.Random(5)
        w = random_word(5, 30, rng, reduced=True)
        assert len(w) == 30
        assert free_reduce(w) == w

    def test_no_generators(self):
        with pytest.raises(InvalidInputError, match="no generators"):
            random_word(2, 3, random.Random(0))

    def test_relations_preserve_invariants(self):
        """Every relation application replays and keeps every MN invariant."""
        rng = random.Random(2024)
        for _ in range(1000):
            n = rng.choice([4, 5, 6])
            w = random_word(n, rng.randint(0, 8), rng)
            move, u = random_relation_application(w, rng)
            assert replay_witness(w, [move]) == u
            for triple in all_triples(n):
                assert w_invariant(w, triple) == w_invariant(u, triple)
            assert mn_length_lower_bound(u) == mn_length_lower_bound(w)

    def test_single_relation_is_found(self):
        """bounded_equal proves a word equal to itself after one relation."""
        rng = random.Random(7)
        for _ in range(1000):
            n = rng.choice([4, 5, 6])
            w = random_word(n, rng.randint(1, 6), rng, reduced=True)
            _, u = random_relation_application(w, rng)
            result = bounded_equal(w, u, WordBudget(max_length=len(w) + len(u) + 8))
            assert result.equal
            assert replay_witness(w, result.witness) == u


class TestLowerBound:
    """Test the MN length bound."""

    def test_trivial_word(self):
        assert mn_length_lower_bound(word("123.124.134.234.123.124.134.234")) == 0

    def test_bound_is_at_most_length(self):
        w = word("124.123.124.123")
        assert 0 < mn_length_lower_bound(w) <= len(free_reduce(w))


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
