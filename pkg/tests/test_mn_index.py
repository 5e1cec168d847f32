"""
Unit tests for the MN index invariant.
"""

import pytest

from src.core.models import InvalidInputError
from src.services.gn3_words import Gn3Word
from src.services.mn_index import FWord, IndexLetter, certify_nontrivial, occurrence_index, w_invariant


def word(text, n=4):
    return Gn3Word.parse(text, n)


class TestOccurrenceIndex:
    """Test the index of a single occurrence."""

    def test_counts_strict_prefix(self):
        """The a124 before the a123 flips both coordinates."""
        assert occurrence_index(word("124.123"), 1, 4) == (1, 1)
        assert occurrence_index(word("124.123"), 0, 3) == (0, 0)

    def test_index_inside_triple(self):
        with pytest.raises(InvalidInputError, match="outside"):
            occurrence_index(word("123"), 0, 1)

    def test_position_out_of_range(self):
        with pytest.raises(InvalidInputError, match="position 5 out of range"):
            occurrence_index(word("123"), 5, 4)


class TestInvariant:
    """Test w_triple(word)."""

    def test_known_value(self):
        assert w_invariant(word("124.123.124.123"), (1, 2, 3)).text() == "(1,1)_4 (0,0)_4"

    def test_triple_order_does_not_matter(self):
        w = word("124.123.124.123")
        assert w_invariant(w, (3, 1, 2)) == w_invariant(w, (1, 2, 3))

    def test_relator_has_trivial_invariants(self):
        relator = word("123.124.134.234.123.124.134.234")
        for triple in [(1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4)]:
            assert w_invariant(relator, triple).is_identity

    def test_multi_index_letters(self):
        """With more than one outside index a letter prints as a bracketed product."""
        assert w_invariant(word("123", 5), (1, 2, 3)).text() == "((0,0)_4(0,0)_5)"

    def test_bad_triples(self):
        with pytest.raises(InvalidInputError, match="three distinct"):
            w_invariant(word("123"), (1, 1, 2))
        with pytest.raises(InvalidInputError, match="out of range"):
            w_invariant(word("123"), (1, 2, 5))


class TestFreeProduct:
    """Test letters and words of the free product."""

    def test_reduction(self):
        a = IndexLetter(((4, (0, 1)),))
        b = IndexLetter(((4, (1, 0)),))
        assert FWord((a, b, b, a)).is_identity
        assert FWord((a, b)).reduced().letters == (a, b)
        assert str(FWord()) == "1"

    def test_letter_validation(self):
        with pytest.raises(InvalidInputError, match="must be 0 or 1"):
            IndexLetter(((4, (2, 0)),))
        with pytest.raises(InvalidInputError, match="not in the domain"):
            IndexLetter(((4, (0, 0)),)).value(5)


class TestCertificate:
    """Test the nontriviality certificate."""

    def test_single_generator(self):
        triple, invariant = certify_nontrivial(word("123"))
        assert triple == (1, 2, 3)
        assert invariant.text() == "(0,0)_4"

    def test_trivial_word_has_none(self):
        assert certify_nontrivial(word("123.124.134.234.123.124.134.234")) is None
        assert certify_nontrivial(word("")) is None

    def test_first_triple_in_order(self):
        """a124 alone leaves w_123 trivial, so the certificate names (1,2,4)."""
        triple, _ = certify_nontrivial(word("124"))
        assert triple == (1, 2, 4)


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
