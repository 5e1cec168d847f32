"""
Unit tests for exact zonogon geometry.
"""

from fractions import Fraction

import pytest

from src.core.models import InvalidInputError
from src.services.zonogon_geometry import (
    DirectionSet,
    Rational2,
    check_lattice_point,
    default_direction_set,
    hexagon_polygon,
    point_in_convex_polygon,
    polygon_area,
    project,
    zonogon_area,
    zonogon_boundary,
)


class TestRational2:
    """Test exact plane points."""

    def test_arithmetic_stays_exact(self):
        """Sums and scalings keep Fractions."""
        p = Rational2(1, 2) + Rational2(Fraction(1, 3), 0)
        assert p == Rational2(Fraction(4, 3), 2)
        assert p * Fraction(1, 2) == Rational2(Fraction(2, 3), 1)
        assert Rational2(2, 1).cross(Rational2(-1, 2)) == 5

    def test_key_round_trip(self):
        """Point keys read back to the same point."""
        p = Rational2(Fraction(1, 2), 3)
        assert p.key() == "1/2,3"
        assert Rational2.from_key("1/2,3") == p

    def test_malformed_key(self):
        """Keys need exactly two rational parts."""
        with pytest.raises(InvalidInputError, match="malformed point key"):
            Rational2.from_key("1,2,3")
        with pytest.raises(InvalidInputError):
            Rational2.from_key("a,1")


class TestDirectionSet:
    """Test direction set validation and the default tables."""

    def test_default_tables_are_valid(self):
        """Every default table satisfies the angle ordering."""
        for n in range(1, 10):
            d = default_direction_set(n)
            assert d.n == n

    def test_version_one_values(self):
        """The n = 3 and n = 4 tables are fixed."""
        assert default_direction_set(3).vectors == (Rational2(2, 1), Rational2(-1, 2), Rational2(-2, 1))
        assert default_direction_set(4).vector(2) == Rational2(1, 2)

    def test_unknown_version(self):
        """Only version 1 exists."""
        with pytest.raises(InvalidInputError, match="unknown direction table version"):
            default_direction_set(3, version=2)

    def test_rejects_nonpositive_y(self):
        """Directions point into the upper half plane."""
        with pytest.raises(InvalidInputError, match="positive y-component"):
            DirectionSet.from_integers([(1, 0)])

    def test_rejects_wrong_angle_order(self):
        """Angles must increase strictly."""
        with pytest.raises(InvalidInputError, match="strictly increasing angle"):
            DirectionSet.from_integers([(-1, 1), (1, 1)])


class TestZonogon:
    """Test projection, outline and areas."""

    @pytest.fixture
    def d3(self):
        return default_direction_set(3)

    def test_project(self, d3):
        """A lattice point projects to the sum of its directions."""
        assert project(d3, (1, 1, 0)) == Rational2(1, 3)
        assert project(d3, (0, 0, 0)) == Rational2(0, 0)

    def test_project_dimension_mismatch(self, d3):
        with pytest.raises(InvalidInputError, match="dimension mismatch"):
            project(d3, (1, 0))

    def test_boundary(self, d3):
        """The hexagon outline runs counterclockwise from the origin."""
        assert zonogon_boundary(d3) == [
            Rational2(0, 0), Rational2(2, 1), Rational2(1, 3),
            Rational2(-1, 4), Rational2(-3, 3), Rational2(-2, 1),
        ]

    def test_area_matches_shoelace(self, d3):
        """The pair-sum formula agrees with the polygon area."""
        assert zonogon_area(d3) == 12
        assert polygon_area(zonogon_boundary(d3)) == 12
        for n in (2, 4, 5, 6):
            d = default_direction_set(n)
            assert zonogon_area(d) == polygon_area(zonogon_boundary(d))

    def test_hexagon_of_the_whole_cube(self, d3):
        """For n = 3 the projected cube is the zonogon itself."""
        assert hexagon_polygon(d3, (0, 0, 0), (1, 2, 3)) == zonogon_boundary(d3)

    def test_point_in_polygon_is_strict(self, d3):
        outline = zonogon_boundary(d3)
        assert point_in_convex_polygon(outline, Rational2(0, 2))
        assert not point_in_convex_polygon(outline, Rational2(0, 0))
        assert not point_in_convex_polygon(outline, Rational2(5, 5))


class TestLatticePoints:
    """Test lattice point validation."""

    def test_valid_point(self):
        assert check_lattice_point([0, 1, 1], 3) == (0, 1, 1)

    def test_entries_must_be_bits(self):
        with pytest.raises(InvalidInputError, match="must be 0 or 1"):
            check_lattice_point([0, 2], 2)

    def test_length_must_match(self):
        with pytest.raises(InvalidInputError, match="dimension mismatch"):
            check_lattice_point([0, 1], 3)


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
