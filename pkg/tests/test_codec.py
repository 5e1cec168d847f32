"""
Unit tests for JSON documents.
"""

import json

import pytest

from src.core.models import FlipPathDocument, InvalidInputError, RewriteKind, SurfaceKind, TilingDocument
from src.services.codec import (
    direction_set_from_document,
    direction_set_to_document,
    dump_document,
    graph_to_document,
    load_document,
    move_to_document,
    parse_json,
    path_from_document,
    path_to_document,
    surface_from_document,
    surface_to_document,
    tiling_from_document,
    tiling_to_document,
    validate_document,
    vars_from_document,
)
from src.services.flip_graph import FlipPath, enumerate_flip_graph
from src.services.gn3_words import RewriteMove
from src.services.surface_tiling import BoundaryLabeling, glue
from src.services.tiling_core import base_tiling, find_flips
from src.services.zonogon_geometry import default_direction_set


class TestDocuments:
    """Test conversions of library values."""

    def test_tiling_document(self):
        doc = tiling_to_document(base_tiling(3))
        assert doc.model_dump()["rhombi"][1] == {"base": [0, 1, 0], "pair": [1, 3]}
        assert tiling_from_document(doc) == base_tiling(3)

    def test_direction_set_document(self):
        d = default_direction_set(3)
        doc = direction_set_to_document(d)
        assert doc.vectors[0] == [2, 1, 1, 1]
        assert direction_set_from_document(doc) == d

    def test_path_document(self):
        t = base_tiling(3)
        p = FlipPath(t, tuple(find_flips(t)))
        doc = path_to_document(p)
        assert doc.flips[0].direction.value == "up"
        assert path_from_document(doc) == p

    def test_surface_document(self):
        s = glue(base_tiling(4), BoundaryLabeling.identity(4), SurfaceKind.KLEIN)
        assert surface_from_document(surface_to_document(s)) == s

    def test_graph_document(self):
        doc = graph_to_document(enumerate_flip_graph(3))
        assert len(doc.vertices) == 2
        assert [(e.source, e.target) for e in doc.edges] == [(0, 1)]

    def test_move_document(self):
        move = RewriteMove(RewriteKind.OCTAGON, 0, 4, ((2, 3, 4), (1, 3, 4)))
        assert move_to_document(move).replacement == ["234", "134"]


class TestValidation:
    """Test rejected input."""

    def test_bad_pair(self):
        data = {"n": 3, "rhombi": [{"base": [0, 0, 0], "pair": [1]}]}
        with pytest.raises(InvalidInputError, match="invalid TilingDocument"):
            validate_document(data, TilingDocument)

    def test_bad_lattice_point(self):
        doc = TilingDocument(n=3, rhombi=[{"base": [0, 2, 0], "pair": [1, 3]}])
        with pytest.raises(InvalidInputError, match="must be 0 or 1"):
            tiling_from_document(doc)

    def test_flip_in_wrong_dimension(self):
        data = path_to_document(FlipPath(base_tiling(3))).model_dump(mode="json")
        data["flips"].append({"base": [0, 0], "axes": [1, 2, 3], "direction": "up"})
        doc = validate_document(data, FlipPathDocument)
        with pytest.raises(InvalidInputError, match="does not live in dimension 3"):
            path_from_document(doc)

    def test_malformed_json(self):
        with pytest.raises(InvalidInputError, match="malformed JSON"):
            parse_json("{")

    def test_missing_file(self, tmp_path):
        with pytest.raises(InvalidInputError, match="cannot read"):
            load_document(tmp_path / "missing.json", TilingDocument)

    def test_load_from_file(self, tmp_path):
        path = tmp_path / "tiling.json"
        path.write_text(dump_document(tiling_to_document(base_tiling(4))))
        assert tiling_from_document(load_document(path, TilingDocument)) == base_tiling(4)

    def test_vars_must_be_object(self):
        with pytest.raises(InvalidInputError, match="JSON object"):
            vars_from_document([1, 2])


class TestDump:
    """Test stable output."""

    def test_sorted_keys(self):
        assert dump_document({"b": 1, "a": 2}) == '{\n  "a": 2,\n  "b": 1\n}'

    def test_models_dump_as_json(self):
        text = dump_document(tiling_to_document(base_tiling(2)))
        assert json.loads(text) == {"n": 2, "rhombi": [{"base": [0, 0], "pair": [1, 2]}]}


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
