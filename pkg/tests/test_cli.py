"""
Tests for the rhombiflip command line.
"""

import json

import pytest

from src.cli import main, run
from src.core.models import CommandStatus
from src.services.codec import dump_document, path_to_document, tiling_to_document
from src.services.flip_graph import FlipPath
from src.services.tiling_core import base_tiling, find_flips, tiling_from_reduced_word


def ok(argv):
    result = run(argv)
    assert result.status == CommandStatus.OK, result.diagnostics
    return result.payload


def failed(argv):
    result = run(argv)
    assert result.status == CommandStatus.ERROR
    assert result.exit_code == 1
    return result.diagnostics


@pytest.fixture
def files(tmp_path):
    """Base tiling of the hexagon and the one-flip path from it."""
    t = base_tiling(3)
    tiling = tmp_path / "tiling.json"
    tiling.write_text(dump_document(tiling_to_document(t)))
    path = tmp_path / "path.json"
    path.write_text(dump_document(path_to_document(FlipPath(t, tuple(find_flips(t))))))
    empty = tmp_path / "empty.json"
    empty.write_text(dump_document(path_to_document(FlipPath(t))))
    return {"tiling": str(tiling), "path": str(path), "empty": str(empty), "dir": tmp_path}


class TestEnumerateCommand:
    """Test `enumerate`."""

    def test_hexagon(self):
        assert ok(["enumerate", "--n", "3"]) == {"n": 3, "vertices": 2, "edges": 1, "connected": True}

    def test_cells(self):
        payload = ok(["enumerate", "--n", "4", "--cells"])
        assert payload["squares"] == 0
        assert payload["octagons"] == 1

    def test_out_file(self, tmp_path):
        out = tmp_path / "graph.json"
        payload = ok(["--jobs", "2", "enumerate", "--n", "4", "--out", str(out)])
        assert "graph" not in payload
        assert len(json.loads(out.read_text())["vertices"]) == 8

    def test_vertex_limit(self):
        diagnostics = failed(["enumerate", "--n", "5", "--limit", "10"])
        assert "error_code=LIMIT_EXCEEDED" in diagnostics
        assert any(d.startswith("partial graph: 10 vertices") for d in diagnostics)


class TestFlipCommands:
    """Test `flip`, `path-to-word` and `mutate`."""

    def test_list(self):
        flips = ok(["flip", "--n", "3"])["flips"]
        assert flips == [{"base": [0, 0, 0], "axes": [1, 2, 3], "direction": "up"}]

    def test_apply(self, files):
        out = files["dir"] / "flipped.json"
        payload = ok(["flip", "--tiling", files["tiling"], "--index", "0", "--out", str(out)])
        expected = tiling_to_document(tiling_from_reduced_word(3, [2, 1, 2])).model_dump(mode="json")
        assert payload["tiling"] == expected
        assert json.loads(out.read_text()) == expected

    def test_index_out_of_range(self):
        diagnostics = failed(["flip", "--n", "3", "--index", "5"])
        assert "error_code=INVALID_INPUT" in diagnostics

    def test_path_to_word(self, files):
        assert ok(["path-to-word", "--path", files["path"]]) == "123"
        assert ok(["path-to-word", "--path", files["empty"]]) == ""

    def test_mutate(self, files):
        payload = ok(["mutate", "--tiling", files["tiling"], "--path", files["path"]])
        assert payload["vars"]["0,2"] == "3"
        assert "-1,2" not in payload["vars"]

    def test_missing_file(self, files):
        diagnostics = failed(["path-to-word", "--path", str(files["dir"] / "nope.json")])
        assert any("cannot read" in d for d in diagnostics)


class TestWordCommands:
    """Test `mn-index`, `check-equal` and `check-closed`."""

    def test_mn_index(self):
        payload = ok(["mn-index", "--n", "4", "--word", "124.123.124.123", "--triple", "1,2,3"])
        assert payload == "(1,1)_4 (0,0)_4"

    def test_certificate(self):
        assert ok(["mn-index", "--n", "4", "--word", "123"]) == {"triple": [1, 2, 3], "invariant": "(0,0)_4"}
        assert ok(["mn-index", "--n", "4", "--word", "123.124.134.234.123.124.134.234"]) is None

    def test_bad_triple(self):
        diagnostics = failed(["mn-index", "--n", "4", "--word", "123", "--triple", "1,2"])
        assert "error_code=INVALID_INPUT" in diagnostics

    def test_check_equal(self):
        payload = ok(["check-equal", "--n", "4", "--w1", "123.124.134.234", "--w2", "234.134.124.123"])
        assert payload["verdict"] == "equal"
        assert payload["witness"]
        assert payload["separated_by"] is None

    def test_check_equal_separated(self):
        payload = ok(["check-equal", "--n", "4", "--w1", "123.124", "--w2", "124.123"])
        assert payload["verdict"] == "unknown"
        assert payload["separated_by"] == [1, 2, 3]

    def test_check_closed_sampling(self):
        payload = ok(["--seed", "5", "check-closed", "--n", "4", "--length", "8", "--count", "3"])
        assert payload["seed"] == 5
        assert len(payload["paths"]) == 3
        assert payload["all_trivial"]

    def test_check_closed_path(self, files):
        diagnostics = failed(["check-closed", "--path", files["path"]])
        assert "error_code=PATH_REPLAY_FAILED" in diagnostics
        payload = ok(["check-closed", "--path", files["empty"]])
        assert payload["trivial"]

    def test_check_closed_needs_input(self):
        diagnostics = failed(["check-closed"])
        assert any("needs --path" in d for d in diagnostics)


class TestSurfaceAndRender:
    """Test `surface-search` and `render`."""

    def test_disc_search(self):
        result = run(["surface-search", "--n", "4", "--kind", "disc", "--max-len", "4"])
        assert result.payload == {"found": False, "kind": "disc", "n": 4, "max_len": 4}
        assert result.diagnostics == ["no nontrivial closed path of length <= 4"]

    def test_render_to_stdout(self):
        svg = ok(["render", "--n", "3", "--dual"])
        assert svg.count('class="arc"') == 3

    def test_render_to_file(self, tmp_path):
        out = tmp_path / "t.svg"
        payload = ok(["render", "--n", "3", "--dual-only", "--no-labels", "--out", str(out)])
        assert payload["out"] == str(out)
        text = out.read_text()
        assert 'class="rhombus"' not in text
        assert 'class="label"' not in text


class TestParsing:
    """Test argument errors and the entry point."""

    def test_unknown_command(self):
        diagnostics = failed(["bogus"])
        assert diagnostics[0].startswith("rhombiflip")

    def test_missing_required_flag(self):
        failed(["mn-index", "--n", "4"])

    def test_main_prints_payload(self, capsys):
        assert main(["mn-index", "--n", "4", "--word", "124.123.124.123", "--triple", "1,2,3"]) == 0
        assert json.loads(capsys.readouterr().out) == "(1,1)_4 (0,0)_4"

    def test_main_prints_error_result(self, capsys):
        assert main(["flip", "--n", "3", "--index", "9"]) == 1
        captured = capsys.readouterr()
        assert json.loads(captured.out)["status"] == "error"
        assert "out of range" in captured.err


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
