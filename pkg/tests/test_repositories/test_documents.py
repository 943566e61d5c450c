"""Tests for JSON documents and the document repositories."""
import json

import pytest

from src.config import INFINITY
from src.models.layering import Layering
from src.models.orthotree import DualOrthotreeSpec, WheelStep
from src.models.tree import PlaneTree
from src.repositories.documents import (
    DocumentError,
    OuterPatternRepository,
    PatternRepository,
    TreeRepository,
    dumps,
    load_document,
    loads,
    peek_kind,
    save_document,
)
from src.services.catalog import double_star_pattern, inscribed_triangle_disk, no_safe_crease_square
from src.services.outer_service import disk_fold_plan
from src.services.treefold_service import realize_tree


class TestPatternDocuments:
    def test_round_trip(self):
        p = double_star_pattern()
        assert loads("pattern", dumps("pattern", p)) == p

    def test_exact_angles_written_as_turns(self):
        doc = json.loads(dumps("pattern", double_star_pattern()))
        assert doc["rays"][0]["direction"] == "1/4 turn"
        assert doc["version"] == 1
        assert doc["kind"] == "pattern"

    def test_byte_stable(self):
        text = dumps("pattern", realize_tree(PlaneTree.star(6)).pattern)
        assert dumps("pattern", loads("pattern", text)) == text

    def test_measured_angle_round_trip(self):
        p = realize_tree(PlaneTree.from_edges([(0, 1), (0, 2), (0, 3), (0, 4), (1, 5), (1, 6), (1, 7)])).pattern
        assert loads("pattern", dumps("pattern", p)) == p


class TestOtherKinds:
    def test_outer_disk_and_square(self):
        for p in (inscribed_triangle_disk(), no_safe_crease_square()):
            assert loads("outer", dumps("outer", p)) == p

    def test_tree_from_edges(self):
        text = json.dumps({"version": 1, "kind": "tree", "edges": [[0, 1], [0, 2]]})
        assert loads("tree", text) == PlaneTree.from_edges([(0, 1), (0, 2)])

    def test_spec_with_infinity(self):
        spec = DualOrthotreeSpec((WheelStep(0), WheelStep(INFINITY, (4, 5, 6, 7))), name="mixed")
        assert loads("orthotree", dumps("orthotree", spec)) == spec

    def test_plan(self):
        plan = disk_fold_plan(inscribed_triangle_disk())
        assert loads("plan", dumps("plan", plan)) == plan

    def test_layering(self):
        layering = Layering.from_order([2, 0, 1])
        assert loads("layering", dumps("layering", layering)) == layering

    def test_peek_kind(self):
        assert peek_kind(dumps("outer", inscribed_triangle_disk())) == "outer"


class TestErrors:
    def test_syntax_error_has_line(self):
        text = '{\n  "version": 1,\n  "kind": "pattern"\n  "vertices": {}\n}\n'
        with pytest.raises(DocumentError, match="line 4") as info:
            loads("pattern", text)
        assert info.value.line == 4

    def test_wrong_kind(self):
        with pytest.raises(DocumentError, match="Expected a tree document"):
            loads("tree", dumps("pattern", double_star_pattern()))

    def test_wrong_version(self):
        with pytest.raises(DocumentError, match="version"):
            loads("pattern", json.dumps({"version": 7, "kind": "pattern"}))

    def test_missing_field(self):
        with pytest.raises(DocumentError, match="Malformed pattern document"):
            loads("pattern", json.dumps({"version": 1, "kind": "pattern"}))

    def test_invalid_value(self):
        text = json.dumps({"version": 1, "kind": "pattern", "vertices": {}})
        with pytest.raises(DocumentError, match="at least one vertex"):
            loads("pattern", text)

    def test_bad_angle(self):
        text = json.dumps({
            "version": 1, "kind": "pattern",
            "vertices": {"0": [0, 0]}, "rays": [{"apex": 0, "direction": "north"}],
        })
        with pytest.raises(DocumentError, match="p/q turn"):
            loads("pattern", text)

    def test_unknown_kind(self):
        with pytest.raises(DocumentError, match="Unknown document kind"):
            dumps("sketch", {})

    def test_missing_file(self, tmp_path):
        with pytest.raises(DocumentError, match="Cannot read"):
            load_document("pattern", tmp_path / "absent.json")


@pytest.fixture()
def store(tmp_path):
    return tmp_path / "docs"


class TestRepositories:
    def test_save_and_load(self, store):
        repo = PatternRepository(store)
        path = repo.save("double", double_star_pattern())
        assert path.name == "double.json"
        assert repo.load("double") == double_star_pattern()

    def test_names_filter_by_kind(self, store):
        PatternRepository(store).save("double", double_star_pattern())
        OuterPatternRepository(store).save("triangle", inscribed_triangle_disk())
        assert PatternRepository(store).names() == ["double"]
        assert OuterPatternRepository(store).names() == ["triangle"]
        assert TreeRepository(store).names() == []

    def test_delete(self, store):
        repo = PatternRepository(store)
        repo.save("double", double_star_pattern())
        repo.delete("double")
        assert not repo.exists("double")

    def test_bad_name(self, store):
        with pytest.raises(DocumentError, match="Invalid document name"):
            PatternRepository(store).save("../escape", double_star_pattern())

    def test_save_document_creates_directories(self, tmp_path):
        path = save_document("tree", PlaneTree.star(4), tmp_path / "a" / "b" / "star.json")
        assert load_document("tree", path) == PlaneTree.star(4)
