"""Tests for the named fixtures."""
import json
from fractions import Fraction

import pytest

from src.repositories.documents import load_document
from src.services.catalog import nested_flaps_pattern, twisted_triangle_pattern
from src.services.fixtures import FIXTURES, NO_LAYERING, FixtureError, build_fixture, write_fixture
from src.services.foldcheck_service import build_fold_map, convexity_check, kawasaki_check, maekawa_check
from src.services.layering_service import search_layering
from src.services.outer_service import outer_fold_map, validate_outer
from src.services.pattern_service import validate_pattern


class TestVerdicts:
    @pytest.mark.parametrize("name", list(FIXTURES))
    def test_fixture_agrees(self, name):
        fixture = build_fixture(name)
        assert not fixture.verdict.discrepancy, fixture.verdict.observed

    def test_discrepancy_follows_observation(self):
        for name in FIXTURES:
            verdict = build_fixture(name).verdict
            assert verdict.name == name
            assert verdict.discrepancy == (verdict.expected != verdict.observed)

    def test_unknown_name(self):
        with pytest.raises(FixtureError, match="Unknown fixture"):
            build_fixture("crane")


class TestCounterexamples:
    def test_tree_counterexample_passes_local_checks(self):
        p = build_fixture("tree-counterexample").value
        for report in (validate_pattern(p), maekawa_check(p), kawasaki_check(p), convexity_check(p)):
            assert report.ok, report.lines()

    def test_tree_counterexample_has_no_layering(self):
        fixture = build_fixture("tree-counterexample")
        assert fixture.verdict.observed == NO_LAYERING
        assert search_layering(build_fold_map(fixture.value)) is None

    def test_lopsided_flaps_block_layering(self):
        assert search_layering(build_fold_map(nested_flaps_pattern())) is None

    def test_even_flaps_fold(self):
        even = ((Fraction(1, 9), Fraction(1, 9)),) * 4
        assert search_layering(build_fold_map(nested_flaps_pattern(even))) is not None

    def test_flap_count_checked(self):
        with pytest.raises(ValueError, match="four arms"):
            nested_flaps_pattern(((Fraction(1, 9), Fraction(1, 9)),) * 3)

    def test_unfoldable_triangle_is_valid(self):
        fixture = build_fixture("unfoldable-triangle")
        assert fixture.kind == "outer"
        assert validate_outer(fixture.value).ok

    def test_unfoldable_triangle_has_no_layering(self):
        fixture = build_fixture("unfoldable-triangle")
        assert fixture.verdict.observed == NO_LAYERING
        assert search_layering(outer_fold_map(fixture.value)) is None

    def test_triangle_parameters_checked(self):
        with pytest.raises(ValueError, match="out of range"):
            twisted_triangle_pattern(twist=0.6)

    def test_fixture_is_reused(self):
        assert build_fixture("unfoldable-triangle").value is build_fixture("unfoldable-triangle").value


class TestWriteFixture:
    def test_writes_document_and_manifest(self, tmp_path):
        fixture, paths = write_fixture("tightness-star", tmp_path)
        assert [p.name for p in paths] == ["tightness-star.json", "tightness-star.manifest.json"]
        assert load_document("pattern", paths[0]) == fixture.value
        manifest = json.loads(paths[1].read_text(encoding="utf-8"))
        assert manifest["kind"] == "manifest"
        assert manifest["document"] == "pattern"
        assert manifest["observed"] == "lambda 4"
        assert manifest["discrepancy"] is False

    def test_counterexample_manifest(self, tmp_path):
        _, paths = write_fixture("tree-counterexample", tmp_path)
        manifest = json.loads(paths[1].read_text(encoding="utf-8"))
        assert manifest["expected"] == manifest["observed"] == NO_LAYERING
        assert manifest["discrepancy"] is False
