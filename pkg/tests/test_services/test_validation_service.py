"""Tests for ValidationService."""
from fractions import Fraction

import pytest

from src.models.geom import TurnAngle
from src.models.tree import PlaneTree
from src.services.catalog import (
    enclosed_vertex_pattern,
    inscribed_triangle_disk,
    quarter_fold_pattern,
    star_pattern,
)
from src.services.treefold_service import realize_tree
from src.services.validation_service import ValidationService


@pytest.fixture()
def service():
    return ValidationService()


class TestSummarize:
    def test_quarter_fold_passes(self, service):
        summary = service.summarize(quarter_fold_pattern())
        assert summary.passed
        assert [r.name for r in summary.reports] == [
            "pattern", "maekawa", "kawasaki", "convexity", "connectivity", "nearby-rigid",
        ]

    def test_realized_tree_passes(self, service):
        assert service.summarize(realize_tree(PlaneTree.star(6)).pattern).passed

    def test_odd_degree_reported_not_raised(self, service):
        p = star_pattern([TurnAngle.of_turns(Fraction(k, 3)) for k in range(3)])
        summary = service.summarize(p)
        assert not summary.passed
        assert summary.report("maekawa").kinds() == {"odd degree"}
        assert summary.report("kawasaki").kinds() == {"not evaluated"}
        assert summary.report("nearby-rigid").kinds() == {"not evaluated"}

    def test_invalid_pattern_stops_early(self, service):
        summary = service.summarize(star_pattern([TurnAngle.of_turns(0), TurnAngle.of_turns(Fraction(1, 2))]))
        assert [r.name for r in summary.reports] == ["pattern"]
        assert summary.report("pattern").kinds() == {"collinear degree-2"}
        assert not summary.passed

    def test_separator_shows_in_connectivity(self, service):
        summary = service.summarize(enclosed_vertex_pattern())
        assert "separator" in summary.report("connectivity").kinds()

    def test_to_dict(self, service):
        doc = service.summarize(quarter_fold_pattern()).to_dict()
        assert doc["passed"] is True
        assert doc["checks"]["maekawa"] == []

    def test_unknown_report(self, service):
        with pytest.raises(KeyError):
            service.summarize(quarter_fold_pattern()).report("parity")


class TestSummarizeOuter:
    def test_triangle_disk(self, service):
        summary = service.summarize_outer(inscribed_triangle_disk())
        assert summary.passed
        assert [r.name for r in summary.reports] == ["outer", "nearby-rigid"]
