"""Tests for check reports and sweep summaries."""
from src.models.report import CheckReport, FixtureVerdict, SweepSummary, Violation


class TestCheckReport:
    def test_empty_report_passes(self):
        report = CheckReport("maekawa")
        assert report.ok
        assert report.lines() == ["maekawa: pass"]

    def test_violations_listed(self):
        report = CheckReport("maekawa", (Violation("count", "M - V is 2", (3,)),))
        assert not report.ok
        assert report.kinds() == {"count"}
        assert report.lines()[1] == "  count at 3: M - V is 2"


class TestSweepSummary:
    def test_passed(self):
        assert SweepSummary("trees", 3, 3).passed
        assert not SweepSummary("trees", 3, 2, ("tree 1: crossing",)).passed

    def test_lines(self):
        lines = SweepSummary("disk", 4, 3, ("seed 2: overlap",)).lines()
        assert lines == ["disk: 3/4 FAIL", "  seed 2: overlap"]

    def test_skipped_shown(self):
        assert SweepSummary("orthotree", 5, 5, skipped=2).lines() == ["orthotree: 5/5 pass (2 skipped)"]


class TestFixtureVerdict:
    def test_agreement(self):
        verdict = FixtureVerdict("tightness-star", "lambda 4", "lambda 4")
        assert not verdict.discrepancy
        assert verdict.manifest()["discrepancy"] is False

    def test_discrepancy(self):
        verdict = FixtureVerdict("tree-counterexample", "no layering", "layering found")
        assert verdict.discrepancy
        assert verdict.manifest() == {
            "name": "tree-counterexample",
            "expected": "no layering",
            "observed": "layering found",
            "discrepancy": True,
        }
