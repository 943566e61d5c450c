"""Tests for the construction sweeps (small sizes)."""
import pytest

from src.config import INFINITY
from src.models.orthotree import DualOrthotreeSpec
from src.services import sweep_service
from src.services.orthotree_service import WheelError
from src.services.sweep_service import (
    disk_sweep,
    orthotree_sweep,
    outerplanar_sweep,
    square_sweep,
    square_tree_sweep,
    tree_sweep,
)


class TestTreeSweep:
    def test_small_trees(self):
        summary = tree_sweep(max_edges=6)
        assert summary.passed, summary.lines()
        assert summary.checked == 25


class TestRandomSweeps:
    def test_disks(self):
        summary = disk_sweep(count=6, seed=1, max_chords=5)
        assert summary.passed, summary.lines()
        assert summary.checked == 6

    def test_disk_with_close_folding_points(self):
        # disk 1 of seed 0 has a chord between points about two degrees apart
        summary = disk_sweep(count=2, seed=0)
        assert summary.passed, summary.lines()
        assert summary.succeeded == 2

    @pytest.mark.slow
    def test_many_disks(self):
        summary = disk_sweep(count=200, seed=0)
        assert summary.passed, summary.lines()
        assert summary.succeeded == 200

    def test_squares(self):
        summary = square_sweep(count=6, seed=2, max_chords=5)
        assert summary.passed, summary.lines()

    def test_same_seed_same_result(self):
        assert disk_sweep(count=3, seed=4) == disk_sweep(count=3, seed=4)


class TestGraphSweeps:
    def test_outerplanar_up_to_four_vertices(self):
        summary = outerplanar_sweep(max_vertices=4)
        assert summary.passed, summary.lines()
        assert summary.checked == 18

    def test_square_trees(self):
        summary = square_tree_sweep(max_vertices=6)
        assert summary.passed, summary.lines()

    def test_one_wheel_step(self):
        summary = orthotree_sweep(max_steps=1)
        assert summary.passed, summary.lines()
        assert summary.checked == 2

    def test_unrealized_infinity_step_is_only_skipped(self, monkeypatch):
        def refuse(spec):
            raise WheelError("image does not fit the wedge")

        monkeypatch.setattr(sweep_service, "_specs", lambda max_steps: iter([DualOrthotreeSpec.of_targets(INFINITY)]))
        monkeypatch.setattr(sweep_service, "realize_dual_orthotree", refuse)
        summary = orthotree_sweep(max_steps=1)
        assert (summary.checked, summary.succeeded, summary.skipped) == (0, 0, 1)
        assert summary.passed
