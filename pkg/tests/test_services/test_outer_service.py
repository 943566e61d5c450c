"""Tests for chord patterns on disks."""
import networkx as nx
import numpy as np
import pytest

from src.models.geom import Point2
from src.models.layering import PleatStep, ReflectStep
from src.models.outer import ConvexPolygon, Disk, OuterPattern, SafetyVerdict
from src.services.catalog import (
    inscribed_square_disk,
    inscribed_triangle_disk,
    no_safe_crease_square,
    parallel_chords_disk,
)
from src.services.layering_service import LayeringService
from src.services.outer_service import (
    OuterPatternError,
    busy_regions,
    chord_graph,
    disk_fold_plan,
    is_safe_crease,
    lune_check,
    outer_faces,
    outer_fold_map,
    plan_check,
    random_disk_pattern,
    realize_outerplanar_on_disk,
    safe_chord,
    validate_outer,
)


def _close_pair_disk() -> OuterPattern:
    """Three chords in a fan, the last joining two folding points a few degrees apart."""
    disk = Disk(Point2(0.0, 0.0), 1.0)
    params = {0: 0.10, 1: 0.45, 2: 0.9489, 3: 0.9546}
    points = {v: disk.point_at(t) for v, t in params.items()}
    return OuterPattern(disk, points, ((0, 1), (1, 2), (2, 3)))


class TestValidateOuter:
    def test_inscribed_square_is_valid(self):
        assert validate_outer(inscribed_square_disk()).ok

    def test_crossing_diagonals(self):
        p = inscribed_square_disk()
        crossed = OuterPattern(p.region, p.points, ((0, 2), (1, 3)))
        assert validate_outer(crossed).kinds() == {"crossing chords"}

    def test_point_off_boundary(self):
        disk = Disk(Point2(0.0, 0.0), 1.0)
        p = OuterPattern(disk, {0: Point2(1.0, 0.0), 1: Point2(0.0, 0.5)}, ((0, 1),))
        assert "off boundary" in validate_outer(p).kinds()

    def test_chord_along_a_side(self):
        points = {0: Point2(0.2, 0.0), 1: Point2(0.8, 0.0)}
        p = OuterPattern(ConvexPolygon.square(), points, ((0, 1),))
        assert validate_outer(p).kinds() == {"boundary chord"}

    def test_duplicate_chord(self):
        p = parallel_chords_disk()
        doubled = OuterPattern(p.region, p.points, p.chords + ((1, 0),))
        assert "duplicate" in validate_outer(doubled).kinds()

    def test_chord_graph(self):
        g = chord_graph(inscribed_square_disk())
        assert nx.is_isomorphic(g, nx.cycle_graph(4))


class TestFaces:
    def test_parallel_chords_make_four_faces(self):
        fc = outer_faces(parallel_chords_disk())
        assert len(fc.faces) == 4
        assert all(len(f.creases) <= 2 for f in fc.faces)
        assert not fc.has_infinity

    def test_left_face_is_left_of_chord(self):
        p = parallel_chords_disk()
        fc = outer_faces(p)
        left, right = fc.crease_faces[1]
        assert fc.faces[left].sample.x < 0.2 < fc.faces[right].sample.x

    def test_fold_map_reflects_across_chord(self):
        p = parallel_chords_disk()
        m = outer_fold_map(p, outer_faces(p).crease_faces[1][0])
        right = outer_faces(p).crease_faces[1][1]
        image = m.isometry(right).apply(Point2(0.3, 0.0))
        assert (image.x, image.y) == pytest.approx((0.1, 0.0))

    def test_invalid_pattern_raises(self):
        p = inscribed_square_disk()
        with pytest.raises(OuterPatternError, match="Invalid chord pattern"):
            outer_faces(OuterPattern(p.region, p.points, ((0, 2), (1, 3))))

    def test_short_chord_cuts_off_a_sliver(self):
        fc = outer_faces(_close_pair_disk())
        assert len(fc.faces) == 4
        left, right = fc.crease_faces[2]
        assert left != right
        assert {len(fc.faces[left].creases), len(fc.faces[right].creases)} == {1, 3}


class TestSafeCreases:
    def test_single_chord_is_safe(self):
        p = parallel_chords_disk()
        assert is_safe_crease(p, 0).safe

    def test_safe_side_lists_chords_behind(self):
        verdict = is_safe_crease(parallel_chords_disk(), 1)
        assert verdict.safe
        assert verdict.side in ((0,), (2,))

    def test_no_safe_crease_square(self):
        p = no_safe_crease_square()
        verdicts = [is_safe_crease(p, c) for c in range(3)]
        assert not any(v.safe for v in verdicts)
        assert [v.reason for v in verdicts] == ["reflection crosses", "reflection crosses", "monotonicity"]

    def test_lune_holds_on_parallel_chords(self):
        report = lune_check(parallel_chords_disk(), 1, samples=500, seed=3)
        assert report.ok, report.lines()


class TestDiskPlan:
    def test_short_chord_folds(self):
        p = _close_pair_disk()
        assert plan_check(p, disk_fold_plan(p)).ok

    def test_smallest_arc_chord_is_chosen(self):
        p = _close_pair_disk()
        (region,) = busy_regions(p)
        assert safe_chord(p, region) == 2

    def test_no_safe_chord_raises(self, monkeypatch):
        monkeypatch.setattr(
            "src.services.outer_service.is_safe_crease",
            lambda p, chord, among=None: SafetyVerdict(False, "monotonicity"),
        )
        with pytest.raises(OuterPatternError, match="No safe chord"):
            disk_fold_plan(inscribed_triangle_disk())

    @pytest.mark.parametrize("seed", range(40))
    def test_every_busy_region_has_a_safe_chord(self, seed):
        p = random_disk_pattern(np.random.default_rng(seed), points=14, chords=8)
        for region in busy_regions(p):
            assert safe_chord(p, region) in region.chords

    def test_parallel_chords_single_pleat(self):
        p = parallel_chords_disk()
        plan = disk_fold_plan(p)
        assert len(plan) == 1
        assert isinstance(plan.steps[0], PleatStep)
        assert len(plan.steps[0].anchors) == 4
        assert plan_check(p, plan).ok

    def test_triangle_starts_with_reflection(self):
        p = inscribed_triangle_disk()
        plan = disk_fold_plan(p)
        assert isinstance(plan.steps[0], ReflectStep)
        assert plan_check(p, plan).ok

    def test_inscribed_square(self):
        p = inscribed_square_disk()
        assert plan_check(p, disk_fold_plan(p)).ok

    def test_empty_disk(self):
        p = OuterPattern(Disk(Point2(0.0, 0.0), 1.0), {0: Point2(1.0, 0.0)})
        assert len(disk_fold_plan(p)) == 0

    def test_square_sheet_rejected(self):
        with pytest.raises(OuterPatternError, match="disk sheet"):
            disk_fold_plan(no_safe_crease_square())

    @pytest.mark.parametrize("seed", range(10))
    def test_random_patterns_fold(self, seed):
        p = random_disk_pattern(np.random.default_rng(seed), points=8, chords=5)
        assert validate_outer(p).ok
        plan = disk_fold_plan(p)
        assert plan_check(p, plan).ok

    def test_plan_layering_matches_search(self):
        p = inscribed_triangle_disk()
        service = LayeringService(outer_fold_map(p))
        layering = service.plan_to_layering(disk_fold_plan(p))
        assert service.validate(layering).ok
        assert service.search() is not None


class TestOuterplanarRealization:
    def test_cycle_with_chord(self):
        g = nx.cycle_graph(6)
        g.add_edge(0, 3)
        p = realize_outerplanar_on_disk(g)
        assert validate_outer(p).ok
        assert nx.is_isomorphic(chord_graph(p), g)

    def test_tree(self):
        g = nx.balanced_tree(2, 3)
        p = realize_outerplanar_on_disk(g)
        assert validate_outer(p).ok
        assert plan_check(p, disk_fold_plan(p)).ok

    @pytest.mark.parametrize("g", [nx.complete_graph(4), nx.complete_bipartite_graph(2, 3)])
    def test_not_outerplanar(self, g):
        with pytest.raises(OuterPatternError, match="not outerplanar"):
            realize_outerplanar_on_disk(g)

    def test_empty_graph(self):
        with pytest.raises(OuterPatternError, match="at least one vertex"):
            realize_outerplanar_on_disk(nx.Graph())
