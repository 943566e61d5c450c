"""Tests for the geometry kernel."""
import math
from fractions import Fraction

import numpy as np
import pytest

from src.models.geom import Isometry2, Lune, Orientation, Point2, TurnAngle
from src.services.geometry import (
    alternating_sum,
    compose,
    cyclic_gaps,
    lune_contains,
    minimal_arc,
    reflect_across_line,
    reflection_through,
    segments_cross,
    trace_planar_faces,
)


def _turns(*values) -> list[TurnAngle]:
    return [TurnAngle.of_turns(Fraction(v)) for v in values]


class TestReflectAcrossLine:
    def test_vertical_axis(self):
        p = reflect_across_line(Point2(1, 0), Point2(0, -1), Point2(0, 1))
        assert p.distance_to(Point2(-1, 0)) < 1e-12

    def test_point_on_line_fixed(self):
        p = reflect_across_line(Point2(0.3, 0), Point2(0, 0), Point2(1, 0))
        assert p.distance_to(Point2(0.3, 0)) < 1e-12

    def test_diagonal_swaps_coordinates(self):
        p = reflect_across_line(Point2(2, 0), Point2(0, 0), Point2(1, 1))
        assert p.distance_to(Point2(0, 2)) < 1e-12

    def test_degenerate_line(self):
        with pytest.raises(ValueError, match="must not coincide"):
            reflect_across_line(Point2(1, 0), Point2(0, 0), Point2(0, 0))

    def test_involution_on_random_points(self):
        rng = np.random.default_rng(7)
        a, b = Point2(0.2, -0.4), Point2(1.3, 0.9)
        for x, y in rng.uniform(-10, 10, size=(1000, 2)):
            p = Point2(float(x), float(y))
            twice = reflect_across_line(reflect_across_line(p, a, b), a, b)
            assert twice.distance_to(p) < 1e-9


class TestCompose:
    def test_reflection_involution(self):
        r = reflection_through(Point2(0, 0), Point2(0, 1))
        assert compose(r, r).approx_equal(Isometry2.identity(), 1e-9, 1e-9)

    def test_perpendicular_reflections_make_half_turn(self):
        rx = reflection_through(Point2(0, 0), Point2(0, 1))
        ry = reflection_through(Point2(0, 0), Point2(1, 0))
        half_turn = Isometry2(Orientation.PRESERVING, TurnAngle.of_turns(Fraction(1, 2)), (0.0, 0.0))
        assert compose(rx, ry).approx_equal(half_turn, 1e-9, 1e-9)

    def test_identity_law(self):
        t = Isometry2(Orientation.REVERSING, TurnAngle.of_radians(0.7), (2.0, -1.0))
        assert compose(Isometry2.identity(), t).approx_equal(t, 1e-9, 1e-9)

    def test_composition_matches_pointwise(self):
        a = Isometry2(Orientation.REVERSING, TurnAngle.of_radians(1.1), (0.5, 0.25))
        b = Isometry2(Orientation.PRESERVING, TurnAngle.of_radians(-0.3), (-2.0, 1.0))
        p = Point2(0.7, 3.1)
        assert compose(a, b).apply(p).distance_to(a.apply(b.apply(p))) < 1e-9

    def test_distances_preserved(self):
        rng = np.random.default_rng(11)
        t = Isometry2(Orientation.REVERSING, TurnAngle.of_radians(2.2), (3.0, -4.0))
        for row in rng.uniform(-5, 5, size=(200, 4)):
            p, q = Point2(row[0], row[1]), Point2(row[2], row[3])
            assert abs(t.apply(p).distance_to(t.apply(q)) - p.distance_to(q)) < 1e-9


class TestCyclicGaps:
    def test_symmetric_cross(self):
        gaps = cyclic_gaps(_turns(0, "1/4", "1/2", "3/4"))
        assert [g.exact for g in gaps] == [Fraction(1, 4)] * 4

    def test_base_star_gaps_exact(self):
        theta = Fraction(1, 14)
        dirs = [TurnAngle.of_turns(k * theta) for k in (0, 3, 6, 8, 10, 12)]
        gaps = cyclic_gaps(dirs)
        assert [g.exact for g in gaps] == [k * theta for k in (3, 3, 2, 2, 2, 2)]
        assert sum(g.exact for g in gaps) == 1

    def test_two_directions(self):
        gaps = cyclic_gaps(_turns(0, "1/3"))
        assert [g.exact for g in gaps] == [Fraction(1, 3), Fraction(2, 3)]

    def test_duplicates_rejected(self):
        with pytest.raises(ValueError, match="must be distinct"):
            cyclic_gaps(_turns("1/4", "5/4"))

    def test_alternating_sum_of_cross_is_zero(self):
        assert alternating_sum(cyclic_gaps(_turns(0, "1/4", "1/2", "3/4"))).exact == 0


class TestMinimalArc:
    def test_arc_across_zero(self):
        start, opening = minimal_arc(_turns("7/8", "1/8", 0))
        assert start.exact == Fraction(7, 8)
        assert opening.exact == Fraction(1, 4)


class TestLuneContains:
    def test_q_on_boundary(self):
        lune = Lune(Point2(0, 0), Point2(2, 0), Point2(1, 5))
        assert lune_contains(lune, lune.q)

    def test_midpoint_inside(self):
        lune = Lune(Point2(0, 0), Point2(2, 0), Point2(1, 5))
        assert lune_contains(lune, Point2(1, 0))

    def test_outside_first_disk(self):
        lune = Lune(Point2(0, 0), Point2(2, 0), Point2(1, 5))
        assert not lune_contains(lune, Point2(-(lune.radius_u + 1), 0))


class TestSegmentsCross:
    def test_proper_crossing(self):
        assert segments_cross((Point2(0, 0), Point2(1, 1)), (Point2(0, 1), Point2(1, 0)))

    def test_shared_endpoint_is_fine(self):
        assert not segments_cross((Point2(0, 0), Point2(1, 0)), (Point2(0, 0), Point2(0, 1)))

    def test_collinear_overlap(self):
        assert segments_cross((Point2(0, 0), Point2(2, 0)), (Point2(0, 0), Point2(1, 0)))

    def test_disjoint(self):
        assert not segments_cross((Point2(0, 0), Point2(1, 0)), (Point2(0, 1), Point2(1, 1)))


class TestTracePlanarFaces:
    def test_square_with_diagonal(self):
        positions = {
            "a": Point2(0, 0), "b": Point2(1, 0), "c": Point2(1, 1), "d": Point2(0, 1),
        }
        edges = [(1, "a", "b"), (2, "b", "c"), (3, "c", "d"), (4, "d", "a"), (5, "a", "c")]
        bounded, outer = trace_planar_faces(positions, edges)
        assert len(bounded) == 2
        assert len(outer) == 1
        assert sorted(len(f) for f in bounded) == [3, 3]

    def test_faces_are_counter_clockwise(self):
        positions = {0: Point2(0, 0), 1: Point2(2, 0), 2: Point2(0, 2)}
        bounded, _ = trace_planar_faces(positions, [("x", 0, 1), ("y", 1, 2), ("z", 2, 0)])
        (face,) = bounded
        pts = [positions[h.origin] for h in face]
        area = sum(p.cross(q) for p, q in zip(pts, pts[1:] + pts[:1])) / 2
        assert area == pytest.approx(2.0)
        assert math.isclose(abs(area), 2.0)
