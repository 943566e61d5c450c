"""Tests for bounded sheets and chord patterns."""
import math

import pytest

from src.models.geom import Point2
from src.models.layering import FoldPlan
from src.models.outer import (
    ConvexPolygon,
    CreaseType,
    Disk,
    OuterPattern,
    SpineInfo,
    SquareCase,
    SquarePlan,
    boundary_path,
)


def _unit_disk() -> Disk:
    return Disk(Point2(0.0, 0.0), 1.0)


class TestDisk:
    def test_parameter_round_trip_at_quarter(self):
        disk = _unit_disk()
        q = disk.point_at(0.25)
        assert q.x == pytest.approx(0.0, abs=1e-12)
        assert q.y == pytest.approx(1.0)
        assert disk.parameter(q) == pytest.approx(0.25)

    def test_boundary_distance(self):
        assert _unit_disk().boundary_distance(Point2(0.5, 0.0)) == pytest.approx(0.5)

    def test_radius_must_be_positive(self):
        with pytest.raises(ValueError, match="must be positive"):
            Disk(Point2(0.0, 0.0), 0.0)


class TestConvexPolygon:
    def test_square_corners_and_perimeter(self):
        square = ConvexPolygon.square(2.0)
        assert square.corners[2] == Point2(2.0, 2.0)
        assert square.perimeter == pytest.approx(8.0)
        assert square.breakpoints() == pytest.approx([0.0, 0.25, 0.5, 0.75])

    def test_point_at_and_parameter(self):
        square = ConvexPolygon.square()
        q = square.point_at(0.375)
        assert (q.x, q.y) == pytest.approx((1.0, 0.5))
        assert square.parameter(q) == pytest.approx(0.375)

    def test_side_index(self):
        square = ConvexPolygon.square()
        assert square.side_index(Point2(0.5, 0.0)) == 0
        assert square.side_index(Point2(0.0, 0.5)) == 3
        assert square.side_index(Point2(1.0, 1.0)) is None
        assert square.side_index(Point2(0.5, 0.5)) is None

    def test_clockwise_rejected(self):
        with pytest.raises(ValueError, match="counter-clockwise"):
            ConvexPolygon((Point2(0.0, 0.0), Point2(0.0, 1.0), Point2(1.0, 0.0)))

    def test_regular_polygon(self):
        hexagon = ConvexPolygon.regular(6)
        assert len(hexagon.sides) == 6
        assert hexagon.perimeter == pytest.approx(6.0)


class TestBoundaryPath:
    def test_square_path_keeps_corners(self):
        square = ConvexPolygon.square()
        path = boundary_path(square, 0.125, 0.625)
        assert [(q.x, q.y) for q in path] == pytest.approx(
            [(0.5, 0.0), (1.0, 0.0), (1.0, 1.0), (0.5, 1.0)]
        )

    def test_disk_path_samples_arc(self):
        path = boundary_path(_unit_disk(), 0.0, 0.5)
        assert all(q.y >= -1e-12 for q in path)
        assert all(math.isclose(q.norm, 1.0) for q in path)


class TestOuterPattern:
    def test_unknown_endpoint_rejected(self):
        with pytest.raises(ValueError, match="must be a folding point"):
            OuterPattern(_unit_disk(), {0: Point2(1.0, 0.0)}, ((0, 1),))

    def test_loop_rejected(self):
        with pytest.raises(ValueError, match="must not coincide"):
            OuterPattern(_unit_disk(), {0: Point2(1.0, 0.0)}, ((0, 0),))

    def test_without_drops_chords(self):
        points = {0: Point2(1.0, 0.0), 1: Point2(-1.0, 0.0), 2: Point2(0.0, 1.0)}
        p = OuterPattern(_unit_disk(), points, ((0, 1), (1, 2)))
        assert p.without([0]).chords == ((1, 2),)
        assert p.is_disk


class TestSpineInfo:
    def test_leaf_count(self):
        assert SpineInfo(frozenset({1, 2, 3}), (1, 3)).leaf_count == 2


class TestSquarePlan:
    def test_mixed_directions_rejected(self):
        with pytest.raises(ValueError, match="must not mix"):
            SquarePlan({0: CreaseType.TB, 1: CreaseType.LR}, SquareCase.PLAIN, FoldPlan(()))

    def test_corner_order_must_match(self):
        with pytest.raises(ValueError, match="Corner order"):
            SquarePlan(
                {0: CreaseType.RT}, SquareCase.SINGLE, FoldPlan(()),
                semi_safe={CreaseType.RT: 0}, corner_order=(),
            )

    def test_crease_type_flags(self):
        assert CreaseType.LT.is_corner and CreaseType.LT.is_top
        assert not CreaseType.LR.is_corner
        assert not CreaseType.RB.is_top
