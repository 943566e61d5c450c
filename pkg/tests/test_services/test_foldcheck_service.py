"""Tests for the local fold checks and the fold map."""
import math
from fractions import Fraction

import numpy as np
import pytest

from src.models.geom import Orientation, Point2, TurnAngle
from src.services.catalog import double_star_pattern, grid_pattern, quarter_fold_pattern, star_pattern
from src.services.foldcheck_service import (
    FoldMapError,
    build_fold_map,
    convexity_check,
    evaluate,
    kawasaki_check,
    maekawa_check,
    nearby_rigid_check,
    parity_check,
)
from src.services.pattern_service import build_faces, locate_face


def _turns(*values) -> list[TurnAngle]:
    return [TurnAngle.of_turns(Fraction(v)) for v in values]


def _base_star(d: int):
    theta = Fraction(1, 2 * (d + 1))
    steps = [0, 3, 6] + [6 + 2 * k for k in range(1, d - 2)]
    return star_pattern([TurnAngle.of_turns(k * theta) for k in steps])


def _map_with_base(p, point: Point2):
    return build_fold_map(p, base=locate_face(build_faces(p), point))


def _f(x: float) -> float:
    return abs((x % 2) - 1)


class TestMaekawa:
    def test_cross_passes(self):
        assert maekawa_check(quarter_fold_pattern()).ok

    def test_three_rays_fail(self):
        report = maekawa_check(star_pattern(_turns(0, "1/3", "2/3")))
        assert not report.ok
        assert report.violations[0].where == (0,)

    def test_base_star_passes(self):
        assert maekawa_check(_base_star(6)).ok


class TestKawasaki:
    def test_symmetric_cross(self):
        assert kawasaki_check(quarter_fold_pattern()).ok

    def test_base_star_exact(self):
        p = _base_star(6)
        assert all(d.is_exact for _, d in p.directions_at(0))
        assert kawasaki_check(p).ok

    def test_constructed_violation(self):
        # gaps of 1/4, 1/8, 3/8, 1/4 turn
        report = kawasaki_check(star_pattern(_turns(0, "1/4", "3/8", "3/4")))
        assert not report.ok
        assert "1/4 turn" in report.violations[0].detail

    def test_odd_degree_raises(self):
        with pytest.raises(FoldMapError, match="even degree"):
            kawasaki_check(star_pattern(_turns(0, "1/3", "2/3")))


class TestConvexity:
    def test_cross_passes(self):
        assert convexity_check(quarter_fold_pattern()).ok

    def test_reflex_wedge(self):
        report = convexity_check(star_pattern(_turns(0, "1/20", "1/10", "3/20")))
        assert "reflex wedge" in report.kinds()


class TestBuildFoldMap:
    def test_cross_is_absolute_value(self):
        m = _map_with_base(quarter_fold_pattern(), Point2(0.5, 0.5))
        for x, y in [(-0.3, 0.7), (0.2, -0.9), (-1.5, -0.25), (0.4, 0.6)]:
            image = evaluate(m, Point2(x, y))
            assert image.distance_to(Point2(abs(x), abs(y))) < 1e-9

    def test_cross_far_point(self):
        m = _map_with_base(quarter_fold_pattern(), Point2(0.5, 0.5))
        assert evaluate(m, Point2(-2.0, 3.0)).distance_to(Point2(2.0, 3.0)) < 1e-9

    def test_three_line_pleat(self):
        m = _map_with_base(grid_pattern(3, 1), Point2(0.5, 0.5))
        assert evaluate(m, Point2(2.5, 0.5)).x == pytest.approx(0.5)

    def test_grid_window_matches_closed_form(self):
        m = _map_with_base(grid_pattern(4), Point2(1.5, 1.5))
        assert _f(3.25) == pytest.approx(0.25)
        for x in np.linspace(-0.9, 3.9, 13):
            for y in np.linspace(-0.9, 3.9, 7):
                image = evaluate(m, Point2(float(x), float(y)))
                assert image.x - 1 == pytest.approx(_f(x), abs=1e-9)
                assert image.y - 1 == pytest.approx(_f(y), abs=1e-9)

    def test_base_face_identity(self):
        m = build_fold_map(double_star_pattern())
        face = m.faces.face(m.base_face)
        assert evaluate(m, face.sample).distance_to(face.sample) < 1e-12

    def test_crease_point_agrees(self):
        m = _map_with_base(quarter_fold_pattern(), Point2(0.5, 0.5))
        image = evaluate(m, Point2(0.0, -1.0))
        assert image.distance_to(Point2(0.0, 1.0)) < 1e-9

    def test_non_flat_vertex_reported(self):
        with pytest.raises(FoldMapError, match="vertex 0"):
            build_fold_map(star_pattern(_turns(0, "1/4", "3/8", "3/4")))

    def test_succeeds_iff_local_checks_pass(self):
        patterns = [
            quarter_fold_pattern(),
            double_star_pattern(),
            grid_pattern(3),
            _base_star(6),
            star_pattern(_turns(0, "1/4", "3/8", "3/4")),
            star_pattern(_turns(0, "1/3", "2/3")),
        ]
        for p in patterns:
            local = maekawa_check(p).ok and kawasaki_check(p).ok
            try:
                build_fold_map(p)
                built = True
            except FoldMapError:
                built = False
            assert built == local


class TestFoldMapProperties:
    def test_orientation_alternates(self):
        m = build_fold_map(grid_pattern(3))
        assert parity_check(m).ok
        assert m.orientation(m.base_face) is Orientation.PRESERVING

    def test_nearby_rigid(self):
        assert nearby_rigid_check(build_fold_map(grid_pattern(3))).ok
        assert nearby_rigid_check(build_fold_map(double_star_pattern())).ok

    def test_one_lipschitz(self):
        m = build_fold_map(grid_pattern(4))
        rng = np.random.default_rng(3)
        for row in rng.uniform(-2, 5, size=(300, 4)):
            p, q = Point2(row[0], row[1]), Point2(row[2], row[3])
            assert evaluate(m, p).distance_to(evaluate(m, q)) <= p.distance_to(q) + 1e-9

    def test_base_change_is_one_isometry(self):
        p = grid_pattern(3)
        m1 = _map_with_base(p, Point2(0.5, 0.5))
        m2 = _map_with_base(p, Point2(-0.5, 1.5))
        a, b = Point2(-0.7, 2.2), Point2(1.3, 0.4)
        d1 = evaluate(m1, a).distance_to(evaluate(m1, b))
        d2 = evaluate(m2, a).distance_to(evaluate(m2, b))
        assert math.isclose(d1, d2, abs_tol=1e-9)
