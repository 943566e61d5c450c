"""Tests for square sheet plans."""
import numpy as np
import pytest

from src.models.geom import Point2
from src.models.layering import PleatStep, ReflectStep
from src.models.outer import ConvexPolygon, CreaseType, OuterPattern, SquareCase
from src.services.catalog import corner_pleat_square, no_safe_crease_square
from src.services.outer_service import plan_check
from src.services.square_service import (
    SquarePlanError,
    classify_creases,
    random_square_pattern,
    square_fold_plan,
)


def _square(points: dict[int, tuple[float, float]], chords: tuple[tuple[int, int], ...]) -> OuterPattern:
    return OuterPattern(ConvexPolygon.square(), {k: Point2(*v) for k, v in points.items()}, chords)


class TestClassify:
    def test_no_safe_crease_square(self):
        types, turns = classify_creases(no_safe_crease_square())
        assert turns == 0
        assert types == {0: CreaseType.LT, 1: CreaseType.RT, 2: CreaseType.LR}

    def test_top_bottom_crease_is_turned(self):
        types, turns = classify_creases(_square({0: (0.5, 0.0), 1: (0.5, 1.0)}, ((0, 1),)))
        assert turns == 1
        assert types == {0: CreaseType.LR}

    def test_mixed_directions_rejected(self):
        p = _square(
            {0: (0.5, 0.0), 1: (0.5, 1.0), 2: (0.0, 0.3), 3: (1.0, 0.3)},
            ((0, 1), (2, 3)),
        )
        with pytest.raises(SquarePlanError, match="both top-bottom and left-right"):
            classify_creases(p)

    def test_corner_crease(self):
        types, _ = classify_creases(_square({0: (0.7, 0.0), 1: (1.0, 0.2)}, ((0, 1),)))
        assert types == {0: CreaseType.RB}


class TestSquarePlan:
    def test_corner_pleat_square_is_plain(self):
        p = corner_pleat_square()
        result = square_fold_plan(p)
        assert result.case is SquareCase.PLAIN
        assert result.semi_safe == {}
        assert len(result.plan) == 1
        assert isinstance(result.plan.steps[0], PleatStep)
        assert plan_check(p, result.plan).ok

    def test_no_safe_crease_square_folds_right_corner_first(self):
        p = no_safe_crease_square()
        result = square_fold_plan(p)
        assert result.case is SquareCase.SINGLE
        assert result.semi_safe == {CreaseType.RT: 1}
        assert result.corner_order == (CreaseType.RT,)
        assert not result.flip_lr
        assert isinstance(result.plan.steps[0], ReflectStep)
        assert plan_check(p, result.plan).ok

    def test_quarter_turn_recorded(self):
        p = _square({0: (0.3, 0.0), 1: (0.4, 1.0), 2: (0.6, 0.0), 3: (0.7, 1.0)}, ((0, 1), (2, 3)))
        result = square_fold_plan(p)
        assert result.quarter_turns == 1
        assert set(result.crease_types.values()) == {CreaseType.LR}
        assert plan_check(p, result.plan).ok

    def test_empty_square(self):
        result = square_fold_plan(OuterPattern(ConvexPolygon.square(), {}))
        assert result.case is SquareCase.PLAIN
        assert len(result.plan) == 0

    @pytest.mark.parametrize("seed", range(8))
    def test_random_squares_fold(self, seed):
        p = random_square_pattern(np.random.default_rng(seed), chords=5)
        result = square_fold_plan(p)
        assert plan_check(p, result.plan).ok

    def test_hexagon_rejected(self):
        p = OuterPattern(ConvexPolygon.regular(6), {})
        with pytest.raises(SquarePlanError, match="four-cornered"):
            square_fold_plan(p)

    def test_rectangle_rejected(self):
        rectangle = ConvexPolygon((Point2(0, 0), Point2(2, 0), Point2(2, 1), Point2(0, 1)))
        with pytest.raises(SquarePlanError, match="not a square"):
            square_fold_plan(OuterPattern(rectangle, {}))


class TestRandomSquares:
    def test_no_top_bottom_chords(self):
        p = random_square_pattern(np.random.default_rng(11), chords=6)
        types, turns = classify_creases(p)
        assert turns == 0
        assert CreaseType.TB not in types.values()
