"""Tests for the pattern service."""
from fractions import Fraction

import networkx as nx
import pytest

from src.config import INFINITY
from src.models.geom import Point2, TurnAngle
from src.models.pattern import CreasePattern, Ray, Segment
from src.services.catalog import (
    double_star_pattern,
    grid_pattern,
    quarter_fold_pattern,
    star_pattern,
    triangle_pattern,
)
from src.services.pattern_service import (
    PatternError,
    build_faces,
    far_face,
    folding_graph,
    locate_face,
    truncate_folding_graph,
    truncated_graph,
    validate_pattern,
)


def _turns(*values) -> list[TurnAngle]:
    return [TurnAngle.of_turns(Fraction(v)) for v in values]


class TestValidatePattern:
    def test_quarter_fold_valid(self):
        assert validate_pattern(quarter_fold_pattern()).ok

    def test_crossing_segments(self):
        p = CreasePattern(
            vertices={
                0: Point2(0, 0), 1: Point2(1, 1), 2: Point2(0, 1), 3: Point2(1, 0),
            },
            segments=(Segment(0, 1), Segment(2, 3)),
        )
        assert "crossing creases" in validate_pattern(p).kinds()

    def test_collinear_degree_two(self):
        p = star_pattern(_turns(0, "1/2"))
        assert "collinear degree-2" in validate_pattern(p).kinds()

    def test_duplicate_vertices(self):
        p = CreasePattern(
            vertices={0: Point2(0, 0), 1: Point2(0, 0)},
            rays=tuple(Ray(v, d) for v in (0, 1) for d in _turns(0, "1/3", "2/3")),
        )
        assert "duplicate vertices" in validate_pattern(p).kinds()

    def test_converging_rays_cross_far_away(self):
        p = CreasePattern(
            vertices={0: Point2(0, 0), 1: Point2(1, 0)},
            segments=(Segment(0, 1),),
            rays=(
                Ray(0, TurnAngle.of_radians(1.0)),
                Ray(1, TurnAngle.of_radians(1.0 + 1e-3)),
                Ray(0, TurnAngle.of_turns(Fraction(3, 4))),
                Ray(1, TurnAngle.of_turns(Fraction(3, 4))),
            ),
        )
        assert "crossing creases" in validate_pattern(p).kinds()

    def test_dangling_vertex(self):
        p = CreasePattern(
            vertices={0: Point2(0, 0), 1: Point2(1, 0)},
            segments=(Segment(0, 1),),
            rays=tuple(Ray(0, d) for d in _turns("1/4", "1/2", "3/4")),
        )
        assert "dangling vertex" in validate_pattern(p).kinds()


class TestFoldingGraph:
    def test_star_has_parallel_edges_to_infinity(self):
        g = folding_graph(quarter_fold_pattern())
        assert set(g.graph.nodes) == {0, INFINITY}
        assert g.graph.number_of_edges(0, INFINITY) == 4

    def test_grid(self):
        g = folding_graph(grid_pattern(3))
        finite = [n for n in g.graph.nodes if n != INFINITY]
        assert len(finite) == 9
        assert g.graph.number_of_edges() == 24
        assert all(g.degree(v) == 4 for v in finite)
        assert g.degree(INFINITY) == 12

    def test_no_rays_no_infinity(self):
        g = folding_graph(triangle_pattern())
        assert INFINITY not in g.graph

    def test_rotation_counter_clockwise(self):
        g = folding_graph(quarter_fold_pattern())
        assert g.rotation[0] == (0, 1, 2, 3)
        at_infinity = list(g.rotation[INFINITY])
        start = at_infinity.index(3)
        assert at_infinity[start:] + at_infinity[:start] == [3, 2, 1, 0]

    def test_invalid_pattern_rejected(self):
        with pytest.raises(PatternError, match="Invalid pattern"):
            folding_graph(star_pattern(_turns(0, "1/2")))


class TestTruncatedGraph:
    def test_star(self):
        t = truncated_graph(quarter_fold_pattern())
        assert nx.is_isomorphic(t.graph, nx.star_graph(4))

    def test_double_star(self):
        t = truncated_graph(double_star_pattern())
        assert t.graph.number_of_nodes() == 8
        assert sorted(d for _, d in t.graph.degree) == [1] * 6 + [4, 4]

    def test_no_rays_unchanged(self):
        t = truncated_graph(triangle_pattern())
        assert nx.is_isomorphic(t.graph, nx.cycle_graph(3))

    def test_both_routes_agree(self):
        p = grid_pattern(3)
        direct = truncated_graph(p)
        subdivided = truncate_folding_graph(folding_graph(p))
        assert nx.is_isomorphic(direct.graph, subdivided.graph)
        leaves = [n for n, d in direct.graph.degree if d == 1]
        assert len(leaves) == len(p.rays)


class TestBuildFaces:
    def test_quarter_fold(self):
        fc = build_faces(quarter_fold_pattern())
        assert len(fc.faces) == 4
        assert all(f.unbounded for f in fc.faces)

    def test_grid_counts(self):
        fc = build_faces(grid_pattern(3))
        bounded = [f for f in fc.faces if not f.unbounded]
        assert len(bounded) == 4
        assert len(fc.faces) - len(bounded) == 12
        assert fc.euler_characteristic == 2

    def test_base_star_wedges(self):
        theta = Fraction(1, 14)
        p = star_pattern([TurnAngle.of_turns(k * theta) for k in (0, 3, 6, 8, 10, 12)])
        assert len(build_faces(p).faces) == 6

    def test_triangle_has_outer_face(self):
        fc = build_faces(triangle_pattern())
        assert len(fc.faces) == 2
        assert fc.euler_characteristic == 2

    def test_every_crease_has_two_faces(self):
        fc = build_faces(grid_pattern(3))
        for left, right in fc.crease_faces.values():
            assert left is not None and right is not None
            assert left != right


class TestLocateFace:
    def test_quadrants(self):
        fc = build_faces(quarter_fold_pattern())
        ids = {locate_face(fc, Point2(x, y)) for x in (-0.5, 0.5) for y in (-0.5, 0.5)}
        assert len(ids) == 4

    def test_far_point_outside_clip_circle(self):
        fc = build_faces(quarter_fold_pattern())
        assert locate_face(fc, Point2(100.0, 50.0)) == locate_face(fc, Point2(1.0, 0.5))

    def test_far_face_is_first_quadrant(self):
        fc = build_faces(quarter_fold_pattern())
        assert far_face(fc) == locate_face(fc, Point2(0.5, 0.5))
