"""Small hand-built crease patterns used by the CLI, the fixtures and the tests."""
from __future__ import annotations

import math
from collections.abc import Iterator
from fractions import Fraction
from itertools import product

from src.models.geom import TAU, Point2, TurnAngle
from src.models.outer import ConvexPolygon, Disk, OuterPattern
from src.models.pattern import CreasePattern, Ray, Segment

EAST = TurnAngle.of_turns(0)
NORTH = TurnAngle.of_turns(Fraction(1, 4))
WEST = TurnAngle.of_turns(Fraction(1, 2))
SOUTH = TurnAngle.of_turns(Fraction(3, 4))


def star_pattern(directions: list[TurnAngle], center: Point2 | None = None) -> CreasePattern:
    """One vertex with a ray in each direction."""
    apex = center or Point2(0.0, 0.0)
    return CreasePattern(
        vertices={0: apex},
        rays=tuple(Ray(0, d) for d in directions),
    )


def quarter_fold_pattern() -> CreasePattern:
    return star_pattern([EAST, NORTH, WEST, SOUTH])


def grid_pattern(columns: int, rows: int | None = None) -> CreasePattern:
    """Full lines x = 0..columns-1 and y = 0..rows-1.

    Vertex (i, j) gets id j * columns + i.
    """
    rows = columns if rows is None else rows
    if columns < 1 or rows < 1:
        raise ValueError("Grid size must be positive")
    vertices = {
        j * columns + i: Point2(float(i), float(j))
        for j in range(rows) for i in range(columns)
    }
    segments: list[Segment] = []
    for j in range(rows):
        for i in range(columns - 1):
            segments.append(Segment(j * columns + i, j * columns + i + 1, EAST))
    for i in range(columns):
        for j in range(rows - 1):
            segments.append(Segment(j * columns + i, (j + 1) * columns + i, NORTH))
    rays: list[Ray] = []
    for i in range(columns):
        rays.append(Ray(i, SOUTH))
        rays.append(Ray((rows - 1) * columns + i, NORTH))
    for j in range(rows):
        rays.append(Ray(j * columns, WEST))
        rays.append(Ray(j * columns + columns - 1, EAST))
    return CreasePattern(vertices=vertices, segments=tuple(segments), rays=tuple(rays))


def double_star_pattern() -> CreasePattern:
    """Two degree-4 vertices joined by a segment, three rays at each."""
    return CreasePattern(
        vertices={0: Point2(0.0, 0.0), 1: Point2(1.0, 0.0)},
        segments=(Segment(0, 1, EAST),),
        rays=(
            Ray(0, NORTH), Ray(0, WEST), Ray(0, SOUTH),
            Ray(1, NORTH), Ray(1, EAST), Ray(1, SOUTH),
        ),
    )


def triangle_pattern() -> CreasePattern:
    """A closed triangle of segments with no rays."""
    return CreasePattern(
        vertices={0: Point2(0.0, 0.0), 1: Point2(1.0, 0.0), 2: Point2(0.0, 1.0)},
        segments=(Segment(0, 1), Segment(1, 2), Segment(2, 0)),
    )


def enclosed_vertex_pattern() -> CreasePattern:
    """A ray-free vertex joined only to the three corners of a triangle around it.

    Removing the corners cuts the inner vertex off from ∞, which no flat
    folding allows.
    """
    return CreasePattern(
        vertices={
            0: Point2(0.0, 0.0), 1: Point2(4.0, 0.0), 2: Point2(2.0, 3.0), 3: Point2(2.0, 1.0),
        },
        segments=(
            Segment(0, 1), Segment(1, 2), Segment(2, 0),
            Segment(3, 0), Segment(3, 1), Segment(3, 2),
        ),
        rays=(Ray(0, WEST), Ray(0, SOUTH), Ray(1, EAST), Ray(1, SOUTH), Ray(2, NORTH)),
    )


# ── Chord patterns on bounded sheets ─────────────────────────────────────


def _on_circle(*angles: float) -> dict[int, Point2]:
    return {i: Point2(math.cos(a), math.sin(a)) for i, a in enumerate(angles)}


def parallel_chords_disk() -> OuterPattern:
    """Three vertical chords across the unit disk at x = -0.5, 0.2 and 0.5."""
    points: dict[int, Point2] = {}
    for i, x in enumerate((-0.5, 0.2, 0.5)):
        h = math.sqrt(1.0 - x * x)
        points[2 * i] = Point2(x, -h)
        points[2 * i + 1] = Point2(x, h)
    return OuterPattern(Disk(Point2(0.0, 0.0), 1.0), points, ((0, 1), (2, 3), (4, 5)))


def inscribed_triangle_disk() -> OuterPattern:
    points = _on_circle(*(TAU * k / 3 + TAU / 4 for k in range(3)))
    return OuterPattern(Disk(Point2(0.0, 0.0), 1.0), points, ((0, 1), (1, 2), (2, 0)))


def inscribed_square_disk() -> OuterPattern:
    points = _on_circle(*(TAU * k / 4 for k in range(4)))
    return OuterPattern(Disk(Point2(0.0, 0.0), 1.0), points, ((0, 1), (1, 2), (2, 3), (3, 0)))


def no_safe_crease_square() -> OuterPattern:
    """Two top corner creases whose mirror images cross each other, above a low left-right crease.

    The region bounded by the three creases has no safe crease.
    """
    points = {
        0: Point2(0.0, 0.04), 1: Point2(0.48, 1.0),
        2: Point2(1.0, 0.04), 3: Point2(0.52, 1.0),
        4: Point2(0.0, 0.02), 5: Point2(1.0, 0.02),
    }
    return OuterPattern(ConvexPolygon.square(), points, ((0, 1), (2, 3), (4, 5)))


def corner_pleat_square() -> OuterPattern:
    """One creased corner at the top, one at the bottom, and a left-right crease between."""
    points = {
        0: Point2(0.0, 0.8), 1: Point2(0.3, 1.0),
        2: Point2(0.0, 0.5), 3: Point2(1.0, 0.4),
        4: Point2(0.7, 0.0), 5: Point2(1.0, 0.2),
    }
    return OuterPattern(ConvexPolygon.square(), points, ((0, 1), (2, 3), (4, 5)))


def twisted_triangle_pattern(twist: float = 0.2, reach: float = 0.1, shoulder: float = 0.5) -> OuterPattern:
    """Equilateral sheet with a twisted inscribed triangle and a pleat across each flap.

    Point i (0-2) cuts side i at ``twist`` of its length, so chord (i, i+1)
    cuts off the flap around corner i+1. That flap is creased again from
    point 3+i, ``reach`` of the way from point i towards the corner, to a
    shoulder 6+i that keeps ``shoulder`` of the short leg next to point i+1.
    """
    if not (0.0 < twist < 0.5 and 0.0 < reach < 1.0 and 0.0 < shoulder < 1.0):
        raise ValueError(f"Triangle parameters out of range: {twist}, {reach}, {shoulder}")
    corners = (Point2(0.0, 0.0), Point2(1.0, 0.0), Point2(0.5, math.sqrt(3.0) / 2.0))
    sheet = ConvexPolygon(corners)

    def along(i: int, t: float) -> Point2:
        a, b = corners[i % 3], corners[(i + 1) % 3]
        return a + (b - a).scaled(t)

    points: dict[int, Point2] = {}
    for i in range(3):
        points[i] = along(i, twist)
        points[3 + i] = along(i, twist + reach * (1.0 - twist))
        points[6 + i] = along(i + 1, twist * (1.0 - shoulder))
    chords = tuple((i, (i + 1) % 3) for i in range(3)) + tuple((3 + i, 6 + i) for i in range(3))
    return OuterPattern(sheet, points, chords)


def twisted_triangle_variants() -> Iterator[OuterPattern]:
    """The default triangle first, then the rest of the twist, reach and shoulder grid."""
    yield twisted_triangle_pattern()
    for twist, reach, shoulder in product((0.15, 0.2, 0.3, 0.4), (0.1, 0.4, 0.7), (0.15, 0.5, 0.85)):
        if (twist, reach, shoulder) != (0.2, 0.1, 0.5):
            yield twisted_triangle_pattern(twist, reach, shoulder)


# Per arm: how far the first flap ray turns back, and how far the last turns ahead.
NESTED_FLAPS: tuple[tuple[Fraction, Fraction], ...] = (
    (Fraction(1, 7), Fraction(1, 30)),
    (Fraction(1, 7), Fraction(1, 30)),
    (Fraction(1, 9), Fraction(1, 20)),
    (Fraction(1, 9), Fraction(1, 20)),
)
NESTED_REACH = (1.0, 1.0, 1.3, 1.3)


def nested_flaps_pattern(
    flaps: tuple[tuple[Fraction, Fraction], ...] = NESTED_FLAPS,
    reach: tuple[float, ...] = NESTED_REACH,
) -> CreasePattern:
    """Two crossing diagonals whose four arms end in lopsided three-ray flaps.

    Arm k ends at ``reach[k]`` with rays at d - back, d + ahead - back and
    d + ahead, which keeps every arm vertex flat-foldable. Arms on the same
    diagonal stop at different distances, so after both diagonals fold the
    flaps of nested arms sit on top of each other.
    """
    if len(flaps) != 4 or len(reach) != 4:
        raise ValueError("Nested flaps need exactly four arms")
    arms = [TurnAngle.of_turns(Fraction(2 * k + 1, 8)) for k in range(4)]
    vertices = {0: Point2(0.0, 0.0)}
    segments: list[Segment] = []
    rays: list[Ray] = []
    for k, (d, r, (back, ahead)) in enumerate(zip(arms, reach, flaps), start=1):
        vertices[k] = d.unit.scaled(r)
        segments.append(Segment(0, k, d))
        turns = (-back, ahead - back, ahead)
        rays.extend(Ray(k, (d + TurnAngle.of_turns(t)).normalized()) for t in turns)
    return CreasePattern(vertices=vertices, segments=tuple(segments), rays=tuple(rays))


def nested_flaps_variants() -> Iterator[CreasePattern]:
    """The default flaps first, then every pairing of two lopsided flap shapes."""
    yield nested_flaps_pattern()
    shapes = [(Fraction(a), Fraction(b)) for a, b in (
        ("1/7", "1/30"), ("1/9", "1/20"), ("1/12", "1/30"), ("1/30", "1/7"), ("1/20", "1/9"),
    )]
    for near, far in product(shapes, shapes):
        flaps = (near, near, far, far)
        if flaps != NESTED_FLAPS:
            yield nested_flaps_pattern(flaps)
