"""Planar geometry kernel shared by every construction and check."""
from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Hashable, Iterable

from shapely.geometry import LineString, Point, Polygon

from src.config import EPS_ANG, EPS_LEN
from src.models.geom import TAU, Isometry2, Lune, Orientation, Point2, TurnAngle, Wedge


def reflect_across_line(p: Point2, a: Point2, b: Point2) -> Point2:
    d = b - a
    length_sq = d.dot(d)
    if length_sq < EPS_LEN * EPS_LEN:
        raise ValueError("Reflection line endpoints must not coincide")
    t = (p - a).dot(d) / length_sq
    foot = a + d.scaled(t)
    return foot.scaled(2.0) - p


def reflection(a: Point2, heading: TurnAngle) -> Isometry2:
    """Reflection across the line through ``a`` with direction ``heading``."""
    rotation = (heading * 2).normalized()
    linear = Isometry2(Orientation.REVERSING, rotation, (0.0, 0.0))
    image = linear.apply(a)
    return Isometry2(Orientation.REVERSING, rotation, (a.x - image.x, a.y - image.y))


def reflection_through(a: Point2, b: Point2) -> Isometry2:
    if a.distance_to(b) < EPS_LEN:
        raise ValueError("Reflection line endpoints must not coincide")
    return reflection(a, TurnAngle.of_vector(b.x - a.x, b.y - a.y))


def compose(a: Isometry2, b: Isometry2) -> Isometry2:
    return a.then(b)


def cyclic_gaps(dirs: Iterable[TurnAngle]) -> list[TurnAngle]:
    """Gaps between consecutive directions, in counter-clockwise order.

    The first gap starts at the smallest normalized direction. A single
    direction yields one full turn.
    """
    ordered = sorted((d.normalized() for d in dirs), key=lambda d: d.radians_value)
    if not ordered:
        raise ValueError("Directions must not be empty")
    gaps: list[TurnAngle] = []
    for i, current in enumerate(ordered):
        nxt = ordered[(i + 1) % len(ordered)]
        gap = nxt - current
        if i == len(ordered) - 1:
            gap = gap + TurnAngle.of_turns(1)
        if gap.is_zero(EPS_ANG) or (len(ordered) > 1 and _is_full_turn(gap)):
            raise ValueError("Directions must be distinct")
        gaps.append(gap)
    return gaps


def _is_full_turn(gap: TurnAngle) -> bool:
    if gap.exact is not None:
        return gap.exact == 1
    return abs(gap.radians_value - TAU) < EPS_ANG


def alternating_sum(gaps: list[TurnAngle]) -> TurnAngle:
    total = TurnAngle.zero()
    for i, gap in enumerate(gaps):
        total = total + gap if i % 2 == 0 else total - gap
    return total


def angle_is_zero(angle: TurnAngle) -> bool:
    if angle.exact is not None:
        return angle.exact == 0
    return abs(angle.radians_value) < EPS_ANG


def angle_less_than_half(angle: TurnAngle) -> bool:
    if angle.exact is not None:
        return angle.exact < Fraction(1, 2)
    return angle.radians_value < math.pi - EPS_ANG


def minimal_arc(dirs: Iterable[TurnAngle]) -> tuple[TurnAngle, TurnAngle]:
    """Return (start, opening) of the smallest arc containing every direction."""
    ordered = sorted((d.normalized() for d in dirs), key=lambda d: d.radians_value)
    if not ordered:
        raise ValueError("Directions must not be empty")
    if len(ordered) == 1:
        return ordered[0], TurnAngle.zero()
    gaps = cyclic_gaps(ordered)
    widest = max(range(len(gaps)), key=lambda i: gaps[i].radians_value)
    start = ordered[(widest + 1) % len(ordered)]
    return start, TurnAngle.of_turns(1) - gaps[widest]


def lune_contains(lune: Lune, p: Point2) -> bool:
    return (
        lune.u.distance_to(p) <= lune.radius_u + EPS_LEN
        and lune.v.distance_to(p) <= lune.radius_v + EPS_LEN
    )


def point_in_wedge(wedge: Wedge, p: Point2, strict: bool = True) -> bool:
    offset = p - wedge.apex
    if offset.norm < EPS_LEN:
        return not strict
    heading = TurnAngle.of_vector(offset.x, offset.y)
    delta = (heading.radians_value - wedge.start_dir.radians_value) % TAU
    margin = EPS_ANG if strict else -EPS_ANG
    return margin < delta < wedge.opening.radians_value - margin


def wedge_polygon(wedge: Wedge, reach: float, steps: int = 16) -> Polygon:
    """Clip a wedge to a fan polygon of radius ``reach`` around its apex."""
    coords = [wedge.apex.as_tuple()]
    for k in range(steps + 1):
        angle = wedge.start_dir.radians_value + wedge.opening.radians_value * k / steps
        coords.append((
            wedge.apex.x + reach * math.cos(angle),
            wedge.apex.y + reach * math.sin(angle),
        ))
    return Polygon(coords)


def segments_cross(
    a: tuple[Point2, Point2], b: tuple[Point2, Point2]
) -> bool:
    """True if two segments meet anywhere except at a shared endpoint."""
    line_a = LineString([a[0].as_tuple(), a[1].as_tuple()])
    line_b = LineString([b[0].as_tuple(), b[1].as_tuple()])
    if line_a.distance(line_b) > EPS_LEN:
        return False
    shared = [p for p in a if any(p.distance_to(q) < EPS_LEN for q in b)]
    if not shared:
        return True
    # segments sharing an endpoint only meet again when they overlap
    for p in a:
        if p not in shared and line_b.distance(Point(p.x, p.y)) < EPS_LEN:
            return True
    for p in b:
        if all(p.distance_to(s) >= EPS_LEN for s in shared):
            if line_a.distance(Point(p.x, p.y)) < EPS_LEN:
                return True
    return False


def signed_area(points: list[Point2]) -> float:
    total = 0.0
    for i, p in enumerate(points):
        q = points[(i + 1) % len(points)]
        total += p.cross(q)
    return total / 2.0


# ── Half-edge face tracing ───────────────────────────────────────────────


@dataclass(frozen=True)
class HalfEdge:
    label: Hashable
    origin: Hashable
    target: Hashable


def trace_planar_faces(
    positions: dict[Hashable, Point2],
    edges: Iterable[tuple[Hashable, Hashable, Hashable]],
) -> tuple[list[list[HalfEdge]], list[list[HalfEdge]]]:
    """Trace the faces of a straight-line plane graph.

    ``edges`` holds (label, a, b) triples. Returns (bounded, outer) where each
    bounded face is a counter-clockwise walk of half-edges with positive area,
    and ``outer`` collects the walks with non-positive area.
    """
    outgoing: dict[Hashable, list[HalfEdge]] = defaultdict(list)
    for label, a, b in edges:
        outgoing[a].append(HalfEdge(label, a, b))
        outgoing[b].append(HalfEdge(label, b, a))

    def heading(h: HalfEdge) -> float:
        d = positions[h.target] - positions[h.origin]
        return math.atan2(d.y, d.x)

    rank: dict[HalfEdge, int] = {}
    for node, hs in outgoing.items():
        hs.sort(key=heading)
        for i, h in enumerate(hs):
            rank[h] = i

    def next_half(h: HalfEdge) -> HalfEdge:
        around = outgoing[h.target]
        twin = HalfEdge(h.label, h.target, h.origin)
        return around[(rank[twin] - 1) % len(around)]

    seen: set[HalfEdge] = set()
    bounded: list[list[HalfEdge]] = []
    outer: list[list[HalfEdge]] = []
    for hs in outgoing.values():
        for start in hs:
            if start in seen:
                continue
            walk: list[HalfEdge] = []
            h = start
            while h not in seen:
                seen.add(h)
                walk.append(h)
                h = next_half(h)
            area = signed_area([positions[e.origin] for e in walk])
            (bounded if area > EPS_LEN * EPS_LEN else outer).append(walk)
    return bounded, outer
