"""Foldings of convex sheets whose creases are chords between boundary points.

Faces come from polygonizing the sheet outline together with the chords,
so the fold map, layer search and fold plans of the plane case apply
unchanged. A disk folds by peeling off safe creases one at a time; the
square and polygon variants live next door.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import Iterable

import networkx as nx
import numpy as np
import shapely
from shapely.geometry import LineString, Point, Polygon
from shapely.geometry.polygon import orient
from shapely.ops import polygonize, unary_union

from src.config import EPS_LEN
from src.models.fold import FoldMap
from src.models.geom import Point2, TurnAngle
from src.models.layering import FoldPlan, PleatStep, ReflectStep, Stacking
from src.models.outer import Disk, OuterPattern, Region, SafetyVerdict, boundary_path
from src.models.pattern import Face, FaceComplex
from src.models.report import CheckReport, Violation
from src.services.foldcheck_service import FoldMapError, evaluate, fold_map_from_faces
from src.services.geometry import reflect_across_line, segments_cross
from src.services.layering_service import LayeringService, PlanConflict

logger = logging.getLogger(__name__)

AREA_EPS = 1e-12
ON_BOUNDARY = 1e-7


class OuterPatternError(ValueError):
    """Raised for chord patterns that are malformed or cannot be folded as asked."""


# ── Validation ───────────────────────────────────────────────────────────


def validate_outer(p: OuterPattern) -> CheckReport:
    violations: list[Violation] = []
    for v, q in sorted(p.points.items()):
        if p.region.boundary_distance(q) > ON_BOUNDARY:
            violations.append(Violation("off boundary", "folding point is not on the sheet boundary", (v,)))
    for (v, q), (w, r) in itertools.combinations(sorted(p.points.items()), 2):
        if q.distance_to(r) < EPS_LEN:
            violations.append(Violation("degenerate", "folding points coincide", (v, w)))

    seen: dict[frozenset[int], int] = {}
    for i, (a, b) in enumerate(p.chords):
        pair = frozenset((a, b))
        if pair in seen:
            violations.append(Violation("duplicate", f"same ends as chord {seen[pair]}", (i,)))
        seen.setdefault(pair, i)
        u, v = p.chord_line(i)
        middle = (u + v).scaled(0.5)
        if p.region.boundary_distance(middle) < ON_BOUNDARY:
            violations.append(Violation("boundary chord", "chord runs along the boundary", (i,)))
    for i, j in itertools.combinations(range(len(p.chords)), 2):
        if segments_cross(p.chord_line(i), p.chord_line(j)):
            violations.append(Violation("crossing chords", "chords meet inside the sheet", (i, j)))
    return CheckReport("outer", tuple(violations))


def require_outer(p: OuterPattern) -> None:
    report = validate_outer(p)
    if not report.ok:
        raise OuterPatternError(f"Invalid chord pattern: {report.violations[0]}")


def chord_graph(p: OuterPattern) -> nx.Graph:
    graph = nx.Graph()
    graph.add_nodes_from(p.points)
    for i, (a, b) in enumerate(p.chords):
        graph.add_edge(a, b, chord=i)
    return graph


# ── Faces ────────────────────────────────────────────────────────────────


@dataclass(frozen=True)
class SheetPiece:
    polygon: Polygon
    sample: Point2
    chords: frozenset[int]


def _arc_midpoints(p: OuterPattern, marks: list[tuple[float, Point2]]) -> list[tuple[float, Point2]]:
    """Arc points between neighbouring folding points, so no chord runs along an outline edge."""
    folding = sorted(p.region.parameter(q) for q in p.points.values())
    between = []
    for t0, t1 in zip(folding, folding[1:] + [folding[0] + 1.0]):
        if t1 - t0 < EPS_LEN:
            continue
        if any(t0 < t < t1 or t0 < t + 1.0 < t1 for t, _ in marks):
            continue
        mid = ((t0 + t1) / 2.0) % 1.0
        between.append((mid, p.region.point_at(mid)))
    return between


def sheet_outline(p: OuterPattern) -> list[Point2]:
    """Boundary polygon through every corner (or disk sample) and every folding point."""
    marks = [(t, p.region.point_at(t)) for t in p.region.breakpoints()]
    if isinstance(p.region, Disk) and len(p.points) > 1:
        marks += _arc_midpoints(p, marks)
    marks += [(p.region.parameter(q), q) for q in p.points.values()]
    marks.sort(key=lambda m: m[0])
    outline: list[Point2] = []
    for _, q in marks:
        if outline and outline[-1].distance_to(q) < EPS_LEN:
            if q in p.points.values():
                outline[-1] = q
            continue
        outline.append(q)
    if len(outline) > 1 and outline[0].distance_to(outline[-1]) < EPS_LEN:
        outline.pop()
    return outline


def _chord_string(p: OuterPattern, chord_id: int) -> LineString:
    u, v = p.chord_line(chord_id)
    return LineString([u.as_tuple(), v.as_tuple()])


def split_sheet(p: OuterPattern, chord_ids: Iterable[int]) -> list[SheetPiece]:
    """Pieces of the sheet cut along the given chords, in a stable order."""
    ids = sorted(set(chord_ids))
    sheet = Polygon([q.as_tuple() for q in sheet_outline(p)])
    if ids:
        noded = unary_union([sheet.exterior] + [_chord_string(p, i) for i in ids])
        polygons = [poly for poly in polygonize(noded) if poly.area > AREA_EPS]
    else:
        polygons = [sheet]
    pieces = []
    for poly in polygons:
        poly = orient(poly, 1.0)
        rep = poly.representative_point()
        bounding = frozenset(
            i for i in ids if poly.exterior.distance(_chord_string(p, i).interpolate(0.5, normalized=True)) < ON_BOUNDARY
        )
        pieces.append(SheetPiece(poly, Point2(rep.x, rep.y), bounding))
    pieces.sort(key=lambda pc: (round(pc.sample.x, 9), round(pc.sample.y, 9)))
    return pieces


def outer_faces(p: OuterPattern) -> FaceComplex:
    require_outer(p)
    pieces = split_sheet(p, range(len(p.chords)))
    faces: list[Face] = []
    for face_id, piece in enumerate(pieces):
        coords = [Point2(x, y) for x, y in list(piece.polygon.exterior.coords)[:-1]]
        on_edge = tuple(
            v for v, q in sorted(p.points.items())
            if piece.polygon.exterior.distance(Point(q.x, q.y)) < ON_BOUNDARY
        )
        faces.append(Face(
            id=face_id,
            creases=tuple(sorted(piece.chords)),
            vertices=on_edge,
            unbounded=False,
            polygon=tuple(coords),
            sample=piece.sample,
        ))

    crease_faces: dict[int, tuple[int, int]] = {}
    for chord_id in range(len(p.chords)):
        u, v = p.chord_line(chord_id)
        sides = [f.id for f in faces if chord_id in f.creases]
        if len(sides) != 2:
            raise OuterPatternError(f"Chord {chord_id} does not separate two faces")
        left = next((f for f in sides if (v - u).cross(faces[f].sample - u) > 0), sides[0])
        right = sides[1] if left == sides[0] else sides[0]
        crease_faces[chord_id] = (left, right)

    radius = max(q.norm for q in sheet_outline(p))
    complex_ = FaceComplex(
        faces=tuple(faces),
        crease_faces=crease_faces,
        crease_lines={i: p.chord_line(i) for i in range(len(p.chords))},
        crease_headings={
            i: TurnAngle.of_vector(*(p.chord_line(i)[1] - p.chord_line(i)[0]).as_tuple())
            for i in range(len(p.chords))
        },
        clip_radius=radius,
        vertices=dict(p.points),
        has_infinity=False,
    )
    logger.debug("Chord pattern has %d faces", len(faces))
    return complex_


def outer_fold_map(p: OuterPattern, base: int = 0) -> FoldMap:
    return fold_map_from_faces(outer_faces(p), base)


# ── Safe creases ─────────────────────────────────────────────────────────


def _side_path(p: OuterPattern, chord_id: int, ccw: bool) -> list[Point2]:
    """Boundary path from the chord's first end to its second along one side."""
    a, b = p.chords[chord_id]
    u, v = p.points[a], p.points[b]
    ta, tb = p.region.parameter(u), p.region.parameter(v)
    if ccw:
        path = boundary_path(p.region, ta, tb)
    else:
        path = list(reversed(boundary_path(p.region, tb, ta)))
    return [u] + path[1:-1] + [v]


def _monotone(path: list[Point2]) -> bool:
    """Distance from the first point grows and distance to the last shrinks along the path."""
    u, v = path[0], path[-1]
    tol = 1e-9 * max(u.distance_to(v), 1.0)
    for a, b in zip(path, path[1:]):
        step = b - a
        length = step.norm
        if length < EPS_LEN:
            continue
        direction = step.scaled(1.0 / length)
        if direction.dot(a - u) < -tol or direction.dot(b - v) > tol:
            return False
    return True


def _reflection_crosses(p: OuterPattern, chord_id: int, path: list[Point2], among: Iterable[int]) -> bool:
    u, v = path[0], path[-1]
    mirrored = LineString([reflect_across_line(q, u, v).as_tuple() for q in path])
    for other in among:
        if other == chord_id:
            continue
        hit = mirrored.intersection(_chord_string(p, other))
        if hit.is_empty:
            continue
        for x, y in shapely.get_coordinates(hit):
            q = Point2(float(x), float(y))
            if q.distance_to(u) > ON_BOUNDARY and q.distance_to(v) > ON_BOUNDARY:
                return True
    return False


def chords_beyond(p: OuterPattern, chord_id: int, away_from: Point2, among: Iterable[int]) -> set[int]:
    """Chords of ``among`` on the side of ``chord_id`` not holding ``away_from``."""
    u, v = p.chord_line(chord_id)
    here = (v - u).cross(away_from - u)
    out = set()
    for other in among:
        if other == chord_id:
            continue
        x, y = p.chord_line(other)
        if (v - u).cross((x + y).scaled(0.5) - u) * here < 0:
            out.add(other)
    return out


def is_safe_crease(p: OuterPattern, chord_id: int, among: Iterable[int] | None = None) -> SafetyVerdict:
    """A side of the chord is monotone and mirroring its boundary crosses no other chord."""
    pool = list(range(len(p.chords)) if among is None else among)
    monotone_seen = False
    for ccw in (True, False):
        path = _side_path(p, chord_id, ccw)
        if not _monotone(path):
            continue
        monotone_seen = True
        if _reflection_crosses(p, chord_id, path, pool):
            continue
        u, v = path[0], path[-1]
        # the counter-clockwise side lies to the right of the chord
        offside = u + Point2(-(v - u).y, (v - u).x).scaled(1.0 if ccw else -1.0)
        side = tuple(sorted(chords_beyond(p, chord_id, offside, pool)))
        return SafetyVerdict(True, side=side)
    return SafetyVerdict(False, "reflection crosses" if monotone_seen else "monotonicity")


def lune_check(p: OuterPattern, chord_id: int, samples: int = 500, seed: int = 0) -> CheckReport:
    """Images of sampled points on the monotone side stay in that side or its mirror."""
    path = next((pt for pt in (_side_path(p, chord_id, c) for c in (True, False)) if _monotone(pt)), None)
    if path is None:
        return CheckReport("lune", (Violation("monotonicity", "no monotone side", (chord_id,)),))
    fc = outer_faces(p)
    m = fold_map_from_faces(fc, fc.crease_faces[chord_id][0])
    u, v = path[0], path[-1]
    side = Polygon([q.as_tuple() for q in path])
    mirrored = Polygon([reflect_across_line(q, u, v).as_tuple() for q in path])
    allowed = unary_union([side, mirrored]).buffer(ON_BOUNDARY)

    rng = np.random.default_rng(seed)
    xmin, ymin, xmax, ymax = side.bounds
    violations: list[Violation] = []
    drawn = 0
    while drawn < samples:
        x, y = rng.uniform(xmin, xmax), rng.uniform(ymin, ymax)
        if not side.contains(Point(x, y)):
            continue
        drawn += 1
        image = evaluate(m, Point2(float(x), float(y)))
        if not allowed.covers(Point(image.x, image.y)):
            violations.append(Violation("escape", f"({x:.4f}, {y:.4f}) leaves the lune", (chord_id,)))
    return CheckReport("lune", tuple(violations))


# ── Disk plans ───────────────────────────────────────────────────────────


def pleat_plan(pieces: list[SheetPiece]) -> FoldPlan:
    """Monotone accordion through pieces whose adjacency is a path."""
    if len(pieces) <= 1:
        return FoldPlan(())
    adjacency = nx.Graph()
    adjacency.add_nodes_from(range(len(pieces)))
    for i, j in itertools.combinations(range(len(pieces)), 2):
        if pieces[i].chords & pieces[j].chords:
            adjacency.add_edge(i, j)
    ends = [i for i in adjacency if adjacency.degree(i) == 1]
    if len(ends) != 2 or any(d > 2 for _, d in adjacency.degree()):
        raise OuterPatternError("Pieces do not form a single pleat")
    order = list(nx.dfs_preorder_nodes(adjacency, ends[0]))
    return FoldPlan((PleatStep(tuple(pieces[i].sample for i in order), Stacking.ABOVE),))


def _away_arc(p: OuterPattern, chord_id: int, inside: Point2) -> float:
    a, b = p.chords[chord_id]
    u, v = p.points[a], p.points[b]
    ta, tb = p.region.parameter(u), p.region.parameter(v)
    if (v - u).cross(inside - u) > 0:
        return (tb - ta) % 1.0
    return (ta - tb) % 1.0


def busy_regions(p: OuterPattern, active: Iterable[int] | None = None) -> list[SheetPiece]:
    """Pieces of the sheet bounded by three or more of the ``active`` chords."""
    pool = range(len(p.chords)) if active is None else active
    return [pc for pc in split_sheet(p, pool) if len(pc.chords) >= 3]


def safe_chord(p: OuterPattern, region: SheetPiece, active: Iterable[int] | None = None) -> int:
    """Safe bounding chord of ``region``, trying the smallest subtended arc first."""
    pool = frozenset(range(len(p.chords)) if active is None else active)
    candidates = sorted(region.chords, key=lambda c: (_away_arc(p, c, region.sample), c))
    for chord in candidates:
        if is_safe_crease(p, chord, pool).safe:
            return chord
    raise OuterPatternError(
        f"No safe chord among {sorted(region.chords)} around {region.sample.as_tuple()}"
    )


def _disk_plan(p: OuterPattern, active: frozenset[int]) -> FoldPlan:
    pieces = split_sheet(p, active)
    busy = [pc for pc in pieces if len(pc.chords) >= 3]
    if not busy:
        return pleat_plan(pieces)
    region = busy[0]
    chord = safe_chord(p, region, active)
    flap = frozenset({chord} | chords_beyond(p, chord, region.sample, active))
    logger.debug("Folding chord %d with %d chords behind it", chord, len(flap) - 1)
    step = ReflectStep(chord, region.sample, _disk_plan(p, flap), flap)
    return FoldPlan((step,) + _disk_plan(p, active - flap).steps)


def disk_fold_plan(p: OuterPattern) -> FoldPlan:
    if not isinstance(p.region, Disk):
        raise OuterPatternError("Disk plans need a disk sheet")
    require_outer(p)
    plan = _disk_plan(p, frozenset(range(len(p.chords))))
    logger.info("Disk plan for %d chords has %d steps", len(p.chords), len(plan))
    return plan


# ── Realizers and generators ─────────────────────────────────────────────


def realize_outerplanar_on_disk(g: nx.Graph, region: Region | None = None) -> OuterPattern:
    """Vertices around the circle in outer-face order, edges as chords."""
    disk = region or Disk(Point2(0.0, 0.0), 1.0)
    nodes = list(g.nodes)
    if not nodes:
        raise OuterPatternError("Graph must have at least one vertex")
    if any(not isinstance(v, int) for v in nodes):
        raise OuterPatternError("Graph vertices must be integers")
    if nx.number_of_selfloops(g):
        raise OuterPatternError("Graph must not have loops")
    apex = ("apex",)
    extended = nx.Graph(g)
    extended.add_edges_from((apex, v) for v in nodes)
    planar, embedding = nx.check_planarity(extended)
    if not planar:
        raise OuterPatternError("Graph is not outerplanar")
    order = list(reversed(list(embedding.neighbors_cw_order(apex))))
    n = len(order)
    points = {v: disk.point_at((i + 0.5) / n) for i, v in enumerate(order)}
    chords = tuple(sorted((min(a, b), max(a, b)) for a, b in g.edges))
    logger.info("Placed %d vertices and %d chords on the disk", n, len(chords))
    return OuterPattern(disk, points, chords)


def _interleaved(x: tuple[int, int], y: tuple[int, int]) -> bool:
    a, b = sorted(x)
    inside = [a < e < b for e in y if e not in x]
    return len(inside) == 2 and inside[0] != inside[1]


def random_disk_pattern(rng: np.random.Generator, points: int = 8, chords: int = 5) -> OuterPattern:
    """Random non-crossing chords between random boundary points of the unit disk."""
    disk = Disk(Point2(0.0, 0.0), 1.0)
    params = np.sort(rng.uniform(0.0, 1.0, size=points))
    positions = {i: disk.point_at(float(t)) for i, t in enumerate(params)}
    chosen: list[tuple[int, int]] = []
    for _ in range(20 * chords):
        if len(chosen) == chords:
            break
        a, b = sorted(int(x) for x in rng.choice(points, size=2, replace=False))
        if (a, b) in chosen or any(_interleaved((a, b), c) for c in chosen):
            continue
        chosen.append((a, b))
    return OuterPattern(disk, positions, tuple(chosen))


def plan_check(p: OuterPattern, plan: FoldPlan) -> CheckReport:
    """Run a plan through the layer model and report the first conflict, if any."""
    try:
        LayeringService(outer_fold_map(p)).plan_to_layering(plan, validate=True)
    except (PlanConflict, FoldMapError, OuterPatternError) as exc:
        return CheckReport("plan", (Violation("plan", str(exc)),))
    return CheckReport("plan")
