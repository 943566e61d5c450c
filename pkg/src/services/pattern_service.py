"""Crease-pattern validation and the graphs and faces derived from a pattern."""
from __future__ import annotations

import itertools
import logging
import math
from typing import Hashable

import networkx as nx
from shapely.geometry import Point, Polygon

from src.config import EPS_ANG, EPS_LEN, INFINITY
from src.models.geom import Point2, TurnAngle
from src.models.pattern import (
    HALF_TURN,
    Crease,
    CreasePattern,
    Face,
    FaceComplex,
    FoldingGraph,
    TruncatedGraph,
)
from src.models.report import CheckReport, Violation
from src.services.geometry import segments_cross, trace_planar_faces

logger = logging.getLogger(__name__)


class PatternError(ValueError):
    """Raised when an operation needs a well-formed pattern and gets another."""


# ── Validation ───────────────────────────────────────────────────────────


def validate_pattern(p: CreasePattern) -> CheckReport:
    violations: list[Violation] = []
    ids = sorted(p.vertices)
    for u, v in itertools.combinations(ids, 2):
        if p.vertices[u].distance_to(p.vertices[v]) < EPS_LEN:
            violations.append(Violation("duplicate vertices", "positions coincide", (u, v)))

    for c1, c2 in itertools.combinations(p.creases, 2):
        if _creases_meet(p, c1, c2):
            violations.append(Violation(
                "crossing creases", "creases cross or overlap away from a shared vertex",
                (c1.id, c2.id),
            ))

    for v in ids:
        degree = p.degree(v)
        if degree <= 1:
            violations.append(Violation("dangling vertex", f"degree {degree}", (v,)))
        elif degree == 2:
            (_, d1), (_, d2) = p.directions_at(v)
            if _is_half_turn(d2 - d1):
                violations.append(Violation(
                    "collinear degree-2", "a straight crease point, not a vertex point", (v,),
                ))

    planar = nx.Graph()
    planar.add_nodes_from(ids)
    for crease in p.creases:
        planar.add_edge(crease.a, INFINITY if crease.is_ray else crease.b)
    if nx.number_connected_components(planar) > 1:
        violations.append(Violation("disconnected pattern", "crease graph has several pieces"))
    return CheckReport("pattern", tuple(violations))


def require_valid(p: CreasePattern) -> None:
    report = validate_pattern(p)
    if not report.ok:
        raise PatternError(f"Invalid pattern: {report.violations[0]}")


def _is_half_turn(angle: TurnAngle) -> bool:
    delta = (angle - HALF_TURN).normalized()
    if delta.exact is not None:
        return delta.exact == 0
    r = delta.radians_value
    return min(r, 2 * math.pi - r) < EPS_ANG


def _creases_meet(p: CreasePattern, c1: Crease, c2: Crease) -> bool:
    reach = 4.0 * p.clip_radius
    if c1.is_ray and c2.is_ray:
        # converging rays may cross far outside the clip circle
        a, b = p.vertices[c1.a], p.vertices[c2.a]
        u, w = c1.heading.unit, c2.heading.unit
        denom = u.cross(w)
        if abs(denom) > EPS_ANG:
            s = (b - a).cross(w) / denom
            t = (b - a).cross(u) / denom
            reach = max(reach, s + 1.0, t + 1.0)
    return segments_cross(_crease_span(p, c1, reach), _crease_span(p, c2, reach))


def _crease_span(p: CreasePattern, crease: Crease, reach: float) -> tuple[Point2, Point2]:
    a = p.vertices[crease.a]
    if crease.is_ray:
        return a, a + crease.heading.unit.scaled(reach)
    return a, p.vertices[crease.b]


def ray_tip(p: CreasePattern, crease: Crease, radius: float) -> Point2:
    """Point where a ray leaves the circle of ``radius`` about the origin."""
    a = p.vertices[crease.a]
    u = crease.heading.unit
    along = a.dot(u)
    t = -along + math.sqrt(along * along - (a.dot(a) - radius * radius))
    return a + u.scaled(t)


# ── Graphs ───────────────────────────────────────────────────────────────


def folding_graph(p: CreasePattern) -> FoldingGraph:
    require_valid(p)
    graph = nx.MultiGraph()
    graph.add_nodes_from(p.vertices)
    ends: dict[int, tuple[Hashable, Hashable]] = {}
    for crease in p.creases:
        other = INFINITY if crease.is_ray else crease.b
        graph.add_edge(crease.a, other, key=crease.id)
        ends[crease.id] = (crease.a, other)

    rotation: dict[Hashable, tuple[int, ...]] = {
        v: tuple(cid for cid, _ in p.directions_at(v)) for v in p.vertices
    }
    if p.has_rays:
        radius = p.clip_radius
        rays = [c for c in p.creases if c.is_ray]

        def tip_angle(c: Crease) -> float:
            tip = ray_tip(p, c, radius)
            return math.atan2(tip.y, tip.x)

        # seen from ∞ the circle at infinity runs clockwise
        rotation[INFINITY] = tuple(c.id for c in sorted(rays, key=tip_angle, reverse=True))
    logger.debug("Folding graph: %d nodes, %d edges", graph.number_of_nodes(), graph.number_of_edges())
    return FoldingGraph(graph=graph, rotation=rotation, ends=ends)


def truncated_graph(p: CreasePattern) -> TruncatedGraph:
    require_valid(p)
    graph = nx.Graph()
    graph.add_nodes_from(p.vertices)
    leaves: dict[int, Hashable] = {}
    for crease in p.creases:
        if crease.is_ray:
            leaf = ("leaf", crease.id)
            graph.add_edge(crease.a, leaf)
            leaves[crease.id] = leaf
        else:
            graph.add_edge(crease.a, crease.b)
    return TruncatedGraph(graph=graph, leaves=leaves)


def truncate_folding_graph(g: FoldingGraph) -> TruncatedGraph:
    """Subdivide every edge at ∞ and then delete ∞."""
    graph = nx.Graph()
    leaves: dict[int, Hashable] = {}
    for u, v, key in g.graph.edges(keys=True):
        if INFINITY in (u, v):
            finite = v if u == INFINITY else u
            leaf = ("leaf", key)
            graph.add_edge(finite, leaf)
            leaves[key] = leaf
        else:
            graph.add_edge(u, v)
    graph.add_nodes_from(n for n in g.graph.nodes if n != INFINITY)
    return TruncatedGraph(graph=graph, leaves=leaves)


# ── Faces ────────────────────────────────────────────────────────────────


def build_faces(p: CreasePattern) -> FaceComplex:
    require_valid(p)
    radius = p.clip_radius
    positions: dict[Hashable, Point2] = dict(p.vertices)
    edges: list[tuple[Hashable, Hashable, Hashable]] = []
    crease_lines: dict[int, tuple[Point2, Point2]] = {}

    ring: list[Hashable] = []
    for crease in p.creases:
        if crease.is_ray:
            tip_key = f"{INFINITY}:tip:{crease.id}"
            positions[tip_key] = ray_tip(p, crease, radius)
            ring.append(tip_key)
            edges.append((crease.id, crease.a, tip_key))
            crease_lines[crease.id] = (p.vertices[crease.a], positions[tip_key])
        else:
            edges.append((crease.id, crease.a, crease.b))
            crease_lines[crease.id] = (p.vertices[crease.a], p.vertices[crease.b])

    if ring:
        for k in range(4):
            rim = Point2(radius * math.cos(k * math.pi / 2), radius * math.sin(k * math.pi / 2))
            if all(rim.distance_to(positions[t]) > 1e-6 for t in ring):
                key = f"{INFINITY}:rim:{k}"
                positions[key] = rim
                ring.append(key)
        ring.sort(key=lambda key: math.atan2(positions[key].y, positions[key].x))
        for i, key in enumerate(ring):
            edges.append((("ring", i), key, ring[(i + 1) % len(ring)]))

    bounded, outer = trace_planar_faces(positions, edges)
    faces: list[Face] = []
    crease_faces: dict[int, list[int | None]] = {c.id: [None, None] for c in p.creases}

    def record(walk, face_id: int) -> None:
        for h in walk:
            if isinstance(h.label, int):
                side = 0 if h.origin == p.creases[h.label].a else 1
                crease_faces[h.label][side] = face_id

    for walk in bounded:
        face_id = len(faces)
        coords = [positions[h.origin] for h in walk]
        polygon = Polygon([c.as_tuple() for c in coords])
        sample = polygon.representative_point()
        faces.append(Face(
            id=face_id,
            creases=tuple(h.label for h in walk if isinstance(h.label, int)),
            vertices=tuple(h.origin for h in walk if isinstance(h.origin, int)),
            unbounded=any(not isinstance(h.label, int) for h in walk),
            polygon=tuple(coords),
            sample=Point2(sample.x, sample.y),
        ))
        record(walk, face_id)

    if not ring:
        walk = outer[0] if outer else []
        face_id = len(faces)
        faces.append(Face(
            id=face_id,
            creases=tuple(h.label for h in walk),
            vertices=tuple(h.origin for h in walk),
            unbounded=True,
            polygon=None,
            sample=Point2(2.0 * radius, 0.0),
        ))
        record(walk, face_id)

    complex_ = FaceComplex(
        faces=tuple(faces),
        crease_faces={cid: (sides[0], sides[1]) for cid, sides in crease_faces.items()},
        crease_lines=crease_lines,
        crease_headings={c.id: c.heading for c in p.creases},
        clip_radius=radius,
        vertices=dict(p.vertices),
        has_infinity=bool(p.rays),
    )
    logger.debug("Built %d faces (Euler characteristic %d)", len(faces), complex_.euler_characteristic)
    return complex_


def locate_face(fc: FaceComplex, point: Point2) -> int:
    """Id of the face containing ``point``; points on a crease go to either side."""
    target = Point(point.x, point.y)
    best_id, best_depth = -1, -math.inf
    for face in fc.faces:
        if face.polygon is None:
            continue
        polygon = Polygon([c.as_tuple() for c in face.polygon])
        if polygon.contains(target):
            depth = polygon.exterior.distance(target)
        else:
            depth = -polygon.distance(target)
        if depth > best_depth:
            best_id, best_depth = face.id, depth
    if best_depth >= -EPS_LEN:
        return best_id
    open_faces = [f for f in fc.faces if f.polygon is None]
    if open_faces:
        return open_faces[0].id
    if not fc.has_infinity:
        raise PatternError(f"Point {point.as_tuple()} lies outside every face")
    # beyond the clip circle: use the half-planes bounding each unbounded face
    return max(
        (f for f in fc.faces if f.unbounded),
        key=lambda f: _half_plane_depth(fc, f, point),
    ).id


def _half_plane_depth(fc: FaceComplex, face: Face, point: Point2) -> float:
    depth = math.inf
    for crease_id in face.creases:
        a, b = fc.crease_lines[crease_id]
        d = b - a
        normal = Point2(-d.y, d.x).scaled(1.0 / d.norm)
        side = 1.0 if (face.sample - a).dot(normal) >= 0 else -1.0
        depth = min(depth, side * (point - a).dot(normal))
    return depth


def far_face(fc: FaceComplex) -> int:
    """The face reached by walking far out just above the positive x-axis."""
    reach = 4.0 * fc.clip_radius
    return locate_face(fc, Point2(reach * math.cos(1e-6), reach * math.sin(1e-6)))
