"""Wheel replacement on folding graphs and on crease patterns, and dual orthotrees.

Folding a small neighbourhood of a vertex point over a line that crosses
its image turns the vertex into a hub ringed by a cycle of new creases.
At ∞ the same move folds over a line beyond every vertex image.
"""
from __future__ import annotations

import logging
from typing import Hashable

import networkx as nx
from shapely.geometry import LineString, Point

from src.config import ATTACH_DISTANCE, EPS_ANG, INFINITY
from src.models.fold import FoldMap
from src.models.geom import TAU, Point2, TurnAngle
from src.models.orthotree import DualOrthotreeSpec, WheelStep
from src.models.pattern import CreasePattern, FoldingGraph, Ray, Segment
from src.services.catalog import quarter_fold_pattern
from src.services.foldcheck_service import build_fold_map
from src.services.geometry import minimal_arc
from src.services.pattern_service import folding_graph

logger = logging.getLogger(__name__)

FAR_MARGIN = 1.0


class WheelError(ValueError):
    """Raised when a wheel replacement cannot be carried out."""


# ── Graph level ──────────────────────────────────────────────────────────


def _other_end(g: FoldingGraph, key: int, v: Hashable) -> Hashable:
    a, b = g.ends[key]
    return b if a == v else a


def _attachment(g: FoldingGraph, step: WheelStep) -> tuple[int, ...]:
    if step.target not in g.graph:
        raise WheelError(f"Wheel target {step.target} is not a vertex")
    rotation = g.rotation[step.target]
    if len(rotation) < 3:
        raise WheelError(f"Wheel replacement needs degree at least 3, got {len(rotation)}")
    if any(_other_end(g, key, step.target) == step.target for key in rotation):
        raise WheelError(f"Wheel target {step.target} must not carry a loop")
    if not step.attachment:
        return rotation
    if len(step.attachment) == len(rotation) and step.attachment[0] in rotation:
        at = rotation.index(step.attachment[0])
        if rotation[at:] + rotation[:at] == step.attachment:
            return step.attachment
    raise WheelError("Wheel attachment must follow the cyclic order at the target")


def _next_node(g: FoldingGraph) -> int:
    return max((n for n in g.graph.nodes if n != INFINITY), default=-1) + 1


def wheel_replace_graph(g: FoldingGraph, step: WheelStep) -> FoldingGraph:
    order = _attachment(g, step)
    hub, d = step.target, len(order)
    first = _next_node(g)
    cycle = [first + i for i in range(d)]
    next_key = max(g.ends, default=-1) + 1
    spokes = [next_key + i for i in range(d)]
    rims = [next_key + d + i for i in range(d)]

    graph = nx.MultiGraph(g.graph)
    ends = dict(g.ends)
    graph.remove_edges_from([(*g.ends[key], key) for key in order])
    for i, key in enumerate(order):
        c, c_next = cycle[i], cycle[(i + 1) % d]
        graph.add_edge(c, _other_end(g, key, hub), key=key)
        ends[key] = (c, _other_end(g, key, hub))
        graph.add_edge(hub, c, key=spokes[i])
        ends[spokes[i]] = (hub, c)
        graph.add_edge(c, c_next, key=rims[i])
        ends[rims[i]] = (c, c_next)

    rotation = dict(g.rotation)
    rotation[hub] = tuple(spokes)
    for i, key in enumerate(order):
        rotation[cycle[i]] = (key, rims[i], spokes[i], rims[i - 1])
    return FoldingGraph(graph=graph, rotation=rotation, ends=ends)


def contract_wheel(g: FoldingGraph, hub: Hashable) -> FoldingGraph:
    """Undo a wheel replacement whose hub is ``hub``."""
    spokes = g.rotation.get(hub, ())
    d = len(spokes)
    cycle = [_other_end(g, key, hub) for key in spokes]
    outer: list[int] = []
    rims: set[int] = set()
    for i, (c, spoke) in enumerate(zip(cycle, spokes)):
        around = g.rotation.get(c, ())
        if len(around) != 4 or spoke not in around:
            raise WheelError(f"Vertex {hub} is not the hub of a wheel")
        j = around.index(spoke)
        ahead, key, behind = around[(j - 1) % 4], around[(j + 2) % 4], around[(j + 1) % 4]
        if _other_end(g, ahead, c) != cycle[(i + 1) % d] or _other_end(g, behind, c) != cycle[i - 1]:
            raise WheelError(f"Vertex {hub} is not the hub of a wheel")
        outer.append(key)
        rims.update((ahead, behind))

    graph = nx.MultiGraph(g.graph)
    graph.remove_nodes_from(cycle)
    ends = {k: v for k, v in g.ends.items() if k not in rims and k not in spokes}
    for c, key in zip(cycle, outer):
        w = _other_end(g, key, c)
        graph.add_edge(hub, w, key=key)
        ends[key] = (hub, w)
    rotation = {v: r for v, r in g.rotation.items() if v not in cycle}
    rotation[hub] = tuple(outer)
    return FoldingGraph(graph=graph, rotation=rotation, ends=ends)


def base_multigraph() -> FoldingGraph:
    return folding_graph(quarter_fold_pattern())


def dual_orthotree_graph(spec: DualOrthotreeSpec) -> FoldingGraph:
    g = base_multigraph()
    for step in spec.steps:
        g = wheel_replace_graph(g, step)
    return g


def dali_cross_spec() -> DualOrthotreeSpec:
    """Eight glued cubes: a column of four with four arms around the third.

    Vertex 0 stays the top face of the column; 9-12 are the sides of the
    third cube once the column is built.
    """
    return DualOrthotreeSpec.of_targets(0, 0, 0, 0, 9, 10, 11, 12, name="dali-cross")


# ── Fold level ───────────────────────────────────────────────────────────


def _image_direction(m: FoldMap, crease_id: int, direction: TurnAngle) -> TurnAngle:
    left, _ = m.faces.crease_faces[crease_id]
    return m.isometry(left).apply_direction(direction).normalized()


def _apart(a: TurnAngle, b: TurnAngle) -> bool:
    gap = (a - b).normalized()
    if gap.exact is not None:
        return gap.exact != 0
    return EPS_ANG < gap.radians_value < TAU - EPS_ANG


def _distinct(dirs: list[TurnAngle]) -> list[TurnAngle]:
    distinct: list[TurnAngle] = []
    for d in dirs:
        if all(_apart(d, e) for e in distinct):
            distinct.append(d)
    return distinct


def _narrow_bisector(dirs: list[TurnAngle]) -> TurnAngle:
    start, opening = minimal_arc(_distinct(dirs))
    if opening.turns >= 0.5 - EPS_ANG:
        raise WheelError(f"Image does not fit in a wedge narrower than a half turn ({opening})")
    return (start + opening / 2).normalized()


def _clearance(p: CreasePattern, v: int) -> float:
    """Distance from ``v`` to the nearest vertex or crease not incident to it."""
    origin = p.vertices[v]
    here = Point(origin.as_tuple())
    reach = 4.0 * p.clip_radius
    distances = [origin.distance_to(q) for w, q in p.vertices.items() if w != v]
    for crease in p.creases:
        if v in (crease.a, crease.b):
            continue
        a = p.vertices[crease.a]
        b = a + crease.heading.unit.scaled(reach) if crease.is_ray else p.vertices[crease.b]
        distances.append(LineString([a.as_tuple(), b.as_tuple()]).distance(here))
    return min(distances, default=ATTACH_DISTANCE)


def _rebuild(
    p: CreasePattern,
    cut: dict[int, tuple[int, int]],
    positions: dict[int, Point2],
    ring: list[int],
) -> CreasePattern:
    """Split each crease in ``cut`` at its new vertex and join the new vertices in a ring.

    ``cut`` maps crease id to (near endpoint, new vertex).
    """
    segments: list[Segment] = []
    rays: list[Ray] = []
    for crease in p.creases:
        if crease.id not in cut:
            if crease.is_ray:
                rays.append(Ray(crease.a, crease.heading))
            else:
                segments.append(Segment(crease.a, crease.b, crease.heading))
            continue
        near, c = cut[crease.id]
        heading = crease.direction_at(near)
        segments.append(Segment(near, c, heading))
        if crease.is_ray:
            rays.append(Ray(c, heading))
        else:
            segments.append(Segment(c, crease.other(near), heading))
    for c, c_next in zip(ring, ring[1:] + ring[:1]):
        segments.append(Segment(c, c_next))
    vertices = dict(p.vertices)
    vertices.update(positions)
    return CreasePattern(vertices=vertices, segments=tuple(segments), rays=tuple(rays))


def wheel_replace_fold(
    p: CreasePattern,
    v: Hashable,
    delta: float | None = None,
    step: WheelStep | None = None,
) -> CreasePattern:
    """Fold a line across the image near ``v`` (or beyond everything, at ∞) and pull it back.

    New vertex ids follow the same rule as ``wheel_replace_graph`` so the two
    levels agree on vertex ids.
    """
    g = folding_graph(p)
    order = _attachment(g, step or WheelStep(v))
    m = build_fold_map(p)
    first = _next_node(g)
    ring = [first + i for i in range(len(order))]
    positions: dict[int, Point2] = {}
    cut: dict[int, tuple[int, int]] = {}

    if v == INFINITY:
        dirs = [_image_direction(m, key, p.crease(key).heading) for key in order]
        u = _narrow_bisector(dirs).unit
        images = {w: m.vertex_image(w) for w in p.vertices}
        level = max(q.dot(u) for q in images.values()) + (delta or FAR_MARGIN)
        for c, key, e in zip(ring, order, dirs):
            crease = p.crease(key)
            t = (level - images[crease.a].dot(u)) / e.unit.dot(u)
            positions[c] = p.vertices[crease.a] + crease.heading.unit.scaled(t)
            cut[key] = (crease.a, c)
        logger.info("Wheel at infinity: folding line at height %.6g", level)
        return _rebuild(p, cut, positions, ring)

    if v not in p.vertices:
        raise WheelError(f"Wheel target {v} is not a vertex point")
    local = [(key, p.crease(key).direction_at(v)) for key in order]
    images = [_image_direction(m, key, d) for key, d in local]
    u = _narrow_bisector(images).unit
    cosines = [e.unit.dot(u) for e in images]
    clearance = _clearance(p, v)
    if delta is None:
        delta = 0.5 * clearance * min(cosines)
    reach = [delta / c for c in cosines]
    if delta <= 0 or max(reach) >= clearance:
        raise WheelError(
            f"No safe chord at vertex {v}: offset {delta:.6g} reaches {max(reach):.6g}, "
            f"clearance is {clearance:.6g}"
        )
    origin = p.vertices[v]
    for c, (key, d), t in zip(ring, local, reach):
        positions[c] = origin + d.unit.scaled(t)
        cut[key] = (v, c)
    logger.info("Wheel at vertex %s: chord offset %.6g, %d new vertices", v, delta, len(ring))
    return _rebuild(p, cut, positions, ring)


def realize_dual_orthotree(spec: DualOrthotreeSpec) -> CreasePattern:
    p = quarter_fold_pattern()
    for step in spec.steps:
        p = wheel_replace_fold(p, step.target, step=step)
    logger.info("Realized dual orthotree %r with %d vertex points", spec.name, len(p.vertices))
    return p


def matches_spec(p: CreasePattern, spec: DualOrthotreeSpec) -> bool:
    return nx.is_isomorphic(folding_graph(p).graph, dual_orthotree_graph(spec).graph)


def image_wedge(p: CreasePattern) -> tuple[TurnAngle, TurnAngle]:
    """(start, opening) of the narrowest wedge holding every ray image."""
    m = build_fold_map(p)
    dirs = [_image_direction(m, c.id, c.heading) for c in p.creases if c.is_ray]
    return minimal_arc(_distinct(dirs))
