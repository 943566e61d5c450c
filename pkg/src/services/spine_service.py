"""Trees drawn as chord patterns on convex polygons.

The spine of a tree is what remains after removing its leaves. A tree folds
on a k-gon exactly when its spine has at most k leaves: draw the spine with
its leaves at corners, push every spine vertex onto one side of a face it
touches (black vertices to the last face met on the walk, white ones to the
first), and hang the tree leaves off the face left over.
"""
from __future__ import annotations

import logging
from collections import deque

from src.config import PERTURB_ETA
from src.models.geom import Point2
from src.models.outer import ConvexPolygon, OuterPattern, SpineInfo
from src.models.tree import PlaneTree
from src.services.outer_service import OuterPatternError

logger = logging.getLogger(__name__)

SQUARE_SPINE_LEAVES = 4


def spine(t: PlaneTree) -> SpineInfo:
    """Spine vertices and spine leaves; trees of one or two nodes count every node as a leaf."""
    if len(t.nodes) <= 2:
        return SpineInfo(frozenset(t.nodes), tuple(t.nodes))
    core = [v for v in t.nodes if not t.is_leaf(v)]
    if len(core) == 1:
        return SpineInfo(frozenset(core), (core[0],))
    leaves = tuple(v for v in core if sum(1 for w in t.rotation[v] if not t.is_leaf(w)) <= 1)
    return SpineInfo(frozenset(core), leaves)


def square_tree_realizable(t: PlaneTree) -> bool:
    return spine(t).leaf_count <= SQUARE_SPINE_LEAVES


# ── Drawing ──────────────────────────────────────────────────────────────


def _spread(polygon: ConvexPolygon, t0: float, span: float, count: int) -> list[Point2]:
    """``count`` points strictly inside a boundary arc, nudged off any corner they land on."""
    corners = polygon.breakpoints()
    nudge = PERTURB_ETA * min(a.distance_to(b) for a, b in polygon.sides) / polygon.perimeter
    points = []
    for r in range(count):
        t = t0 + span * (r + 1) / (count + 1)
        for c in corners:
            gap = (t - c) % 1.0
            if gap < nudge or 1.0 - gap < nudge:
                t = c + nudge
                break
        points.append(polygon.point_at(t))
    return points


def _tour(rotation: dict[int, tuple[int, ...]], root: int) -> list[int]:
    """Closed walk around a plane tree, always turning to the next neighbour counter-clockwise."""
    walk = [root]
    prev, cur = root, rotation[root][0]
    for _ in range(2 * (len(rotation) - 1)):
        walk.append(cur)
        around = rotation[cur]
        prev, cur = cur, around[(around.index(prev) + 1) % len(around)]
    return walk


def _depths(rotation: dict[int, tuple[int, ...]], root: int) -> dict[int, int]:
    depth = {root: 0}
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for w in rotation[u]:
            if w not in depth:
                depth[w] = depth[u] + 1
                queue.append(w)
    return depth


def _star(t: PlaneTree, polygon: ConvexPolygon, center: int) -> OuterPattern:
    """Center on a corner, leaves across the sides that corner does not touch."""
    corners = polygon.breakpoints()
    k = len(corners)
    leaves = [w for w in t.rotation[center]]
    span = (corners[k - 1] - corners[1]) % 1.0
    points = {center: polygon.corners[0]}
    points.update(zip(leaves, _spread(polygon, corners[1], span, len(leaves))))
    return OuterPattern(polygon, points, tuple((center, w) for w in leaves))


def realize_tree_on_polygon(t: PlaneTree, polygon: ConvexPolygon | None = None) -> OuterPattern:
    sheet = polygon or ConvexPolygon.square()
    k = len(sheet.corners)
    info = spine(t)
    if info.leaf_count > k:
        raise OuterPatternError(f"Tree does not fold on a {k}-gon: spine has {info.leaf_count} leaves > {k}")
    corners = sheet.breakpoints()

    nodes = t.nodes
    if len(nodes) == 1:
        return OuterPattern(sheet, {nodes[0]: sheet.point_at(corners[0] + 0.5 / k)})
    if len(nodes) == 2:
        a, b = nodes
        points = {a: sheet.point_at(corners[0] + 0.5 / k), b: sheet.point_at(corners[k // 2] + 0.5 / k)}
        return OuterPattern(sheet, points, ((a, b),))
    if len(info.vertices) == 1:
        return _star(t, sheet, info.leaves[0])

    rotation = {v: tuple(w for w in t.rotation[v] if w in info.vertices) for v in info.vertices}
    root = min(info.leaves)
    walk = _tour(rotation, root)
    steps = len(walk) - 1
    spine_leaves = set(info.leaves)
    face_of_step = []
    face = 0
    for j in range(steps):
        if 0 < j and walk[j] in spine_leaves:
            face += 1
        face_of_step.append(face)
    m = face + 1

    depth = _depths(rotation, root)
    arrive: dict[int, tuple[int, int]] = {root: (face_of_step[-1], steps)}  # (face, walk position)
    leave: dict[int, tuple[int, int]] = {root: (face_of_step[0], 0)}
    for j in range(steps):
        a, b = walk[j], walk[j + 1]
        if b != root and b not in arrive and depth[b] == depth[a] + 1:
            arrive[b] = (face_of_step[j], j + 1)
        if a != root and depth[b] == depth[a] - 1:
            leave[a] = (face_of_step[j], j)

    slots: dict[int, list[tuple[int, int, int]]] = {f: [] for f in range(m)}
    for v in info.vertices:
        black = depth[v] % 2 == 0
        own, hang = (arrive[v], leave[v]) if (v == root or not black) else (leave[v], arrive[v])
        slots[own[0]].append((own[1], 0, v))
        for w in t.rotation[v]:
            if w not in info.vertices:
                slots[hang[0]].append((hang[1], 1 + w, w))

    anchor = [corners[i * k // m] for i in range(m)]
    points: dict[int, Point2] = {}
    for f in range(m):
        start, end = anchor[f], anchor[(f + 1) % m]
        span = (end - start) % 1.0 or 1.0
        items = [v for *_, v in sorted(slots[f])]
        points.update(zip(items, _spread(sheet, start, span, len(items))))

    chords = tuple(sorted((min(a, b), max(a, b)) for a, b in t.to_graph().edges))
    logger.info("Drew a tree of %d nodes on a %d-gon (%d spine leaves)", len(nodes), k, m)
    return OuterPattern(sheet, points, chords)
