"""Flat foldings whose truncated graph is a given tree.

The construction starts from a star at the root and grows the tree one
internal vertex at a time. Every ray carries a wedge with the ray as its
median; a new vertex sits a unit along its ray and spreads its child rays
evenly inside that wedge, so wedges never meet and the pattern stays flat
foldable.
"""
from __future__ import annotations

import itertools
import logging
from collections import deque
from fractions import Fraction

from shapely.geometry import LineString

from src.config import ATTACH_DISTANCE, EPS_ANG
from src.models.fold import FoldMap
from src.models.geom import TAU, Point2, TurnAngle, Wedge
from src.models.layering import FoldPlan, Layering, PleatStep, Stacking
from src.models.pattern import CreasePattern, Ray, Segment
from src.models.report import CheckReport, Violation
from src.models.tree import PlaneTree, TreeRealization, TreeVerdict
from src.services.geometry import wedge_polygon
from src.services.layering_service import LayeringService
from src.services.pattern_service import locate_face

logger = logging.getLogger(__name__)

ANCHOR_OFFSET = 1e-4
HALF = Fraction(1, 2)


class TreeFoldError(ValueError):
    """Raised when a tree cannot be realized."""


def check_tree_foldable(t: PlaneTree) -> TreeVerdict:
    internal = t.internal_nodes
    if not internal:
        return TreeVerdict(False, None, "tree has no internal vertex")
    for v in internal:
        d = t.degree(v)
        if d % 2 or d < 4:
            return TreeVerdict(False, v, f"internal vertex {v} has degree {d}")
    return TreeVerdict(True)


def _gap_anchor(center: Point2, start: TurnAngle, end: TurnAngle) -> Point2:
    width = (end - start).normalized()
    if width.is_zero(EPS_ANG):
        width = TurnAngle.of_turns(1)
    middle = start + width / 2
    return center + middle.unit.scaled(ANCHOR_OFFSET)


class _Builder:
    def __init__(self, tree: PlaneTree) -> None:
        self._tree = tree
        self._pos: dict[int, Point2] = {}
        self._segments: list[Segment] = []
        self._rays: dict[int, tuple[int, TurnAngle]] = {}
        self._wedges: dict[int, Wedge] = {}
        self._steps: list[PleatStep] = []

    def base_star(self, root: int) -> None:
        nbrs = self._tree.rotation[root]
        d = len(nbrs)
        theta = TurnAngle.of_turns(Fraction(1, 2 * (d + 1)))
        offsets = [0, 3, 6] + [6 + 2 * k for k in range(1, d - 2)]
        center = Point2(0.0, 0.0)
        self._pos[root] = center
        dirs = [theta * k for k in offsets]
        for leaf, direction in zip(nbrs, dirs):
            self._rays[leaf] = (root, direction)
            self._wedges[leaf] = Wedge(center, (direction - theta).normalized(), theta * 2)

        def gap(i: int) -> Point2:
            return _gap_anchor(center, dirs[i], dirs[(i + 1) % d])

        # the two wide wedges go outermost, the rest pleat between them
        chain = [gap(0)] + [gap(i) for i in range(d - 1, 1, -1)] + [gap(1)]
        self._steps.append(PleatStep(tuple(chain), Stacking.ABOVE))

    def attach(self, v: int) -> None:
        apex, psi = self._rays.pop(v)
        wedge = self._wedges.pop(v)
        omega = wedge.opening
        center = self._pos[apex] + psi.unit.scaled(ATTACH_DISTANCE)
        self._pos[v] = center
        self._segments.append(Segment(apex, v, psi))

        nbrs = self._tree.rotation[v]
        d = len(nbrs)
        at = nbrs.index(apex)
        children = nbrs[at + 1:] + nbrs[:at]
        dirs: list[TurnAngle] = []
        for k, child in enumerate(children, start=1):
            direction = (psi - omega / 2 + omega * Fraction(k, d)).normalized()
            dirs.append(direction)
            self._rays[child] = (v, direction)
            self._wedges[child] = Wedge(center, (direction - omega / (2 * d)).normalized(), omega / d)

        back = (psi + TurnAngle.of_turns(HALF)).normalized()
        chain = [_gap_anchor(center, back, dirs[0])]
        chain += [_gap_anchor(center, a, b) for a, b in zip(dirs, dirs[1:])]
        chain.append(_gap_anchor(center, dirs[-1], back))
        self._steps.append(PleatStep(tuple(chain), Stacking.BETWEEN))

    def finish(self) -> TreeRealization:
        leaves = sorted(self._rays)
        rays = tuple(Ray(*self._rays[leaf]) for leaf in leaves)
        pattern = CreasePattern(
            vertices=dict(self._pos), segments=tuple(self._segments), rays=rays,
        )
        offset = len(self._segments)
        return TreeRealization(
            tree=self._tree,
            pattern=pattern,
            wedges={offset + i: self._wedges[leaf] for i, leaf in enumerate(leaves)},
            plan=FoldPlan(tuple(self._steps)),
            leaf_of_ray={offset + i: leaf for i, leaf in enumerate(leaves)},
        )


def _stripping_order(t: PlaneTree, root: int) -> list[int]:
    """Internal vertices other than the root, deepest first, as their leaves are stripped."""
    depth = {root: 0}
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for w in t.rotation[u]:
            if w not in depth:
                depth[w] = depth[u] + 1
                queue.append(w)
    remaining = [v for v in t.internal_nodes if v != root]
    return sorted(remaining, key=lambda u: (-depth[u], u))


def realize_base_star(d: int) -> TreeRealization:
    if d % 2 or d < 4:
        raise TreeFoldError(f"Base star degree must be even and at least 4, got {d}")
    return realize_tree(PlaneTree.star(d))


def realize_tree(t: PlaneTree) -> TreeRealization:
    verdict = check_tree_foldable(t)
    if not verdict.ok:
        raise TreeFoldError(f"Tree is not foldable: {verdict.reason}")
    root = min(t.internal_nodes)
    builder = _Builder(t)
    builder.base_star(root)
    for v in reversed(_stripping_order(t, root)):
        builder.attach(v)
    realization = builder.finish()
    logger.info(
        "Realized tree with %d nodes: %d vertex points, %d rays",
        len(t.nodes), len(realization.pattern.vertices), len(realization.pattern.rays),
    )
    return realization


# ── Certificates ─────────────────────────────────────────────────────────


def _interiors_disjoint_at_apex(w1: Wedge, w2: Wedge) -> bool:
    ahead = (w2.start_dir - w1.start_dir).normalized()
    behind = (w1.start_dir - w2.start_dir).normalized()
    if all(x.exact is not None for x in (ahead, behind, w1.opening, w2.opening)):
        return ahead.exact >= w1.opening.exact and behind.exact >= w2.opening.exact
    return (
        ahead.radians_value >= w1.opening.radians_value - EPS_ANG
        and behind.radians_value >= w2.opening.radians_value - EPS_ANG
    )


def wedge_certificate_check(r: TreeRealization) -> CheckReport:
    p = r.pattern
    reach = 8.0 * p.clip_radius
    violations: list[Violation] = []
    for crease_id, wedge in r.wedges.items():
        crease = p.crease(crease_id)
        if wedge.apex.distance_to(p.vertices[crease.a]) > 1e-9:
            violations.append(Violation("wedge apex", "wedge is not at the ray apex", (crease_id,)))
        offset = (wedge.bisector - crease.heading).normalized()
        median = offset.exact == 0 if offset.exact is not None else (
            min(offset.radians_value, TAU - offset.radians_value) < EPS_ANG
        )
        if not median:
            violations.append(Violation("median ray", "ray does not bisect its wedge", (crease_id,)))

    for (c1, w1), (c2, w2) in itertools.combinations(sorted(r.wedges.items()), 2):
        if w1.apex.distance_to(w2.apex) < 1e-12:
            overlap = not _interiors_disjoint_at_apex(w1, w2)
        else:
            shared = wedge_polygon(w1, reach).intersection(wedge_polygon(w2, reach))
            overlap = shared.area > 1e-9
        if overlap:
            violations.append(Violation("wedges overlap", "interiors meet", (c1, c2)))

    for crease in p.creases:
        if crease.is_ray:
            continue
        segment = LineString([p.vertices[crease.a].as_tuple(), p.vertices[crease.b].as_tuple()])
        for crease_id, wedge in r.wedges.items():
            inside = segment.intersection(wedge_polygon(wedge, reach).buffer(-1e-9))
            if inside.length > 1e-9:
                violations.append(Violation(
                    "segment in wedge", f"segment {crease.id} enters a wedge", (crease_id,),
                ))
    return CheckReport("wedges", tuple(violations))


def protected_wedge_check(r: TreeRealization, m: FoldMap, layering: Layering) -> CheckReport:
    """Over each wedge image, no face lies between the two faces flanking its ray."""
    service = LayeringService(m)
    violations: list[Violation] = []
    for crease_id, wedge in r.wedges.items():
        f, g = m.faces.crease_faces[crease_id]
        quarter = wedge.opening / 4
        for side, distance in itertools.product((-1, 1), (0.5, 1.0)):
            direction = wedge.bisector + quarter * side
            q = wedge.apex + direction.unit.scaled(distance)
            owner = locate_face(m.faces, q)
            image = m.isometry(owner).apply(q)
            for h in service.faces_covering(image):
                if h in (f, g):
                    continue
                lo, hi = (f, g) if layering.is_above(g, f) else (g, f)
                if layering.is_above(h, lo) and layering.is_above(hi, h):
                    violations.append(Violation(
                        "protected wedge", f"face {h} lies inside the wedge stack", (crease_id,),
                    ))
    return CheckReport("protected-wedge", tuple(dict.fromkeys(violations)))


def matches_tree(r: TreeRealization) -> bool:
    """The pattern's truncated graph equals the tree as a plane tree."""
    p = r.pattern
    for v in r.tree.internal_nodes:
        if v not in p.vertices:
            return False
        around = []
        for crease_id, _ in p.directions_at(v):
            crease = p.crease(crease_id)
            around.append(r.leaf_of_ray[crease_id] if crease.is_ray else crease.other(v))
        expected = list(r.tree.rotation[v])
        if sorted(around) != sorted(expected):
            return False
        start = around.index(expected[0])
        if around[start:] + around[:start] != expected:
            return False
    return sorted(r.leaf_of_ray.values()) == r.tree.leaves
