"""Local flat-foldability: Maekawa, Kawasaki, convexity and the fold map."""
from __future__ import annotations

import itertools
import logging
from collections import deque

from src.config import EPS_ANG, EPS_LEN
from src.models.fold import FoldMap
from src.models.geom import Isometry2, Point2
from src.models.pattern import CreasePattern, FaceComplex
from src.models.report import CheckReport, Violation
from src.services.geometry import (
    alternating_sum,
    angle_is_zero,
    angle_less_than_half,
    cyclic_gaps,
    reflection,
)
from src.services.pattern_service import PatternError, build_faces, far_face, locate_face, require_valid

logger = logging.getLogger(__name__)


class FoldMapError(ValueError):
    """Raised when the fold map cannot be built or evaluated."""


def maekawa_check(p: CreasePattern) -> CheckReport:
    violations = tuple(
        Violation("odd degree", f"{p.degree(v)} incident creases", (v,))
        for v in sorted(p.vertices)
        if p.degree(v) % 2
    )
    return CheckReport("maekawa", violations)


def kawasaki_check(p: CreasePattern) -> CheckReport:
    violations: list[Violation] = []
    for v in sorted(p.vertices):
        if p.degree(v) == 0:
            continue
        if p.degree(v) % 2:
            raise FoldMapError(f"Kawasaki check needs even degree; vertex {v} has {p.degree(v)}")
        gaps = cyclic_gaps(d for _, d in p.directions_at(v))
        total = alternating_sum(gaps)
        if not angle_is_zero(total):
            violations.append(Violation("alternating sum", f"{total} instead of zero", (v,)))
    return CheckReport("kawasaki", tuple(violations))


def convexity_check(p: CreasePattern) -> CheckReport:
    violations: list[Violation] = []
    for v in sorted(p.vertices):
        if p.degree(v) == 0:
            continue
        for gap in cyclic_gaps(d for _, d in p.directions_at(v)):
            if not angle_less_than_half(gap):
                violations.append(Violation("reflex wedge", f"gap of {gap}", (v,)))
    return CheckReport("convexity", tuple(violations))


# ── Fold map ─────────────────────────────────────────────────────────────


def crease_reflection(fc: FaceComplex, crease_id: int) -> Isometry2:
    anchor, _ = fc.crease_lines[crease_id]
    return reflection(anchor, fc.crease_headings[crease_id])


def vertex_closes(p: CreasePattern, v: int) -> bool:
    """Reflections across the creases around ``v`` compose to the identity."""
    around = Isometry2.identity()
    at = p.vertices[v]
    for _, direction in p.directions_at(v):
        around = around.then(reflection(at, direction))
    return around.approx_equal(Isometry2.identity(), EPS_LEN, EPS_ANG)


def build_fold_map(p: CreasePattern, base: int | None = None) -> FoldMap:
    require_valid(p)
    for v in sorted(p.vertices):
        if not vertex_closes(p, v):
            raise FoldMapError(f"Pattern is not locally flat foldable at vertex {v}")
    fc = build_faces(p)
    return fold_map_from_faces(fc, far_face(fc) if base is None else base)


def fold_map_from_faces(fc: FaceComplex, base: int) -> FoldMap:
    """Breadth-first walk of the dual graph composing crease reflections."""
    if not 0 <= base < len(fc.faces):
        raise FoldMapError(f"Base face {base} does not exist")
    isometries: list[Isometry2 | None] = [None] * len(fc.faces)
    isometries[base] = Isometry2.identity()
    queue = deque([base])
    while queue:
        f = queue.popleft()
        for crease_id, g in fc.neighbors(f):
            if isometries[g] is None:
                isometries[g] = isometries[f].then(crease_reflection(fc, crease_id))
                queue.append(g)
    missing = [i for i, iso in enumerate(isometries) if iso is None]
    if missing:
        raise FoldMapError(f"Faces {missing} are not reachable from the base face")

    for crease_id, (left, right) in fc.crease_faces.items():
        expected = isometries[left].then(crease_reflection(fc, crease_id))
        if not expected.approx_equal(isometries[right], EPS_LEN, EPS_ANG):
            raise FoldMapError(f"Pattern is not locally flat foldable across crease {crease_id}")
    logger.debug("Fold map over %d faces from base %d", len(fc.faces), base)
    return FoldMap(faces=fc, base_face=base, isometries=tuple(isometries))


def evaluate(m: FoldMap, point: Point2) -> Point2:
    try:
        face_id = locate_face(m.faces, point)
    except PatternError as exc:
        raise FoldMapError(str(exc)) from exc
    return m.isometries[face_id].apply(point)


def vertex_images(m: FoldMap) -> dict[int, Point2]:
    return {v: m.vertex_image(v) for v in m.faces.vertices}


def nearby_rigid_check(m: FoldMap) -> CheckReport:
    images = vertex_images(m)
    positions = m.faces.vertices
    violations: list[Violation] = []
    checked: set[tuple[int, int]] = set()
    for face in m.faces.faces:
        for u, v in itertools.combinations(sorted(set(face.vertices)), 2):
            if (u, v) in checked:
                continue
            checked.add((u, v))
            before = positions[u].distance_to(positions[v])
            after = images[u].distance_to(images[v])
            if abs(before - after) > EPS_LEN * max(1.0, before):
                violations.append(Violation(
                    "distance changed", f"{before!r} became {after!r}", (u, v),
                ))
    return CheckReport("nearby-rigid", tuple(violations))


def parity_check(m: FoldMap) -> CheckReport:
    """Faces on the two sides of every crease must have opposite orientation."""
    violations = tuple(
        Violation("same orientation", "both sides face the same way", (crease_id,))
        for crease_id, (left, right) in m.faces.crease_faces.items()
        if m.orientation(left) is m.orientation(right)
    )
    return CheckReport("parity", violations)
