"""Flat foldings of a square sheet with chord creases.

Creases are classed by the corners they cut off. After a quarter turn
there are no top-bottom creases, so the left-right creases and at most one
creased corner at the top and one at the bottom pleat as a single
accordion. When both corners at the top (or bottom) carry creases, one of
them is folded first and tucked next to the face it hinges on; which side
it goes to depends on the creases its mirror image covers.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass

import numpy as np
from shapely.geometry import LineString, Point, Polygon
from shapely.ops import split

from src.config import EPS_LEN
from src.models.geom import Point2
from src.models.layering import FoldPlan, PleatStep, ReflectStep, Stacking
from src.models.outer import ConvexPolygon, CreaseType, OuterPattern, SquareCase, SquarePlan
from src.services.geometry import reflect_across_line
from src.services.layering_service import LayeringService, PlanConflict
from src.services.outer_service import (
    OuterPatternError,
    split_sheet,
    is_safe_crease,
    outer_fold_map,
    pleat_plan,
    require_outer,
)

logger = logging.getLogger(__name__)

HINGE_STEP = 1e-3
CORNERS = (CreaseType.LB, CreaseType.RB, CreaseType.RT, CreaseType.LT)  # counter-clockwise from the origin
PARTNER = {
    CreaseType.LT: CreaseType.RT, CreaseType.RT: CreaseType.LT,
    CreaseType.LB: CreaseType.RB, CreaseType.RB: CreaseType.LB,
}


class SquarePlanError(ValueError):
    """Raised when a chord pattern on a square cannot be planned."""


@dataclass(frozen=True)
class _Frame:
    """Square coordinates: origin at a corner, unit side, optionally turned a quarter."""
    origin: Point2
    e1: Point2
    e2: Point2
    side: float
    quarter_turns: int = 0

    def local(self, q: Point2) -> Point2:
        d = q - self.origin
        x, y = d.dot(self.e1) / self.side, d.dot(self.e2) / self.side
        for _ in range(self.quarter_turns):
            x, y = 1.0 - y, x
        return Point2(x, y)

    def turned(self) -> _Frame:
        return _Frame(self.origin, self.e1, self.e2, self.side, (self.quarter_turns + 1) % 4)


def _frame(p: OuterPattern) -> _Frame:
    region = p.region
    if not isinstance(region, ConvexPolygon) or len(region.corners) != 4:
        raise SquarePlanError("Square plans need a four-cornered sheet")
    c0, c1, c2, c3 = region.corners
    side = c0.distance_to(c1)
    e1 = (c1 - c0).scaled(1.0 / side)
    e2 = Point2(-e1.y, e1.x)
    tol = 1e-7 * side
    if (
        abs(c1.distance_to(c2) - side) > tol
        or abs(c2.distance_to(c3) - side) > tol
        or abs((c3 - c0).dot(e1)) > tol
        or c2.distance_to(c0 + e1.scaled(side) + e2.scaled(side)) > tol
    ):
        raise SquarePlanError("Sheet is not a square")
    return _Frame(c0, e1, e2, side)


_UNIT_CORNERS = {
    CreaseType.LB: Point2(0.0, 0.0), CreaseType.RB: Point2(1.0, 0.0),
    CreaseType.RT: Point2(1.0, 1.0), CreaseType.LT: Point2(0.0, 1.0),
}


def _classify(a: Point2, b: Point2) -> CreaseType:
    """Crease class from the corners on each side of the chord, in unit square coordinates."""
    ahead: list[CreaseType] = []
    behind: list[CreaseType] = []
    for corner, q in _UNIT_CORNERS.items():
        side = (b - a).cross(q - a)
        if side > 1e-9:
            ahead.append(corner)
        elif side < -1e-9:
            behind.append(corner)
    for group in (ahead, behind):
        if len(group) == 1 and len(ahead) + len(behind) > 2:
            return group[0]
    if {CreaseType.LT, CreaseType.RT} in (set(ahead), set(behind)):
        return CreaseType.LR
    if {CreaseType.LT, CreaseType.LB} in (set(ahead), set(behind)):
        return CreaseType.TB
    # a diagonal splits the square like a left-right crease
    return CreaseType.LR


def classify_creases(p: OuterPattern) -> tuple[dict[int, CreaseType], int]:
    """Crease classes in a frame with no top-bottom creases, and the quarter turns used."""
    frame = _frame(p)
    for turns in range(2):
        types = {
            i: _classify(frame.local(p.points[a]), frame.local(p.points[b]))
            for i, (a, b) in enumerate(p.chords)
        }
        kinds = set(types.values())
        if CreaseType.TB not in kinds:
            return types, turns
        if CreaseType.LR in kinds:
            raise SquarePlanError("Square has both top-bottom and left-right creases")
        frame = frame.turned()
    raise SquarePlanError("Square creases could not be oriented")


# ── Corner analysis ──────────────────────────────────────────────────────


@dataclass(frozen=True)
class _Corner:
    kind: CreaseType
    creases: frozenset[int]
    outer: int
    hinge: Point2  # just off the outermost crease, away from the corner
    mirror: Polygon  # corner region reflected across the outermost crease


def _outermost(p: OuterPattern, frame: _Frame, kind: CreaseType, creases: list[int]) -> int:
    corner = _UNIT_CORNERS[kind]

    def distance(chord_id: int) -> float:
        a, b = (frame.local(q) for q in p.chord_line(chord_id))
        return abs((b - a).cross(corner - a)) / a.distance_to(b)

    return max(creases, key=lambda c: (distance(c), -c))


def _corner(p: OuterPattern, frame: _Frame, kind: CreaseType, creases: list[int]) -> _Corner:
    outer = _outermost(p, frame, kind, creases)
    u, v = p.chord_line(outer)
    sheet = Polygon([q.as_tuple() for q in p.region.corners])
    cut = LineString([u.as_tuple(), v.as_tuple()])
    corner_point = next(q for q in p.region.corners if frame.local(q).distance_to(_UNIT_CORNERS[kind]) < 1e-9)
    pieces = sorted(split(sheet, cut).geoms, key=lambda g: g.area)
    corner_region = next(
        (g for g in pieces if g.exterior.distance(Point(corner_point.as_tuple())) < 1e-9),
        pieces[0],
    )
    mirror = Polygon([reflect_across_line(Point2(x, y), u, v).as_tuple() for x, y in corner_region.exterior.coords])
    middle = (u + v).scaled(0.5)
    center = Point2(*sheet.centroid.coords[0])
    away = center - middle
    hinge = middle + away.scaled(HINGE_STEP * frame.side / max(away.norm, EPS_LEN))
    return _Corner(kind, frozenset(creases), outer, hinge, mirror)


def _covered(p: OuterPattern, mirror: Polygon, creases: frozenset[int]) -> set[int]:
    inner = mirror.buffer(-1e-9)
    out = set()
    for c in creases:
        u, v = p.chord_line(c)
        if LineString([u.as_tuple(), v.as_tuple()]).intersection(inner).length > 1e-9:
            out.add(c)
    return out


def _pick(p: OuterPattern, frame: _Frame, first: _Corner, second: _Corner) -> tuple[_Corner, bool]:
    """The corner folded before the pleat, and whether the choice mirrors left and right.

    A safe outermost crease wins; otherwise the corner whose crease meets
    its side higher up (lower down, at the bottom) goes first.
    """
    safe = [c for c in (first, second) if is_safe_crease(p, c.outer).safe]
    right, left = (first, second) if first.kind in (CreaseType.RT, CreaseType.RB) else (second, first)
    if len(safe) == 1:
        return safe[0], safe[0] is left

    def side_height(c: _Corner) -> float:
        ys = sorted(frame.local(q).y for q in p.chord_line(c.outer))
        return ys[0] if c.kind.is_top else -ys[1]

    chosen = right if side_height(right) >= side_height(left) - 1e-12 else left
    return chosen, chosen is left


# ── Plans ────────────────────────────────────────────────────────────────


def _corner_flap(p: OuterPattern, corner: _Corner, stacking: Stacking) -> ReflectStep:
    pieces = split_sheet(p, corner.creases)
    base = pleat_plan(pieces)
    if base.steps:
        anchors = base.steps[0].anchors
        start = min(range(len(pieces)), key=lambda i: pieces[i].polygon.distance(
            Point(corner.hinge.as_tuple())))
        if anchors[0] != pieces[start].sample:
            anchors = tuple(reversed(anchors))
        base = FoldPlan((PleatStep(anchors, stacking),))
    return ReflectStep(corner.outer, corner.hinge, base, corner.creases)


def _rest_chain(p: OuterPattern, rest: frozenset[int]) -> tuple[FoldPlan, list]:
    pieces = split_sheet(p, rest)
    return pleat_plan(pieces), pieces


def _preferred(
    p: OuterPattern, corners: list[_Corner], rest: frozenset[int], groups: dict[CreaseType, list[int]],
) -> tuple[SquareCase, tuple[_Corner, ...], dict[CreaseType, Stacking]]:
    if not corners:
        return SquareCase.PLAIN, (), {}
    rest_plan, pieces = _rest_chain(p, rest)
    order_of = {}
    if rest_plan.steps:
        order_of = {anchor: i for i, anchor in enumerate(rest_plan.steps[0].anchors)}

    def piece_of(q: Point2) -> int:
        return min(range(len(pieces)), key=lambda i: pieces[i].polygon.distance(Point(q.as_tuple())))

    def stacking_for(c: _Corner) -> Stacking:
        hit = _covered(p, c.mirror, rest)
        at = piece_of(c.hinge)
        level = order_of.get(pieces[at].sample)
        if level is None:
            return Stacking.ABOVE
        above = [i for i, pc in enumerate(pieces) if order_of.get(pc.sample) == level + 1]
        if above and pieces[above[0]].chords & pieces[at].chords & hit:
            return Stacking.BELOW
        return Stacking.ABOVE

    if len(corners) == 1:
        c = corners[0]
        return SquareCase.SINGLE, (c,), {c.kind: stacking_for(c)}

    top, bottom = corners
    separated = piece_of(top.hinge) != piece_of(bottom.hinge)
    own = {c.kind: _covered(p, c.mirror, rest) for c in corners}
    partner_creases = {
        c.kind: rest & frozenset(groups[PARTNER[c.kind]]) for c in corners
    }
    within = {k: own[k] <= partner_creases[k] for k in own}
    if separated or (within[top.kind] and within[bottom.kind]):
        return SquareCase.INDEPENDENT, (top, bottom), {c.kind: stacking_for(c) for c in corners}
    if within[bottom.kind] or within[top.kind]:
        first, second = (bottom, top) if within[bottom.kind] else (top, bottom)
        stacking = stacking_for(first)
        return SquareCase.SEQUENTIAL, (first, second), {first.kind: stacking, second.kind: stacking}
    stacking = stacking_for(top)
    flipped = Stacking.BELOW if stacking is Stacking.ABOVE else Stacking.ABOVE
    return SquareCase.OPPOSED, (top, bottom), {top.kind: stacking, bottom.kind: flipped}


def _assemble(
    corners: tuple[_Corner, ...], starts: dict[CreaseType, Stacking], rest_plan: FoldPlan, p: OuterPattern,
) -> FoldPlan:
    steps = tuple(_corner_flap(p, c, starts[c.kind]) for c in corners)
    return FoldPlan(steps + rest_plan.steps)


def _works(service: LayeringService, plan: FoldPlan) -> bool:
    try:
        service.plan_to_layering(plan, validate=True)
    except PlanConflict as exc:
        logger.debug("Square arrangement rejected: %s", exc)
        return False
    return True


def square_fold_plan(p: OuterPattern) -> SquarePlan:
    require_outer(p)
    frame = _frame(p)
    types, turns = classify_creases(p)
    for _ in range(turns):
        frame = frame.turned()

    groups: dict[CreaseType, list[int]] = {k: [] for k in CORNERS}
    for chord_id, kind in types.items():
        if kind.is_corner:
            groups[kind].append(chord_id)

    first_folds: list[_Corner] = []
    flips = {"lr": False, "tb": False}
    for pair, flag in (((CreaseType.LT, CreaseType.RT), "lr"), ((CreaseType.LB, CreaseType.RB), "tb")):
        if all(groups[k] for k in pair):
            a, b = (_corner(p, frame, k, groups[k]) for k in pair)
            chosen, mirrored = _pick(p, frame, a, b)
            flips[flag] = mirrored
            first_folds.append(chosen)

    folded = frozenset(itertools.chain.from_iterable(c.creases for c in first_folds))
    rest = frozenset(types) - folded
    try:
        rest_plan, _ = _rest_chain(p, rest)
    except OuterPatternError as exc:
        raise SquarePlanError(f"Remaining creases do not pleat: {exc}") from exc
    case, order, starts = _preferred(p, first_folds, rest, groups)

    service = LayeringService(outer_fold_map(p))
    candidates = [(order, starts)]
    for perm in itertools.permutations(first_folds):
        for choice in itertools.product((Stacking.ABOVE, Stacking.BELOW), repeat=len(perm)):
            option = (tuple(perm), {c.kind: s for c, s in zip(perm, choice)})
            if option not in candidates:
                candidates.append(option)
    for i, (corners, stacks) in enumerate(candidates):
        plan = _assemble(corners, stacks, rest_plan, p)
        if _works(service, plan):
            if i:
                logger.warning("Square case %s fell back to arrangement %d of %d", case.value, i, len(candidates))
            result = SquarePlan(
                crease_types=types,
                case=case,
                plan=plan,
                semi_safe={c.kind: c.outer for c in corners},
                starting_folds=stacks,
                corner_order=tuple(c.kind for c in corners),
                quarter_turns=turns,
                flip_lr=flips["lr"],
                flip_tb=flips["tb"],
            )
            logger.info("Square plan: case %s, %d steps", case.value, len(plan))
            return result
    raise SquarePlanError(f"No arrangement folds this square (case {case.value})")


# ── Generators ───────────────────────────────────────────────────────────


def random_square_pattern(rng: np.random.Generator, chords: int = 5, attempts: int = 200) -> OuterPattern:
    """Random non-crossing chords between distinct sides of the unit square, none top to bottom."""
    square = ConvexPolygon.square()
    points: dict[int, Point2] = {}
    chosen: list[tuple[int, int]] = []
    for _ in range(attempts):
        if len(chosen) == chords:
            break
        s1, s2 = rng.choice(4, size=2, replace=False)
        if {int(s1), int(s2)} == {0, 2}:
            continue
        ends = [square.point_at((int(s) + rng.uniform(0.05, 0.95)) / 4) for s in (s1, s2)]
        trial_points = dict(points)
        ids = []
        for q in ends:
            trial_points[len(trial_points)] = q
            ids.append(len(trial_points) - 1)
        trial = OuterPattern(square, trial_points, tuple(chosen) + ((ids[0], ids[1]),))
        try:
            require_outer(trial)
        except OuterPatternError:
            continue
        points, chosen = trial_points, list(trial.chords)
    return OuterPattern(square, points, tuple(chosen))
