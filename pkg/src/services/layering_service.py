"""Layer orders over a fold map: overlay cells, taco conditions, search and fold plans.

A layering stands in for a continuous embedding of the folded sheet. It
assigns one above/below bit to every pair of faces whose images overlap,
which is enough because face images are convex.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from functools import cached_property

import networkx as nx
import shapely
from ortools.sat.python import cp_model
from shapely.geometry import LineString, Point, Polygon
from shapely.ops import polygonize, unary_union

from src.config import DEFAULT_FACE_LIMIT
from src.models.fold import FoldMap
from src.models.geom import Point2
from src.models.layering import (
    Fold,
    FoldPlan,
    Layering,
    OverlayCell,
    PleatStep,
    ReflectStep,
    Stacking,
    Step,
)
from src.models.report import CheckReport, Violation
from src.services.pattern_service import PatternError, locate_face

logger = logging.getLogger(__name__)

AREA_EPS = 1e-12
COVER_MARGIN = 1e-10
SEGMENT_EPS = 1e-9
COLLINEAR_EPS = 1e-7

Literal = tuple[int, bool]


class LayeringError(ValueError):
    """Raised for face limits that are exceeded or layerings that cannot be read."""


class PlanConflict(ValueError):
    """Raised when a fold plan contradicts the geometry it is applied to."""


@dataclass(frozen=True)
class LayerConstraints:
    cells: tuple[OverlayCell, ...]
    pairs: tuple[tuple[int, int], ...]  # overlapping pairs, smaller id first
    tortillas: tuple[tuple[int, int, int, int], ...]  # (crease, f, g, h)
    tacos: tuple[tuple[int, int, int, int, int, int], ...]  # (c1, c2, f1, g1, f2, g2)


class LayeringService:
    """Business logic for layer orders over one fold map."""

    def __init__(self, fold_map: FoldMap) -> None:
        self._map = fold_map
        self._faces = fold_map.faces

    @property
    def fold_map(self) -> FoldMap:
        return self._map

    # ── Geometry of the folded state ────────────────────────────────────

    @cached_property
    def image_polygons(self) -> tuple[Polygon, ...]:
        polygons = []
        for face in self._faces.faces:
            if face.polygon is None:
                raise LayeringError(f"Face {face.id} is unbounded and has no clipped outline")
            coords = [p.as_tuple() for p in self._map.image_polygon(face.id)]
            polygons.append(Polygon(coords))
        return tuple(polygons)

    def _covers(self, face_id: int, pt: Point) -> bool:
        image = self.image_polygons[face_id]
        return image.contains(pt) and image.exterior.distance(pt) > COVER_MARGIN

    def faces_covering(self, image_point: Point2) -> list[int]:
        pt = Point(image_point.x, image_point.y)
        return [f for f in range(len(self.image_polygons)) if self._covers(f, pt)]

    def overlay_cells(self) -> tuple[OverlayCell, ...]:
        return self.constraints.cells

    def _build_cells(self) -> tuple[OverlayCell, ...]:
        boundaries = unary_union([poly.exterior for poly in self.image_polygons])
        cells: list[OverlayCell] = []
        for cell in polygonize(boundaries):
            if cell.area < AREA_EPS:
                continue
            pt = cell.representative_point()
            covering = tuple(
                f for f in range(len(self.image_polygons)) if self._covers(f, pt)
            )
            if covering:
                cells.append(OverlayCell(len(cells), Point2(pt.x, pt.y), cell.area, covering))
        return tuple(cells)

    def _crease_image(self, crease_id: int) -> LineString:
        left, _ = self._faces.crease_faces[crease_id]
        a, b = self._faces.crease_lines[crease_id]
        iso = self._map.isometry(left)
        return LineString([iso.apply(a).as_tuple(), iso.apply(b).as_tuple()])

    def _sample_points(self, segment: LineString) -> list[Point]:
        """Midpoints of the pieces of ``segment`` cut by every face-image boundary."""
        cuts = {0.0, segment.length}
        for image in self.image_polygons:
            hit = segment.intersection(image.exterior)
            for x, y in shapely.get_coordinates(hit):
                cuts.add(segment.project(Point(x, y)))
        ordered = sorted(cuts)
        return [
            segment.interpolate((t0 + t1) / 2.0)
            for t0, t1 in zip(ordered, ordered[1:])
            if t1 - t0 > SEGMENT_EPS
        ]

    @cached_property
    def constraints(self) -> LayerConstraints:
        cells = self._build_cells()
        pairs: set[tuple[int, int]] = set()
        for cell in cells:
            pairs.update(itertools.combinations(sorted(cell.faces), 2))

        tortillas: set[tuple[int, int, int, int]] = set()
        images: dict[int, LineString] = {}
        for crease_id, (f, g) in self._faces.crease_faces.items():
            images[crease_id] = segment = self._crease_image(crease_id)
            for pt in self._sample_points(segment):
                for h in range(len(self.image_polygons)):
                    if h not in (f, g) and self._covers(h, pt):
                        tortillas.add((crease_id, f, g, h))

        tacos: list[tuple[int, int, int, int, int, int]] = []
        for c1, c2 in itertools.combinations(sorted(images), 2):
            f1, g1 = self._faces.crease_faces[c1]
            f2, g2 = self._faces.crease_faces[c2]
            if len({f1, g1, f2, g2}) < 4 or not _collinear_overlap(images[c1], images[c2]):
                continue
            cross = [(x, y) for x in (f1, g1) for y in (f2, g2)]
            if all(tuple(sorted(pair)) in pairs for pair in cross):
                tacos.append((c1, c2, f1, g1, f2, g2))

        logger.debug(
            "Layer constraints: %d cells, %d pairs, %d taco-tortilla, %d taco-taco",
            len(cells), len(pairs), len(tortillas), len(tacos),
        )
        return LayerConstraints(
            cells=cells,
            pairs=tuple(sorted(pairs)),
            tortillas=tuple(sorted(tortillas)),
            tacos=tuple(tacos),
        )

    # ── Validation ──────────────────────────────────────────────────────

    def validate(self, layering: Layering) -> CheckReport:
        cons = self.constraints
        violations: list[Violation] = []
        for a, b in cons.pairs:
            if layering.is_above(a, b) is None:
                violations.append(Violation("malformed", "overlapping pair has no order", (a, b)))
        for cell in cons.cells:
            order = nx.DiGraph()
            order.add_nodes_from(cell.faces)
            for a, b in itertools.combinations(cell.faces, 2):
                rel = layering.is_above(a, b)
                if rel is True:
                    order.add_edge(a, b)
                elif rel is False:
                    order.add_edge(b, a)
            if not nx.is_directed_acyclic_graph(order):
                violations.append(Violation("cycle", "faces over one cell are not ordered", (cell.id,)))

        def above(x: int, y: int) -> bool:
            return layering.is_above(x, y) is True

        for crease_id, f, g, h in cons.tortillas:
            if (above(f, h) and above(h, g)) or (above(g, h) and above(h, f)):
                violations.append(Violation(
                    "taco-tortilla", f"face {h} lies between faces {f} and {g}", (crease_id,),
                ))
        for c1, c2, f1, g1, f2, g2 in cons.tacos:
            inside = sum(
                1 for x in (f2, g2)
                if (above(x, f1) and above(g1, x)) or (above(x, g1) and above(f1, x))
            )
            if inside == 1:
                violations.append(Violation("taco-taco", "folded layers interleave", (c1, c2)))
        return CheckReport("layering", tuple(violations))

    # ── Search ──────────────────────────────────────────────────────────

    def _clauses(self, index: dict[tuple[int, int], int]) -> list[tuple[Literal, ...]]:
        def lit_above(x: int, y: int) -> Literal | None:
            key = (min(x, y), max(x, y))
            if key not in index:
                return None
            return (index[key], x < y)

        def negate(lit: Literal) -> Literal:
            return (lit[0], not lit[1])

        clauses: set[tuple[Literal, ...]] = set()

        def forbid(*conditions: tuple[int, int]) -> None:
            lits = [lit_above(x, y) for x, y in conditions]
            if all(lit is not None for lit in lits):
                clauses.add(tuple(sorted(negate(lit) for lit in lits)))

        cons = self.constraints
        for cell in cons.cells:
            for a, b, c in itertools.combinations(cell.faces, 3):
                forbid((a, b), (b, c), (c, a))
                forbid((b, a), (c, b), (a, c))
        for _, f, g, h in cons.tortillas:
            forbid((f, h), (h, g))
            forbid((g, h), (h, f))
        for _, _, f1, g1, f2, g2 in cons.tacos:
            for order in itertools.permutations((f1, g1, f2, g2)):
                pos = {face: i for i, face in enumerate(order)}
                lo, hi = sorted((pos[f1], pos[g1]))
                if sum(1 for x in (f2, g2) if lo < pos[x] < hi) == 1:
                    forbid(*[(y, x) for x, y in itertools.combinations(order, 2)])
        return sorted(clauses)

    def search(self, limit: int = DEFAULT_FACE_LIMIT) -> Layering | None:
        face_count = len(self._faces.faces)
        if face_count > limit:
            raise LayeringError(f"Pattern has {face_count} faces; the search limit is {limit}")
        cons = self.constraints
        index = {pair: i for i, pair in enumerate(cons.pairs)}
        clauses = self._clauses(index)
        logger.info("Searching layerings: %d pairs, %d clauses", len(index), len(clauses))

        model = cp_model.CpModel()
        above_var = [model.new_bool_var(f"{a}>{b}") for a, b in cons.pairs]
        for clause in clauses:
            model.add_bool_or([above_var[v] if value else above_var[v].Not() for v, value in clause])
        base = self._map.base_face
        for a, b in cons.pairs:
            if base in (a, b):
                # reversing a whole stack keeps it valid, so the base can start lowest
                model.add(above_var[index[(a, b)]] == int(base != a))
                break

        solver = cp_model.CpSolver()
        solver.parameters.num_workers = 1
        solver.parameters.random_seed = 0
        status = solver.solve(model)
        if status == cp_model.INFEASIBLE:
            logger.info("No layering exists for this fold map")
            return None
        if status not in (cp_model.OPTIMAL, cp_model.FEASIBLE):
            raise LayeringError(f"Layer search ended undecided ({solver.status_name(status)})")
        above = frozenset(
            (a, b) if solver.boolean_value(above_var[index[(a, b)]]) else (b, a) for a, b in cons.pairs
        )
        layering = Layering(above)
        report = self.validate(layering)
        if not report.ok:
            raise LayeringError(f"Search produced an invalid layering: {report.violations[0]}")
        return layering

    # ── Fold plans ──────────────────────────────────────────────────────

    def _locate(self, anchor: Point2) -> int:
        try:
            return locate_face(self._faces, anchor)
        except PatternError as exc:
            raise PlanConflict(f"Anchor {anchor.as_tuple()} is not on the sheet") from exc

    def _regions(self, active: frozenset[int]) -> dict[int, frozenset[int]]:
        joined = nx.Graph()
        joined.add_nodes_from(range(len(self._faces.faces)))
        for crease_id, (left, right) in self._faces.crease_faces.items():
            if crease_id not in active:
                joined.add_edge(left, right)
        region_of: dict[int, frozenset[int]] = {}
        for component in nx.connected_components(joined):
            region = frozenset(component)
            for face in region:
                region_of[face] = region
        return region_of

    def _adjacent(self, r1: frozenset[int], r2: frozenset[int], active: frozenset[int]) -> bool:
        for crease_id in active:
            left, right = self._faces.crease_faces[crease_id]
            if (left in r1 and right in r2) or (left in r2 and right in r1):
                return True
        return False

    def _simulate(self, steps: tuple[Step, ...], active: frozenset[int]) -> list[frozenset[int]]:
        """Stack of flat regions, bottom first, after folding ``active`` creases."""
        if steps and isinstance(steps[0], ReflectStep):
            step = steps[0]
            flap = self._simulate(step.flap.steps, step.flap_creases & active)
            rest = self._simulate(steps[1:], active - step.flap_creases)
            hinge = self._locate(step.hinge)
            slot = next((i for i, region in enumerate(rest) if hinge in region), None)
            if slot is None:
                raise PlanConflict(f"Hinge of crease {step.crease} is not in any placed region")
            target = rest[slot]
            spliced = [region & target for region in flap if region & target]
            return rest[:slot] + spliced + rest[slot + 1:]

        region_of = self._regions(active)
        regions = set(region_of.values())
        stack: list[frozenset[int]] = []
        for step in steps:
            self._apply_pleat(stack, step, region_of, active)
        if not steps and len(regions) == 1:
            stack = list(regions)
        unplaced = regions - set(stack)
        if unplaced:
            faces = sorted(min(r) for r in unplaced)
            raise PlanConflict(f"Regions containing faces {faces} were never placed")
        return stack

    def _apply_pleat(
        self,
        stack: list[frozenset[int]],
        step: PleatStep,
        region_of: dict[int, frozenset[int]],
        active: frozenset[int],
    ) -> None:
        chain = [region_of[self._locate(anchor)] for anchor in step.anchors]
        first = chain[0]
        if not stack:
            stack.append(first)
        elif first not in stack:
            raise PlanConflict(f"Pleat must start from a placed region (face {min(first)})")
        closing = chain[-1] if len(chain) > 1 and chain[-1] in stack else None
        middle = chain[1:-1] if closing is not None else chain[1:]

        if step.stacking is Stacking.BETWEEN:
            if closing is None:
                raise PlanConflict("A between pleat needs a placed closing region")
            upward = stack.index(closing) > stack.index(first)
        else:
            upward = step.stacking is Stacking.ABOVE

        previous = first
        for region in middle:
            if region in stack:
                raise PlanConflict(f"Region with face {min(region)} is placed twice")
            if not self._adjacent(previous, region, active):
                raise PlanConflict(f"Faces {min(previous)} and {min(region)} do not share a fold")
            at = stack.index(previous)
            stack.insert(at + 1 if upward else at, region)
            previous = region
        if closing is not None and not self._adjacent(previous, closing, active):
            raise PlanConflict(f"Faces {min(previous)} and {min(closing)} do not share a fold")

    def plan_to_layering(self, plan: FoldPlan, validate: bool = True) -> Layering:
        everything = frozenset(self._faces.crease_faces)
        stack = self._simulate(plan.steps, everything)
        level: dict[int, int] = {}
        for i, region in enumerate(stack):
            for face in region:
                level[face] = i
        above: set[tuple[int, int]] = set()
        for a, b in self.constraints.pairs:
            if level[a] == level[b]:
                raise PlanConflict(f"Faces {a} and {b} overlap inside one flat region")
            above.add((a, b) if level[a] > level[b] else (b, a))
        layering = Layering(frozenset(above))
        if validate:
            report = self.validate(layering)
            if not report.ok:
                raise PlanConflict(f"Plan gives an invalid layering: {report.violations[0]}")
        logger.info("Plan of %d steps gives %d ordered pairs", len(plan), len(above))
        return layering

    def mountain_valley(self, layering: Layering) -> dict[int, Fold]:
        """Crease assignment read off a layering, relative to the face-up side."""
        assignment: dict[int, Fold] = {}
        for crease_id, (left, right) in self._faces.crease_faces.items():
            up, other = (left, right) if not self._map.isometry(left).is_reversing else (right, left)
            rel = layering.is_above(other, up)
            if rel is not None:
                assignment[crease_id] = Fold.VALLEY if rel else Fold.MOUNTAIN
        return assignment


def _collinear_overlap(s1: LineString, s2: LineString) -> bool:
    (ax, ay), (bx, by) = s1.coords
    length = s1.length
    if length < SEGMENT_EPS:
        return False
    ux, uy = (bx - ax) / length, (by - ay) / length
    params = []
    for x, y in s2.coords:
        if abs(ux * (y - ay) - uy * (x - ax)) > COLLINEAR_EPS:
            return False
        params.append(ux * (x - ax) + uy * (y - ay))
    lo, hi = sorted(params)
    return min(hi, length) - max(lo, 0.0) > COLLINEAR_EPS



# ── Module-level helpers ─────────────────────────────────────────────────


def overlay_cells(m: FoldMap) -> tuple[OverlayCell, ...]:
    return LayeringService(m).overlay_cells()


def validate_layering(m: FoldMap, layering: Layering) -> CheckReport:
    return LayeringService(m).validate(layering)


def search_layering(m: FoldMap, limit: int = DEFAULT_FACE_LIMIT) -> Layering | None:
    return LayeringService(m).search(limit)


def plan_to_layering(plan: FoldPlan, m: FoldMap, validate: bool = True) -> Layering:
    return LayeringService(m).plan_to_layering(plan, validate)


def mountain_valley(m: FoldMap, layering: Layering) -> dict[int, Fold]:
    return LayeringService(m).mountain_valley(layering)
