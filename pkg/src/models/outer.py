from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Iterable, Union

from src.config import DISK_SAMPLES, EPS_LEN
from src.models.geom import TAU, Point2
from src.models.layering import FoldPlan, Stacking


@dataclass(frozen=True)
class Disk:
    center: Point2
    radius: float

    def __post_init__(self) -> None:
        if not self.radius > 0:
            raise ValueError("Disk radius must be positive")

    @property
    def perimeter(self) -> float:
        return TAU * self.radius

    def point_at(self, t: float) -> Point2:
        angle = TAU * (t % 1.0)
        return self.center + Point2(math.cos(angle), math.sin(angle)).scaled(self.radius)

    def parameter(self, p: Point2) -> float:
        offset = p - self.center
        return (math.atan2(offset.y, offset.x) / TAU) % 1.0

    def boundary_distance(self, p: Point2) -> float:
        return abs(p.distance_to(self.center) - self.radius)

    def breakpoints(self) -> list[float]:
        return [i / DISK_SAMPLES for i in range(DISK_SAMPLES)]


@dataclass(frozen=True)
class ConvexPolygon:
    """Convex polygon with corners listed counter-clockwise."""
    corners: tuple[Point2, ...]

    def __post_init__(self) -> None:
        if len(self.corners) < 3:
            raise ValueError("Polygon must have at least three corners")
        n = len(self.corners)
        for i in range(n):
            a, b, c = self.corners[i], self.corners[(i + 1) % n], self.corners[(i + 2) % n]
            if (b - a).cross(c - b) <= 0:
                raise ValueError("Polygon corners must be strictly convex and counter-clockwise")

    @classmethod
    def square(cls, side: float = 1.0, origin: Point2 | None = None) -> ConvexPolygon:
        o = origin or Point2(0.0, 0.0)
        return cls((o, o + Point2(side, 0.0), o + Point2(side, side), o + Point2(0.0, side)))

    @classmethod
    def regular(cls, k: int, radius: float = 1.0) -> ConvexPolygon:
        return cls(tuple(
            Point2(radius * math.cos(TAU * (i / k + 1 / (2 * k))), radius * math.sin(TAU * (i / k + 1 / (2 * k))))
            for i in range(k)
        ))

    @property
    def sides(self) -> list[tuple[Point2, Point2]]:
        n = len(self.corners)
        return [(self.corners[i], self.corners[(i + 1) % n]) for i in range(n)]

    @property
    def perimeter(self) -> float:
        return sum(a.distance_to(b) for a, b in self.sides)

    def breakpoints(self) -> list[float]:
        """Boundary parameters of the corners."""
        total, run, out = self.perimeter, 0.0, []
        for a, b in self.sides:
            out.append(run / total)
            run += a.distance_to(b)
        return out

    def point_at(self, t: float) -> Point2:
        remaining = (t % 1.0) * self.perimeter
        for a, b in self.sides:
            length = a.distance_to(b)
            if remaining <= length:
                return a + (b - a).scaled(remaining / length)
            remaining -= length
        return self.corners[0]

    def parameter(self, p: Point2) -> float:
        run = 0.0
        best, best_t = math.inf, 0.0
        for a, b in self.sides:
            length = a.distance_to(b)
            s = max(0.0, min(1.0, (p - a).dot(b - a) / (length * length)))
            gap = p.distance_to(a + (b - a).scaled(s))
            if gap < best:
                best, best_t = gap, (run + s * length) / self.perimeter
            run += length
        return best_t % 1.0

    def boundary_distance(self, p: Point2) -> float:
        best = math.inf
        for a, b in self.sides:
            length2 = (b - a).dot(b - a)
            s = max(0.0, min(1.0, (p - a).dot(b - a) / length2))
            best = min(best, p.distance_to(a + (b - a).scaled(s)))
        return best

    def side_index(self, p: Point2) -> int | None:
        """Index of the side holding ``p`` in its relative interior; None at corners or off the boundary."""
        for i, (a, b) in enumerate(self.sides):
            length = a.distance_to(b)
            s = (p - a).dot(b - a) / (length * length)
            if EPS_LEN < s * length < length - EPS_LEN and abs((b - a).cross(p - a)) / length < EPS_LEN:
                return i
        return None


Region = Union[Disk, ConvexPolygon]


def boundary_path(region: Region, t0: float, t1: float) -> list[Point2]:
    """Boundary points from parameter ``t0`` counter-clockwise to ``t1``, breakpoints included."""
    span = (t1 - t0) % 1.0
    inside = sorted(
        ((b - t0) % 1.0, b) for b in region.breakpoints() if 0.0 < (b - t0) % 1.0 < span
    )
    return [region.point_at(t0)] + [region.point_at(b) for _, b in inside] + [region.point_at(t1)]


@dataclass(frozen=True)
class OuterPattern:
    """Chords between folding points on the boundary of a convex sheet; chord ids are tuple indices."""
    region: Region
    points: dict[int, Point2]
    chords: tuple[tuple[int, int], ...] = ()

    def __post_init__(self) -> None:
        for a, b in self.chords:
            if a not in self.points or b not in self.points:
                raise ValueError(f"Chord endpoint must be a folding point: {(a, b)}")
            if a == b:
                raise ValueError("Chord endpoints must not coincide")

    def chord_line(self, chord_id: int) -> tuple[Point2, Point2]:
        a, b = self.chords[chord_id]
        return self.points[a], self.points[b]

    def parameter(self, point_id: int) -> float:
        return self.region.parameter(self.points[point_id])

    @property
    def is_disk(self) -> bool:
        return isinstance(self.region, Disk)

    def without(self, chord_ids: Iterable[int]) -> OuterPattern:
        drop = set(chord_ids)
        return OuterPattern(self.region, self.points, tuple(c for i, c in enumerate(self.chords) if i not in drop))


@dataclass(frozen=True)
class SafetyVerdict:
    safe: bool
    reason: str = ""  # "monotonicity" or "reflection crosses" when unsafe
    side: tuple[int, ...] = ()  # chords strictly inside the qualifying side


@dataclass(frozen=True)
class SpineInfo:
    vertices: frozenset
    leaves: tuple = ()

    @property
    def leaf_count(self) -> int:
        return len(self.leaves)


class CreaseType(enum.Enum):
    LT = "LT"
    RT = "RT"
    LB = "LB"
    RB = "RB"
    LR = "LR"
    TB = "TB"

    @property
    def is_corner(self) -> bool:
        return self not in (CreaseType.LR, CreaseType.TB)

    @property
    def is_top(self) -> bool:
        return self in (CreaseType.LT, CreaseType.RT)


class SquareCase(enum.Enum):
    PLAIN = "plain"
    SINGLE = "single"
    INDEPENDENT = "independent"
    SEQUENTIAL = "sequential"
    OPPOSED = "opposed"


@dataclass(frozen=True)
class SquarePlan:
    """A square folding: crease classes, the corners folded before the final pleat, and the plan."""
    crease_types: dict[int, CreaseType]
    case: SquareCase
    plan: FoldPlan
    semi_safe: dict[CreaseType, int] = field(default_factory=dict)  # corner -> outermost crease id
    starting_folds: dict[CreaseType, Stacking] = field(default_factory=dict)
    corner_order: tuple[CreaseType, ...] = ()
    quarter_turns: int = 0
    # the corner folded first at the top (bottom) is on the left, so its analysis runs mirrored
    flip_lr: bool = False
    flip_tb: bool = False

    def __post_init__(self) -> None:
        kinds = set(self.crease_types.values())
        if CreaseType.TB in kinds and CreaseType.LR in kinds:
            raise ValueError("Square plan must not mix top-bottom and left-right creases")
        if set(self.corner_order) != set(self.semi_safe):
            raise ValueError("Corner order must list exactly the corners folded first")
