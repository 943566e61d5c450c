from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Hashable

import networkx as nx

from src.models.geom import Point2, TurnAngle

HALF_TURN = TurnAngle.of_turns(Fraction(1, 2))


class CreaseKind(enum.Enum):
    SEGMENT = "segment"
    RAY = "ray"


@dataclass(frozen=True)
class Segment:
    a: int
    b: int
    heading: TurnAngle | None = None  # direction a -> b, exact when the construction knows it

    def __post_init__(self) -> None:
        if self.a == self.b:
            raise ValueError("Segment endpoints must not coincide")


@dataclass(frozen=True)
class Ray:
    apex: int
    direction: TurnAngle


@dataclass(frozen=True)
class Crease:
    id: int
    kind: CreaseKind
    a: int
    b: int | None
    heading: TurnAngle

    @property
    def is_ray(self) -> bool:
        return self.kind is CreaseKind.RAY

    def endpoints(self) -> tuple[int, ...]:
        return (self.a,) if self.b is None else (self.a, self.b)

    def other(self, v: int) -> int | None:
        if v == self.a:
            return self.b
        if v == self.b:
            return self.a
        raise ValueError(f"Vertex {v} is not an endpoint of crease {self.id}")

    def direction_at(self, v: int) -> TurnAngle:
        if v == self.a:
            return self.heading.normalized()
        if v == self.b:
            return (self.heading + HALF_TURN).normalized()
        raise ValueError(f"Vertex {v} is not an endpoint of crease {self.id}")


@dataclass(frozen=True)
class CreasePattern:
    """Straight creases on the infinite sheet.

    Crease ids number the segments first, then the rays, in the order given.
    """
    vertices: dict[int, Point2]
    segments: tuple[Segment, ...] = ()
    rays: tuple[Ray, ...] = ()

    def __post_init__(self) -> None:
        if not self.vertices:
            raise ValueError("Pattern must have at least one vertex")
        for seg in self.segments:
            if seg.a not in self.vertices or seg.b not in self.vertices:
                raise ValueError(f"Segment endpoint must be a vertex: {seg.a}-{seg.b}")
        for ray in self.rays:
            if ray.apex not in self.vertices:
                raise ValueError(f"Ray apex must be a vertex: {ray.apex}")

    @cached_property
    def creases(self) -> tuple[Crease, ...]:
        out: list[Crease] = []
        for seg in self.segments:
            heading = seg.heading
            if heading is None:
                d = self.vertices[seg.b] - self.vertices[seg.a]
                heading = TurnAngle.of_vector(d.x, d.y)
            out.append(Crease(len(out), CreaseKind.SEGMENT, seg.a, seg.b, heading))
        for ray in self.rays:
            out.append(Crease(len(out), CreaseKind.RAY, ray.apex, None, ray.direction))
        return tuple(out)

    @cached_property
    def _incidence(self) -> dict[int, tuple[Crease, ...]]:
        table: dict[int, list[Crease]] = {v: [] for v in self.vertices}
        for crease in self.creases:
            for v in crease.endpoints():
                table[v].append(crease)
        return {v: tuple(cs) for v, cs in table.items()}

    def incident(self, v: int) -> tuple[Crease, ...]:
        return self._incidence[v]

    def degree(self, v: int) -> int:
        return len(self._incidence[v])

    def directions_at(self, v: int) -> list[tuple[int, TurnAngle]]:
        """(crease id, outgoing direction) pairs at ``v`` sorted counter-clockwise."""
        pairs = [(c.id, c.direction_at(v)) for c in self._incidence[v]]
        return sorted(pairs, key=lambda pair: pair[1].radians_value)

    @property
    def has_rays(self) -> bool:
        return bool(self.rays)

    @property
    def max_coordinate(self) -> float:
        return max(max(abs(p.x), abs(p.y)) for p in self.vertices.values())

    @property
    def clip_radius(self) -> float:
        return 2.0 * (self.max_coordinate + 1.0)

    def crease(self, crease_id: int) -> Crease:
        return self.creases[crease_id]


@dataclass(frozen=True)
class FoldingGraph:
    """Multigraph of vertex points plus ∞, keyed by crease id, with its rotation system."""
    graph: nx.MultiGraph
    rotation: dict[Hashable, tuple[int, ...]]
    ends: dict[int, tuple[Hashable, Hashable]] = field(default_factory=dict)

    def rotation_neighbors(self, v: Hashable) -> list[Hashable]:
        out = []
        for key in self.rotation[v]:
            a, b = self.ends[key]
            out.append(b if a == v else a)
        return out

    def degree(self, v: Hashable) -> int:
        return len(self.rotation[v])


@dataclass(frozen=True)
class TruncatedGraph:
    """Finite graph with one degree-1 leaf per ray; ``leaves`` maps ray crease ids to leaves."""
    graph: nx.Graph
    leaves: dict[int, Hashable]


@dataclass(frozen=True)
class Face:
    id: int
    creases: tuple[int, ...]  # counter-clockwise boundary
    vertices: tuple[int, ...]
    unbounded: bool
    polygon: tuple[Point2, ...] | None  # clipped boundary; None for the outer face of a ray-free pattern
    sample: Point2


@dataclass(frozen=True)
class FaceComplex:
    faces: tuple[Face, ...]
    crease_faces: dict[int, tuple[int, int]]  # (left, right) of the crease heading
    crease_lines: dict[int, tuple[Point2, Point2]]
    crease_headings: dict[int, TurnAngle]
    clip_radius: float
    vertices: dict[int, Point2]
    has_infinity: bool

    @property
    def edge_count(self) -> int:
        return len(self.crease_faces)

    @property
    def euler_characteristic(self) -> int:
        vertices = len(self.vertices) + (1 if self.has_infinity else 0)
        return vertices - self.edge_count + len(self.faces)

    def face(self, face_id: int) -> Face:
        return self.faces[face_id]

    def neighbors(self, face_id: int) -> list[tuple[int, int]]:
        """(crease id, adjacent face id) pairs across the creases of a face."""
        out = []
        for crease_id in self.faces[face_id].creases:
            left, right = self.crease_faces[crease_id]
            out.append((crease_id, right if left == face_id else left))
        return out
