from __future__ import annotations

from dataclasses import dataclass

from src.models.geom import Isometry2, Orientation, Point2
from src.models.pattern import FaceComplex


@dataclass(frozen=True)
class FoldMap:
    """The fold map as one isometry per face; the base face maps by the identity."""
    faces: FaceComplex
    base_face: int
    isometries: tuple[Isometry2, ...]

    def __post_init__(self) -> None:
        if len(self.isometries) != len(self.faces.faces):
            raise ValueError("Fold map must have one isometry per face")
        if not 0 <= self.base_face < len(self.isometries):
            raise ValueError("Base face must be a face id")

    def isometry(self, face_id: int) -> Isometry2:
        return self.isometries[face_id]

    def orientation(self, face_id: int) -> Orientation:
        return self.isometries[face_id].orientation

    def image_polygon(self, face_id: int) -> tuple[Point2, ...]:
        polygon = self.faces.faces[face_id].polygon
        if polygon is None:
            raise ValueError(f"Face {face_id} has no bounded outline")
        iso = self.isometries[face_id]
        return tuple(iso.apply(p) for p in polygon)

    def vertex_image(self, v: int) -> Point2:
        owner = min(f.id for f in self.faces.faces if v in f.vertices)
        return self.isometries[owner].apply(self.faces.vertices[v])
