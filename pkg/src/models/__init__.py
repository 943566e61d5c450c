from src.models.geom import Isometry2, Lune, Orientation, Point2, TurnAngle, Wedge
from src.models.pattern import CreasePattern, FaceComplex, FoldingGraph, Ray, Segment
from src.models.fold import FoldMap
from src.models.layering import Fold, FoldPlan, Layering, PleatStep, ReflectStep, Stacking
from src.models.tree import PlaneTree, TreeRealization
from src.models.conn import ConnReport
from src.models.orthotree import DualOrthotreeSpec, WheelStep
from src.models.outer import ConvexPolygon, Disk, OuterPattern, SquarePlan
from src.models.report import CheckReport, PatternSummary, SweepSummary, Violation

__all__ = [
    "Isometry2", "Lune", "Orientation", "Point2", "TurnAngle", "Wedge",
    "CreasePattern", "FaceComplex", "FoldingGraph", "Ray", "Segment",
    "FoldMap",
    "Fold", "FoldPlan", "Layering", "PleatStep", "ReflectStep", "Stacking",
    "PlaneTree", "TreeRealization",
    "ConnReport",
    "DualOrthotreeSpec", "WheelStep",
    "ConvexPolygon", "Disk", "OuterPattern", "SquarePlan",
    "CheckReport", "PatternSummary", "SweepSummary", "Violation",
]
