from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Union

from src.models.geom import Point2


class Stacking(enum.Enum):
    ABOVE = "above"
    BELOW = "below"
    BETWEEN = "between"


class Fold(enum.Enum):
    MOUNTAIN = "mountain"
    VALLEY = "valley"


@dataclass(frozen=True)
class Layering:
    """Strict above/below relation; each entry is an (upper, lower) face pair."""
    above: frozenset[tuple[int, int]]

    def __post_init__(self) -> None:
        for upper, lower in self.above:
            if upper == lower:
                raise ValueError("A face must not lie above itself")
            if (lower, upper) in self.above:
                raise ValueError(f"Faces {upper} and {lower} must not be ordered both ways")

    @classmethod
    def from_order(
        cls, order: list[int], pairs: Iterable[frozenset[int]] | None = None
    ) -> Layering:
        """Build from a bottom-to-top order, keeping only ``pairs`` when given."""
        keep = None if pairs is None else set(pairs)
        above: set[tuple[int, int]] = set()
        for i, lower in enumerate(order):
            for upper in order[i + 1:]:
                if keep is None or frozenset((lower, upper)) in keep:
                    above.add((upper, lower))
        return cls(frozenset(above))

    @classmethod
    def empty(cls) -> Layering:
        return cls(frozenset())

    def is_above(self, f: int, g: int) -> bool | None:
        if (f, g) in self.above:
            return True
        if (g, f) in self.above:
            return False
        return None

    @property
    def pairs(self) -> set[frozenset[int]]:
        return {frozenset(pair) for pair in self.above}

    def flipped(self) -> Layering:
        return Layering(frozenset((lower, upper) for upper, lower in self.above))


@dataclass(frozen=True)
class OverlayCell:
    id: int
    sample: Point2
    area: float
    faces: tuple[int, ...]  # faces whose image interiors cover the cell


@dataclass(frozen=True)
class PleatStep:
    """Fold the regions under ``anchors`` into an accordion, in order.

    The first region must already be placed unless nothing is. With BETWEEN
    the last region must already be placed and the new layers go between.
    """
    anchors: tuple[Point2, ...]
    stacking: Stacking
    creases: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if not self.anchors:
            raise ValueError("Pleat anchors must not be empty")
        if self.stacking is Stacking.BETWEEN and len(self.anchors) < 2:
            raise ValueError("A between pleat must have a closing anchor")


@dataclass(frozen=True)
class ReflectStep:
    """Fold a flap across ``crease`` and lay it next to the hinge face."""
    crease: int
    hinge: Point2
    flap: FoldPlan
    flap_creases: frozenset[int]

    def __post_init__(self) -> None:
        if self.crease not in self.flap_creases:
            raise ValueError("Flap creases must include the reflecting crease")


Step = Union[PleatStep, ReflectStep]


@dataclass(frozen=True)
class FoldPlan:
    steps: tuple[Step, ...]

    def __post_init__(self) -> None:
        seen_pleat = False
        for step in self.steps:
            if isinstance(step, PleatStep):
                seen_pleat = True
            elif seen_pleat:
                raise ValueError("Reflect steps must come before pleat steps")

    def __len__(self) -> int:
        return len(self.steps)
