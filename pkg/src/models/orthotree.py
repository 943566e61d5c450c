from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable


@dataclass(frozen=True)
class WheelStep:
    """Replace ``target`` by a hub ringed by a cycle, one cycle vertex per incident edge.

    ``attachment`` lists the target's edge keys in the order the new cycle
    vertices take them; it must be a cyclic shift of the target's rotation.
    Empty means the rotation itself.
    """
    target: Hashable
    attachment: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.target is None:
            raise ValueError("Wheel step target must not be None")
        if len(set(self.attachment)) != len(self.attachment):
            raise ValueError("Wheel step attachment must not repeat an edge")


@dataclass(frozen=True)
class DualOrthotreeSpec:
    """Wheel steps replayed from two vertices joined by four edges."""
    steps: tuple[WheelStep, ...] = ()
    name: str = ""

    @classmethod
    def of_targets(cls, *targets: Hashable, name: str = "") -> DualOrthotreeSpec:
        return cls(tuple(WheelStep(t) for t in targets), name)

    def __len__(self) -> int:
        return len(self.steps)

    def extended(self, step: WheelStep) -> DualOrthotreeSpec:
        return DualOrthotreeSpec(self.steps + (step,), self.name)
