from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable

from src.models.tree import TreeRealization


@dataclass(frozen=True)
class ConnReport:
    """Vertex and edge connectivity of a folding graph with cut witnesses.

    ``vertex_vacuous`` is set when no vertex deletion can disconnect the graph
    (it is complete on its distinct neighbours); the graph then counts as
    k-connected for every k.
    """
    vertex_connectivity: int
    edge_connectivity: int
    infinity_articulation: bool
    min_vertex_cut: tuple[Hashable, ...] = ()
    min_edge_cut: tuple[int, ...] = ()  # crease ids
    vertex_vacuous: bool = False

    def __post_init__(self) -> None:
        if self.vertex_connectivity < 0 or self.edge_connectivity < 0:
            raise ValueError("Connectivity must not be negative")
        if len(self.min_edge_cut) != self.edge_connectivity:
            raise ValueError("Edge cut size must match the edge connectivity")
        if not self.vertex_vacuous and len(self.min_vertex_cut) != self.vertex_connectivity:
            raise ValueError("Vertex cut size must match the vertex connectivity")

    def is_vertex_connected(self, k: int) -> bool:
        return self.vertex_vacuous or self.vertex_connectivity >= k

    def is_edge_connected(self, k: int) -> bool:
        return self.edge_connectivity >= k


@dataclass(frozen=True)
class TightnessWitnesses:
    """Realized trees whose folding graphs meet the connectivity bounds exactly."""
    vertex_tight: TreeRealization
    edge_tight: TreeRealization
