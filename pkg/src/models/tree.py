from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import networkx as nx

from src.models.geom import Wedge
from src.models.layering import FoldPlan
from src.models.pattern import CreasePattern


@dataclass(frozen=True)
class PlaneTree:
    """A tree with a counter-clockwise neighbour order at every node."""
    rotation: dict[int, tuple[int, ...]]

    def __post_init__(self) -> None:
        if not self.rotation:
            raise ValueError("Tree must not be empty")
        edges = 0
        for v, nbrs in self.rotation.items():
            if len(set(nbrs)) != len(nbrs) or v in nbrs:
                raise ValueError(f"Neighbours of node {v} must be distinct")
            for w in nbrs:
                if v not in self.rotation.get(w, ()):
                    raise ValueError(f"Edge {v}-{w} must appear at both ends")
            edges += len(nbrs)
        graph = self.to_graph()
        if edges // 2 != len(self.rotation) - 1 or not nx.is_connected(graph):
            raise ValueError("Tree must be connected and acyclic")

    @classmethod
    def from_edges(cls, edges: Iterable[tuple[int, int]], nodes: Iterable[int] = ()) -> PlaneTree:
        """Tree whose neighbour orders follow increasing node id."""
        rotation: dict[int, list[int]] = {v: [] for v in nodes}
        for a, b in edges:
            rotation.setdefault(a, []).append(b)
            rotation.setdefault(b, []).append(a)
        return cls({v: tuple(sorted(nbrs)) for v, nbrs in rotation.items()})

    @classmethod
    def from_graph(cls, graph: nx.Graph) -> PlaneTree:
        return cls.from_edges(graph.edges, graph.nodes)

    @classmethod
    def star(cls, d: int) -> PlaneTree:
        return cls.from_edges((0, k) for k in range(1, d + 1))

    def to_graph(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(self.rotation)
        for v, nbrs in self.rotation.items():
            graph.add_edges_from((v, w) for w in nbrs)
        return graph

    @property
    def nodes(self) -> list[int]:
        return sorted(self.rotation)

    @property
    def edge_count(self) -> int:
        return len(self.rotation) - 1

    def degree(self, v: int) -> int:
        return len(self.rotation[v])

    def is_leaf(self, v: int) -> bool:
        return self.degree(v) <= 1

    @property
    def internal_nodes(self) -> list[int]:
        return [v for v in self.nodes if not self.is_leaf(v)]

    @property
    def leaves(self) -> list[int]:
        return [v for v in self.nodes if self.is_leaf(v)]


@dataclass(frozen=True)
class TreeVerdict:
    ok: bool
    witness: int | None = None
    reason: str = ""


@dataclass(frozen=True)
class TreeRealization:
    """A tree folded flat: pattern, wedge certificate and a fold plan.

    Internal tree nodes keep their ids as pattern vertex ids; ``leaf_of_ray``
    maps each ray crease id to the tree leaf it stands for.
    """
    tree: PlaneTree
    pattern: CreasePattern
    wedges: dict[int, Wedge]
    plan: FoldPlan
    leaf_of_ray: dict[int, int]

