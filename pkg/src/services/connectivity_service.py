"""Connectivity of folding graphs.

Every flat folding of the plane has a 2-vertex-connected, 4-edge-connected
graph in which ∞ is never an articulation vertex, and no three vertex points
separate it. The functions here measure those quantities exactly so that
generated patterns can be checked against them.
"""
from __future__ import annotations

import itertools
import logging
from typing import Hashable

import networkx as nx

from src.config import INFINITY
from src.models.conn import ConnReport, TightnessWitnesses
from src.models.pattern import CreasePattern, FoldingGraph
from src.models.report import CheckReport, Violation
from src.models.tree import PlaneTree
from src.services.pattern_service import folding_graph
from src.services.treefold_service import realize_tree

logger = logging.getLogger(__name__)


class ConnectivityError(ValueError):
    """Raised for graphs the connectivity measures are not defined on."""


def _simple(g: FoldingGraph) -> nx.Graph:
    return nx.Graph(g.graph)


def _capacitated(g: FoldingGraph) -> nx.Graph:
    """Parallel creases folded into one edge whose capacity is their count."""
    graph = nx.Graph()
    graph.add_nodes_from(g.graph.nodes)
    for u, v in g.graph.edges():
        if u == v:
            continue
        if graph.has_edge(u, v):
            graph[u][v]["capacity"] += 1
        else:
            graph.add_edge(u, v, capacity=1)
    return graph


def _edge_cut(g: FoldingGraph) -> tuple[int, tuple[int, ...]]:
    graph = _capacitated(g)
    nodes = list(graph.nodes)
    source = nodes[0]
    best: tuple[int, set[Hashable]] | None = None
    for sink in nodes[1:]:
        value, (side, _) = nx.minimum_cut(graph, source, sink, capacity="capacity")
        if best is None or value < best[0]:
            best = (value, side)
    value, side = best
    creases = tuple(sorted(
        key for u, v, key in g.graph.edges(keys=True) if (u in side) != (v in side)
    ))
    return int(value), creases


def connectivity(g: FoldingGraph) -> ConnReport:
    if g.graph.number_of_nodes() < 2:
        raise ConnectivityError("Connectivity needs at least two vertices")
    if not nx.is_connected(g.graph):
        raise ConnectivityError("Folding graph must be connected")

    simple = _simple(g)
    n = simple.number_of_nodes()
    vacuous = simple.number_of_edges() == n * (n - 1) // 2
    if vacuous:
        kappa, vertex_cut = n - 1, ()
    else:
        vertex_cut = tuple(sorted(nx.minimum_node_cut(simple), key=str))
        kappa = len(vertex_cut)
    lam, edge_cut = _edge_cut(g)

    articulation = INFINITY in g.graph and not infinity_not_articulation(g)
    logger.debug("Connectivity: kappa=%d%s lambda=%d", kappa, " (vacuous)" if vacuous else "", lam)
    return ConnReport(
        vertex_connectivity=kappa,
        edge_connectivity=lam,
        infinity_articulation=articulation,
        min_vertex_cut=vertex_cut,
        min_edge_cut=edge_cut,
        vertex_vacuous=vacuous,
    )


def infinity_not_articulation(g: FoldingGraph) -> bool:
    if INFINITY not in g.graph:
        raise ConnectivityError("Folding graph has no vertex at infinity")
    rest = g.graph.subgraph(n for n in g.graph.nodes if n != INFINITY)
    return rest.number_of_nodes() == 0 or nx.is_connected(rest)


def three_point_separator_search(p: CreasePattern) -> tuple[int, ...] | None:
    """Smallest set of at most three vertex points whose removal disconnects the graph."""
    graph = folding_graph(p).graph
    points = sorted(p.vertices)
    for size in range(1, 4):
        for removed in itertools.combinations(points, size):
            rest = graph.subgraph(n for n in graph.nodes if n not in removed)
            if rest.number_of_nodes() > 1 and not nx.is_connected(rest):
                logger.info("Vertex points %s separate the folding graph", removed)
                return removed
    return None


def connectivity_check(p: CreasePattern) -> CheckReport:
    """Report form of the connectivity properties every flat folding has."""
    g = folding_graph(p)
    violations: list[Violation] = []
    for v in p.vertices:
        if g.degree(v) < 4:
            violations.append(Violation("low degree", f"degree {g.degree(v)}", (v,)))
    try:
        report = connectivity(g)
    except ConnectivityError as exc:
        return CheckReport("connectivity", tuple(violations) + (Violation("disconnected", str(exc)),))
    if not report.is_vertex_connected(2):
        violations.append(Violation(
            "vertex connectivity", f"kappa is {report.vertex_connectivity}", report.min_vertex_cut,
        ))
    if not report.is_edge_connected(4):
        violations.append(Violation(
            "edge connectivity", f"lambda is {report.edge_connectivity}", report.min_edge_cut,
        ))
    if report.infinity_articulation:
        violations.append(Violation("infinity articulation", "removing infinity disconnects the graph"))
    separator = three_point_separator_search(p)
    if separator is not None:
        violations.append(Violation("separator", "vertex points disconnect the graph", separator))
    return CheckReport("connectivity", tuple(violations))


def tightness_witnesses() -> TightnessWitnesses:
    """A three-hub path tree (kappa exactly 2) and a four-leaf star (lambda exactly 4)."""
    path = PlaneTree.from_edges([
        (1, 2), (2, 3),
        (1, 10), (1, 11), (1, 12),
        (2, 20), (2, 21),
        (3, 30), (3, 31), (3, 32),
    ])
    return TightnessWitnesses(vertex_tight=realize_tree(path), edge_tight=realize_tree(PlaneTree.star(4)))
