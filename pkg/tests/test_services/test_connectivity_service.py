"""Tests for the connectivity service."""
import networkx as nx
import pytest

from src.config import INFINITY
from src.models.pattern import FoldingGraph
from src.models.tree import PlaneTree
from src.services.catalog import enclosed_vertex_pattern, quarter_fold_pattern
from src.services.connectivity_service import (
    ConnectivityError,
    connectivity,
    connectivity_check,
    infinity_not_articulation,
    three_point_separator_search,
    tightness_witnesses,
)
from src.services.pattern_service import folding_graph
from src.services.treefold_service import realize_base_star, realize_tree


@pytest.fixture(scope="module")
def witnesses():
    return tightness_witnesses()


def _two_hub_pattern():
    t = PlaneTree.from_edges([(0, 1), (0, 2), (0, 3), (0, 4), (1, 5), (1, 6), (1, 7)])
    return realize_tree(t).pattern


def _two_hub_graph():
    return folding_graph(_two_hub_pattern())


class TestConnectivity:
    def test_one_vertex_pattern(self):
        report = connectivity(folding_graph(quarter_fold_pattern()))
        assert report.edge_connectivity == 4
        assert report.vertex_vacuous
        assert report.is_vertex_connected(2)

    def test_path_tree_is_tight(self, witnesses):
        g = folding_graph(witnesses.vertex_tight.pattern)
        report = connectivity(g)
        assert report.vertex_connectivity == 2
        assert set(report.min_vertex_cut) == {2, INFINITY}
        assert report.edge_connectivity == 4

    def test_star_edge_tight(self, witnesses):
        report = connectivity(folding_graph(witnesses.edge_tight.pattern))
        assert report.edge_connectivity == 4

    def test_reported_cuts_disconnect(self, witnesses):
        g = folding_graph(witnesses.vertex_tight.pattern)
        report = connectivity(g)
        rest = g.graph.copy()
        rest.remove_nodes_from(report.min_vertex_cut)
        assert not nx.is_connected(rest)
        cut = g.graph.copy()
        cut.remove_edges_from(
            (u, v, key) for u, v, key in g.graph.edges(keys=True) if key in report.min_edge_cut
        )
        assert not nx.is_connected(cut)

    def test_edge_connectivity_bounded_by_min_degree(self):
        g = _two_hub_graph()
        report = connectivity(g)
        assert 4 <= report.edge_connectivity <= min(d for _, d in g.graph.degree())

    def test_disconnected_rejected(self):
        graph = nx.MultiGraph()
        graph.add_nodes_from([0, 1])
        with pytest.raises(ConnectivityError, match="must be connected"):
            connectivity(FoldingGraph(graph=graph, rotation={0: (), 1: ()}))


class TestInfinityArticulation:
    def test_one_vertex(self):
        assert infinity_not_articulation(folding_graph(quarter_fold_pattern()))

    def test_two_hubs(self):
        assert infinity_not_articulation(_two_hub_graph())

    def test_missing_infinity(self):
        graph = nx.MultiGraph()
        graph.add_edge(0, 1, key=0)
        with pytest.raises(ConnectivityError, match="no vertex at infinity"):
            infinity_not_articulation(FoldingGraph(graph=graph, rotation={0: (0,), 1: (0,)}))


class TestSeparatorSearch:
    def test_one_vertex_pattern(self):
        assert three_point_separator_search(quarter_fold_pattern()) is None

    def test_generated_patterns(self):
        assert three_point_separator_search(realize_base_star(6).pattern) is None
        assert three_point_separator_search(_two_hub_pattern()) is None

    def test_enclosed_vertex_found(self):
        assert three_point_separator_search(enclosed_vertex_pattern()) == (0, 1, 2)


class TestConnectivityCheck:
    def test_generated_pattern_passes(self, witnesses):
        assert connectivity_check(witnesses.vertex_tight.pattern).ok

    def test_enclosed_vertex_fails(self):
        kinds = connectivity_check(enclosed_vertex_pattern()).kinds()
        assert {"separator", "low degree"} <= kinds
