"""Tests for multigraphs, line graphs, clique covers, structure graphs and PACE graphs."""

import math

import networkx as nx
import pytest

from tncount.errors import DecompositionError, GraphError, ParseError
from tncount.graph.multigraph import (
    EdgeCliqueCover,
    Multigraph,
    edge_incidence_cover,
    line_graph,
)
from tncount.graph.pace import read_gr, write_gr
from tncount.graph.structure import structure_graph
from tncount.graph.trees import prune_leaves, suppress_degree_two, tree_centroid
from tncount.network.tn import TensorNetwork
from tncount.tensor.core import Index, Tensor

from conftest import A, B, C, D, W, X, Y, Z


class TestMultigraph:
    def test_parallel_edges_are_distinct(self):
        g = Multigraph.from_edges([(0, 1), (0, 1)])
        assert g.num_edges() == 2
        assert g.degree(0) == 2
        assert g.neighbors(0) == {1}
        assert not g.is_simple()

    def test_self_loop_rejected(self):
        with pytest.raises(GraphError):
            Multigraph.from_edges([(2, 2)])

    def test_reused_edge_id_rejected(self):
        g = Multigraph()
        g.add_edge(0, 1, edge_id=5)
        with pytest.raises(GraphError):
            g.add_edge(1, 2, edge_id=5)

    def test_cut_counts_parallel_edges(self):
        g = Multigraph.from_edges([(0, 1), (0, 1), (1, 2)])
        assert g.cut({0}) == 2
        assert g.cut({1}) == 3

    def test_induced_keeps_ids(self):
        g = Multigraph.from_edges([(0, 1), (1, 2), (2, 3)])
        h = g.induced([1, 2, 3])
        assert h.vertices == [1, 2, 3]
        assert h.edges == [1, 2]
        assert h.endpoints(2) == (2, 3)

    def test_without_isolated(self):
        g = Multigraph.from_edges([(0, 1)], vertices=range(4))
        assert g.without_isolated().vertices == [0, 1]


class TestLineGraph:
    def test_path(self):
        lg = line_graph(Multigraph.from_edges([(0, 1), (1, 2)]))
        assert lg.num_vertices() == 2
        assert lg.num_edges() == 1

    def test_triangle_is_self_dual(self):
        lg = line_graph(Multigraph.from_edges([(0, 1), (1, 2), (0, 2)]))
        assert nx.is_isomorphic(nx.Graph(lg.to_networkx()), nx.cycle_graph(3))
        assert lg.num_edges() == 3

    def test_parallel_edges_share_two_endpoints(self):
        lg = line_graph(Multigraph.from_edges([(0, 1), (0, 1)]))
        assert lg.vertices == [0, 1]
        assert lg.num_edges() == 2

    def test_isolated_vertices_contribute_nothing(self):
        lg = line_graph(Multigraph.from_edges([(0, 1)], vertices=range(3)))
        assert lg.num_vertices() == 1
        assert lg.num_edges() == 0

    def test_edge_count_is_sum_of_degree_pairs(self, random_multigraph):
        for seed in range(50):
            g = random_multigraph(seed)
            lg = line_graph(g)
            assert lg.num_vertices() == g.num_edges(), seed
            assert lg.num_edges() == sum(math.comb(g.degree(v), 2) for v in g.vertices), seed


class TestEdgeCliqueCover:
    def test_star(self):
        star = Multigraph.from_edges([(0, 1), (0, 2), (0, 3)])
        cover = edge_incidence_cover(star)
        assert cover.labels[0] == frozenset({0, 1, 2})
        assert cover.labels[1] == frozenset({0})
        assert cover.validate(line_graph(star)) == []

    def test_single_edge(self):
        g = Multigraph.from_edges([(0, 1)])
        cover = edge_incidence_cover(g)
        assert cover.labels == {0: frozenset({0}), 1: frozenset({0})}

    def test_triangle(self):
        g = Multigraph.from_edges([(0, 1), (1, 2), (0, 2)])
        cover = edge_incidence_cover(g)
        assert len(cover) == 3
        assert all(len(members) == 2 for members in cover.labels.values())
        cover.check(line_graph(g))

    def test_non_clique_is_reported(self):
        path = Multigraph.from_edges([(0, 1), (1, 2)])
        cover = EdgeCliqueCover({"a": frozenset({0, 2}), "b": frozenset({1})})
        problems = cover.validate(path)
        assert any("not adjacent" in p for p in problems)
        with pytest.raises(DecompositionError):
            cover.check(path)

    def test_uncovered_vertex_is_reported(self):
        path = Multigraph.from_edges([(0, 1), (1, 2)])
        cover = EdgeCliqueCover({"a": frozenset({0, 1})})
        assert "vertex 2 not covered" in cover.validate(path)


class TestStructureGraph:
    def test_example_formula_is_incidence_graph_plus_free_vertex(self, example_network):
        sg = structure_graph(example_network)
        assert sg.free_vertex == 8
        assert sg.graph.num_vertices() == 9
        assert sg.graph.num_edges() == 10
        assert sg.graph.degree(sg.free_vertex) == 0
        assert sg.graph.neighbors(Y) == {A, B, C, D}
        assert sg.graph.neighbors(A) == {W, X, Y}
        assert sg.graph.neighbors(Z) == {B, D}

    def test_single_scalar(self):
        sg = structure_graph(TensorNetwork.of([Tensor((), 2.0)]))
        assert sg.graph.num_vertices() == 2
        assert sg.graph.num_edges() == 0

    def test_free_indices_join_the_free_vertex(self):
        i, j = Index.new(), Index.new()
        sg = structure_graph(TensorNetwork.of([Tensor((i, j), [1, 0, 0, 1])]))
        assert sg.graph.num_edges() == 2
        assert [sg.graph.endpoints(e) for e in sg.graph.edges] == [(0, 1), (0, 1)]
        assert set(sg.edge_index.values()) == {i, j}


class TestTrees:
    def test_centroid_of_path(self):
        assert tree_centroid(nx.path_graph(5)) == 2

    def test_prune_and_suppress(self):
        t = nx.Graph([(0, 1), (1, 2), (2, 3), (1, 4)])
        pruned = prune_leaves(t, keep={0, 3})
        assert set(pruned.nodes) == {0, 1, 2, 3}
        spliced = suppress_degree_two(pruned, keep={0, 3})
        assert {frozenset(e) for e in spliced.edges} == {frozenset({0, 3})}


class TestPaceGraph:
    def test_write_numbers_vertices_from_one(self):
        g = Multigraph.from_edges([(10, 20), (20, 30)])
        assert write_gr(g) == "p tw 3 2\n1 2\n2 3\n"

    def test_parallel_edges_written_once(self):
        assert write_gr(Multigraph.from_edges([(0, 1), (1, 0)])) == "p tw 2 1\n1 2\n"

    def test_read(self):
        g = read_gr("c a comment\np tw 3 2\n1 2\n2 3\n")
        assert g.vertices == [0, 1, 2]
        assert [g.endpoints(e) for e in g.edges] == [(0, 1), (1, 2)]

    @pytest.mark.parametrize(
        "text",
        ["1 2\n", "p tw 2\n", "p tw 2 1\n1 3\n", "p tw 2 2\n1 2\n", "p tw 2 1\n1 1\n"],
    )
    def test_read_rejects_malformed(self, text):
        with pytest.raises(ParseError):
            read_gr(text)
