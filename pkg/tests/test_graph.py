"""Graphs, powers, blow-ups, and the bipartite edge counter."""

import itertools
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tightpath import (
    Graph,
    blow_up,
    complete_graph,
    contract_clusters,
    cycle_graph,
    edge_count_between,
    graph_power,
    induced_subgraph,
)


def random_graph(n: int, p: float, seed: int) -> Graph:
    rng = random.Random(seed)
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return Graph(n, edges)


class TestGraphBasics:
    def test_rejects_self_loop(self):
        with pytest.raises(ValueError):
            Graph(3, [(1, 1)])

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            Graph(3, [(0, 3)])

    def test_rejects_degree_above_declared_max(self):
        with pytest.raises(ValueError):
            Graph(4, [(0, 1), (0, 2), (0, 3)], max_degree=2)

    def test_adjacency_sorted_and_deduped(self):
        g = Graph(4, [(2, 0), (0, 1), (1, 0)])
        assert g.neighbors(0) == [1, 2]
        assert g.num_edges == 2

    def test_labels_length_checked(self):
        with pytest.raises(ValueError):
            Graph(3, [], vertex_labels=[0, 1])


class TestEdgeCountBetween:
    def test_k4_split(self):
        assert edge_count_between(complete_graph(4), {0, 1}, {2, 3}) == 4

    def test_edgeless(self):
        assert edge_count_between(Graph(6, []), {0, 1}, {4, 5}) == 0

    def test_rejects_overlap(self):
        with pytest.raises(ValueError):
            edge_count_between(complete_graph(4), {0, 1}, {1, 2})

    def test_matches_naive_double_loop(self):
        rng = random.Random(7)
        for trial in range(40):
            g = random_graph(18, 0.3, trial)
            verts = list(range(18))
            rng.shuffle(verts)
            s, t = set(verts[:5]), set(verts[5:11])
            naive = sum(1 for u in s for v in t if g.has_edge(u, v))
            assert edge_count_between(g, s, t) == naive


def power_oracle(g: Graph, k: int) -> set[tuple[int, int]]:
    """Boolean adjacency-power reachability: u ~ v iff some A^i (1<=i<=k)
    has a positive (u, v) entry."""
    n = g.num_vertices
    a = np.zeros((n, n), dtype=bool)
    for u, v in g.edges():
        a[u, v] = a[v, u] = True
    reach = np.zeros((n, n), dtype=bool)
    step = np.eye(n, dtype=bool)
    for _ in range(k):
        step = step @ a
        reach |= step
    return {(u, v) for u in range(n) for v in range(u + 1, n) if reach[u, v]}


class TestGraphPower:
    def test_k1_is_identity(self):
        g = random_graph(12, 0.3, 1)
        assert graph_power(g, 1).edge_set() == g.edge_set()

    def test_path_squared(self):
        g = Graph(4, [(0, 1), (1, 2), (2, 3)])
        squared = graph_power(g, 2)
        assert set(squared.edges()) == {(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)}

    def test_rejects_k0(self):
        with pytest.raises(ValueError):
            graph_power(complete_graph(3), 0)

    def test_matches_boolean_power_oracle(self):
        for trial in range(25):
            g = random_graph(14, 0.12, 100 + trial)
            got = set(graph_power(g, 3).edges())
            assert got == power_oracle(g, 3)

    @settings(max_examples=60, deadline=None)
    @given(st.integers(4, 12), st.integers(0, 10**6))
    def test_power_one_fixed_point(self, n, seed):
        g = random_graph(n, 0.4, seed)
        assert graph_power(g, 1) == Graph(n, g.edges())


class TestBlowUp:
    def test_single_edge_t3(self):
        g = Graph(2, [(0, 1)])
        gb, cmap = blow_up(g, 3)
        assert gb.num_vertices == 6
        assert gb.num_edges == 15  # two triangles + K_{3,3}
        assert cmap == [0, 0, 0, 1, 1, 1]

    def test_t1_is_identity(self):
        g = random_graph(9, 0.4, 3)
        gb, cmap = blow_up(g, 1)
        assert gb.edge_set() == g.edge_set()
        assert cmap == list(range(9))

    def test_counts_match_formula(self):
        for trial in range(15):
            g = random_graph(8, 0.5, 200 + trial)
            gb, _ = blow_up(g, 4)
            assert gb.num_vertices == 4 * g.num_vertices
            assert gb.num_edges == 6 * g.num_vertices + 16 * g.num_edges

    def test_contraction_recovers_quotient(self):
        for trial in range(15):
            g = random_graph(10, 0.35, 300 + trial)
            gb, cmap = blow_up(g, 3)
            assert contract_clusters(gb, cmap).edge_set() == g.edge_set()


class TestInducedSubgraph:
    def test_relabels_and_keeps_edges(self):
        g = cycle_graph(6)
        sub, order = induced_subgraph(g, [1, 2, 4, 5])
        assert order == [1, 2, 4, 5]
        assert set(sub.edges()) == {(0, 1), (2, 3)}

    def test_labels_carry_over(self):
        g = Graph(4, [(0, 1)], vertex_labels=[9, 8, 7, 6])
        sub, order = induced_subgraph(g, [0, 2])
        assert sub.vertex_labels == [9, 7]
