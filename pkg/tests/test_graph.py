import random

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from girth5.graph import (
    DEFAULT_MIN_GIRTH,
    MAX_ORDER,
    Graph,
    GraphError,
    add_isolated_vertex,
    delete_vertex,
    distance_at_most,
    enumerate_legal_edges,
    girth,
    girth_at_least,
    is_legal_edge,
    max_degree_sum_legal_edges,
    pair,
)

from conftest import random_graph


def to_nx(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


@st.composite
def graphs(draw, max_n=12, max_p=0.5):
    n = draw(st.integers(min_value=1, max_value=max_n))
    seed = draw(st.integers(min_value=0, max_value=2**32 - 1))
    p = draw(st.floats(min_value=0.0, max_value=max_p))
    return random_graph(n, p, random.Random(seed))


class TestConstruction:
    def test_empty(self):
        g = Graph(5)
        assert g.n == 5 and g.edge_count == 0 and g.edges() == []
        assert g.min_girth == DEFAULT_MIN_GIRTH

    def test_edges_sorted_and_counted(self):
        g = Graph(4, [(2, 3), (0, 1)])
        assert g.edges() == [(0, 1), (2, 3)]
        assert g.edge_count == 2
        assert g.deg == [1, 1, 1, 1]

    def test_rejects_bad_order(self):
        with pytest.raises(GraphError):
            Graph(0)
        with pytest.raises(GraphError):
            Graph(MAX_ORDER + 1)

    def test_rejects_loops_dups_range(self):
        with pytest.raises(GraphError):
            Graph(3, [(1, 1)])
        with pytest.raises(GraphError):
            Graph(3, [(0, 1), (1, 0)])
        with pytest.raises(GraphError):
            Graph(3, [(0, 3)])
        with pytest.raises(GraphError):
            Graph(3, [(-1, 2)])

    def test_pair_normalizes(self):
        assert pair(3, 1) == (1, 3)
        with pytest.raises(GraphError):
            pair(2, 2)

    def test_copy_independent(self):
        g = Graph(5, [(0, 1)])
        h = g.copy()
        h._add_unchecked(2, 3)
        assert g.edge_count == 1 and h.edge_count == 2
        assert g == Graph(5, [(0, 1)])
        assert g != h

    def test_has_edge(self):
        g = Graph(3, [(0, 2)])
        assert g.has_edge(0, 2) and g.has_edge(2, 0)
        assert not g.has_edge(0, 1)

    def test_remove_edge(self):
        g = Graph(3, [(0, 2)])
        g.remove_edge(2, 0)
        assert g.edge_count == 0
        with pytest.raises(GraphError):
            g.remove_edge(0, 2)


class TestDistance:
    def test_path_distances(self):
        g = Graph(5, [(0, 1), (1, 2), (2, 3), (3, 4)])
        assert distance_at_most(g, 0, 4, 4)
        assert not distance_at_most(g, 0, 4, 3)
        assert distance_at_most(g, 2, 2, 0)

    def test_disconnected(self):
        g = Graph(4, [(0, 1)])
        assert not distance_at_most(g, 0, 3, 100)

    @settings(max_examples=60, deadline=None)
    @given(graphs(max_n=10), st.data())
    def test_matches_bfs(self, g, data):
        u = data.draw(st.integers(0, g.n - 1))
        v = data.draw(st.integers(0, g.n - 1))
        limit = data.draw(st.integers(0, g.n + 1))
        try:
            d = nx.shortest_path_length(to_nx(g), u, v)
        except nx.NetworkXNoPath:
            d = None
        assert distance_at_most(g, u, v, limit) == (d is not None and d <= limit)


class TestLegality:
    def test_add_edge_enforces_girth(self):
        g = Graph(5, [(0, 1), (1, 2), (2, 3), (3, 4)])
        # 0..4 are at distance 4: closing the 5-cycle is legal
        assert is_legal_edge(g, 0, 4)
        g.add_edge(0, 4)
        assert girth(g) == 5
        # any chord now creates a short cycle
        for u, v in [(0, 2), (1, 3), (2, 4), (0, 3)]:
            assert not is_legal_edge(g, u, v)
            with pytest.raises(GraphError):
                g.add_edge(u, v)

    def test_existing_edge_not_legal(self):
        g = Graph(3, [(0, 1)])
        assert not is_legal_edge(g, 0, 1)

    def test_enumerate_empty_graph(self):
        g = Graph(4)
        assert enumerate_legal_edges(g) == [
            (0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3),
        ]

    @settings(max_examples=60, deadline=None)
    @given(graphs(max_n=11, max_p=0.25))
    def test_legal_iff_girth_survives(self, g):
        if not girth_at_least(g, 5):
            return
        nonedges = [
            (u, v)
            for v in range(1, g.n)
            for u in range(v)
            if not g.has_edge(u, v)
        ]
        for u, v in nonedges:
            h = g.copy()
            h._add_unchecked(u, v)
            assert is_legal_edge(g, u, v) == girth_at_least(h, 5)

    @settings(max_examples=60, deadline=None)
    @given(graphs(max_n=11, max_p=0.25))
    def test_enumeration_matches_pointwise(self, g):
        if not girth_at_least(g, 5):
            return
        expect = [
            (u, v)
            for v in range(1, g.n)
            for u in range(v)
            if not g.has_edge(u, v) and is_legal_edge(g, u, v)
        ]
        assert sorted(enumerate_legal_edges(g)) == sorted(expect)

    def test_max_degree_sum_ties(self):
        g = Graph(6, [(0, 1)])
        # degree sums: pairs touching 0 or 1 score 1, others 0;
        # (0,1) itself is an edge and excluded
        ties = max_degree_sum_legal_edges(g)
        assert set(ties) <= set(enumerate_legal_edges(g))
        best = max(g.deg[u] + g.deg[v] for u, v in enumerate_legal_edges(g))
        assert all(g.deg[u] + g.deg[v] == best for u, v in ties)
        full = [
            e
            for e in enumerate_legal_edges(g)
            if g.deg[e[0]] + g.deg[e[1]] == best
        ]
        assert sorted(ties) == full


class TestGirth:
    def test_known_girths(self):
        assert girth(Graph(3, [(0, 1), (1, 2), (0, 2)])) == 3
        assert girth(Graph(4, [(0, 1), (1, 2), (2, 3), (0, 3)])) == 4
        assert girth(Graph(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)])) == 5
        assert girth(Graph(4, [(0, 1), (1, 2)])) is None
        assert girth(Graph(1)) is None

    def test_girth_at_least_trivial_thresholds(self):
        g = Graph(3, [(0, 1), (1, 2), (0, 2)])
        assert girth_at_least(g, 3)
        assert not girth_at_least(g, 4)

    @settings(max_examples=80, deadline=None)
    @given(graphs(max_n=12, max_p=0.5), st.integers(3, 7))
    def test_threshold_consistent_with_girth(self, g, t):
        gi = girth(g)
        assert girth_at_least(g, t) == (gi is None or gi >= t)

    @settings(max_examples=50, deadline=None)
    @given(graphs(max_n=10, max_p=0.5))
    def test_girth_matches_networkx(self, g):
        got = girth(g)
        h = to_nx(g)
        want = nx.girth(h)
        assert got == (None if want == float("inf") else want)


class TestOrderChanges:
    def test_add_isolated_vertex(self):
        g = Graph(3, [(0, 2)])
        h = add_isolated_vertex(g)
        assert h.n == 4 and h.edges() == [(0, 2)] and h.deg[3] == 0
        assert g.n == 3

    def test_delete_vertex_renumbers(self):
        g = Graph(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)])
        h = delete_vertex(g, 2)
        assert h.n == 4
        assert h.edges() == [(0, 1), (0, 3), (2, 3)]

    def test_delete_endpoint_vertices(self):
        g = Graph(3, [(0, 1), (1, 2)])
        assert delete_vertex(g, 0).edges() == [(0, 1)]
        assert delete_vertex(g, 2).edges() == [(0, 1)]

    @settings(max_examples=40, deadline=None)
    @given(graphs(max_n=10, max_p=0.4), st.data())
    def test_delete_matches_networkx(self, g, data):
        v = data.draw(st.integers(0, g.n - 1))
        if g.n == 1:
            return
        h = delete_vertex(g, v)
        hx = to_nx(g)
        hx.remove_node(v)
        relabeled = nx.relabel_nodes(
            hx, {w: (w if w < v else w - 1) for w in hx.nodes}
        )
        assert h.edges() == sorted(
            (min(a, b), max(a, b)) for a, b in relabeled.edges
        )
