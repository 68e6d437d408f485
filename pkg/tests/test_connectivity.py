import random
from fractions import Fraction

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import two_triangles_shared_vertex
from makerbreaker.connectivity import (
    edge_connectivity,
    mader_subgraph,
    unfriendly_partition,
    vertex_connectivity,
    vertex_connectivity_at_least,
    vertex_cut_below,
)
from makerbreaker.errors import DomainError
from makerbreaker.generators import disjoint_union, gnp
from makerbreaker.graphs import Graph, frac_ceil, induced_subgraph, min_degree


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return h


class TestEdgeConnectivity:
    def test_examples(self):
        assert edge_connectivity(Graph.complete(4)) == 3
        assert edge_connectivity(Graph.cycle(5)) == 2
        assert edge_connectivity(Graph.path(4)) == 1

    def test_too_small(self):
        with pytest.raises(DomainError):
            edge_connectivity(Graph(1))

    def test_disconnected_is_zero(self):
        assert edge_connectivity(Graph(4, [(0, 1), (2, 3)])) == 0

    def test_against_networkx(self):
        for seed in range(12):
            g = gnp(10, 0.4, seed)
            assert edge_connectivity(g) == nx.edge_connectivity(to_nx(g))

    def test_random_bipartition_upper_bound(self):
        rng = random.Random(7)
        for seed in range(4):
            g = gnp(14, 0.5, seed)
            lam = edge_connectivity(g)
            for _ in range(200):
                size = rng.randint(1, g.n - 1)
                side = set(rng.sample(range(g.n), size))
                cut = sum(1 for u, v in g.edges if (u in side) != (v in side))
                assert lam <= cut


class TestVertexConnectivity:
    def test_examples(self):
        assert vertex_connectivity(Graph.complete(5)) == 4
        assert vertex_connectivity(Graph.cycle(5)) == 2
        assert vertex_connectivity(two_triangles_shared_vertex()) == 1

    def test_too_small(self):
        with pytest.raises(DomainError):
            vertex_connectivity(Graph(1))

    def test_against_networkx(self):
        for seed in range(12):
            g = gnp(9, 0.45, seed)
            assert vertex_connectivity(g) == nx.node_connectivity(to_nx(g))

    def test_threshold_agrees_with_exact(self):
        for seed in range(8):
            g = gnp(10, 0.5, seed)
            if g.is_complete():
                continue
            kappa = vertex_connectivity(g)
            for t in range(0, kappa + 2):
                assert vertex_connectivity_at_least(g, t) == (kappa >= t)

    def test_cut_below_returns_real_cut(self):
        for seed in range(8):
            g = gnp(10, 0.4, seed)
            if g.is_complete():
                continue
            kappa = vertex_connectivity(g)
            cut = vertex_cut_below(g, kappa + 1)
            assert cut is not None and len(cut) == kappa
            if g.n - len(cut) > 1:
                remaining = sorted(set(range(g.n)) - cut)
                sub, _ = induced_subgraph(g, remaining)
                assert nx.number_connected_components(to_nx(sub)) > 1

    @settings(max_examples=40, deadline=None)
    @given(st.integers(min_value=0, max_value=60), st.integers(min_value=4, max_value=10))
    def test_connectivity_chain(self, seed, n):
        g = gnp(n, 0.5, seed)
        assert vertex_connectivity(g) <= edge_connectivity(g) <= min_degree(g)


class TestUnfriendlyPartition:
    def test_c4(self):
        x1, x2 = unfriendly_partition(Graph.cycle(4))
        g = Graph.cycle(4)
        for v in range(4):
            other = x2 if v in x1 else x1
            assert 2 * g.degree_into(v, other) >= g.degree(v)

    def test_k3_postcondition(self):
        g = Graph.complete(3)
        x1, x2 = unfriendly_partition(g)
        assert x1 and x2
        for v in range(3):
            other = x2 if v in x1 else x1
            assert 2 * g.degree_into(v, other) >= g.degree(v)

    def test_c5_postcondition(self):
        g = Graph.cycle(5)
        x1, x2 = unfriendly_partition(g)
        for v in range(5):
            other = x2 if v in x1 else x1
            assert g.degree_into(v, other) >= 1

    @settings(max_examples=40, deadline=None)
    @given(st.integers(min_value=0, max_value=50), st.integers(min_value=2, max_value=12))
    def test_pointwise_half_degree(self, seed, n):
        g = gnp(n, 0.5, seed)
        x1, x2 = unfriendly_partition(g)
        assert x1 | x2 == frozenset(range(n)) and not x1 & x2
        for v in range(n):
            other = x2 if v in x1 else x1
            assert 2 * g.degree_into(v, other) >= g.degree(v)


class TestMaderSubgraph:
    def test_k8(self):
        assert mader_subgraph(Graph.complete(8), 4) == frozenset(range(8))

    def test_edgeless_none(self):
        assert mader_subgraph(Graph.empty(5), 1) is None

    def test_two_cliques(self):
        g = disjoint_union(Graph.complete(5), Graph.complete(5))
        found = mader_subgraph(g, 4)
        assert found is not None
        sub, _ = induced_subgraph(g, found)
        assert vertex_connectivity(sub) >= 1

    @settings(max_examples=30, deadline=None)
    @given(
        st.integers(min_value=0, max_value=40),
        st.integers(min_value=5, max_value=14),
        st.integers(min_value=1, max_value=6),
    )
    def test_self_certifying(self, seed, n, k):
        g = gnp(n, 0.5, seed)
        found = mader_subgraph(g, k)
        if found is not None:
            sub, _ = induced_subgraph(g, found)
            target = frac_ceil(Fraction(k, 4))
            if sub.n >= 2:
                assert vertex_connectivity(sub) >= target
            else:
                assert target <= 0

    def test_succeeds_when_average_degree_suffices(self):
        for seed in range(6):
            g = gnp(12, 0.6, seed)
            avg = 2 * g.m / g.n
            k = int(avg)
            if k >= 1:
                assert mader_subgraph(g, k) is not None
