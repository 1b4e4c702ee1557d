"""Graph layer: graph6 I/O, walk matrices, profiles, isomorphism."""

import itertools
import random

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from walklevel.errors import ParseError
from walklevel.fixtures import load_worked_example
from walklevel.graphs import (
    Graph,
    emit_graph6,
    generalized_cospectral,
    isomorphic,
    parse_graph6,
    walk_matrix,
    walk_profile,
)
from walklevel.intmat import det


def random_graph(rng, n, p=0.5):
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    return Graph.from_edges(n, edges)


class TestGraphType:
    def test_validation(self):
        with pytest.raises(ValueError):
            Graph(((0, 1), (0, 0)))  # asymmetric
        with pytest.raises(ValueError):
            Graph(((1,),))  # diagonal
        with pytest.raises(ValueError):
            Graph(((0, 2), (2, 0)))  # not 0/1

    def test_complement_involution(self):
        g = Graph.from_edges(5, [(0, 1), (1, 2), (3, 4)])
        assert g.complement().complement() == g


class TestGraph6:
    def test_known_strings(self):
        # cross-checked against the reference implementation below as well
        assert parse_graph6("A?") == Graph.from_edges(2, [])
        assert parse_graph6("A_") == Graph.from_edges(2, [(0, 1)])

    def test_header_allowed(self):
        assert parse_graph6(">>graph6<<A_") == Graph.from_edges(2, [(0, 1)])

    def test_malformed(self):
        with pytest.raises(ParseError):
            parse_graph6("")
        with pytest.raises(ParseError):
            parse_graph6("B")  # truncated body
        with pytest.raises(ParseError):
            parse_graph6("A" + chr(200))  # byte out of range
        with pytest.raises(ParseError):
            parse_graph6("A" + chr(63 + 1))  # nonzero padding for n=2

    def test_round_trip_random_corpus(self):
        rng = random.Random(99)
        for _ in range(80):
            g = random_graph(rng, rng.randint(1, 20))
            assert parse_graph6(emit_graph6(g)) == g

    def test_against_networkx(self):
        rng = random.Random(100)
        for _ in range(60):
            g = random_graph(rng, rng.randint(1, 15))
            mine = emit_graph6(g)
            ref_graph = nx.Graph()
            ref_graph.add_nodes_from(range(g.n))  # node order fixed before edges
            ref_graph.add_edges_from(
                (i, j) for i in range(g.n) for j in range(i + 1, g.n) if g.adj[i][j]
            )
            ref = nx.to_graph6_bytes(ref_graph).decode().replace(">>graph6<<", "").strip()
            assert mine == ref
            # and parse the reference emission back to the same graph
            assert parse_graph6(ref) == g

    @given(st.integers(1, 30), st.integers(0, 2**60))
    @settings(max_examples=60, deadline=None)
    def test_round_trip_property(self, n, bits):
        pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
        edges = [pairs[k] for k in range(len(pairs)) if (bits >> k) & 1]
        g = Graph.from_edges(n, edges)
        assert parse_graph6(emit_graph6(g)) == g


class TestWalkMatrix:
    def test_single_vertex(self):
        g = Graph(((0,),))
        w = walk_matrix(g)
        assert w.data == ((1,),)
        assert det(w) == 1

    def test_single_edge_not_controllable(self):
        g = Graph.from_edges(2, [(0, 1)])
        w = walk_matrix(g)
        assert w == type(w)(((1, 1), (1, 1)))
        assert det(w) == 0

    def test_column_recurrence(self):
        rng = random.Random(17)
        for _ in range(20):
            g = random_graph(rng, rng.randint(2, 8))
            w = walk_matrix(g)
            a = g.adjacency()
            for j in range(g.n - 1):
                assert a.mat_vec(w.column(j)) == w.column(j + 1)

    def test_worked_example_valuations(self):
        prof = walk_profile(load_worked_example().graph)
        assert prof.valuation(3) == 4
        assert prof.valuation(2) == 5
        assert prof.valuation(19) == 1
        assert prof.rank_p(3) == 9

    def test_all_four_vertex_graphs_uncontrollable(self):
        for bits in range(64):
            pairs = list(itertools.combinations(range(4), 2))
            edges = [pairs[k] for k in range(6) if (bits >> k) & 1]
            g = Graph.from_edges(4, edges)
            assert not walk_profile(g).controllable

    def test_uncontrollable_profile_empty(self):
        prof = walk_profile(Graph.from_edges(2, [(0, 1)]))
        assert not prof.controllable
        assert prof.primes == {}
        assert prof.normalized_det is None

    def test_explicit_prime_list(self):
        prof = walk_profile(load_worked_example().graph, primes=[3])
        assert set(prof.primes) == {3}

    def test_rank_counts_coprime_factors(self):
        # rank of W mod p equals the number of invariant factors coprime to p
        rng = random.Random(61)
        seen = 0
        while seen < 10:
            g = random_graph(rng, rng.randint(6, 9))
            prof = walk_profile(g)
            if not prof.controllable:
                continue
            seen += 1
            for p, (_, rank) in prof.primes.items():
                coprime = sum(1 for d in prof.invariant_factors if d % p)
                assert rank == coprime


class TestGeneralizedCospectral:
    def test_reflexive(self):
        g = random_graph(random.Random(1), 6)
        assert generalized_cospectral(g, g)

    def test_edge_vs_empty(self):
        assert not generalized_cospectral(
            Graph.from_edges(2, [(0, 1)]), Graph.from_edges(2, [])
        )

    def test_different_orders_rejected(self):
        with pytest.raises(ValueError):
            generalized_cospectral(Graph.from_edges(2, []), Graph.from_edges(3, []))

    def test_worked_example_mates(self):
        from walklevel.ortho import conjugate

        ex = load_worked_example()
        h1 = conjugate(ex.q_level3, ex.graph)
        assert generalized_cospectral(ex.graph, h1)

    def test_relabeling_preserves(self):
        rng = random.Random(23)
        for _ in range(10):
            g = random_graph(rng, 7)
            perm = tuple(rng.sample(range(7), 7))
            assert generalized_cospectral(g, g.relabel(perm))


class TestIsomorphic:
    def test_relabeled(self):
        rng = random.Random(5)
        for _ in range(20):
            g = random_graph(rng, rng.randint(2, 9))
            perm = tuple(rng.sample(range(g.n), g.n))
            assert isomorphic(g, g.relabel(perm))

    def test_path_vs_triangle(self):
        p3 = Graph.from_edges(3, [(0, 1), (1, 2)])
        k3 = Graph.from_edges(3, [(0, 1), (1, 2), (0, 2)])
        assert not isomorphic(p3, k3)

    def test_same_degrees_not_isomorphic(self):
        # C6 vs two triangles: both 2-regular on 6 vertices
        c6 = Graph.from_edges(6, [(i, (i + 1) % 6) for i in range(6)])
        tt = Graph.from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
        assert not isomorphic(c6, tt)

    def test_worked_example_mate_not_isomorphic(self):
        from walklevel.ortho import conjugate

        ex = load_worked_example()
        h1 = conjugate(ex.q_level3, ex.graph)
        assert not isomorphic(ex.graph, h1)

    def test_size_limit(self):
        g = Graph.from_edges(13, [])
        with pytest.raises(ValueError):
            isomorphic(g, g)

    def test_against_networkx(self):
        rng = random.Random(77)
        for _ in range(40):
            n = rng.randint(2, 7)
            g = random_graph(rng, n)
            h = random_graph(rng, n)
            ng = nx.Graph([(i, j) for i in range(n) for j in range(i + 1, n) if g.adj[i][j]])
            nh = nx.Graph([(i, j) for i in range(n) for j in range(i + 1, n) if h.adj[i][j]])
            ng.add_nodes_from(range(n))
            nh.add_nodes_from(range(n))
            assert isomorphic(g, h) == nx.is_isomorphic(ng, nh)
