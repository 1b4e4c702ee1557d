"""Column enumeration and matrix assembly, checked against brute force."""

import random

import pytest

from oracles import bruteforce_mate_classes
from walklevel.arith import divisors
from walklevel.errors import SearchCapExceeded
from walklevel.fixtures import load_worked_example
from walklevel.graphs import Graph, generalized_cospectral, walk_profile
from walklevel.intmat import IntMatrix, dot
from walklevel.matesearch import (
    dedupe,
    distinct_mate_graphs,
    enumerate_columns,
    search_mates,
)
from walklevel.ortho import from_pair


def random_controllable(rng, n):
    while True:
        edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < 0.5]
        g = Graph.from_edges(n, edges)
        if walk_profile(g).controllable:
            return g


class TestEnumerateColumns:
    def test_level_one_is_standard_basis(self):
        rng = random.Random(1)
        g = random_controllable(rng, 6)
        cols = enumerate_columns(g, 1)
        expected = sorted(tuple(1 if i == j else 0 for i in range(6)) for j in range(6))
        assert cols == expected

    def test_candidate_invariants(self):
        ex = load_worked_example()
        from walklevel.graphs import walk_matrix

        w = walk_matrix(ex.graph)
        for lvl in (3, 9):
            for v in enumerate_columns(ex.graph, lvl):
                assert dot(v, v) == lvl * lvl
                assert sum(v) == lvl
                assert all(x % lvl == 0 for x in w.T.mat_vec(v))
                assert all(abs(x) <= lvl for x in v)

    def test_worked_example_supersets(self):
        ex = load_worked_example()
        c3 = set(enumerate_columns(ex.graph, 3))
        assert set(ex.q_level3.num.columns()) <= c3
        c9 = set(enumerate_columns(ex.graph, 9))
        assert set(ex.q_level9.num.columns()) <= c9

    def test_uncontrollable_rejected(self):
        with pytest.raises(ValueError):
            enumerate_columns(Graph.from_edges(2, [(0, 1)]), 1)

    def test_cap_enforced(self):
        ex = load_worked_example()
        with pytest.raises(SearchCapExceeded):
            enumerate_columns(ex.graph, 9, cap=4)

    def test_matches_naive_enumeration(self):
        # the kernel-residue + box walk must equal the defining conditions
        # applied to every vector in the box, including a composite level
        from itertools import product

        from walklevel.graphs import walk_matrix

        rng = random.Random(9)
        g = random_controllable(rng, 6)
        w = walk_matrix(g)
        wt = w.T
        for lvl in (2, 3, 4):
            naive = []
            for v in product(range(-lvl, lvl + 1), repeat=6):
                if sum(x * x for x in v) != lvl * lvl or sum(v) != lvl:
                    continue
                if all(x % lvl == 0 for x in wt.mat_vec(v)):
                    naive.append(v)
            assert enumerate_columns(g, lvl) == sorted(naive)


class TestSearchMates:
    def test_worked_example_exactly_two(self):
        ex = load_worked_example()
        classes = search_mates(ex.graph, [1, 3, 9])
        nontrivial = [c for c in classes if not c.is_permutation_class]
        assert len(nontrivial) == 2
        keys = {c.canonical_key() for c in nontrivial}
        assert keys == {ex.q_level3.canonical_key(), ex.q_level9.canonical_key()}

    def test_level_one_only_permutation_class(self):
        from walklevel.ortho import RatRegOrtho

        rng = random.Random(2)
        g = random_controllable(rng, 7)
        classes = search_mates(g, [1])
        assert len(classes) == 1
        assert classes[0].is_permutation_class
        assert classes[0].canonical_key() == RatRegOrtho.identity(7).canonical_key()
        assert classes[0].isomorphic_to_input

    def test_soundness_invariants(self):
        ex = load_worked_example()
        d_n = walk_profile(ex.graph).d_n
        for cls in search_mates(ex.graph, [1, 3, 9]):
            q = cls.q
            assert q.num.T @ q.num == (q.den * q.den) * IntMatrix.identity(10)
            assert generalized_cospectral(ex.graph, cls.mate)
            assert from_pair(ex.graph, cls.mate) == q
            assert d_n % cls.level == 0

    def test_backends_agree(self):
        ex = load_worked_example()
        a = search_mates(ex.graph, [1, 3, 9], backend="backtrack")
        b = search_mates(ex.graph, [1, 3, 9], backend="clique")
        assert [c.canonical_key() for c in a] == [c.canonical_key() for c in b]

    def test_backends_agree_random(self):
        rng = random.Random(3)
        for _ in range(5):
            g = random_controllable(rng, 6)
            levels = [d for d in divisors(walk_profile(g).d_n) if d <= 50]
            a = search_mates(g, levels, backend="backtrack")
            b = search_mates(g, levels, backend="clique")
            assert [c.canonical_key() for c in a] == [c.canonical_key() for c in b]

    def test_unknown_backend(self):
        ex = load_worked_example()
        with pytest.raises(ValueError):
            search_mates(ex.graph, [1], backend="magic")

    def test_node_cap_enforced(self):
        ex = load_worked_example()
        with pytest.raises(SearchCapExceeded):
            search_mates(ex.graph, [3], node_cap=2)
        with pytest.raises(SearchCapExceeded):
            search_mates(ex.graph, [3], backend="clique", node_cap=2)


class TestCompositeLevels:
    def test_frozen_composite_level_instance(self):
        # frozen sweep find with classes at 2, 5, and the composite 10;
        # exercises the generic (non-prime-power) kernel enumeration
        from walklevel.graphs import parse_graph6

        g = parse_graph6(r"IWag\fxZG")
        prof = walk_profile(g)
        levels = [d for d in divisors(prof.d_n) if d <= 100]
        classes = search_mates(g, levels)
        assert sorted(c.level for c in classes) == [1, 2, 5, 10]
        for cls in classes:
            assert from_pair(g, cls.mate) == cls.q
            assert generalized_cospectral(g, cls.mate)
        assert search_mates(g, levels, backend="clique") == classes


class TestDedupe:
    def test_right_permutation_collapses(self):
        # the same matrix with shuffled columns is the same class
        ex = load_worked_example()
        classes = search_mates(ex.graph, [3])
        cls = classes[0]
        rng = random.Random(4)
        cols = list(cls.q.num.columns())
        rng.shuffle(cols)
        from walklevel.matesearch import MateClass
        from walklevel.ortho import RatRegOrtho, conjugate

        shuffled = RatRegOrtho(IntMatrix.from_columns(cols), cls.level)
        twin = MateClass(shuffled, conjugate(shuffled, ex.graph), cls.level,
                         cls.isomorphic_to_input)
        assert len(dedupe([cls, twin])) == 1

    def test_empty(self):
        assert dedupe([]) == []


class TestCompletenessOracle:
    def test_small_graphs_match_bruteforce(self):
        rng = random.Random(5)
        for n in (6, 6, 7):
            g = random_controllable(rng, n)
            prof = walk_profile(g)
            levels = divisors(prof.d_n)
            ours = {c.canonical_key() for c in search_mates(g, levels)}
            truth, _ = bruteforce_mate_classes(g)
            assert ours == truth

    def test_mate_graph_grouping(self):
        ex = load_worked_example()
        classes = search_mates(ex.graph, [1, 3, 9])
        assert len(distinct_mate_graphs(classes)) == 2

    def test_mates_stay_controllable(self):
        # controllability is preserved by generalized cospectrality
        ex = load_worked_example()
        for cls in search_mates(ex.graph, [1, 3, 9]):
            assert walk_profile(cls.mate).controllable

    def test_level_one_iff_permutation(self):
        ex = load_worked_example()
        for cls in search_mates(ex.graph, [1, 3, 9]):
            is_perm = sorted(cls.q.num.T.data) == sorted(
                IntMatrix.identity(10).data
            )
            assert (cls.level == 1) == is_perm
