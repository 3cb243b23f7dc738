import random

import pytest

from unichord import decomp as dc
from unichord.compose import CompositionSpec, compose, compose_instance, random_chordal
from unichord.decomp import (Split, blocks, find_amalgam, find_cutvertex,
                             find_proper_2cutset, find_universal_vertices, potential_f)
from unichord.errors import GraphError, PreconditionError
from unichord.graphs import Graph, named_graph

import helpers

BOWTIE = Graph(range(5), [(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)])
W4 = Graph(range(5), [(0, 1), (1, 2), (2, 3), (3, 0), (4, 0), (4, 1), (4, 2), (4, 3)])


class TestUniversal:
    def test_examples(self):
        assert find_universal_vertices(named_graph("clique", 4)) == frozenset(range(4))
        assert find_universal_vertices(W4) == frozenset({4})
        assert find_universal_vertices(named_graph("petersen")) == frozenset()


class TestCutvertex:
    def test_bowtie(self):
        s = find_cutvertex(BOWTIE)
        assert s is not None and s.cut == (2,)
        s.validate(BOWTIE)

    def test_c5_none(self):
        assert find_cutvertex(named_graph("cycle", 5)) is None

    def test_path_middle(self):
        s = find_cutvertex(named_graph("path", 3))
        assert s.cut == (1,)

    def test_requires_connected(self):
        g = Graph(range(4), [(0, 1), (2, 3)])
        with pytest.raises(PreconditionError):
            find_cutvertex(g)

    def test_agrees_with_bruteforce(self):
        rng = random.Random(41)
        for _ in range(80):
            g = helpers.random_connected_graph(rng, rng.randint(2, 9))
            brute = [v for v in g.vids
                     if g.n > 1 and not g.without([v]).is_connected() and g.n - 1 > 0]
            s = find_cutvertex(g)
            if brute:
                assert s is not None and s.cut[0] == min(brute)
            else:
                assert s is None


class TestAmalgam:
    def test_c5_none(self):
        assert find_amalgam(named_graph("cycle", 5)) is None

    def test_petersen_none(self):
        assert find_amalgam(named_graph("petersen")) is None

    def test_one_join_two_triangles(self):
        g = Graph(range(6), [(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5),
                             (1, 3), (1, 4), (2, 3), (2, 4)])
        s = find_amalgam(g)
        assert s is not None and s.k == frozenset()
        s.validate(g)

    def test_w4_prechecks(self):
        with pytest.raises(PreconditionError):
            find_amalgam(W4)  # universal hub
        with pytest.raises(PreconditionError):
            find_amalgam(BOWTIE)  # cutvertex

    def test_one_join_only_restriction(self):
        # planted amalgam with K = {9}; the K-restricted search may only
        # return splits with an empty K
        g1 = Graph([0, 1, 2, 6, 9],
                   [(0, 1), (0, 9), (1, 9), (2, 0), (2, 1), (2, 9), (6, 0), (6, 1)])
        g2 = Graph([3, 4, 5, 7, 9],
                   [(3, 4), (3, 9), (4, 9), (5, 3), (5, 4), (5, 9), (7, 3), (7, 4)])
        g = compose(CompositionSpec("amalgam", shared=frozenset({9}),
                                    marker1=2, marker2=5), g1, g2)
        full = find_amalgam(g)
        assert full is not None
        full.validate(g)
        restricted = find_amalgam(g, one_join_only=True)
        if restricted is not None:
            assert restricted.k == frozenset()
            restricted.validate(g)

    def test_planted_instances_recovered(self):
        rng = random.Random(42)
        found = 0
        for trial in range(200):
            g1 = _two_connected_block(rng, 0)
            g2 = _two_connected_block(rng, 50)
            u2 = rng.choice(g1.vids)
            u1 = rng.choice(g2.vids)
            g = compose(CompositionSpec("one-join", marker1=u2, marker2=u1), g1, g2)
            try:
                s = find_amalgam(g)
            except PreconditionError:
                continue
            assert s is not None, (g1.edges(), g2.edges(), u2, u1)
            s.validate(g)
            found += 1
        assert found >= 120

    def test_exhaustive_against_bruteforce_small(self):
        """Completeness: the finder agrees with subset brute force on all
        connected graphs with <= 6 vertices that satisfy its preconditions."""
        import itertools
        for n in range(4, 7):
            for g in helpers.connected_graphs(n):
                if find_universal_vertices(g) or find_cutvertex(g) is not None:
                    continue
                brute = _bruteforce_amalgam(g)
                got = find_amalgam(g)
                assert (got is not None) == brute, (n, g.edges())
                if got is not None:
                    got.validate(g)


def _two_connected_block(rng, offset):
    if rng.random() < 0.5:
        g = named_graph("cycle", rng.randint(4, 9))
    else:
        g = named_graph("clique", rng.randint(3, 5))
    return g.relabel({v: v + offset for v in g.vids})


def _bruteforce_amalgam(g) -> bool:
    import itertools
    verts = list(g.vids)
    n = len(verts)
    for kmask in range(1 << n):
        k = {verts[i] for i in range(n) if (kmask >> i) & 1}
        if any(not g.has_edge(a, b) for a in k for b in k if a < b):
            continue
        rest = [v for v in verts if v not in k]
        if len(rest) < 4:
            continue
        for cut in range(1, 1 << (len(rest) - 1)):
            x1 = {rest[i] for i in range(len(rest)) if (cut >> i) & 1}
            x2 = set(rest) - x1
            if len(x1) < 2 or len(x2) < 2:
                continue
            a1 = {v for v in x1 if any(g.has_edge(v, w) for w in x2)}
            a2 = {v for v in x2 if any(g.has_edge(v, w) for w in x1)}
            if not a1 or not a2:
                continue
            if not all(g.has_edge(a, b) for a in a1 for b in a2):
                continue
            if not all(g.has_edge(kk, v) for kk in k for v in a1 | a2):
                continue
            return True
    return False


class TestProper2Cutset:
    def test_c6_antipodal(self):
        s = find_proper_2cutset(named_graph("cycle", 6))
        assert s is not None and s.cut == (0, 3)
        s.validate(named_graph("cycle", 6))

    def test_k4_none(self):
        assert find_proper_2cutset(named_graph("clique", 4)) is None

    def test_theta_graph(self):
        # two vertices joined by three internally disjoint length-3 paths
        g = Graph(range(8), [(0, 2), (2, 3), (3, 1), (0, 4), (4, 5), (5, 1),
                             (0, 6), (6, 7), (7, 1)])
        s = find_proper_2cutset(g)
        assert s is not None
        s.validate(g)
        assert set(s.cut) == {0, 1}

    def test_requires_no_cutvertex(self):
        with pytest.raises(PreconditionError):
            find_proper_2cutset(BOWTIE)


class TestBlocks:
    def test_bowtie_blocks(self):
        s = find_cutvertex(BOWTIE)
        b = blocks(BOWTIE, s)
        assert helpers.isomorphic(b.g1, named_graph("clique", 3))
        assert helpers.isomorphic(b.g2, named_graph("clique", 3))
        assert b.markers == {}

    def test_c6_blocks_are_c5(self):
        # side path plus a marker adjacent to both cut vertices closes a C5
        c6 = named_graph("cycle", 6)
        s = find_proper_2cutset(c6)
        b = blocks(c6, s)
        assert helpers.isomorphic(b.g1, named_graph("cycle", 5))
        assert helpers.isomorphic(b.g2, named_graph("cycle", 5))
        assert set(b.markers) == {"x1", "x2"}

    def test_blocks_strictly_smaller(self):
        rng = random.Random(44)
        for seed in range(20):
            g = compose_instance(seed, 20, base_size=8)
            for finder in (find_cutvertex, find_amalgam, find_proper_2cutset):
                try:
                    s = finder(g)
                except PreconditionError:
                    continue
                if s is None:
                    continue
                b = blocks(g, s)
                assert b.g1.n < g.n
                assert b.g2 is None or b.g2.n < g.n

    def test_invalid_split_rejected(self):
        c6 = named_graph("cycle", 6)
        bogus = Split(kind="cutvertex", cut=(0,), x1=frozenset({1, 2}),
                      x2=frozenset({3, 4, 5}))
        with pytest.raises(GraphError):
            blocks(c6, bogus)

    def test_universal_block(self):
        s = Split(kind="universal-set", x_set=frozenset({4}))
        b = blocks(W4, s)
        assert b.g2 is None and helpers.isomorphic(b.g1, named_graph("cycle", 4))


class TestPotential:
    def test_examples(self):
        assert potential_f(named_graph("clique", 5)) == 1
        assert potential_f(named_graph("cycle", 5)) == 5
        assert potential_f(Graph(range(4), [])) == 6

    def test_sum_inequality_on_decompositions(self):
        # f(G1) + f(G2) <= f(G) at amalgam/cutvertex splits of non-basic
        # universal-free graphs (checked here on generated instances)
        from unichord.recognizer import _basic_tag
        rng = random.Random(45)
        checked = 0
        for seed in range(30):
            g = compose_instance(seed, 25, base_size=10)
            if find_universal_vertices(g) or _basic_tag(g) is not None:
                continue
            s = find_cutvertex(g) or (find_amalgam(g) if find_cutvertex(g) is None else None)
            if s is None:
                continue
            b = blocks(g, s)
            assert potential_f(b.g1) + potential_f(b.g2) <= potential_f(g)
            checked += 1
        assert checked >= 5


class TestSplitSerialization:
    def test_json_shapes(self):
        s = find_cutvertex(BOWTIE)
        obj = s.to_json()
        assert obj["kind"] == "cutvertex" and obj["cutvertex"] == 2
        c6 = named_graph("cycle", 6)
        obj = find_proper_2cutset(c6).to_json()
        assert set(obj) == {"kind", "a", "b", "x1", "x2"}
