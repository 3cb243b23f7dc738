import random

import pytest

from unichord import basics as bs
from unichord import oracle as orc
from unichord.errors import PreconditionError
from unichord.graphs import Graph, named_graph

import helpers

DIAMOND = Graph(range(4), [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)])


class TestChordal:
    def test_tree(self):
        peo = bs.is_chordal(named_graph("path", 6))
        assert peo is not None and bs.verify_peo(named_graph("path", 6), peo)

    def test_c4_not(self):
        assert bs.is_chordal(named_graph("cycle", 4)) is None

    def test_clique_any_order(self):
        k = named_graph("clique", 5)
        peo = bs.is_chordal(k)
        assert peo is not None and bs.verify_peo(k, peo)

    def test_against_oracle_hole_search(self):
        # chordal iff no chordless cycle of length >= 4: cross-check the
        # verdict against subset enumeration on all small connected graphs
        for n in range(1, 7):
            for g in helpers.connected_graphs(n):
                want = not _has_hole(g)
                got = bs.is_chordal(g)
                assert (got is not None) == want, (n, g.edges())
                if got is not None:
                    assert bs.verify_peo(g, got)

    def test_clique_number_chordal(self):
        rng = random.Random(3)
        from unichord.compose import random_chordal
        for _ in range(25):
            g = random_chordal(rng, rng.randint(2, 16))
            peo = bs.is_chordal(g)
            assert bs.clique_number_chordal(g, peo) == orc.clique_number_exact(g)


def _has_hole(g) -> bool:
    import itertools
    for r in range(4, g.n + 1):
        for sub in itertools.combinations(g.vids, r):
            h = g.induced(sub)
            if h.m == r and all(h.degree(v) == 2 for v in sub) and h.is_connected():
                return True
    return False


class TestSparseBipartite:
    def test_c6(self):
        got = bs.is_sparse_bipartite(named_graph("cycle", 6))
        assert got is not None
        a, b = got
        assert all(named_graph("cycle", 6).degree(v) <= 2 for v in b)

    def test_k33_no(self):
        k33 = Graph(range(6), [(i, j + 3) for i in range(3) for j in range(3)])
        assert bs.is_sparse_bipartite(k33) is None

    def test_star(self):
        star = Graph(range(6), [(0, i) for i in range(1, 6)])
        got = bs.is_sparse_bipartite(star)
        assert got is not None

    def test_heawood_not_sparse(self):
        assert bs.is_sparse_bipartite(named_graph("heawood")) is None

    def test_triangle_no(self):
        assert bs.is_sparse_bipartite(named_graph("clique", 3)) is None

    def test_component_orientation(self):
        # one component needs side A as the sparse side, the other side B
        star = Graph(range(5), [(0, i) for i in range(1, 5)])
        path = named_graph("path", 3).relabel({0: 10, 1: 11, 2: 12})
        g = Graph(star.vids + path.vids, star.edges() + path.edges())
        got = bs.is_sparse_bipartite(g)
        assert got is not None
        _a, b = got
        assert all(g.degree(v) <= 2 for v in b)


class TestEmbedding:
    def test_c5_in_petersen(self):
        emb = bs.embed_in_named(named_graph("cycle", 5), "petersen")
        assert emb is not None
        _check_embedding(named_graph("cycle", 5), named_graph("petersen"), emb)

    def test_c6_in_heawood_and_petersen(self):
        # exhaustive search finds induced 6-cycles in both exceptional graphs
        c6 = named_graph("cycle", 6)
        for target in ("heawood", "petersen"):
            emb = bs.embed_in_named(c6, target)
            assert emb is not None, target
            _check_embedding(c6, named_graph(target), emb)

    def test_k4_in_neither(self):
        k4 = named_graph("clique", 4)
        assert bs.embed_in_named(k4, "petersen") is None
        assert bs.embed_in_named(k4, "heawood") is None

    def test_c5_not_in_heawood(self):
        assert bs.embed_in_named(named_graph("cycle", 5), "heawood") is None

    def test_whole_targets(self):
        for name in ("petersen", "heawood"):
            g = named_graph(name)
            emb = bs.embed_in_named(g, name)
            assert emb is not None
            _check_embedding(g, g, emb)

    def test_embeddings_against_bruteforce(self):
        import itertools
        rng = random.Random(8)
        p = named_graph("petersen")
        for _ in range(20):
            size = rng.randint(1, 5)
            g = helpers.random_connected_graph(rng, size, 0.5)
            got = bs.embed_in_named(g, "petersen") is not None
            want = False
            for sub in itertools.combinations(p.vids, size):
                if helpers.isomorphic(g, p.induced(sub)):
                    want = True
                    break
            assert got == want, g.edges()


def _check_embedding(g, t, emb):
    assert len(set(emb.values())) == g.n
    for u in g.vids:
        for v in g.vids:
            if u < v:
                assert g.has_edge(u, v) == t.has_edge(emb[u], emb[v])


class TestDiamondFree:
    def test_diamond_witness(self):
        w = bs.is_diamond_free(DIAMOND)
        assert w is not None
        u, v, w1, w2 = w
        assert DIAMOND.has_edge(u, v) and not DIAMOND.has_edge(w1, w2)

    def test_petersen_free(self):
        assert bs.is_diamond_free(named_graph("petersen")) is None

    def test_k4_free(self):
        assert bs.is_diamond_free(named_graph("clique", 4)) is None


class TestUnichordFree:
    def test_examples(self):
        assert bs.is_unichord_free(named_graph("petersen"))
        assert not bs.is_unichord_free(DIAMOND)
        assert not bs.is_unichord_free(named_graph("house"))
        assert not bs.is_unichord_free(Graph(range(4), [(0, 1), (0, 2), (0, 3),
                                                        (1, 2), (1, 3), (2, 3)])
                                       .add_vertex(4, [2, 3]))
        assert bs.is_unichord_free(named_graph("clique", 6))
        assert bs.is_unichord_free(named_graph("cycle", 9))

    def test_chordal_with_diamond_rejected(self):
        assert not bs.is_unichord_free(DIAMOND)

    def test_trees_and_cliques_accepted(self):
        assert bs.is_unichord_free(named_graph("path", 8))
        assert bs.is_unichord_free(named_graph("clique", 4))

    def test_requires_connected(self):
        with pytest.raises(PreconditionError):
            bs.is_unichord_free(Graph(range(4), [(0, 1), (2, 3)]))

    def test_implies_diamond_free(self):
        rng = random.Random(17)
        for _ in range(300):
            g = helpers.random_connected_graph(rng, rng.randint(2, 9))
            if bs.is_unichord_free(g):
                assert bs.is_diamond_free(g) is None

    def test_oracle_agreement_exhaustive_small(self):
        # full agreement with the subset oracle on every connected graph with
        # n <= 8 runs in the acceptance module; up to 7 here
        for n in range(2, 8):
            for g in helpers.connected_graphs(n):
                assert bs.is_unichord_free(g) == (orc.find_unichord(g) is None), g.edges()

    def test_oracle_agreement_random_n10(self):
        rng = random.Random(18)
        for _ in range(600):
            g = helpers.random_connected_graph(rng, rng.randint(2, 10))
            assert bs.is_unichord_free(g) == (orc.find_unichord(g) is None), g.edges()


class TestClassifyBase:
    def test_tags(self):
        assert bs.classify_ucf_base(named_graph("clique", 4)).tag == "clique"
        assert bs.classify_ucf_base(named_graph("cycle", 6)).tag == "sparse-bipartite"
        assert bs.classify_ucf_base(named_graph("petersen")).tag == "petersen-sub"
        assert bs.classify_ucf_base(named_graph("heawood")).tag == "heawood-sub"
        assert bs.classify_ucf_base(named_graph("house")) is None

    def test_evidence_revalidates(self):
        g = named_graph("petersen")
        cls = bs.classify_ucf_base(g)
        _check_embedding(g, named_graph("petersen"), cls.evidence)
        obj = cls.to_json()
        assert obj["tag"] == "petersen-sub"
