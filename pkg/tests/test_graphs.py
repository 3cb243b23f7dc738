import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from unichord.errors import GraphError, ParseError
from unichord.graphs import Graph, components, emit_graph, induced_subgraph, load_graph, named_graph

import helpers


def bfs_girth(g):
    best = 10 ** 9
    for s in g.vids:
        dist = {s: 0}
        parent = {s: None}
        queue = [s]
        for u in queue:
            for w in g.neighbors(u):
                if w not in dist:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue.append(w)
                elif parent[u] != w:
                    best = min(best, dist[u] + dist[w] + 1)
    return best


class TestLoaders:
    def test_dimacs_path(self):
        g = load_graph("p edge 3 2\ne 1 2\ne 2 3\n", "dimacs")
        assert g.vids == (1, 2, 3)
        assert g.edges() == [(1, 2), (2, 3)]

    def test_json_house(self):
        text = '{"n":5,"edges":[[0,1],[1,2],[2,3],[3,0],[4,0],[4,1]]}'
        g = load_graph(text, "json")
        assert g == named_graph("house")

    def test_loop_rejected(self):
        with pytest.raises(ParseError) as err:
            load_graph("p edge 2 1\ne 1 1\n", "dimacs")
        assert "loop" in str(err.value)

    def test_duplicate_edge_warns(self):
        g = load_graph("p edge 2 2\ne 1 2\ne 2 1\n", "dimacs")
        assert g.m == 1
        assert any("duplicate" in w for w in g.warnings)

    def test_json_duplicate_edge_warns(self):
        g = load_graph('{"n":3,"edges":[[0,1],[1,0]]}', "json")
        assert g.m == 1 and g.warnings

    def test_parse_error_carries_line(self):
        with pytest.raises(ParseError) as err:
            load_graph("p edge 2 1\nq nonsense\n", "dimacs")
        assert err.value.line == 2

    def test_out_of_range_vertex(self):
        with pytest.raises(ParseError):
            load_graph("p edge 2 1\ne 1 5\n", "dimacs")
        with pytest.raises(ParseError):
            load_graph('{"n":2,"edges":[[0,5]]}', "json")

    def test_roundtrip_both_formats(self):
        rng = random.Random(0)
        for _ in range(25):
            g = helpers.random_connected_graph(rng, rng.randint(1, 9))
            for fmt in ("dimacs", "json"):
                text = emit_graph(g, fmt)
                h = load_graph(text, fmt)
                assert emit_graph(h, fmt) == text
                assert helpers.isomorphic(g, h)

    def test_roundtrip_preserves_numbering(self):
        g = named_graph("house")
        h = load_graph(emit_graph(g, "json"), "json")
        assert h == g
        d = load_graph(emit_graph(g, "dimacs"), "dimacs")
        assert d.vids == (1, 2, 3, 4, 5)


class TestGraphValue:
    def test_loop_constructor(self):
        with pytest.raises(GraphError):
            Graph([0, 1], [(0, 0)])

    def test_unknown_endpoint(self):
        with pytest.raises(GraphError):
            Graph([0, 1], [(0, 2)])

    def test_symmetry_and_closure(self):
        rng = random.Random(1)
        for _ in range(20):
            g = helpers.random_connected_graph(rng, rng.randint(2, 10))
            for v in g.vids:
                for w in g.neighbors(v):
                    assert v in g.neighbors(w)
                    assert w in g.vids

    def test_immutable(self):
        g = named_graph("house")
        with pytest.raises(AttributeError):
            g.m = 7

    def test_hashable_value_semantics(self):
        a = named_graph("house")
        b = load_graph(emit_graph(a, "json"), "json")
        assert hash(a) == hash(b) and a == b
        assert len({a, b}) == 1


class TestInduced:
    def test_house_triangle(self):
        # vertices a,b,e of the house induce a triangle
        tri = induced_subgraph(named_graph("house"), {0, 1, 4})
        assert tri.m == 3 and tri.n == 3

    def test_identity(self):
        g = named_graph("petersen")
        assert induced_subgraph(g, g.vids) == g

    def test_c5_minus_vertex_is_path(self):
        c5 = named_graph("cycle", 5)
        for v in c5.vids:
            sub = c5.without([v])
            degs = sorted(sub.degree(u) for u in sub.vids)
            assert degs == [1, 1, 2, 2]

    def test_unknown_vertex(self):
        with pytest.raises(GraphError):
            named_graph("house").induced({0, 99})


class TestComponents:
    def test_empty(self):
        assert components(Graph([], [])) == []

    def test_house_one(self):
        assert len(components(named_graph("house"))) == 1

    def test_c5_plus_k3(self):
        c5 = named_graph("cycle", 5)
        k3 = named_graph("clique", 3).relabel({0: 10, 1: 11, 2: 12})
        g = Graph(c5.vids + k3.vids, c5.edges() + k3.edges())
        comps = components(g)
        assert sorted(len(c) for c in comps) == [3, 5]
        assert min(comps[0]) < min(comps[1])


class TestNamedGraphs:
    def test_petersen(self):
        g = named_graph("petersen")
        assert g.n == 10 and g.m == 15
        assert all(g.degree(v) == 3 for v in g.vids)
        assert bfs_girth(g) == 5

    def test_heawood(self):
        g = named_graph("heawood")
        assert g.n == 14 and g.m == 21
        assert all(g.degree(v) == 3 for v in g.vids)
        assert bfs_girth(g) == 6

    def test_house(self):
        g = named_graph("house")
        assert g.n == 5 and g.m == 6
        want = {(0, 1), (1, 2), (2, 3), (0, 3), (0, 4), (1, 4)}
        assert {tuple(sorted(e)) for e in g.edges()} == want

    def test_cycle_no_chords(self):
        c5 = named_graph("cycle", 5)
        assert c5.m == 5 and all(c5.degree(v) == 2 for v in c5.vids)

    def test_unknown(self):
        with pytest.raises(GraphError):
            named_graph("moebius")
        with pytest.raises(GraphError):
            named_graph("cycle", 2)


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 9), st.randoms(use_true_random=False))
def test_roundtrip_property(n, rnd):
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rnd.random() < 0.4]
    g = Graph(range(n), edges)
    for fmt in ("dimacs", "json"):
        assert emit_graph(load_graph(emit_graph(g, fmt), fmt), fmt) == emit_graph(g, fmt)
