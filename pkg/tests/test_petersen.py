from itertools import combinations

from unichord import petersen as pt
from unichord import oracle as orc
from unichord.basics import bipartition
from unichord.graphs import named_graph


def petersen():
    return pt.canonical_petersen()


class TestAutomorphisms:
    def test_group_order(self):
        assert len(pt.automorphisms()) == 120

    def test_all_are_automorphisms(self):
        g = petersen()
        for tau in pt.automorphisms()[:30]:
            for u, v in g.edges():
                assert g.has_edge(tau[u], tau[v])

    def test_arc_transitive(self):
        g = petersen()
        u0, v0 = g.edges()[0]
        arcs = {(tau[u0], tau[v0]) for tau in pt.automorphisms()}
        assert len(arcs) == 2 * g.m  # every ordered edge is reachable

    def test_vertex_transitive(self):
        g = petersen()
        images = {tau[g.vids[0]] for tau in pt.automorphisms()}
        assert images == set(g.vids)


class TestLabeling:
    def test_rederive(self):
        # clearing the cache and re-deriving gives the identical constant
        lab = pt.canonical_labeling()
        pt.canonical_labeling.cache_clear()
        assert pt.canonical_labeling() == lab

    def test_c_sees_xyz(self):
        lab = pt.canonical_labeling()
        g = petersen()
        assert g.neighbors(lab["c"]) == {lab["x"], lab["y"], lab["z"]}

    def test_a_cycle(self):
        lab = pt.canonical_labeling()
        g = petersen()
        a = [lab[f"a{i}"] for i in range(1, 7)]
        for i in range(6):
            assert g.has_edge(a[i], a[(i + 1) % 6])
        # the a-vertices are exactly the non-neighbors of c
        assert set(a) == set(g.vids) - {lab["c"]} - g.neighbors(lab["c"])

    def test_x_attachments(self):
        lab = pt.canonical_labeling()
        g = petersen()
        assert g.neighbors(lab["x"]) == {lab["c"], lab["a1"], lab["a4"]}

    def test_five_cycle_with_x(self):
        lab = pt.canonical_labeling()
        g = petersen()
        five = g.induced([lab["x"], lab["a1"], lab["a6"], lab["a5"], lab["a4"]])
        assert five.m == 5 and all(five.degree(v) == 2 for v in five.vids)


class TestSpQ2OddCycles:
    """Every odd cycle of the 8-vertex subgraph on {a1..a6, x, c} passes
    through a1, x and a4 -- verified by full cycle enumeration."""

    def test_odd_cycles_all_pass_required(self):
        lab = pt.canonical_labeling()
        g = petersen()
        eight = g.induced(pt.labeled_set("a1", "a2", "a3", "a4", "a5", "a6", "x", "c"))
        required = {lab["a1"], lab["x"], lab["a4"]}
        cycles = _all_cycles(eight)
        odd = [c for c in cycles if len(c) % 2 == 1]
        assert odd, "the subgraph must contain odd cycles"
        for cyc in odd:
            assert required <= set(cyc), cyc

    def test_removing_any_required_vertex_makes_it_bipartite(self):
        lab = pt.canonical_labeling()
        g = petersen()
        eight = g.induced(pt.labeled_set("a1", "a2", "a3", "a4", "a5", "a6", "x", "c"))
        for r in ("a1", "x", "a4"):
            assert bipartition(eight.without([lab[r]])) is not None
        assert bipartition(eight) is None


def _all_cycles(g):
    """All cycles as vertex tuples (each once, up to rotation/reflection)."""
    out = []
    idx = {v: i for i, v in enumerate(g.vids)}

    def extend(path, used):
        start = path[0]
        for w in sorted(g.neighbors(path[-1])):
            if idx[w] < idx[start]:
                continue
            if w == start and len(path) >= 3:
                if path[1] < path[-1]:  # one orientation only
                    out.append(tuple(path))
                continue
            if w in used:
                continue
            path.append(w)
            used.add(w)
            extend(path, used)
            used.discard(w)
            path.pop()

    for s in g.vids:
        extend([s], {s})
    return out


class TestQ2Counterexample:
    """With k_in = {c} and k_plus = {x} the only splitter is forced, and
    together with x it contains a 5-cycle, so no splitter leaves a perfect
    graph behind: the Petersen graph lacks the second level of the
    splitter property."""

    def test_forced_splitter(self):
        lab = pt.canonical_labeling()
        g = petersen()
        kin = frozenset({lab["c"]})
        kplus = frozenset({lab["x"]})
        h = orc.exhaustive_splitter_search(g, kin, kplus, require_perfect_with_kplus=False)
        assert h == pt.labeled_set("a1", "a2", "a3", "a4", "a5", "a6", "c")

    def test_no_perfect_splitter(self):
        lab = pt.canonical_labeling()
        g = petersen()
        kin = frozenset({lab["c"]})
        kplus = frozenset({lab["x"]})
        assert orc.exhaustive_splitter_search(g, kin, kplus, True) is None

    def test_forcing_reproduces(self):
        # y, z are c-complete; the edges at x, y, z then force a1, a4, a5, a6
        lab = pt.canonical_labeling()
        g = petersen()
        forced = (g.neighbors(lab["x"]) | g.neighbors(lab["y"]) | g.neighbors(lab["z"]))
        assert {lab["a1"], lab["a4"], lab["a5"], lab["a6"]} <= forced
        five = g.induced([lab["x"], lab["a1"], lab["a6"], lab["a5"], lab["a4"]])
        assert five.m == 5 and all(five.degree(v) == 2 for v in five.vids)
