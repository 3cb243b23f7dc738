"""Reverse composition operations and seeded instance generators.

``compose`` implements the eight composition operations (the reverses of
the decompositions) with eager precondition validation, so generated
instances are guaranteed to carry a recoverable split.  The corpus
generators build long-unichord-free instances bottom-up from base-class
seeds using only compositions whose blocks are the previous instances:
gluing at a cutvertex, amalgam composition (1-join when K is empty) and
adding a universal vertex, each of which preserves membership in the
class.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .errors import GraphError, PreconditionError
from .decomp import Split
from .graphs import Graph, named_graph


@dataclass(frozen=True)
class CompositionSpec:
    """One composition and its interface vertices.

    kind: disjoint-union | cutvertex-glue | clique-glue | one-join |
    amalgam | proper-2cutset | add-universal | substitution.  ``shared``
    holds the identified vertices (K, or the cut pair), ``marker1`` /
    ``marker2`` the marker vertex in g1 / g2, ``vertex`` the substituted
    or added vertex.
    """

    kind: str
    shared: frozenset[int] = frozenset()
    marker1: int | None = None
    marker2: int | None = None
    vertex: int | None = None


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise PreconditionError(msg)


def _check_shared(g1: Graph, g2: Graph, shared: frozenset[int], clique: bool) -> None:
    inter = set(g1.vids) & set(g2.vids)
    _require(inter == set(shared), f"graph intersection {sorted(inter)} != declared shared set")
    for u in shared:
        for v in shared:
            if u < v:
                e1, e2 = g1.has_edge(u, v), g2.has_edge(u, v)
                _require(e1 == e2, f"shared pair {u},{v} disagrees between the graphs")
                if clique:
                    _require(e1, f"shared set is not a clique: {u},{v} non-adjacent")


def compose(spec: CompositionSpec, g1: Graph, g2: Graph | None = None) -> Graph:
    """Build the composed graph; raises PreconditionError with the failed clause."""
    kind = spec.kind
    if kind == "add-universal":
        _require(g2 is None, "add-universal takes a single graph")
        v = spec.vertex if spec.vertex is not None else max(g1.vids, default=-1) + 1
        return g1.add_vertex(v, g1.vids)

    _require(g2 is not None, f"{kind} needs two graphs")

    if kind == "disjoint-union":
        _require(not set(g1.vids) & set(g2.vids), "vertex sets must be disjoint")
        return Graph(g1.vids + g2.vids, g1.edges() + g2.edges())

    if kind in ("clique-glue", "cutvertex-glue"):
        _check_shared(g1, g2, spec.shared, clique=True)
        if kind == "cutvertex-glue":
            _require(len(spec.shared) == 1, "cutvertex-glue shares exactly one vertex")
        _require(set(g1.vids) - spec.shared and set(g2.vids) - spec.shared,
                 "both sides must be nonempty")
        return Graph(set(g1.vids) | set(g2.vids),
                     g1.edges() + [e for e in g2.edges()
                                   if not (e[0] in spec.shared and e[1] in spec.shared)])

    if kind == "one-join":
        u2, u1 = spec.marker1, spec.marker2
        _require(not set(g1.vids) & set(g2.vids), "one-join inputs must be disjoint")
        _require(g1.n >= 3 and g2.n >= 3, "one-join inputs need >= 3 vertices")
        _require(u2 in g1 and u1 in g2, "markers must belong to their graphs")
        a1, a2 = g1.neighbors(u2), g2.neighbors(u1)
        _require(bool(a1) and bool(a2), "marker neighborhoods must be nonempty")
        left, right = g1.without([u2]), g2.without([u1])
        cross = [(x, y) for x in sorted(a1) for y in sorted(a2)]
        return Graph(left.vids + right.vids, left.edges() + right.edges() + cross)

    if kind == "amalgam":
        u2, u1 = spec.marker1, spec.marker2
        k = spec.shared
        _check_shared(g1, g2, k, clique=True)
        _require(len(k) <= min(g1.n, g2.n) - 3, "need |K| <= |V(Gi)| - 3")
        _require(u2 in g1 and u2 not in k and u1 in g2 and u1 not in k,
                 "markers must be non-K vertices of their graphs")
        a1 = g1.neighbors(u2) - k
        a2 = g2.neighbors(u1) - k
        _require(g1.neighbors(u2) == a1 | k and bool(a1),
                 "marker u2 neighborhood must be exactly K u A1 with A1 nonempty")
        _require(g2.neighbors(u1) == a2 | k and bool(a2),
                 "marker u1 neighborhood must be exactly K u A2 with A2 nonempty")
        for kk in k:
            _require(a1 <= g1.neighbors(kk), "K must be complete to A1")
            _require(a2 <= g2.neighbors(kk), "K must be complete to A2")
        left, right = g1.without([u2]), g2.without([u1])
        cross = [(x, y) for x in sorted(a1) for y in sorted(a2)]
        edges = left.edges() + [e for e in right.edges()
                                if not (e[0] in k and e[1] in k)] + cross
        return Graph(set(left.vids) | set(right.vids), edges)

    if kind == "proper-2cutset":
        x2m, x1m = spec.marker1, spec.marker2
        pair = spec.shared
        _require(len(pair) == 2, "proper-2cutset shares exactly two vertices")
        _check_shared(g1, g2, pair, clique=False)
        a, b = sorted(pair)
        _require(not g1.has_edge(a, b), "cut pair must be non-adjacent")
        _require(x2m in g1 and x1m in g2 and x2m not in pair and x1m not in pair,
                 "markers must be non-cut vertices of their graphs")
        _require(pair <= g1.neighbors(x2m), "marker x2 must see both cut vertices")
        _require(pair <= g2.neighbors(x1m), "marker x1 must see both cut vertices")
        for g, marker in ((g1, x2m), (g2, x1m)):
            sub = g.without([marker])
            _require(_connected_pair(sub, a, b), "no a-b path avoiding the marker")
        left, right = g1.without([x2m]), g2.without([x1m])
        edges = left.edges() + [e for e in right.edges() if set(e) != {a, b}]
        return Graph(set(left.vids) | set(right.vids), edges)

    if kind == "substitution":
        v = spec.vertex
        _require(g1.n >= 2 and g2.n >= 2, "substitution needs >= 2 vertices on both sides")
        _require(v in g1, "substituted vertex must belong to g1")
        _require(not (set(g1.vids) - {v}) & set(g2.vids), "replacement must be disjoint")
        nv = g1.neighbors(v)
        host = g1.without([v])
        cross = [(x, y) for x in sorted(g2.vids) for y in sorted(nv)]
        return Graph(host.vids + g2.vids, host.edges() + g2.edges() + cross)

    raise PreconditionError(f"unknown composition kind {spec.kind!r}")


def _connected_pair(g: Graph, a: int, b: int) -> bool:
    if a not in g.pos or b not in g.pos:
        return False
    seen = {a}
    queue = [a]
    for u in queue:
        for w in g.neighbors(u):
            if w == b:
                return True
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return False


def recoverable_split(spec: CompositionSpec, g1: Graph, g2: Graph) -> Split:
    """The split of compose(spec, g1, g2) planted by the composition."""
    if spec.kind in ("one-join", "amalgam"):
        k = spec.shared
        a1 = g1.neighbors(spec.marker1) - k
        a2 = g2.neighbors(spec.marker2) - k
        return Split(kind="amalgam",
                     x1=frozenset(set(g1.vids) - k - {spec.marker1}),
                     x2=frozenset(set(g2.vids) - k - {spec.marker2}),
                     a1=frozenset(a1), a2=frozenset(a2), k=frozenset(k))
    if spec.kind in ("cutvertex-glue",):
        (v,) = spec.shared
        return Split(kind="cutvertex", cut=(v,),
                     x1=frozenset(set(g1.vids) - {v}),
                     x2=frozenset(set(g2.vids) - {v}))
    if spec.kind == "proper-2cutset":
        a, b = sorted(spec.shared)
        return Split(kind="proper-2cutset", cut=(a, b),
                     x1=frozenset(set(g1.vids) - {a, b, spec.marker1}),
                     x2=frozenset(set(g2.vids) - {a, b, spec.marker2}))
    raise PreconditionError(f"no recoverable split for kind {spec.kind!r}")


# -- random base-class seeds ---------------------------------------------------------


def random_connected(rng: random.Random, n: int, p: float) -> Graph:
    """Connected G(n, p) by rejection plus a spanning-tree safety net."""
    for _ in range(64):
        edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
        g = Graph(range(n), edges)
        if g.is_connected():
            return g
    order = list(range(n))
    rng.shuffle(order)
    edges = set(edges)
    for i in range(1, n):
        edges.add(tuple(sorted((order[i], order[rng.randrange(i)]))))
    return Graph(range(n), sorted(edges))


def random_chordal(rng: random.Random, n: int, max_clique: int = 5) -> Graph:
    """Connected chordal graph built by repeated simplicial extension."""
    edges: list[tuple[int, int]] = []
    adj: dict[int, set[int]] = {0: set()}
    for v in range(1, n):
        anchor = rng.randrange(v)
        pool = [anchor] + sorted(adj[anchor])
        target = rng.randint(1, max(1, min(len(pool), max_clique - 1)))
        clique = [anchor]
        for u in pool[1:]:
            if len(clique) >= target:
                break
            if all(x in adj[u] for x in clique):
                clique.append(u)
        adj[v] = set()
        for u in clique:
            edges.append((u, v))
            adj[u].add(v)
            adj[v].add(u)
    return Graph(range(n), edges)


def random_sparse_bipartite(rng: random.Random, n: int) -> Graph:
    """Connected bipartite graph whose second side has maximum degree 2."""
    if n == 1:
        return Graph([0], [])
    na = max(1, n // 3)
    a_side = list(range(na))
    b_side = list(range(na, n))
    edges = []
    deg_b: dict[int, int] = {}
    for k, b in enumerate(b_side):
        first = rng.choice(a_side)
        edges.append((first, b))
        deg_b[b] = 1
        if rng.random() < 0.75 and na > 1:
            second = rng.choice([x for x in a_side if x != first])
            edges.append((second, b))
            deg_b[b] = 2
    g = Graph(range(n), edges)
    comps = g.component_masks()
    # stitch components together through degree-<=1 b-vertices
    while len(comps) > 1:
        c0 = g.set_of(comps[0])
        c1 = g.set_of(comps[1])
        b_candidates = sorted(v for v in c1 if v in deg_b and deg_b[v] <= 1)
        a_target = sorted(v for v in c0 if v < na)
        if b_candidates and a_target:
            b = b_candidates[0]
            edges.append((rng.choice(a_target), b))
            deg_b[b] += 1
        else:
            a_in_c1 = sorted(v for v in c1 if v < na) or sorted(c1)
            fresh = max(g.vids) + 1
            # add a new degree-2 connector on the sparse side
            edges.append((min(a_target or sorted(c0)), fresh))
            edges.append((a_in_c1[0], fresh))
            deg_b[fresh] = 2
        g = Graph(sorted(set(i for e in edges for i in e) | set(range(n))), edges)
        comps = g.component_masks()
    return g


def random_petersen_like(rng: random.Random, target: str) -> Graph:
    """Connected induced subgraph of the Petersen or Heawood graph."""
    g = named_graph(target)
    size = rng.randint(5, g.n)
    start = rng.choice(g.vids)
    keep = {start}
    frontier = sorted(g.neighbors(start))
    while len(keep) < size and frontier:
        v = frontier.pop(rng.randrange(len(frontier)))
        if v in keep:
            continue
        keep.add(v)
        frontier.extend(w for w in sorted(g.neighbors(v)) if w not in keep)
    return g.induced(keep)


def random_base_seed(rng: random.Random, size_hint: int = 30,
                     max_clique: int = 5) -> Graph:
    kind = rng.choice(["chordal", "chordal", "sparse-bipartite", "petersen",
                       "heawood", "clique", "cycle"])
    if kind == "chordal":
        return random_chordal(rng, rng.randint(4, max(5, size_hint)), max_clique)
    if kind == "sparse-bipartite":
        return random_sparse_bipartite(rng, rng.randint(4, max(5, size_hint)))
    if kind == "petersen":
        return random_petersen_like(rng, "petersen")
    if kind == "heawood":
        return random_petersen_like(rng, "heawood")
    if kind == "clique":
        return named_graph("clique", rng.randint(3, max_clique))
    return named_graph("cycle", rng.randint(4, max(6, min(size_hint, 12))))


# -- composed in-class corpus instances ------------------------------------------------


def _shift(g: Graph, offset: int) -> Graph:
    return g.relabel({v: v + offset for v in g.vids})


def compose_instance(seed: int, target_n: int,
                     ops: tuple[str, ...] = ("amalgam", "cutvertex", "universal"),
                     base_size: int = 30, max_clique: int = 5) -> Graph:
    """Seeded long-unichord-free instance of roughly ``target_n`` vertices.

    Grows a base seed by compositions whose blocks are the current graph
    and a fresh base seed; every step preserves the class, because both
    blocks are in the class at all times.
    """
    rng = random.Random(seed)
    g = random_base_seed(rng, min(base_size, target_n), max_clique)
    guard = 0
    universals = 0
    while g.n < target_n and guard < 10 * target_n:
        guard += 1
        op = rng.choice(ops)
        if op == "universal":
            if universals >= 2 or g.n + 1 > target_n + 5:
                continue
            universals += 1
            g = compose(CompositionSpec("add-universal"), g)
            continue
        room = max(4, target_n - g.n + 2)
        b = random_base_seed(rng, min(base_size, room), max_clique)
        b = _shift(b, max(g.vids) + 1)
        if op == "cutvertex":
            w = rng.choice(g.vids)
            wb = rng.choice(b.vids)
            b2 = b.relabel({wb: w})
            g = compose(CompositionSpec("cutvertex-glue", shared=frozenset({w})), g, b2)
            continue
        # amalgam (a 1-join when no shared clique can be arranged)
        u2 = _pick_marker(rng, g)
        if u2 is None:
            continue
        u1 = _pick_marker(rng, b)
        if u1 is None:
            continue
        k_size = _plantable_k(rng, g, u2, b, u1, max_n1=g.n, max_n2=b.n)
        if k_size == 0:
            g = compose(CompositionSpec("one-join", marker1=u2, marker2=u1), g, b)
        else:
            kg = sorted(_clique_in_neighborhood(g, u2, k_size))
            kb = sorted(_clique_in_neighborhood(b, u1, k_size))
            b2 = b.relabel(dict(zip(kb, kg)))
            g = compose(CompositionSpec("amalgam", shared=frozenset(kg),
                                        marker1=u2, marker2=u1), g, b2)
    return g


def _pick_marker(rng: random.Random, g: Graph) -> int | None:
    if g.n < 4:
        return None
    cands = [v for v in g.vids if g.degree(v) >= 1]
    return rng.choice(cands) if cands else None


def _clique_in_neighborhood(g: Graph, u: int, size: int) -> set[int]:
    """A clique of ``size`` vertices inside N(u), complete to the rest of N(u)."""
    nbrs = sorted(g.neighbors(u))
    out: set[int] = set()
    for v in nbrs:
        if len(out) >= size:
            break
        rest = set(nbrs) - out - {v}
        if all(g.has_edge(v, w) for w in out) and all(g.has_edge(v, w) for w in rest):
            out.add(v)
    return out


def _plantable_k(rng: random.Random, g1: Graph, u2: int, g2: Graph, u1: int,
                 max_n1: int, max_n2: int) -> int:
    """Largest usable |K| (possibly 0) for an amalgam at these markers."""
    best1 = len(_clique_in_neighborhood(g1, u2, 3))
    best2 = len(_clique_in_neighborhood(g2, u1, 3))
    cap = min(best1, best2, max_n1 - 3, max_n2 - 3,
              len(g1.neighbors(u2)) - 1, len(g2.neighbors(u1)) - 1)
    if cap <= 0:
        return 0
    return rng.randint(0, cap)
