"""Leaf classification and the structural unichord-freeness test.

The base classes are the ones a decomposition can bottom out in: chordal
graphs, cliques, graphs embeddable in the Petersen or Heawood graph, and
bipartite graphs with one side of maximum degree 2.  Unichord-freeness is
decided structurally: decompose by cutvertex, 1-join and proper 2-cutset
until every leaf lands in a base class.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass

from .decomp import blocks, find_amalgam, find_cutvertex, find_proper_2cutset
from .errors import PreconditionError
from .graphs import Graph, _iter_bits, named_graph


def _headroom(n: int) -> None:
    want = 4000 + 8 * n
    if sys.getrecursionlimit() < want:
        sys.setrecursionlimit(want)


# -- chordality -------------------------------------------------------------


def lex_bfs(g: Graph) -> list[int]:
    """Lexicographic BFS order (by vertex id ties), as a list of ids."""
    n = g.n
    order: list[int] = []
    labels: list[list[int]] = [[] for _ in range(n)]
    remaining = set(range(n))
    while remaining:
        i = max(remaining, key=lambda j: (labels[j], -j))
        remaining.discard(i)
        order.append(g.vids[i])
        stamp = len(order)
        for j in _iter_bits(g.masks[i]):
            if j in remaining:
                labels[j].append(n - stamp)
    return order


def is_chordal(g: Graph) -> list[int] | None:
    """A perfect elimination ordering if g is chordal, else None.

    Runs LexBFS, reverses it, then verifies simpliciality with the
    parent-containment test: for each vertex, its later neighbors minus
    the first one must all be neighbors of that first one.
    """
    if g.n == 0:
        return []
    order = lex_bfs(g)
    peo = list(reversed(order))
    rank = {v: k for k, v in enumerate(peo)}
    later = [0] * g.n
    for v in peo:
        mask = 0
        for w in g.neighbors(v):
            if rank[w] > rank[v]:
                mask |= 1 << g.pos[w]
        later[g.pos[v]] = mask
    for v in peo:
        mask = later[g.pos[v]]
        if not mask:
            continue
        first = min(_iter_bits(mask), key=lambda i: rank[g.vids[i]])
        rest = mask & ~(1 << first)
        if rest & ~g.masks[first]:
            return None
    return peo


def verify_peo(g: Graph, peo: list[int]) -> bool:
    """Independent re-validation that peo is a perfect elimination ordering."""
    if sorted(peo) != list(g.vids):
        return False
    rank = {v: k for k, v in enumerate(peo)}
    for v in peo:
        later = [w for w in g.neighbors(v) if rank[w] > rank[v]]
        for a in later:
            for b in later:
                if a < b and not g.has_edge(a, b):
                    return False
    return True


def clique_number_chordal(g: Graph, peo: list[int]) -> int:
    rank = {v: k for k, v in enumerate(peo)}
    best = 1 if g.n else 0
    for v in peo:
        later = sum(1 for w in g.neighbors(v) if rank[w] > rank[v])
        best = max(best, later + 1)
    return best


# -- bipartite with a sparse side --------------------------------------------


def bipartition(g: Graph) -> tuple[set[int], set[int]] | None:
    """A 2-coloring (side0, side1) or None; side0 holds each component's root."""
    color: dict[int, int] = {}
    for s in g.vids:
        if s in color:
            continue
        color[s] = 0
        queue = [s]
        for u in queue:
            for w in g.neighbors(u):
                if w not in color:
                    color[w] = 1 - color[u]
                    queue.append(w)
                elif color[w] == color[u]:
                    return None
    a = {v for v, c in color.items() if c == 0}
    return a, set(g.vids) - a


def is_sparse_bipartite(g: Graph) -> tuple[frozenset[int], frozenset[int]] | None:
    """Bipartition (A, B) with every B-vertex of degree <= 2, if one exists.

    For a connected nontrivial bipartite graph the bipartition is unique up
    to swap, so both sides are tried; components are oriented independently.
    """
    parts = bipartition(g)
    if parts is None:
        return None
    side_of = {}
    for v in parts[0]:
        side_of[v] = 0
    for v in parts[1]:
        side_of[v] = 1
    a_all: set[int] = set()
    b_all: set[int] = set()
    for comp_mask in g.component_masks():
        comp = g.set_of(comp_mask)
        p = {v for v in comp if side_of[v] == 0}
        q = comp - p
        if all(g.degree(v) <= 2 for v in q):
            a_all |= p
            b_all |= q
        elif all(g.degree(v) <= 2 for v in p):
            a_all |= q
            b_all |= p
        else:
            return None
    return frozenset(a_all), frozenset(b_all)


# -- embeddings into the exceptional graphs ------------------------------------


def _has_triangle(g: Graph) -> bool:
    for i in range(g.n):
        mi = g.masks[i]
        for j in _iter_bits(mi):
            if j > i and g.masks[j] & mi:
                return True
    return False


def embed_in_named(g: Graph, target: str) -> dict[int, int] | None:
    """Injective map preserving adjacency and non-adjacency into the target.

    Targets are the Petersen (10 vertices) and Heawood (14 vertices)
    graphs; impossibility is cheap to detect for graphs that are too big,
    too dense, or contain a triangle.
    """
    t = named_graph(target)
    if g.n > t.n or max((g.degree(v) for v in g.vids), default=0) > 3:
        return None
    if _has_triangle(g):
        return None
    if target == "heawood" and bipartition(g) is None:
        return None
    order = _embed_order(g)
    tmasks = t.masks
    phi: dict[int, int] = {}

    def bt(k: int, used: int) -> bool:
        if k == len(order):
            return True
        v = order[k]
        placed_nbrs = [phi[w] for w in g.neighbors(v) if w in phi]
        placed_non = [phi[w] for w in phi if w not in g.neighbors(v) and w != v]
        for cand in t.vids:
            bc = 1 << t.pos[cand]
            if used & bc:
                continue
            am = tmasks[t.pos[cand]]
            if any(not (am >> t.pos[x]) & 1 for x in placed_nbrs):
                continue
            if any((am >> t.pos[x]) & 1 for x in placed_non):
                continue
            phi[v] = cand
            if bt(k + 1, used | bc):
                return True
            del phi[v]
        return False

    return dict(phi) if bt(0, 0) else None


def _embed_order(g: Graph) -> list[int]:
    """Vertices ordered so each (after the first per component) touches a prior one."""
    order: list[int] = []
    placed: set[int] = set()
    for comp_mask in g.component_masks():
        comp = sorted(g.set_of(comp_mask))
        if not comp:
            continue
        queue = [max(comp, key=lambda v: g.degree(v))]
        placed.add(queue[0])
        for u in queue:
            order.append(u)
            for w in sorted(g.neighbors(u)):
                if w not in placed:
                    placed.add(w)
                    queue.append(w)
    return order


# -- diamonds --------------------------------------------------------------------


def is_diamond_free(g: Graph) -> tuple[int, int, int, int] | None:
    """None iff no edge has two non-adjacent common neighbors.

    Otherwise a witness (u, v, w1, w2): the K4-minus-an-edge on these
    vertices, which is exactly a 4-cycle plus its unique chord uv.
    """
    for u, v in g.edges():
        common = g.adj_of(u) & g.adj_of(v)
        for i in _iter_bits(common):
            others = common & ~g.masks[i] & ~(1 << i)
            if others:
                j = (others & -others).bit_length() - 1
                return (u, v, g.vids[i], g.vids[j])
    return None


# -- base classes and unichord-freeness -------------------------------------------


def is_clique(g: Graph) -> bool:
    return g.m == g.n * (g.n - 1) // 2


@dataclass(frozen=True)
class BasicClass:
    """Base-class tag with re-validatable evidence."""

    tag: str  # chordal | sparse-bipartite | clique | petersen-sub | heawood-sub | none
    evidence: object = None

    def to_json(self) -> dict:
        ev = self.evidence
        if self.tag == "chordal":
            ev = list(ev)
        elif self.tag == "sparse-bipartite":
            ev = {"a": sorted(ev[0]), "b": sorted(ev[1])}
        elif self.tag in ("petersen-sub", "heawood-sub"):
            ev = {str(k): v for k, v in sorted(ev.items())}
        return {"tag": self.tag, "evidence": ev}


def classify_ucf_base(g: Graph) -> BasicClass | None:
    """Base class membership per the unichord-free decomposition's leaves."""
    if is_clique(g):
        return BasicClass("clique")
    sb = is_sparse_bipartite(g)
    if sb is not None:
        return BasicClass("sparse-bipartite", sb)
    emb = embed_in_named(g, "petersen")
    if emb is not None:
        return BasicClass("petersen-sub", emb)
    emb = embed_in_named(g, "heawood")
    if emb is not None:
        return BasicClass("heawood-sub", emb)
    return None


def is_unichord_free(g: Graph) -> bool:
    """True iff g has no edge that is the unique chord of some cycle.

    Structural test: recursively decompose by cutvertex, then 1-join, then
    proper 2-cutset; every undecomposable node must land in a base class.
    Base classes are checked first at each node as a shortcut (a base-class
    graph is unichord-free no matter what splits it also has), and a
    diamond is an immediate rejection, being a 4-cycle plus a unique chord.
    """
    if not g.is_connected():
        raise PreconditionError("is_unichord_free requires a connected graph")
    if is_diamond_free(g) is not None:
        return False
    _headroom(g.n)
    return _uf_node(g)


def _uf_node(g: Graph) -> bool:
    if g.n <= 3:
        return True
    if classify_ucf_base(g) is not None:
        return True
    s = find_cutvertex(g)
    if s is None:
        s = find_amalgam(g, one_join_only=True)
    if s is None:
        s = find_proper_2cutset(g)
    if s is None:
        return False
    b = blocks(g, s)
    return _uf_node(b.g1) and _uf_node(b.g2)
