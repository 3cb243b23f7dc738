"""Canonical Petersen labeling and automorphism machinery.

The splitter construction for Petersen subgraphs works in a fixed frame
of reference: ten labels a1..a6, x, y, z, c placed on the canonical
Petersen graph so that

  * c is adjacent to exactly x, y and z,
  * a1..a6 induce a 6-cycle in cyclic order (the non-neighbors of c),
  * x is adjacent to a1 and a4,
  * a5 and a6 are covered by N(y) u N(z),
  * {x, a1, a6, a5, a4} induces a 5-cycle,
  * every odd cycle of the subgraph induced by {a1..a6, x, c} passes
    through all of a1, x and a4.

The figure this layout comes from is not recoverable exactly, so the
labeling is derived once by constrained search (all candidate placements
are enumerated and the lexicographically smallest surviving one is kept);
the tests re-derive it and re-check each property independently.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import permutations

from .graphs import Graph, named_graph

LABELS = ("a1", "a2", "a3", "a4", "a5", "a6", "x", "y", "z", "c")


@lru_cache(maxsize=1)
def canonical_petersen() -> Graph:
    return named_graph("petersen")


@lru_cache(maxsize=1)
def automorphisms() -> tuple[dict[int, int], ...]:
    """All automorphisms of the canonical Petersen graph (order 120)."""
    g = canonical_petersen()
    n = g.n
    out: list[dict[int, int]] = []
    image: list[int] = []

    def bt(k: int, used: int) -> None:
        if k == n:
            out.append({g.vids[i]: g.vids[image[i]] for i in range(n)})
            return
        ak = g.masks[k]
        for j in range(n):
            bj = 1 << j
            if used & bj:
                continue
            ok = True
            for i in range(k):
                if bool(ak >> i & 1) != bool(g.masks[image[i]] >> j & 1):
                    ok = False
                    break
            if ok:
                image.append(j)
                bt(k + 1, used | bj)
                image.pop()

    bt(0, 0)
    return tuple(out)


def _odd_cycles_through(g: Graph, required: set[int]) -> bool:
    """True iff every odd cycle of g contains all of ``required``.

    Checked by parity search: g minus any one required vertex must be
    bipartite, and g itself must not be bipartite-free of the vertices...
    Concretely: an odd cycle avoiding vertex r exists iff g - r is
    non-bipartite, so the condition is that g - r is bipartite for each r.
    """
    from .basics import bipartition

    for r in required:
        if bipartition(g.without([r])) is None:
            return False
    return True


@lru_cache(maxsize=1)
def canonical_labeling() -> dict[str, int]:
    """Label -> vertex map satisfying all layout constraints (derived by search)."""
    g = canonical_petersen()
    best: tuple[int, ...] | None = None
    for c in g.vids:
        nbrs_c = sorted(g.neighbors(c))
        a_set = [v for v in g.vids if v != c and v not in nbrs_c]
        for xx, yy, zz in permutations(nbrs_c):
            # the six non-neighbors of c induce a 6-cycle; fix a1 among N(x)
            for a1 in sorted(set(g.neighbors(xx)) & set(a_set)):
                for second in sorted(set(g.neighbors(a1)) & set(a_set)):
                    cyc = [a1, second]
                    ok = True
                    while len(cyc) < 6:
                        nxt = [w for w in g.neighbors(cyc[-1])
                               if w in a_set and w != cyc[-2] and w not in cyc]
                        if len(nxt) != 1:
                            ok = False
                            break
                        cyc.append(nxt[0])
                    if not ok or not g.has_edge(cyc[5], cyc[0]):
                        continue
                    cand = _check_candidate(g, cyc, xx, yy, zz, c)
                    if cand is not None and (best is None or cand < best):
                        best = cand
    assert best is not None, "no labeling satisfies the layout constraints"
    return dict(zip(LABELS, best))


def _check_candidate(g: Graph, a: list[int], xx: int, yy: int, zz: int,
                     c: int) -> tuple[int, ...] | None:
    a1, a2, a3, a4, a5, a6 = a
    if not (g.has_edge(xx, a1) and g.has_edge(xx, a4)):
        return None
    cover = set(g.neighbors(yy)) | set(g.neighbors(zz))
    if a5 not in cover or a6 not in cover:
        return None
    five = g.induced([xx, a1, a6, a5, a4])
    if five.m != 5 or any(five.degree(v) != 2 for v in five.vids):
        return None
    eight = g.induced([a1, a2, a3, a4, a5, a6, xx, c])
    if not _odd_cycles_through(eight, {a1, xx, a4}):
        return None
    return (a1, a2, a3, a4, a5, a6, xx, yy, zz, c)


def label_of(vertex: int) -> str:
    inv = {v: k for k, v in canonical_labeling().items()}
    return inv[vertex]


def labeled_set(*labels: str) -> frozenset[int]:
    lab = canonical_labeling()
    return frozenset(lab[name] for name in labels)
