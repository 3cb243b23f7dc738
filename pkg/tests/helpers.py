"""Shared test machinery: canonical forms, exhaustive enumeration, randomness."""

from __future__ import annotations

import random
from functools import lru_cache
from itertools import permutations, product

from unichord.graphs import Graph, _iter_bits


def masks_of(g: Graph) -> tuple[int, ...]:
    return g.masks


def _refine_colors(masks: tuple[int, ...]) -> list[int]:
    n = len(masks)
    colors = [masks[i].bit_count() for i in range(n)]
    for _ in range(n):
        sigs = [(colors[i], tuple(sorted(colors[j] for j in _iter_bits(masks[i]))))
                for i in range(n)]
        remap = {s: k for k, s in enumerate(sorted(set(sigs)))}
        nxt = [remap[s] for s in sigs]
        if nxt == colors:
            break
        colors = nxt
    return colors


def canonical_form(masks: tuple[int, ...]) -> tuple[int, int]:
    """(n, minimal packed adjacency) over color-class-respecting relabelings."""
    n = len(masks)
    colors = _refine_colors(masks)
    groups: dict[int, list[int]] = {}
    for i, c in enumerate(colors):
        groups.setdefault(c, []).append(i)
    class_lists = [groups[c] for c in sorted(groups)]
    best: int | None = None
    for combo in product(*(permutations(grp) for grp in class_lists)):
        perm = [i for grp in combo for i in grp]  # new position -> old position
        code = 0
        bit = 0
        for a in range(n):
            pa = perm[a]
            for b in range(a + 1, n):
                if (masks[pa] >> perm[b]) & 1:
                    code |= 1 << bit
                bit += 1
        if best is None or code < best:
            best = code
    return (n, best or 0)


def canon_graph(g: Graph) -> tuple[int, int]:
    return canonical_form(g.masks)


def isomorphic(g: Graph, h: Graph) -> bool:
    return g.n == h.n and g.m == h.m and canon_graph(g) == canon_graph(h)


def _graph_from_code(n: int, code: int) -> Graph:
    edges = []
    bit = 0
    for a in range(n):
        for b in range(a + 1, n):
            if (code >> bit) & 1:
                edges.append((a, b))
            bit += 1
    return Graph(range(n), edges)


@lru_cache(maxsize=None)
def all_graphs(n: int) -> tuple[tuple[int, int], ...]:
    """All graphs on n vertices up to isomorphism, as canonical codes."""
    if n == 0:
        return ((0, 0),)
    if n == 1:
        return ((1, 0),)
    out: set[tuple[int, int]] = set()
    for code in all_graphs(n - 1):
        g = _graph_from_code(*code)
        base = list(g.masks) + [0]
        for nbrs in range(1 << (n - 1)):
            masks = list(base)
            masks[n - 1] = nbrs
            for j in _iter_bits(nbrs):
                masks[j] |= 1 << (n - 1)
            out.add(canonical_form(tuple(masks)))
    return tuple(sorted(out))


def connected_graphs(n: int) -> list[Graph]:
    """All connected graphs on n vertices up to isomorphism."""
    return [g for g in (_graph_from_code(*code) for code in all_graphs(n))
            if g.is_connected()]


def random_connected_graph(rng: random.Random, n: int, p: float | None = None) -> Graph:
    if p is None:
        p = rng.uniform(0.15, 0.85)
    while True:
        edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
        g = Graph(range(n), edges)
        if n <= 1 or g.is_connected():
            return g
