"""Split detection and blocks of decomposition.

Finds universal vertices, cutvertices, amalgams (1-joins fall out as the
K-empty case) and proper 2-cutsets, builds the corresponding blocks with
fresh marker vertices, and provides the non-edge potential used for tree
size accounting.

The amalgam finder is a complete constraint search: for each seed edge
(u, v) it hypothesizes u in A1, v in A2 and assigns every vertex one of
three states (side 1, side 2, member of K) under the structural rules of
the amalgam; bitmask propagation plus backtracking explores exactly the
valid assignments, so a split is found whenever one exists.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .errors import GraphError, PreconditionError
from .graphs import Graph, _iter_bits


# -- splits -----------------------------------------------------------------


@dataclass(frozen=True)
class Split:
    """One found decomposition with its witness sets.

    kind: "universal-set" (x_set), "cutvertex" (cut vertex v plus side
    partition), "amalgam" (x1, x2, a1, a2, k; a 1-join when k is empty) or
    "proper-2cutset" (x1, x2, cut pair a, b).
    """

    kind: str
    x1: frozenset[int] = frozenset()
    x2: frozenset[int] = frozenset()
    a1: frozenset[int] = frozenset()
    a2: frozenset[int] = frozenset()
    k: frozenset[int] = frozenset()
    x_set: frozenset[int] = frozenset()
    cut: tuple[int, ...] = ()

    def validate(self, g: Graph) -> None:
        """Re-check the kind-specific invariants; raises GraphError."""
        if self.kind == "universal-set":
            for x in self.x_set:
                if g.degree(x) != g.n - 1:
                    raise GraphError(f"{x} is not universal")
            return
        if self.kind == "cutvertex":
            (v,) = self.cut
            if self.x1 | self.x2 | {v} != set(g.vids) or self.x1 & self.x2:
                raise GraphError("cutvertex sides do not partition V")
            if not self.x1 or not self.x2:
                raise GraphError("cutvertex sides must be nonempty")
            m1, m2 = g.mask_of(self.x1), g.mask_of(self.x2)
            for i in _iter_bits(m1):
                if g.masks[i] & m2:
                    raise GraphError("edge across cutvertex sides")
            return
        if self.kind == "amalgam":
            if self.x1 | self.x2 | self.k != set(g.vids):
                raise GraphError("amalgam parts do not cover V")
            if self.x1 & self.x2 or self.x1 & self.k or self.x2 & self.k:
                raise GraphError("amalgam parts overlap")
            if not self.a1 or not self.a2:
                raise GraphError("amalgam attachments must be nonempty")
            if not (self.a1 <= self.x1 and self.a2 <= self.x2):
                raise GraphError("attachments not inside their sides")
            if len(self.x1) < 2 or len(self.x2) < 2:
                raise GraphError("amalgam sides must have >= 2 vertices")
            kk = sorted(self.k)
            for i, u in enumerate(kk):
                for v in kk[i + 1:]:
                    if not g.has_edge(u, v):
                        raise GraphError("K is not a clique")
            for u in self.k:
                for v in self.a1 | self.a2:
                    if not g.has_edge(u, v):
                        raise GraphError("K not complete to A1 u A2")
            m2, a2m = g.mask_of(self.x2), g.mask_of(self.a2)
            a1m = g.mask_of(self.a1)
            for u in self.x1:
                want = a2m if u in self.a1 else 0
                if g.adj_of(u) & m2 != want:
                    raise GraphError(f"cross edges at {u} are not exactly A1 x A2")
            for u in self.a1:
                if g.adj_of(u) & a2m != a2m:
                    raise GraphError("A1 x A2 is not complete")
            return
        if self.kind == "proper-2cutset":
            a, b = self.cut
            if g.has_edge(a, b):
                raise GraphError("cut pair is adjacent")
            if self.x1 | self.x2 | {a, b} != set(g.vids) or self.x1 & self.x2:
                raise GraphError("2-cutset sides do not partition V")
            if len(self.x1) < 2 or len(self.x2) < 2:
                raise GraphError("2-cutset sides must have >= 2 vertices")
            m1, m2 = g.mask_of(self.x1), g.mask_of(self.x2)
            for i in _iter_bits(m1):
                if g.masks[i] & m2:
                    raise GraphError("edge across 2-cutset sides")
            for side in (self.x1, self.x2):
                sub = g.induced(side | {a, b})
                if not _has_path(sub, a, b):
                    raise GraphError("side plus {a,b} has no a-b path")
            return
        raise GraphError(f"unknown split kind {self.kind!r}")

    def to_json(self) -> dict:
        out: dict = {"kind": self.kind}
        if self.kind == "universal-set":
            out["universal"] = sorted(self.x_set)
        elif self.kind == "cutvertex":
            out.update(cutvertex=self.cut[0], x1=sorted(self.x1), x2=sorted(self.x2))
        elif self.kind == "amalgam":
            out.update(x1=sorted(self.x1), x2=sorted(self.x2),
                       a1=sorted(self.a1), a2=sorted(self.a2), k=sorted(self.k))
        else:
            out.update(a=self.cut[0], b=self.cut[1], x1=sorted(self.x1), x2=sorted(self.x2))
        return out


@dataclass(frozen=True)
class Blocks:
    """Blocks of decomposition; markers maps role name to the fresh id."""

    g1: Graph
    g2: Graph | None
    markers: dict[str, int]


def _has_path(g: Graph, s: int, t: int) -> bool:
    mask = 1 << g.pos[s]
    target = 1 << g.pos[t]
    frontier = mask
    while frontier:
        if mask & target:
            return True
        nxt = 0
        for i in _iter_bits(frontier):
            nxt |= g.masks[i]
        frontier = nxt & ~mask
        mask |= frontier
    return bool(mask & target)


# -- simple finders -----------------------------------------------------------


def find_universal_vertices(g: Graph) -> frozenset[int]:
    """Exactly the vertices adjacent to everything else."""
    return frozenset(v for v in g.vids if g.degree(v) == g.n - 1)


def articulation_points(g: Graph) -> list[int]:
    """Articulation points of a connected graph (iterative Hopcroft-Tarjan)."""
    n = g.n
    if n == 0:
        return []
    disc = [-1] * n
    low = [0] * n
    parent = [-1] * n
    ap = [False] * n
    timer = 0
    for root in range(n):
        if disc[root] != -1:
            continue
        stack = [(root, iter(_iter_bits(g.masks[root])))]
        disc[root] = low[root] = timer
        timer += 1
        root_children = 0
        while stack:
            v, it = stack[-1]
            advanced = False
            for w in it:
                if disc[w] == -1:
                    parent[w] = v
                    disc[w] = low[w] = timer
                    timer += 1
                    if v == root:
                        root_children += 1
                    stack.append((w, iter(_iter_bits(g.masks[w]))))
                    advanced = True
                    break
                elif w != parent[v]:
                    low[v] = min(low[v], disc[w])
            if not advanced:
                stack.pop()
                if stack:
                    p = stack[-1][0]
                    low[p] = min(low[p], low[v])
                    if p != root and low[v] >= disc[p]:
                        ap[p] = True
        if root_children > 1:
            ap[root] = True
    return [g.vids[i] for i in range(n) if ap[i]]


def find_cutvertex(g: Graph) -> Split | None:
    """Cutvertex split with the smallest-id cutvertex, or None."""
    if not g.is_connected():
        raise PreconditionError("find_cutvertex requires a connected graph")
    points = articulation_points(g)
    if not points:
        return None
    v = min(points)
    rest = g.without([v])
    comps = rest.component_masks()
    x1 = rest.set_of(comps[0])
    x2 = frozenset(set(g.vids) - x1 - {v})
    return Split(kind="cutvertex", cut=(v,), x1=x1, x2=x2)


# -- amalgam search ------------------------------------------------------------


_K = 3  # third vertex state: member of the clique K


def _amalgam_seed_search(g: Graph, iu: int, iv: int, allow_k: bool,
                         ) -> tuple[int, int, int] | None:
    """Complete search for an amalgam split with u in A1, v in A2.

    Returns (side1, side2, k) as position masks, or None.  Vertex states:
    1 and 2 are the sides of the underlying 1-join, _K is membership in
    the clique complete to both attachments.  Whether a side vertex is an
    attachment vertex is determined statically: side 1 and adjacent to v
    means A1, side 2 and adjacent to u means A2.  The propagation rules
    below are sound and, for full assignments, exactly characterize valid
    splits, so backtracking over them is a complete search.
    """
    masks = g.masks
    full = g.full_mask
    nu, nv = masks[iu], masks[iv]
    s_mask = nu & nv

    def search(can1: int, can2: int, cank: int, decided: int,
               queue: list[tuple[int, int]]) -> tuple[int, int, int] | None:
        while queue:
            w, state = queue.pop()
            bw = 1 << w
            aw = masks[w]
            if state == 1:
                if nv & bw:  # A1: side-2 partners must be exactly N(w) & N(u)
                    bad = ((2, ((nu & ~aw) | (aw & ~nu)) & ~bw),
                           (_K, s_mask & ~aw & ~bw))
                else:        # X1 \ A1: no edges into side 2 at all
                    bad = ((2, aw),)
            elif state == 2:
                if nu & bw:
                    bad = ((1, ((nv & ~aw) | (aw & ~nv)) & ~bw),
                           (_K, s_mask & ~aw & ~bw))
                else:
                    bad = ((1, aw),)
            else:  # _K: clique, complete to both attachment sets
                nb = ~aw & ~bw
                bad = ((_K, s_mask & nb), (2, nu & nb), (1, nv & nb))
            for sel, bm in bad:
                if sel == 1:
                    hit = bm & can1
                    can1 &= ~bm
                elif sel == 2:
                    hit = bm & can2
                    can2 &= ~bm
                else:
                    hit = bm & cank
                    cank &= ~bm
                if hit & ~(can1 | can2 | cank):
                    return None  # some domain wiped out (incl. decided vertices)
                for i in _iter_bits(hit & ~decided):
                    bi = 1 << i
                    opts = []
                    if can1 & bi:
                        opts.append(1)
                    if can2 & bi:
                        opts.append(2)
                    if cank & bi:
                        opts.append(_K)
                    if len(opts) == 1:
                        decided |= bi
                        queue.append((i, opts[0]))
        undecided = full & ~decided
        if undecided:
            i = (undecided & -undecided).bit_length() - 1
            bi = 1 << i
            for st in (1, 2, _K):
                if not ((can1 if st == 1 else can2 if st == 2 else cank) & bi):
                    continue
                n1 = can1 if st == 1 else can1 & ~bi
                n2 = can2 if st == 2 else can2 & ~bi
                nk = cank if st == _K else cank & ~bi
                got = search(n1, n2, nk, decided | bi, [(i, st)])
                if got is not None:
                    return got
            return None
        side1 = can1
        side2 = can2
        kset = cank
        if side1 | side2 | kset != full or side1 & side2 or side1 & kset or side2 & kset:
            return None
        if side1.bit_count() < 2 or side2.bit_count() < 2:
            return None
        return side1, side2, kset

    bu, bv = 1 << iu, 1 << iv
    can1 = full & ~bv
    can2 = full & ~bu
    cank = (s_mask if allow_k else 0) & ~bu & ~bv
    return search(can1, can2, cank, bu | bv, [(iu, 1), (iv, 2)])


def find_amalgam(g: Graph, one_join_only: bool = False) -> Split | None:
    """First amalgam split in deterministic seed order, or None.

    With ``one_join_only`` the K state is disabled, which restricts the
    search to 1-joins.  Preconditions (connected, no universal vertex, no
    cutvertex) are re-checked cheaply.
    """
    _check_amalgam_preconditions(g)
    if g.n < 4:
        return None
    for u, v in g.edges():
        got = _amalgam_seed_search(g, g.pos[u], g.pos[v], not one_join_only)
        if got is None:
            continue
        side1, side2, kset = got
        nu, nv = g.adj_of(u), g.adj_of(v)
        split = Split(kind="amalgam",
                      x1=g.set_of(side1), x2=g.set_of(side2), k=g.set_of(kset),
                      a1=g.set_of(side1 & nv), a2=g.set_of(side2 & nu))
        split.validate(g)
        return split
    return None


def _check_amalgam_preconditions(g: Graph) -> None:
    if not g.is_connected():
        raise PreconditionError("find_amalgam requires a connected graph")
    if find_universal_vertices(g):
        raise PreconditionError("find_amalgam requires no universal vertex")
    if g.n and articulation_points(g):
        raise PreconditionError("find_amalgam requires no cutvertex")


# -- proper 2-cutset -------------------------------------------------------------


def find_proper_2cutset(g: Graph) -> Split | None:
    """First proper 2-cutset split by (a, b) order, or None.

    With no cutvertex every component of G minus {a, b} attaches to both a
    and b, so the a-b path condition holds on any side; the only work is
    grouping components so both sides have >= 2 vertices.
    """
    if not g.is_connected():
        raise PreconditionError("find_proper_2cutset requires a connected graph")
    if articulation_points(g):
        raise PreconditionError("find_proper_2cutset requires no cutvertex")
    n = g.n
    for ia in range(n):
        for ib in range(ia + 1, n):
            if (g.masks[ia] >> ib) & 1:
                continue
            drop = (1 << ia) | (1 << ib)
            rest = g.without([g.vids[ia], g.vids[ib]])
            comps = rest.component_masks()
            if len(comps) < 2:
                continue
            sizes = sorted(((c.bit_count(), rest.set_of(c)) for c in comps),
                           key=lambda t: (-t[0], min(t[1])))
            side1 = set(sizes[0][1])
            start = 1
            if sizes[0][0] < 2:
                side1 |= set(sizes[1][1])
                start = 2
            side2: set[int] = set()
            for _, cset in sizes[start:]:
                side2 |= set(cset)
            if len(side1) < 2 or len(side2) < 2:
                continue
            split = Split(kind="proper-2cutset", cut=(g.vids[ia], g.vids[ib]),
                          x1=frozenset(side1), x2=frozenset(side2))
            split.validate(g)
            return split
    return None


# -- blocks -------------------------------------------------------------------------


def blocks(g: Graph, s: Split) -> Blocks:
    """Blocks of decomposition for a (re-validated) split of g."""
    s.validate(g)
    fresh = max(g.vids, default=-1) + 1
    if s.kind == "universal-set":
        return Blocks(g1=g.without(s.x_set), g2=None, markers={})
    if s.kind == "cutvertex":
        (v,) = s.cut
        g1 = g.induced(s.x1 | {v})
        g2 = g.induced(s.x2 | {v})
        b = Blocks(g1=g1, g2=g2, markers={})
    elif s.kind == "amalgam":
        u2, u1 = fresh, fresh + 1
        g1 = g.induced(s.x1 | s.k).add_vertex(u2, s.a1 | s.k)
        g2 = g.induced(s.x2 | s.k).add_vertex(u1, s.a2 | s.k)
        b = Blocks(g1=g1, g2=g2, markers={"u2": u2, "u1": u1})
    elif s.kind == "proper-2cutset":
        a, bb = s.cut
        x2m, x1m = fresh, fresh + 1
        g1 = g.induced(s.x1 | {a, bb}).add_vertex(x2m, [a, bb])
        g2 = g.induced(s.x2 | {a, bb}).add_vertex(x1m, [a, bb])
        b = Blocks(g1=g1, g2=g2, markers={"x2": x2m, "x1": x1m})
    else:
        raise GraphError(f"unknown split kind {s.kind!r}")
    if b.g1.n >= g.n or (b.g2 is not None and b.g2.n >= g.n):
        raise GraphError("block of decomposition is not smaller than its parent")
    return b


def potential_f(g: Graph) -> int:
    """max(number of non-adjacent unordered pairs, 1)."""
    return max(g.n * (g.n - 1) // 2 - g.m, 1)
