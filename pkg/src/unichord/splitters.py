"""Constraints, splitters, and the constructive closure machinery.

A constraint is a pair of disjoint cliques (k_in, k_plus); a splitter for
(G, k_in, k_plus) is an induced subgraph that meets every maximal clique
of G (except possibly k_plus itself when k_plus is maximal), contains all
of k_in, avoids k_plus, and contains no k_in-complete vertex.

``compute_splitter`` builds a splitter for any long-unichord-free graph by
structural recursion over the graph's decomposition: base classes get the
trivial or Petersen-specific splitter, and each decomposition kind has a
combination rule that derives block constraints, obtains block splitters
recursively, and assembles them.  In checked mode every splitter produced
anywhere in the recursion is re-verified against its host graph.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from . import petersen as pt
from .basics import classify_ucf_base, embed_in_named, is_chordal, is_sparse_bipartite
from .decomp import (Split, blocks, find_amalgam, find_cutvertex, find_proper_2cutset,
                     find_universal_vertices)
from .errors import InternalInvariantError, NotInClassError, PreconditionError
from .graphs import Graph
from .oracle import Limits, is_complete_to, verify_splitter, _validate_constraint

# checked-build assertions verify splitters on graphs of any size
_CHECK_LIMITS = Limits(clique_max_n=1_000_000)

# diagnostic trail of combination cases taken (read by tests; append-only,
# callers clear it)
CASE_TRACE: list[str] = []


@dataclass(frozen=True)
class Constraint:
    """Disjoint cliques (k_in, k_plus) whose union is a clique."""

    k_in: frozenset[int] = frozenset()
    k_plus: frozenset[int] = frozenset()

    def validate(self, g: Graph) -> None:
        _validate_constraint(g, self.k_in, self.k_plus)

    @property
    def union(self) -> frozenset[int]:
        return self.k_in | self.k_plus

    def to_json(self) -> dict:
        return {"k_in": sorted(self.k_in), "k_plus": sorted(self.k_plus)}


EMPTY = Constraint()


# -- the chi-bounding function ------------------------------------------------


@lru_cache(maxsize=None)
def f_k(k: int, x: int) -> int:
    """f_0(0) = 0, f_0(x>=1) = 1, f_k(x) = sum of f_{k-1}(0..x)."""
    if k < 0 or x < 0:
        raise ValueError("f_k is defined for k, x >= 0")
    if k == 0:
        return 0 if x == 0 else 1
    return sum(f_k(k - 1, i) for i in range(x + 1))


# -- base-case splitters ---------------------------------------------------------


def trivial_splitter(g: Graph, c: Constraint) -> frozenset[int]:
    """Vertices of G minus k_plus that are not complete to k_in.

    Always a valid splitter; in particular the whole of G minus k_plus
    when k_in is empty (no vertex is complete to the empty set).
    """
    c.validate(g)
    return frozenset(v for v in g.vids
                     if v not in c.k_plus and not is_complete_to(g, v, c.k_in))


def triangle_free_splitter(g: Graph, c: Constraint) -> frozenset[int]:
    """Strictly shrinking splitter for a non-bipartite triangle-free graph.

    Removes all k_in-complete vertices, all of k_plus, and one extra
    vertex v that avoids k_in, k_plus, the neighborhood of k_plus and the
    neighborhoods of k_in-complete vertices; such a v exists whenever the
    preconditions hold, which makes |H u k_plus| < |V(G)|.
    """
    c.validate(g)
    if not g.is_connected():
        raise PreconditionError("triangle_free_splitter requires a connected graph")
    from .basics import _has_triangle, bipartition
    if _has_triangle(g):
        raise PreconditionError("triangle_free_splitter requires a triangle-free graph")
    if bipartition(g) is not None:
        raise PreconditionError("triangle_free_splitter requires a non-bipartite graph")
    complete = {v for v in g.vids if is_complete_to(g, v, c.k_in)}
    banned = c.union
    candidates = [v for v in g.vids
                  if v not in banned
                  and not (g.neighbors(v) & c.k_plus)
                  and not (g.neighbors(v) & complete)]
    if not candidates:
        raise InternalInvariantError("no shrink vertex exists; preconditions violated?")
    v = min(candidates)
    return frozenset(set(g.vids) - complete - c.k_plus - {v})


def petersen_splitter(gp: Graph, embedding: dict[int, int],
                      c: Constraint) -> frozenset[int]:
    """Splitter for an induced subgraph of the Petersen graph.

    Works in the canonical frame: an automorphism moves the constraint to
    its canonical position (k_in onto {a1,a2}, {c} or nothing; k_plus onto
    {x}, {x,a1} or nothing) and the splitter is the trace of a fixed
    vertex set in that frame.  All qualifying automorphisms are tried in a
    deterministic order and the first verified splitter is returned.
    """
    c.validate(gp)
    lab = pt.canonical_labeling()
    kin_img = frozenset(embedding[v] for v in c.k_in)
    kp_img = frozenset(embedding[v] for v in c.k_plus)
    seven = pt.labeled_set("a1", "a2", "a3", "a4", "a5", "a6", "c")
    eight = seven | {lab["x"]}

    def candidates():
        if len(kin_img) == 2:
            want = frozenset((lab["a1"], lab["a2"]))
            for tau in pt.automorphisms():
                if frozenset(tau[v] for v in kin_img) == want:
                    yield tau, seven
        elif len(kin_img) == 1:
            (kv,) = kin_img
            for tau in pt.automorphisms():
                if tau[kv] != lab["c"]:
                    continue
                if all(tau[w] == lab["x"] for w in kp_img):
                    yield tau, seven
        else:
            if len(kp_img) == 2:
                want = frozenset((lab["x"], lab["a1"]))
                for tau in pt.automorphisms():
                    if frozenset(tau[v] for v in kp_img) == want:
                        yield tau, eight - want
            elif len(kp_img) == 1:
                (kv,) = kp_img
                for spot in (lab["x"], lab["a1"]):
                    for tau in pt.automorphisms():
                        if tau[kv] == spot:
                            yield tau, eight - {spot}
            else:
                for tau in pt.automorphisms():
                    yield tau, eight

    for tau, target in candidates():
        h = frozenset(v for v in gp.vids if tau[embedding[v]] in target)
        ok, _why = verify_splitter(gp, c.k_in, c.k_plus, h)
        if ok:
            return h
    raise InternalInvariantError(
        "no Petersen automorphism produced a valid splitter -- invalid constraint?")


# -- combination rules -------------------------------------------------------------


def combine_universal(g: Graph, v: int, c: Constraint, provider) -> frozenset[int]:
    """Splitter of g from a splitter of g - v, where v is universal."""
    if g.degree(v) != g.n - 1:
        raise PreconditionError(f"{v} is not universal")
    if v in c.k_in:
        CASE_TRACE.append("universal:kin")
        return frozenset(c.k_in)
    CASE_TRACE.append("universal:recurse")
    child = provider(g.without([v]), Constraint(c.k_in, c.k_plus - {v}))
    return child


def combine_clique_cutset(g: Graph, x1: frozenset[int], k: frozenset[int],
                          x2: frozenset[int], c: Constraint, provider) -> frozenset[int]:
    """Splitter across a clique cutset (|k| <= 1 in this pipeline; k empty
    is the disjoint-union case).

    Pre: the constraint lies in x1 u k (callers orient).
    """
    if not c.union <= x1 | k:
        raise PreconditionError("constraint does not fit the first side")
    g1 = g.induced(x1 | k)
    g2 = g.induced(x2 | k)
    h1 = provider(g1, c)
    if h1 & k:
        CASE_TRACE.append("cutset:1")
        c2 = Constraint(h1 & k, c.k_plus & k)
    else:
        CASE_TRACE.append("cutset:2")
        c2 = Constraint(frozenset(), k)
    h2 = provider(g2, c2)
    return h1 | h2


def _swap_split(s: Split) -> Split:
    return Split(kind=s.kind, x1=s.x2, x2=s.x1, a1=s.a2, a2=s.a1, k=s.k, cut=s.cut)


def combine_amalgam(g: Graph, s: Split, c: Constraint, provider) -> frozenset[int]:
    """The six-case amalgam combination.

    Case 1 (constraint meets both attachment sides): 1a when k_in meets K,
    1b when k_in lives in the attachments, 1c for empty k_in (pick a fresh
    k_in vertex complete to k_plus and re-dispatch, or treat k_plus as the
    maximal clique it then is).  Case 2 (constraint inside one side): 2a-2c
    depending on how the first block's splitter meets K and the marker.
    """
    kin, kp = c.k_in, c.k_plus
    un = kin | kp
    fits1 = un <= s.x1 | s.k
    fits2 = un <= s.x2 | s.k
    if not fits1 and not fits2:
        if kin and not (kin & s.k) and not (kin & s.a1):
            return combine_amalgam(g, _swap_split(s), c, provider)
    elif not fits1:
        return combine_amalgam(g, _swap_split(s), c, provider)

    b = blocks(g, s)
    g1, g2 = b.g1, b.g2
    u2, u1 = b.markers["u2"], b.markers["u1"]

    if not fits1 and not fits2:
        if kin & s.k:  # case 1a
            CASE_TRACE.append("amalgam:1a")
            c1 = Constraint(kin & (s.k | s.a1), (kp & (s.k | s.a1)) | {u2})
            c2 = Constraint(kin & (s.k | s.a2), (kp & (s.k | s.a2)) | {u1})
            return provider(g1, c1) | provider(g2, c2)
        if kin:  # case 1b, oriented above so kin meets a1
            CASE_TRACE.append("amalgam:1b")
            c1 = Constraint(kin & s.a1, (kp & (s.k | s.a1)) | {u2})
            c2 = Constraint((kin & s.a2) | {u1}, kp & (s.k | s.a2))
            return provider(g1, c1) | (provider(g2, c2) - {u1})
        # case 1c: kin empty, kp meets both attachment sides
        pool = (s.a1 | s.a2 | s.k) - kp
        fresh = [v for v in sorted(pool) if is_complete_to(g, v, kp)]
        if fresh:
            CASE_TRACE.append("amalgam:1c-pick")
            return combine_amalgam(g, s, Constraint(frozenset({fresh[0]}), kp), provider)
        # no extension vertex: kp is a maximal clique of g
        CASE_TRACE.append("amalgam:1c-max")
        c1 = Constraint(frozenset(), (kp & (s.k | s.a1)) | {u2})
        c2 = Constraint(frozenset(), (kp & (s.k | s.a2)) | {u1})
        return provider(g1, c1) | provider(g2, c2)

    # case 2: constraint inside x1 u k
    h1 = provider(g1, c)
    if h1 & s.k:  # 2a
        CASE_TRACE.append("amalgam:2a")
        c2 = Constraint(h1 & s.k, kp & s.k)
        return (h1 - {u2}) | provider(g2, c2)
    if u2 not in h1:  # 2b
        CASE_TRACE.append("amalgam:2b")
        c2 = Constraint(frozenset({u1}), kp & s.k)
        return h1 | (provider(g2, c2) - {u1})
    # 2c: the block splitter leans on the marker
    CASE_TRACE.append("amalgam:2c")
    v2 = min(s.a2)
    c2 = Constraint(frozenset({v2}), (kp & s.k) | {u1})
    return (h1 - {u2}) | provider(g2, c2)


def combine_proper_2cutset(g: Graph, s: Split, c: Constraint,
                           provider) -> frozenset[int]:
    """Combination across a proper 2-cutset {a, b}.

    Case 1: k_plus uses one of the cut vertices.  Case 2: it uses neither,
    and the sub-cases follow how the first block's splitter meets {a, b}.
    """
    kin, kp = c.k_in, c.k_plus
    a, bb = s.cut
    pair = frozenset((a, bb))
    un = kin | kp
    if not un <= s.x1 | pair:
        if not un <= s.x2 | pair:
            raise PreconditionError("constraint does not fit either side")
        return combine_proper_2cutset(g, _swap_split(s), c, provider)

    blk = blocks(g, s)
    g1, g2 = blk.g1, blk.g2
    x2m, x1m = blk.markers["x2"], blk.markers["x1"]
    h1 = provider(g1, c)

    if kp & pair:  # case 1; relabel so the k_plus member is a
        if bb in kp:
            a, bb = bb, a
        if bb in h1:
            CASE_TRACE.append("2cutset:1-binh1")
            c2 = Constraint(frozenset(), frozenset((a, x1m)))
            return (h1 - {x2m}) | provider(g2, c2)
        CASE_TRACE.append("2cutset:1-bout")
        c2 = Constraint(frozenset({x1m}), frozenset({a}))
        return (h1 - {x2m}) | (provider(g2, c2) - {x1m})

    inter = h1 & pair
    if not inter:
        CASE_TRACE.append("2cutset:2-none")
        c2 = Constraint(frozenset({x1m}), frozenset())
        return (h1 - {x2m}) | (provider(g2, c2) - {x1m})
    if inter == pair:
        CASE_TRACE.append("2cutset:2-both")
        picked = sorted(pair & kin)
        aprime = picked[0] if picked else a
        c2 = Constraint(frozenset({aprime}), frozenset())
        return (h1 - {x2m}) | (provider(g2, c2) - {aprime})
    # h1 meets exactly one cut vertex; relabel so that vertex is a
    CASE_TRACE.append("2cutset:2-one")
    if bb in inter:
        a, bb = bb, a
    c2 = Constraint(frozenset({x1m}), frozenset({a}))
    return (h1 - {x2m}) | (provider(g2, c2) - {x1m})


# -- the dispatcher ----------------------------------------------------------------


def compute_splitter(g: Graph, c: Constraint, checked: bool = False,
                     _trace: list | None = None) -> frozenset[int]:
    """Splitter for a long-unichord-free graph under a valid constraint.

    Dispatch: components, then base classes (chordal and the perfect
    leaves take the trivial splitter, Petersen subgraphs the canonical
    one), then universal vertex, cutvertex, amalgam, proper 2-cutset.
    Raises NotInClassError when nothing applies, which for an in-class
    input signals an upstream bug.
    """
    c.validate(g)
    if g.n == 0:
        return frozenset()

    def provider(sub: Graph, sub_c: Constraint) -> frozenset[int]:
        return compute_splitter(sub, sub_c, checked=checked, _trace=_trace)

    h = _dispatch(g, c, provider)
    if checked:
        ok, why = verify_splitter(g, c.k_in, c.k_plus, h, limits=_CHECK_LIMITS)
        if not ok:
            raise InternalInvariantError(
                f"splitter assertion failed on n={g.n} with {c.to_json()}: {why}")
    if _trace is not None:
        _trace.append((g, c, h))
    return h


def _dispatch(g: Graph, c: Constraint, provider) -> frozenset[int]:
    comps = g.component_masks()
    if len(comps) > 1:
        un = c.union
        h: frozenset[int] = frozenset()
        for mk in comps:
            comp = g.set_of(mk)
            sub_c = c if un and un <= comp else EMPTY
            h |= provider(g.induced(comp), sub_c)
        return h

    if is_chordal(g) is not None or is_sparse_bipartite(g) is not None:
        return trivial_splitter(g, c)
    emb = embed_in_named(g, "heawood")
    if emb is not None:
        return trivial_splitter(g, c)
    emb = embed_in_named(g, "petersen")
    if emb is not None:
        try:
            return petersen_splitter(g, emb, c)
        except InternalInvariantError:
            return triangle_free_splitter(g, c)

    universal = find_universal_vertices(g)
    if universal:
        return combine_universal(g, min(universal), c, provider)

    s = find_cutvertex(g)
    if s is not None:
        (v,) = s.cut
        k = frozenset({v})
        rest = c.union - k
        if not rest or rest <= s.x1:
            return combine_clique_cutset(g, s.x1, k, s.x2, c, provider)
        if rest <= s.x2:
            return combine_clique_cutset(g, s.x2, k, s.x1, c, provider)
        raise InternalInvariantError("constraint split across a cutvertex")

    s = find_amalgam(g)
    if s is not None:
        return combine_amalgam(g, s, c, provider)

    s = find_proper_2cutset(g)
    if s is not None:
        return combine_proper_2cutset(g, s, c, provider)

    raise NotInClassError(
        f"no decomposition and no base class applies (n={g.n}, m={g.m})")
