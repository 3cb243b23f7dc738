"""Exponential-time ground truth at desk scale.

Everything here is deliberately brute force: subset enumeration, exact
branch and bound, chi = omega over all induced subgraphs.  These routines
certify the polynomial machinery in the rest of the package and produce
witnesses; they reject inputs above their configured size bounds.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .errors import BoundExceededError, GraphError, PreconditionError, TimeBudgetError
from .graphs import Graph, _iter_bits


@dataclass(frozen=True)
class Limits:
    """Size bounds for the brute-force oracles (configuration, not constants)."""

    unichord_max_n: int = 14
    clique_max_n: int = 64
    chromatic_max_n: int = 40
    perfect_max_n: int = 12
    search_max_n: int = 12
    time_guard_s: float = 60.0


DEFAULT_LIMITS = Limits()


@dataclass(frozen=True)
class UnichordWitness:
    """A cycle (vertex order) whose unique chord is ``chord``."""

    cycle: tuple[int, ...]
    chord: tuple[int, int]

    def validate(self, g: Graph, min_cycle: int = 5) -> bool:
        """Re-check the witness against the host graph's adjacency."""
        cyc = self.cycle
        k = len(cyc)
        if k < min_cycle or len(set(cyc)) != k:
            return False
        if set(self.chord) - set(cyc):
            return False
        cyc_edges = {frozenset((cyc[i], cyc[(i + 1) % k])) for i in range(k)}
        chord = frozenset(self.chord)
        if chord in cyc_edges:
            return False  # chord endpoints consecutive on the cycle
        want = cyc_edges | {chord}
        have = {frozenset((u, v)) for u, v in g.induced(cyc).edges()}
        return have == want

    def to_json(self) -> dict:
        return {"cycle": list(self.cycle), "chord": list(self.chord)}


def _check_bound(g: Graph, bound: int, what: str) -> None:
    if g.n > bound:
        raise BoundExceededError(f"{what}: n={g.n} exceeds bound {bound}")


def _mask_connected(g: Graph, mask: int) -> bool:
    start = mask & -mask
    comp = start
    frontier = start
    while frontier:
        nxt = 0
        for i in _iter_bits(frontier):
            nxt |= g.masks[i]
        frontier = nxt & mask & ~comp
        comp |= frontier
    return comp == mask


def _cycle_plus_chord_witness(g: Graph, mask: int) -> UnichordWitness | None:
    """Decode a vertex set inducing a cycle plus exactly one chord.

    The set qualifies iff the induced subgraph is connected, has k+1 edges
    on k vertices, exactly two vertices of degree 3 and they are adjacent,
    all others degree 2.  Removing the chord then leaves a single cycle.
    """
    k = mask.bit_count()
    degs = []
    edge_cnt = 0
    deg3 = []
    for i in _iter_bits(mask):
        d = (g.masks[i] & mask).bit_count()
        if d not in (2, 3):
            return None
        edge_cnt += d
        if d == 3:
            deg3.append(i)
    if edge_cnt != 2 * (k + 1) or len(deg3) != 2:
        return None
    a, b = deg3
    if not (g.masks[a] >> b) & 1:
        return None
    if not _mask_connected(g, mask):
        return None
    # Walk the graph with the chord edge dropped: it is 2-regular, so it is a
    # single spanning cycle iff the walk visits all k vertices before closing.
    # (The degree signature alone also matches two cycles joined by an edge.)
    order = [a]
    seen = 1 << a
    prev = -1
    cur = a
    for _ in range(k - 1):
        nxt = None
        for j in _iter_bits(g.masks[cur] & mask):
            if j == prev or {cur, j} == {a, b}:
                continue
            nxt = j
            break
        if nxt is None or seen & (1 << nxt):
            return None
        order.append(nxt)
        seen |= 1 << nxt
        prev, cur = cur, nxt
    if not (g.masks[cur] >> a) & 1 or {cur, a} == {a, b}:
        return None
    cycle = tuple(g.vids[i] for i in order)
    return UnichordWitness(cycle=cycle, chord=(g.vids[a], g.vids[b]))


def _find_chorded_cycle(g: Graph, min_cycle: int,
                        limits: Limits) -> UnichordWitness | None:
    _check_bound(g, limits.unichord_max_n, "unichord search")
    n = g.n
    for mask in range(1 << n):
        if mask.bit_count() < min_cycle:
            continue
        w = _cycle_plus_chord_witness(g, mask)
        if w is not None:
            return w
    return None


def find_long_unichord(g: Graph, limits: Limits = DEFAULT_LIMITS) -> UnichordWitness | None:
    """Witness for a cycle of length >= 5 with a unique chord, or None."""
    return _find_chorded_cycle(g, 5, limits)


def find_unichord(g: Graph, limits: Limits = DEFAULT_LIMITS) -> UnichordWitness | None:
    """Witness for a cycle of length >= 4 with a unique chord, or None."""
    return _find_chorded_cycle(g, 4, limits)


def find_unichord_by_cycles(g: Graph, min_cycle: int = 4,
                            limits: Limits = DEFAULT_LIMITS) -> UnichordWitness | None:
    """Independent cross-check: enumerate cycles directly and count chords.

    Used by the tests to validate the subset-based search above (the two
    must agree on whether a witness exists).
    """
    _check_bound(g, limits.unichord_max_n, "cycle enumeration")
    n = g.n

    def extend(path: list[int], used: int) -> UnichordWitness | None:
        start = path[0]
        cur = path[-1]
        for j in _iter_bits(g.masks[cur] & ~used):
            if j < start:
                continue
            path.append(j)
            if len(path) >= min_cycle and (g.masks[j] >> start) & 1:
                chords = [(path[p], path[q])
                          for p in range(len(path)) for q in range(p + 2, len(path))
                          if not (p == 0 and q == len(path) - 1)
                          and (g.masks[path[p]] >> path[q]) & 1]
                if len(chords) == 1:
                    cyc = tuple(g.vids[i] for i in path)
                    u, v = chords[0]
                    path.pop()
                    return UnichordWitness(cyc, (g.vids[u], g.vids[v]))
            found = extend(path, used | (1 << j))
            path.pop()
            if found:
                return found
        return None

    for s in range(n):
        found = extend([s], 1 << s)
        if found:
            return found
    return None


# -- cliques -------------------------------------------------------------------


def maximal_cliques(g: Graph, limits: Limits = DEFAULT_LIMITS) -> list[frozenset[int]]:
    """All inclusion-wise maximal cliques (Bron-Kerbosch with pivot)."""
    _check_bound(g, limits.clique_max_n, "maximal clique enumeration")
    return [g.set_of(mk) for mk in maximal_clique_masks(g)]


def maximal_clique_masks(g: Graph) -> list[int]:
    """Maximal cliques as bitmasks in a deterministic order (no size bound)."""
    out: list[int] = []
    masks = g.masks
    n = g.n

    def bk(r: int, p: int, x: int) -> None:
        if not p and not x:
            out.append(r)
            return
        pux = p | x
        pivot = max(_iter_bits(pux), key=lambda i: (masks[i] & p).bit_count())
        for v in _iter_bits(p & ~masks[pivot]):
            bv = 1 << v
            bk(r | bv, p & masks[v], x & masks[v])
            p &= ~bv
            x |= bv

    if n:
        bk(0, g.full_mask, 0)
    out.sort()
    return out


def max_clique_mask(g: Graph) -> int:
    """One maximum clique as a bitmask (branch and bound, no size bound)."""
    masks = g.masks
    best = [0, 0]  # size, mask

    def greedy_bound(p: int) -> int:
        # partition candidates into independent sets; a clique takes at most
        # one vertex per class, so the class count bounds the clique size
        classes: list[int] = []
        for i in _iter_bits(p):
            for k, cls in enumerate(classes):
                if not masks[i] & cls:
                    classes[k] |= 1 << i
                    break
            else:
                classes.append(1 << i)
        return len(classes)

    def expand(r_size: int, r: int, p: int) -> None:
        if not p:
            if r_size > best[0]:
                best[0], best[1] = r_size, r
            return
        if r_size + greedy_bound(p) <= best[0]:
            return
        v = max(_iter_bits(p), key=lambda i: (masks[i] & p).bit_count())
        bv = 1 << v
        expand(r_size + 1, r | bv, p & masks[v])
        p &= ~bv
        if r_size + p.bit_count() > best[0]:
            expand(r_size, r, p)

    if g.n:
        expand(0, 0, g.full_mask)
    return best[1]


def clique_number_exact(g: Graph, limits: Limits = DEFAULT_LIMITS) -> int:
    _check_bound(g, limits.clique_max_n, "clique number")
    return max_clique_mask(g).bit_count()


# -- exact coloring ----------------------------------------------------------------


def chromatic_number_exact(g: Graph, limits: Limits = DEFAULT_LIMITS,
                           ) -> tuple[int, dict[int, int]]:
    """Exact chi(G) with a certifying coloring (time-guarded branch and bound)."""
    _check_bound(g, limits.chromatic_max_n, "chromatic number")
    k, assignment = _exact_coloring_masks(g, limits.time_guard_s)
    return k, {g.vids[i]: c for i, c in assignment.items()}


def _greedy_dsatur(g: Graph) -> dict[int, int]:
    """DSATUR greedy coloring over positions."""
    n = g.n
    color: dict[int, int] = {}
    sat: list[set[int]] = [set() for _ in range(n)]
    uncolored = set(range(n))
    while uncolored:
        v = max(uncolored, key=lambda i: (len(sat[i]), g.masks[i].bit_count(), -i))
        used = sat[v]
        c = 0
        while c in used:
            c += 1
        color[v] = c
        uncolored.discard(v)
        for j in _iter_bits(g.masks[v]):
            if j in uncolored:
                sat[j].add(c)
    return color


def _exact_coloring_masks(g: Graph, time_guard_s: float,
                          ) -> tuple[int, dict[int, int]]:
    """Exact coloring over bit positions; returns (chi, position->color)."""
    n = g.n
    if n == 0:
        return 0, {}
    if g.m == 0:
        return 1, {i: 0 for i in range(n)}
    greedy = _greedy_dsatur(g)
    ub = max(greedy.values()) + 1
    clique = max_clique_mask(g)
    lb = clique.bit_count()
    if lb == ub:
        return ub, greedy
    deadline = time.monotonic() + time_guard_s
    masks = g.masks

    clique_pos = list(_iter_bits(clique))

    def feasible(k: int) -> dict[int, int] | None:
        # seed colors on a maximum clique to break symmetry
        if lb > k:
            return None
        color: dict[int, int] = {}
        avail = [(1 << k) - 1] * n
        order_pool = set(range(n))
        for c, i in enumerate(clique_pos):
            color[i] = c
            order_pool.discard(i)
            for j in _iter_bits(masks[i]):
                avail[j] &= ~(1 << c)

        def bt() -> bool:
            if time.monotonic() > deadline:
                raise TimeBudgetError("exact coloring ran out of time budget")
            if not order_pool:
                return True
            # most-constrained vertex first
            v = min(order_pool, key=lambda i: (avail[i].bit_count(), -masks[i].bit_count(), i))
            options = avail[v]
            if not options:
                return False
            used_so_far = max(color.values(), default=-1)
            for c in _iter_bits(options):
                if c > used_so_far + 1:
                    break  # color classes are interchangeable
                color[v] = c
                order_pool.discard(v)
                touched = []
                dead = False
                for j in _iter_bits(masks[v]):
                    if j in order_pool and (avail[j] >> c) & 1:
                        avail[j] &= ~(1 << c)
                        touched.append(j)
                        if not avail[j]:
                            dead = True
                if not dead and bt():
                    return True
                for j in touched:
                    avail[j] |= 1 << c
                del color[v]
                order_pool.add(v)
            return False

        return color if bt() else None

    best = dict(greedy)
    while max(best.values()) + 1 > lb:
        got = feasible(max(best.values()))
        if got is None:
            break
        best = got
    return max(best.values()) + 1, best


def is_proper_coloring(g: Graph, assignment: dict[int, int]) -> bool:
    if set(assignment) != set(g.vids):
        return False
    return all(assignment[u] != assignment[v] for u, v in g.edges())


# -- perfection ---------------------------------------------------------------------


def is_perfect_small(g: Graph, limits: Limits = DEFAULT_LIMITS) -> bool:
    """chi(H) == omega(H) for every induced subgraph H (n <= perfect bound)."""
    _check_bound(g, limits.perfect_max_n, "perfection test")
    n = g.n
    masks = g.masks
    omega = [0] * (1 << n)
    chi = [0] * (1 << n)
    # maximal independent sets needed for the chi recurrence
    comp = [(~masks[i]) & g.full_mask & ~(1 << i) for i in range(n)]

    for s in sorted(range(1 << n), key=int.bit_count):
        if s == 0:
            continue
        v = (s & -s).bit_length() - 1
        rest = s & ~(1 << v)
        omega[s] = max(omega[rest], 1 + omega[s & masks[v]])
        # chi via: color v's class = a maximal independent set containing v
        best = n + 1
        for ind in _maximal_independent_sets_containing(comp, s, v):
            c = 1 + chi[s & ~ind]
            if c < best:
                best = c
                if best == 1:
                    break
        chi[s] = best
        if chi[s] != omega[s]:
            return False
    return True


def _maximal_independent_sets_containing(comp: list[int], s: int, v: int):
    """Maximal independent sets of G[s] containing vertex v (as masks).

    Independent sets of G are cliques of the complement, so this is
    Bron-Kerbosch on the complement restricted to s and rooted at v.
    """
    out = []

    def bk(r: int, p: int, x: int) -> None:
        if not p and not x:
            out.append(r)
            return
        pux = p | x
        pivot = max(_iter_bits(pux), key=lambda i: (comp[i] & p).bit_count())
        for u in _iter_bits(p & ~comp[pivot]):
            bu = 1 << u
            bk(r | bu, p & comp[u], x & comp[u])
            p &= ~bu
            x |= bu

    bk(1 << v, comp[v] & s, 0)
    return out


# -- splitters -------------------------------------------------------------------------


def is_complete_to(g: Graph, v: int, target: frozenset[int] | set[int]) -> bool:
    """True iff ``v`` is adjacent to every vertex of ``target``.

    Convention: no vertex is complete to the empty set, and a member of
    ``target`` is never complete to it (it is not adjacent to itself).
    """
    if not target or v in target:
        return False
    tmask = g.mask_of(target)
    return g.adj_of(v) & tmask == tmask


def verify_splitter(g: Graph, k_in: frozenset[int], k_plus: frozenset[int],
                    h: frozenset[int], limits: Limits = DEFAULT_LIMITS,
                    ) -> tuple[bool, str]:
    """Check the four splitter conditions; returns (ok, reason).

    Conditions: (i) h meets every maximal clique except possibly k_plus
    itself when k_plus is maximal; (ii) k_in is contained in h; (iii) h has
    no k_in-complete vertex (vacuous for empty k_in); (iv) h avoids k_plus.
    """
    _validate_constraint(g, k_in, k_plus)
    extra = set(h) - set(g.vids)
    if extra:
        raise GraphError(f"splitter contains unknown vertices {sorted(extra)}")
    if not k_in <= h:
        return False, f"missing k_in vertices {sorted(k_in - h)}"
    if h & k_plus:
        return False, f"contains k_plus vertices {sorted(h & k_plus)}"
    if k_in:
        bad = [v for v in h if is_complete_to(g, v, k_in)]
        if bad:
            return False, f"contains k_in-complete vertices {bad}"
    _check_bound(g, limits.clique_max_n, "splitter verification")
    hmask = g.mask_of(h)
    kplus_mask = g.mask_of(k_plus)
    for cmask in maximal_clique_masks(g):
        if cmask & hmask:
            continue
        if k_plus and cmask == kplus_mask:
            continue  # the allowed exception
        return False, f"misses maximal clique {sorted(g.ids_of(cmask))}"
    return True, "ok"


def _validate_constraint(g: Graph, k_in: frozenset[int], k_plus: frozenset[int]) -> None:
    if k_in & k_plus:
        raise PreconditionError(f"k_in and k_plus overlap: {sorted(k_in & k_plus)}")
    union = k_in | k_plus
    unknown = union - set(g.vids)
    if unknown:
        raise PreconditionError(f"constraint uses unknown vertices {sorted(unknown)}")
    for u in union:
        for v in union:
            if u < v and not g.has_edge(u, v):
                raise PreconditionError(f"constraint union is not a clique: {u},{v} non-adjacent")


def exhaustive_splitter_search(g: Graph, k_in: frozenset[int], k_plus: frozenset[int],
                               require_perfect_with_kplus: bool,
                               limits: Limits = DEFAULT_LIMITS,
                               ) -> frozenset[int] | None:
    """Smallest-mask vertex set passing verify_splitter, if any.

    With ``require_perfect_with_kplus`` the set must additionally induce,
    together with k_plus, a perfect graph.
    """
    _check_bound(g, limits.search_max_n, "exhaustive splitter search")
    _validate_constraint(g, k_in, k_plus)
    kin_mask = g.mask_of(k_in)
    kplus_mask = g.mask_of(k_plus)
    complete_mask = 0
    if k_in:
        for v in g.vids:
            if is_complete_to(g, v, k_in):
                complete_mask |= 1 << g.pos[v]
    cliques = maximal_clique_masks(g)
    free = g.full_mask & ~kin_mask & ~kplus_mask & ~complete_mask
    # iterate over subsets of the free vertices, smallest mask first
    sub = 0
    while True:
        hmask = sub | kin_mask
        ok = True
        for cmask in cliques:
            if cmask & hmask:
                continue
            if k_plus and cmask == kplus_mask:
                continue
            ok = False
            break
        if ok and require_perfect_with_kplus:
            piece = g.induced(g.ids_of(hmask | kplus_mask))
            ok = is_perfect_small(piece, limits)
        if ok:
            return g.set_of(hmask)
        if sub == free:
            return None
        sub = (sub - free) & free  # next subset of free
