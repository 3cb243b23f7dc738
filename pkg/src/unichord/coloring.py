"""Peeling coloration of long-unichord-free graphs within f_3(omega) colors.

Level 3 repeatedly peels a splitter of the remaining graph (which meets
every maximal clique, so omega drops each round); each peeled piece is
peeled again at level 2, and the level-1 pieces are colored exactly.
Every piece gets a fresh block of colors, which realizes the chi-bound
f_3(omega) = sum of f_2(0..omega).

Peels are refined before use: a non-bipartite triangle-free piece would
need 3 colors against a clique budget of 2, so vertices on odd cycles are
dropped from the peel as long as the remainder still verifies as a
splitter.  Chordal inputs shortcut to a greedy coloring along a perfect
elimination ordering, which is exact.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .basics import _has_triangle, bipartition, clique_number_chordal, is_chordal, is_sparse_bipartite, embed_in_named
from .decomp import find_amalgam, find_cutvertex, find_proper_2cutset, find_universal_vertices
from .errors import InternalInvariantError, NotInClassError, TimeBudgetError
from .graphs import Graph, components
from .oracle import _exact_coloring_masks, _greedy_dsatur, verify_splitter
from .splitters import EMPTY, Constraint, compute_splitter, f_k, _CHECK_LIMITS


@dataclass(frozen=True)
class ColorConfig:
    checked: bool = False
    exact_max_n: int | None = None  # pieces above this use checked greedy coloring
    time_guard_s: float = 120.0


DEFAULT_CONFIG = ColorConfig()


@dataclass(frozen=True)
class Coloring:
    assignment: dict[int, int]
    palette_size: int
    trace: dict

    def to_json(self) -> dict:
        return {
            "colors": self.palette_size,
            "assignment": {str(v): c for v, c in sorted(self.assignment.items())},
            "trace": self.trace,
        }


# -- clique number through the decomposition --------------------------------------


def clique_number_via_tree(g: Graph) -> int:
    """omega(G) for a long-unichord-free graph, computed structurally.

    Every rule is exact: chordal leaves read omega off the elimination
    ordering, the remaining leaves are triangle-free, universal vertices
    sit in every maximum clique, clique cutsets and proper 2-cutsets keep
    maximum cliques on one side, and an amalgam's cliques either stay in a
    side or consist of K plus a clique of each attachment set.
    """
    memo: dict[Graph, int] = {}
    return _omega(g, memo)


def _omega(g: Graph, memo: dict[Graph, int]) -> int:
    if g.n == 0:
        return 0
    got = memo.get(g)
    if got is not None:
        return got
    comps = components(g)
    if len(comps) > 1:
        w = max(_omega(g.induced(c), memo) for c in comps)
        memo[g] = w
        return w
    w = _omega_connected(g, memo)
    memo[g] = w
    return w


def _omega_connected(g: Graph, memo: dict[Graph, int]) -> int:
    peo = is_chordal(g)
    if peo is not None:
        return clique_number_chordal(g, peo)
    if (is_sparse_bipartite(g) is not None
            or embed_in_named(g, "heawood") is not None
            or embed_in_named(g, "petersen") is not None):
        return 2 if g.m else 1
    universal = find_universal_vertices(g)
    if universal:
        return len(universal) + _omega(g.without(universal), memo)
    s = find_cutvertex(g)
    if s is not None:
        (v,) = s.cut
        return max(_omega(g.induced(s.x1 | {v}), memo),
                   _omega(g.induced(s.x2 | {v}), memo))
    s = find_amalgam(g)
    if s is not None:
        cross = len(s.k) + _omega(g.induced(s.a1), memo) + _omega(g.induced(s.a2), memo)
        return max(_omega(g.induced(s.x1 | s.k), memo),
                   _omega(g.induced(s.x2 | s.k), memo), cross)
    s = find_proper_2cutset(g)
    if s is not None:
        pair = set(s.cut)
        return max(_omega(g.induced(s.x1 | pair), memo),
                   _omega(g.induced(s.x2 | pair), memo))
    raise NotInClassError(f"clique_number_via_tree: no rule applies (n={g.n})")


# -- level-1 exact coloring ----------------------------------------------------------


def exact_piece_coloring(g: Graph, cfg: ColorConfig) -> dict[int, int]:
    """Color one peeled piece: exact by default, checked greedy above the cap."""
    if g.n == 0:
        return {}
    peo = is_chordal(g)
    if peo is not None:
        return greedy_on_peo(g, peo)
    if cfg.exact_max_n is not None and g.n > cfg.exact_max_n:
        pos_color = _greedy_dsatur(g)
        return {g.vids[i]: c for i, c in pos_color.items()}
    try:
        _k, assignment = _exact_coloring_masks(g, cfg.time_guard_s)
    except TimeBudgetError as exc:
        raise TimeBudgetError(
            f"level-1 coloring of a piece with n={g.n} exceeded the guard") from exc
    return {g.vids[i]: c for i, c in assignment.items()}


def greedy_on_peo(g: Graph, peo: list[int]) -> dict[int, int]:
    """Greedy along the reverse elimination ordering: exactly omega colors."""
    colors: dict[int, int] = {}
    for v in reversed(peo):
        used = {colors[w] for w in g.neighbors(v) if w in colors}
        c = 0
        while c in used:
            c += 1
        colors[v] = c
    return colors


# -- peel refinement --------------------------------------------------------------


def _odd_cycle_vertices(g: Graph) -> list[int] | None:
    """Vertices of some odd cycle (BFS parity), or None if bipartite."""
    color: dict[int, int] = {}
    parent: dict[int, int | None] = {}
    for s in g.vids:
        if s in color:
            continue
        color[s] = 0
        parent[s] = None
        queue = [s]
        for u in queue:
            for w in g.neighbors(u):
                if w not in color:
                    color[w] = 1 - color[u]
                    parent[w] = u
                    queue.append(w)
                elif color[w] == color[u]:
                    pu, pw = u, w
                    up: list[int] = []
                    wp: list[int] = []
                    while pu is not None:
                        up.append(pu)
                        pu = parent[pu]
                    while pw is not None:
                        wp.append(pw)
                        pw = parent[pw]
                    return sorted(set(up) | set(wp))
    return None


def refine_peel(rem: Graph, h: frozenset[int]) -> frozenset[int]:
    """Shrink a peel so its piece is bipartite when it is triangle-free.

    A triangle-free non-bipartite piece would cost 3 colors against a
    clique budget of 2 (the Petersen-derived pieces are the one source of
    these).  Dropping a vertex of an odd cycle is attempted only when the
    remainder still verifies as a splitter of the host.
    """
    while True:
        piece = rem.induced(h)
        if _has_triangle(piece):
            return h
        odd = _odd_cycle_vertices(piece)
        if odd is None:
            return h
        for v in odd:
            cand = h - {v}
            ok, _ = verify_splitter(rem, frozenset(), frozenset(), cand,
                                    limits=_CHECK_LIMITS)
            if ok:
                h = cand
                break
        else:
            return h


# -- the peeling driver ----------------------------------------------------------------


def color(g: Graph, cfg: ColorConfig = DEFAULT_CONFIG) -> Coloring:
    """Proper coloring of a long-unichord-free graph with <= f_3(omega) colors.

    The caller is expected to have run the recognizer; out-of-class inputs
    surface as NotInClassError from the splitter machinery.
    """
    if g.n == 0:
        return Coloring({}, 0, {"strategy": "empty"})
    peo = is_chordal(g)
    if peo is not None:
        assignment = greedy_on_peo(g, peo)
        palette = max(assignment.values()) + 1
        omega = clique_number_chordal(g, peo)
        _assert_bound(palette, omega, {"strategy": "chordal-peo"})
        return Coloring(assignment, palette,
                        {"strategy": "chordal-peo", "omega": omega,
                         "bound": f_k(3, omega), "colors": palette})
    omega = clique_number_via_tree(g)
    bound = f_k(3, omega)
    assignment: dict[int, int] = {}
    offset = 0
    level3_trace = []
    rem = g
    rounds = 0
    while rem.n:
        rounds += 1
        if rounds > omega:
            raise InternalInvariantError(
                f"level-3 peeling needed more than omega={omega} rounds")
        h = compute_splitter(rem, EMPTY, checked=cfg.checked)
        h = refine_peel(rem, h)
        piece = rem.induced(h)
        used, piece_trace = _color_piece_level2(piece, offset, assignment, cfg)
        level3_trace.append({"piece": sorted(h), "colors": used, "level2": piece_trace})
        offset += used
        rem = rem.without(h)
    trace = {"strategy": "peel", "omega": omega, "bound": bound,
             "colors": offset, "level3": level3_trace}
    _assert_bound(offset, omega, trace)
    return Coloring(assignment, offset, trace)


def _color_piece_level2(piece: Graph, offset: int, assignment: dict[int, int],
                        cfg: ColorConfig) -> tuple[int, list]:
    """Peel one level-3 piece at level 2; returns (colors used, trace)."""
    trace = []
    used = 0
    rem = piece
    omega_p = clique_number_via_tree(piece) if piece.n else 0
    rounds = 0
    while rem.n:
        rounds += 1
        if rounds > max(omega_p, 1):
            raise InternalInvariantError(
                f"level-2 peeling needed more than omega={omega_p} rounds")
        h = compute_splitter(rem, EMPTY, checked=cfg.checked)
        h = refine_peel(rem, h)
        unit = rem.induced(h)
        local = exact_piece_coloring(unit, cfg)
        width = max(local.values()) + 1 if local else 0
        for v, c in local.items():
            assignment[v] = offset + used + c
        trace.append({"piece": sorted(h), "colors": width})
        used += width
        rem = rem.without(h)
    return used, trace


def _assert_bound(palette: int, omega: int, trace: dict) -> None:
    if palette > f_k(3, omega):
        raise InternalInvariantError(
            f"coloring used {palette} colors > f3(omega={omega}) = {f_k(3, omega)}; "
            f"trace: {trace}")
