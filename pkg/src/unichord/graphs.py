"""Immutable simple undirected graphs with stable integer vertex ids.

Vertex ids are arbitrary non-negative integers and survive induced
subgraphs unchanged, so every witness reported by this package refers to
the caller's own numbering.  Internally the vertices are packed into bit
positions and adjacency is kept as bitmasks over those positions; the
masks are what all non-trivial algorithms operate on.
"""

from __future__ import annotations

import json
from typing import Iterable, Iterator

from .errors import GraphError, ParseError


def _iter_bits(mask: int) -> Iterator[int]:
    """Yield set bit positions of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Graph:
    """Immutable simple undirected graph.

    Instances are safe to share between threads and usable as dict keys.
    ``vids`` is a sorted tuple of vertex ids; ``pos`` maps id -> bit
    position; ``masks[i]`` is the adjacency bitmask of the vertex at
    position ``i``.
    """

    __slots__ = ("vids", "pos", "masks", "m", "warnings", "_hash", "_nbr")

    def __init__(self, vertices: Iterable[int], edges: Iterable[tuple[int, int]],
                 warnings: tuple[str, ...] = ()):
        vids = tuple(sorted(set(vertices)))
        pos = {v: i for i, v in enumerate(vids)}
        masks = [0] * len(vids)
        for u, v in edges:
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            try:
                iu, iv = pos[u], pos[v]
            except KeyError as exc:
                raise GraphError(f"edge endpoint {exc.args[0]} is not a vertex") from None
            masks[iu] |= 1 << iv
            masks[iv] |= 1 << iu
        object.__setattr__(self, "vids", vids)
        object.__setattr__(self, "pos", pos)
        object.__setattr__(self, "masks", tuple(masks))
        object.__setattr__(self, "m", sum(mk.bit_count() for mk in masks) // 2)
        object.__setattr__(self, "warnings", tuple(warnings))
        object.__setattr__(self, "_hash", None)
        object.__setattr__(self, "_nbr", None)

    def __setattr__(self, name, value):
        raise AttributeError("Graph is immutable")

    # -- basic accessors ------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.vids)

    @property
    def full_mask(self) -> int:
        return (1 << len(self.vids)) - 1

    def __contains__(self, v: int) -> bool:
        return v in self.pos

    def neighbors(self, v: int) -> frozenset[int]:
        nbr = self._nbr
        if nbr is None:
            nbr = {u: frozenset(self.vids[i] for i in _iter_bits(self.masks[self.pos[u]]))
                   for u in self.vids}
            object.__setattr__(self, "_nbr", nbr)
        return nbr[v]

    def degree(self, v: int) -> int:
        return self.masks[self.pos[v]].bit_count()

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.masks[self.pos[u]] >> self.pos[v] & 1)

    def edges(self) -> list[tuple[int, int]]:
        out = []
        for i, u in enumerate(self.vids):
            mk = self.masks[i] >> (i + 1)
            for j in _iter_bits(mk):
                out.append((u, self.vids[i + 1 + j]))
        return out

    # -- bitmask helpers -------------------------------------------------

    def mask_of(self, ids: Iterable[int]) -> int:
        mask = 0
        for v in ids:
            mask |= 1 << self.pos[v]
        return mask

    def ids_of(self, mask: int) -> tuple[int, ...]:
        return tuple(self.vids[i] for i in _iter_bits(mask))

    def set_of(self, mask: int) -> frozenset[int]:
        return frozenset(self.vids[i] for i in _iter_bits(mask))

    def adj_of(self, v: int) -> int:
        """Adjacency bitmask of vertex id ``v``."""
        return self.masks[self.pos[v]]

    # -- derived graphs ---------------------------------------------------

    def induced(self, keep: Iterable[int]) -> "Graph":
        """Induced subgraph on ``keep``; vertex identities unchanged."""
        keep = set(keep)
        unknown = keep - set(self.vids)
        if unknown:
            raise GraphError(f"unknown vertices in induced set: {sorted(unknown)}")
        mask = self.mask_of(keep)
        edges = []
        for i in _iter_bits(mask):
            u = self.vids[i]
            sub = self.masks[i] & mask
            for j in _iter_bits(sub):
                if j > i:
                    edges.append((u, self.vids[j]))
        return Graph(keep, edges)

    def without(self, drop: Iterable[int]) -> "Graph":
        drop = set(drop)
        return self.induced(set(self.vids) - drop)

    def add_vertex(self, v: int, nbrs: Iterable[int]) -> "Graph":
        """New graph with fresh vertex ``v`` adjacent to ``nbrs``."""
        if v in self.pos:
            raise GraphError(f"vertex {v} already present")
        edges = self.edges() + [(v, u) for u in nbrs]
        return Graph(self.vids + (v,), edges)

    def relabel(self, mapping: dict[int, int]) -> "Graph":
        """Rename vertices through an injective id mapping."""
        img = [mapping.get(v, v) for v in self.vids]
        if len(set(img)) != len(img):
            raise GraphError("relabel mapping is not injective")
        return Graph(img, [(mapping.get(u, u), mapping.get(v, v)) for u, v in self.edges()])

    # -- connectivity ------------------------------------------------------

    def component_masks(self) -> list[int]:
        """Connected components as bitmasks, ordered by lowest position."""
        seen = 0
        comps = []
        full = self.full_mask
        while seen != full:
            start = (~seen & full) & -(~seen & full)
            comp = start
            frontier = start
            while frontier:
                nxt = 0
                for i in _iter_bits(frontier):
                    nxt |= self.masks[i]
                frontier = nxt & ~comp
                comp |= frontier
            comps.append(comp)
            seen |= comp
        return comps

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.component_masks()) == 1

    # -- value semantics ----------------------------------------------------

    def __eq__(self, other) -> bool:
        return (isinstance(other, Graph) and self.vids == other.vids
                and self.masks == other.masks)

    def __hash__(self) -> int:
        h = self._hash
        if h is None:
            h = hash((self.vids, self.masks))
            object.__setattr__(self, "_hash", h)
        return h

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


# -- spec-level wrappers ------------------------------------------------------


def induced_subgraph(g: Graph, vertex_set: Iterable[int]) -> Graph:
    return g.induced(vertex_set)


def components(g: Graph) -> list[frozenset[int]]:
    """Vertex sets of the connected components, ordered by smallest id."""
    return [g.set_of(mk) for mk in g.component_masks()]


# -- file formats --------------------------------------------------------------


def load_graph(data: bytes | str, format: str) -> Graph:
    """Parse DIMACS edge format or the JSON edge-list format.

    DIMACS vertex numbering (1-based) is preserved verbatim as vertex ids;
    the JSON format is 0-based.  Loops are a hard error, duplicate edges are
    deduplicated with a note in ``Graph.warnings``.
    """
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    if format == "dimacs":
        return _load_dimacs(data)
    if format == "json":
        return _load_json(data)
    raise ParseError(f"unknown format {format!r}")


def _load_dimacs(text: str) -> Graph:
    n = None
    declared_m = None
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    dup = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if n is not None:
                raise ParseError("repeated problem line", lineno)
            if len(parts) != 4 or parts[1] not in ("edge", "col"):
                raise ParseError(f"bad problem line {line!r}", lineno)
            try:
                n, declared_m = int(parts[2]), int(parts[3])
            except ValueError:
                raise ParseError(f"bad problem line {line!r}", lineno) from None
        elif parts[0] == "e":
            if n is None:
                raise ParseError("edge before problem line", lineno)
            if len(parts) != 3:
                raise ParseError(f"bad edge line {line!r}", lineno)
            try:
                u, v = int(parts[1]), int(parts[2])
            except ValueError:
                raise ParseError(f"bad edge line {line!r}", lineno) from None
            if u == v:
                raise ParseError(f"loop at vertex {u}", lineno)
            if not (1 <= u <= n and 1 <= v <= n):
                raise ParseError(f"vertex out of range in {line!r}", lineno)
            key = (min(u, v), max(u, v))
            if key in seen:
                dup += 1
            else:
                seen.add(key)
                edges.append(key)
        else:
            raise ParseError(f"unknown line type {parts[0]!r}", lineno)
    if n is None:
        raise ParseError("missing problem line")
    warnings = []
    if dup:
        warnings.append(f"{dup} duplicate edge(s) removed")
    if declared_m is not None and declared_m != len(seen):
        warnings.append(f"header declares {declared_m} edges, found {len(seen)}")
    return Graph(range(1, n + 1), edges, tuple(warnings))


def _load_json(text: str) -> Graph:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", exc.lineno) from None
    if not isinstance(obj, dict) or "n" not in obj or "edges" not in obj:
        raise ParseError('expected an object with "n" and "edges"')
    n = obj["n"]
    if not isinstance(n, int) or n < 0:
        raise ParseError('"n" must be a non-negative integer')
    edges = []
    seen = set()
    dup = 0
    for k, e in enumerate(obj["edges"]):
        if (not isinstance(e, (list, tuple)) or len(e) != 2
                or not all(isinstance(x, int) for x in e)):
            raise ParseError(f"edge #{k} is not a pair of ints")
        u, v = e
        if u == v:
            raise ParseError(f"edge #{k} is a loop at {u}")
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"edge #{k} out of range")
        key = (min(u, v), max(u, v))
        if key in seen:
            dup += 1
        else:
            seen.add(key)
            edges.append(key)
    warnings = (f"{dup} duplicate edge(s) removed",) if dup else ()
    return Graph(range(n), edges, warnings)


def emit_graph(g: Graph, format: str) -> str:
    """Serialize to DIMACS or JSON; inverse of :func:`load_graph`.

    Vertex ids are written as-is when they already match the format's
    numbering (1..n for DIMACS, 0..n-1 for JSON) and are compacted onto it
    otherwise.
    """
    if format == "dimacs":
        ids = {v: k + 1 for k, v in enumerate(g.vids)}
        lines = [f"p edge {g.n} {g.m}"]
        lines += [f"e {ids[u]} {ids[v]}" for u, v in g.edges()]
        return "\n".join(lines) + "\n"
    if format == "json":
        ids = {v: k for k, v in enumerate(g.vids)}
        edges = [[ids[u], ids[v]] for u, v in g.edges()]
        return json.dumps({"n": g.n, "edges": edges}, separators=(",", ":")) + "\n"
    raise ParseError(f"unknown format {format!r}")


# -- named graphs ----------------------------------------------------------------


def named_graph(name: str, n: int | None = None) -> Graph:
    """Canonical labeled instances: petersen, heawood, house, cycle/clique/path(n)."""
    if name == "petersen":
        # outer 5-cycle 0..4, spokes i-(i+5), inner pentagram on 5..9
        edges = [(i, (i + 1) % 5) for i in range(5)]
        edges += [(i, i + 5) for i in range(5)]
        edges += [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
        return Graph(range(10), edges)
    if name == "heawood":
        edges = [(i, (i + 1) % 14) for i in range(14)]
        edges += [(i, (i + 5) % 14) for i in range(0, 14, 2)]
        return Graph(range(14), edges)
    if name == "house":
        # 4-cycle a,b,c,d = 0,1,2,3 plus e = 4 adjacent to a and b
        return Graph(range(5), [(0, 1), (1, 2), (2, 3), (3, 0), (4, 0), (4, 1)])
    if name in ("cycle", "clique", "path"):
        if n is None or n < 1:
            raise GraphError(f"{name} needs a size n >= 1")
        if name == "cycle":
            if n < 3:
                raise GraphError("cycle needs n >= 3")
            return Graph(range(n), [(i, (i + 1) % n) for i in range(n)])
        if name == "clique":
            return Graph(range(n), [(i, j) for i in range(n) for j in range(i + 1, n)])
        return Graph(range(n), [(i, i + 1) for i in range(n - 1)])
    raise GraphError(f"unknown named graph {name!r}")
