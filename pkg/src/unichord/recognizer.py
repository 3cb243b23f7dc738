"""Decomposition-tree construction and long-unichord-freeness decision.

A node is basic when it is chordal or unichord-free; a non-basic node is
reduced by stripping all universal vertices, else split at a cutvertex,
else at an amalgam.  The graph is long-unichord-free iff every leaf of
every component's tree is basic.  Tree sizes are held to the non-edge
potential: the two blocks of any cutvertex or amalgam split of a
non-basic universal-free node never exceed the parent's potential, so a
tree has at most potential(root) leaves.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field

from .basics import BasicClass, is_chordal, is_unichord_free
from .decomp import Split, blocks, find_amalgam, find_cutvertex, find_universal_vertices, potential_f
from .errors import InternalInvariantError, PreconditionError
from .graphs import Graph, components
from .oracle import DEFAULT_LIMITS, Limits, UnichordWitness, find_long_unichord


@dataclass
class TreeNode:
    graph: Graph
    rule: str  # root-rule of this node: universal-removal | cutvertex | amalgam | leaf
    split: Split | None = None
    children: list["TreeNode"] = field(default_factory=list)
    leaf_class: str | None = None  # chordal | unichord-free | non-basic

    def walk(self):
        yield self
        for ch in self.children:
            yield from ch.walk()

    def to_json(self) -> dict:
        out: dict = {"n": self.graph.n, "m": self.graph.m, "rule": self.rule,
                     "vertices": sorted(self.graph.vids)}
        if self.split is not None:
            out["split"] = self.split.to_json()
        if self.leaf_class is not None:
            out["leaf_class"] = self.leaf_class
        if self.children:
            out["children"] = [ch.to_json() for ch in self.children]
        return out


@dataclass(frozen=True)
class TreeStats:
    nodes: int
    leaves: int
    depth: int

    def to_json(self) -> dict:
        return {"nodes": self.nodes, "leaves": self.leaves, "depth": self.depth}


@dataclass(frozen=True)
class DecompTree:
    root: TreeNode
    stats: TreeStats

    def leaves(self) -> list[TreeNode]:
        return [nd for nd in self.root.walk() if nd.rule == "leaf"]

    def to_json(self) -> dict:
        return {"stats": self.stats.to_json(), "tree": self.root.to_json()}


@dataclass(frozen=True)
class Verdict:
    long_unichord_free: bool
    n: int
    m: int
    stats: TreeStats
    leaf_classes: dict[str, int]
    witness: UnichordWitness | None
    trees: tuple[DecompTree, ...]

    def to_json(self) -> dict:
        out = {
            "long_unichord_free": self.long_unichord_free,
            "n": self.n,
            "m": self.m,
            "tree": self.stats.to_json(),
            "leaf_classes": {
                "chordal": self.leaf_classes.get("chordal", 0),
                "unichord_free": self.leaf_classes.get("unichord-free", 0),
                "non_basic": self.leaf_classes.get("non-basic", 0),
            },
        }
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
        return out


def is_basic(g: Graph) -> str | None:
    """'chordal', 'unichord-free' (checked in that order) or None."""
    if not g.is_connected():
        raise PreconditionError("is_basic requires a connected graph")
    return _basic_tag(g)


def _basic_tag(g: Graph) -> str | None:
    if is_chordal(g) is not None:
        return "chordal"
    ok = True
    for comp in components(g):
        if not is_unichord_free(g.induced(comp)):
            ok = False
            break
    return "unichord-free" if ok else None


def _headroom(n: int) -> None:
    want = 4000 + 8 * n
    if sys.getrecursionlimit() < want:
        sys.setrecursionlimit(want)


def build_tree(g: Graph) -> DecompTree:
    """Decomposition tree of a connected graph per the recognition procedure."""
    if not g.is_connected():
        raise PreconditionError("build_tree requires a connected graph")
    _headroom(g.n)
    root = _build_node(g)
    nodes = list(root.walk())
    leaves = [nd for nd in nodes if nd.rule == "leaf"]
    stats = TreeStats(nodes=len(nodes), leaves=len(leaves), depth=_depth(root))
    tree = DecompTree(root=root, stats=stats)
    if stats.leaves > potential_f(g):
        raise InternalInvariantError(
            f"tree has {stats.leaves} leaves > potential {potential_f(g)}")
    return tree


def _depth(node: TreeNode) -> int:
    if not node.children:
        return 1
    return 1 + max(_depth(ch) for ch in node.children)


def _build_node(g: Graph) -> TreeNode:
    tag = _basic_tag(g)
    if tag is not None:
        return TreeNode(graph=g, rule="leaf", leaf_class=tag)

    x = find_universal_vertices(g)
    if x:
        child = _build_node(g.without(x))
        return TreeNode(graph=g, rule="universal-removal",
                        split=Split(kind="universal-set", x_set=x), children=[child])

    s = _find_decomposition(g)
    if s is None:
        return TreeNode(graph=g, rule="leaf", leaf_class="non-basic")
    b = blocks(g, s)
    if potential_f(b.g1) + potential_f(b.g2) > potential_f(g):
        raise InternalInvariantError(
            f"potential inequality violated at a {s.kind} node of n={g.n}")
    return TreeNode(graph=g, rule=s.kind, split=s,
                    children=[_build_node(b.g1), _build_node(b.g2)])


def _find_decomposition(g: Graph) -> Split | None:
    if g.is_connected():
        s = find_cutvertex(g)
        if s is not None:
            return s
        return find_amalgam(g)
    # Disconnected nodes only arise below universal removals.  Any single
    # vertex of a component with >= 2 vertices is a clique cutset of size 1
    # here (other components on one side, its own remainder on the other),
    # which keeps the recursion inside the cutvertex/amalgam rule set.
    comp_sets = components(g)
    for comp in sorted(comp_sets, key=min):
        if len(comp) >= 2:
            w = min(comp)
            x2 = frozenset(comp - {w})
            x1 = frozenset(set(g.vids) - comp)
            return Split(kind="cutvertex", cut=(w,), x1=x1, x2=x2)
    return None  # all components trivial: edgeless, hence chordal and basic


def recognize(g: Graph, limits: Limits = DEFAULT_LIMITS) -> Verdict:
    """Decide long-unichord-freeness; witness extraction is best effort."""
    trees = tuple(build_tree(g.induced(comp)) for comp in components(g))
    leaf_classes: dict[str, int] = {}
    failing: list[Graph] = []
    for tree in trees:
        for leaf in tree.leaves():
            leaf_classes[leaf.leaf_class] = leaf_classes.get(leaf.leaf_class, 0) + 1
            if leaf.leaf_class == "non-basic":
                failing.append(leaf.graph)
    verdict = not failing
    witness = None if verdict else _extract_witness(g, failing, limits)
    stats = TreeStats(nodes=sum(t.stats.nodes for t in trees),
                      leaves=sum(t.stats.leaves for t in trees),
                      depth=max((t.stats.depth for t in trees), default=0))
    return Verdict(long_unichord_free=verdict, n=g.n, m=g.m, stats=stats,
                   leaf_classes=leaf_classes, witness=witness, trees=trees)


def _extract_witness(g: Graph, failing: list[Graph],
                     limits: Limits) -> UnichordWitness | None:
    """A long-unichord witness in the input's own numbering, if cheaply available.

    Failing leaves may contain marker vertices that do not exist in the
    input, so a leaf witness only counts when it re-validates against the
    input graph; otherwise the component itself is tried when small enough.
    """
    originals = set(g.vids)
    for leaf in failing:
        if leaf.n > limits.unichord_max_n:
            continue
        w = find_long_unichord(leaf, limits)
        if w is None:
            continue
        if set(w.cycle) <= originals and w.validate(g, 5):
            return w
    if g.n <= limits.unichord_max_n:
        return find_long_unichord(g, limits)
    return None
