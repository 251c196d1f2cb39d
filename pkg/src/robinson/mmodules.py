"""Mmodules of a dissimilarity space and the tree that encodes all of them.

A set ``M`` is an *mmodule* when every point outside ``M`` is at the same
distance from all members of ``M``. The empty set, singletons and the
whole space always are. The family of all mmodules is encoded by a tree
with union (``U``) and intersection (``I``) inner nodes.

Tree text format
----------------
::

    tree := leaf | "(" label " " tree (" " tree)* ")"
    label := "U" | "I"
    leaf := integer point id

Children are listed by increasing smallest leaf. The mmodules encoded are
the leaf sets of all nodes, the empty set, and for every ``I`` node the
union of any nonempty proper subset of its children.
"""

from __future__ import annotations

import enum
import itertools
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional, Sequence

import numpy as np

from .core import DissimilaritySpace
from .refinement import refine, recursive_refine

__all__ = [
    "Regime",
    "TreeNode",
    "is_mmodule",
    "interval",
    "mconv",
    "stable_partition",
    "is_stable_partition",
    "copoint_labels",
    "maximal_mmodules",
    "mmodule_tree",
    "parse_tree",
    "represented_family",
    "tree_contains",
    "SFAMILY_LIMIT",
]

SFAMILY_LIMIT = 20


class Regime(enum.Enum):
    PARTITION = "partition"
    COPARTITION = "copartition"


def is_mmodule(space: DissimilaritySpace, M: Iterable[int]) -> bool:
    """Whether every outside point sees all of ``M`` at one distance."""
    members = sorted(set(M))
    if len(members) <= 1 or len(members) == space.n:
        return True
    inside = np.zeros(space.n, dtype=bool)
    inside[members] = True
    sub = space.dist[np.ix_(~inside, inside)]
    return bool((sub == sub[:, :1]).all())


def interval(space: DissimilaritySpace, u: int, v: int) -> set[int]:
    """Points that tell ``u`` and ``v`` apart: ``{x : d(x,u) != d(x,v)}``."""
    if u == v:
        raise ValueError("interval needs two distinct points")
    return set(np.flatnonzero(space.dist[u] != space.dist[v]).tolist())


def mconv(space: DissimilaritySpace, A: Iterable[int]) -> set[int]:
    """Smallest mmodule containing ``A``.

    Outside points that see ``A`` at more than one distance are added
    until none is left.
    """
    inside = np.zeros(space.n, dtype=bool)
    inside[list(A)] = True
    if not inside.any():
        raise ValueError("mconv of the empty set")
    while True:
        cols = space.dist[:, inside]
        spread = (cols != cols[:, :1]).any(axis=1) & ~inside
        if not spread.any():
            return set(np.flatnonzero(inside).tolist())
        inside |= spread


def stable_partition(space: DissimilaritySpace, initial: Sequence[Sequence[int]]) -> list[list[int]]:
    """Coarsest refinement of ``initial`` in which no outside point splits a class.

    Each class ``B`` is split by the points outside it, one pivot at a
    time; after a split, the sibling pieces become pivots of each other.
    """
    universe = set(range(space.n))
    out: list[list[int]] = []
    work = []
    for B in initial:
        B = list(B)
        if B:
            members = set(B)
            work.append((B, [z for z in range(space.n) if z not in members]))
    if set(itertools.chain.from_iterable(b for b, _ in work)) != universe:
        raise ValueError("initial must cover every point")
    while work:
        B, Z = work.pop()
        while Z:
            q, Z = Z[0], Z[1:]
            parts = refine(space, q, B)
            if len(parts) > 1:
                for i, part in enumerate(parts):
                    others = [x for j, P in enumerate(parts) if j != i for x in P]
                    work.append((part, others + Z))
                break
        else:
            out.append(B)
    return sorted((sorted(b) for b in out), key=lambda b: b[0])


def is_stable_partition(space: DissimilaritySpace, blocks: Sequence[Sequence[int]]) -> bool:
    rows = space.rows
    for i, B in enumerate(blocks):
        for j, other in enumerate(blocks):
            if i == j:
                continue
            for z in other:
                if len({rows[z][x] for x in B}) > 1:
                    return False
    return True


def copoint_labels(space: DissimilaritySpace, points: Optional[Sequence[int]] = None) -> dict[int, dict[int, int]]:
    """For every ``p``, map each other point to the index of its copoint."""
    pts = list(range(space.n)) if points is None else list(points)
    labels = {}
    for p in pts:
        rest = [x for x in pts if x != p]
        lab = {}
        for i, C in enumerate(recursive_refine(space, p, [p], rest, [])):
            for x in C:
                lab[x] = i
        labels[p] = lab
    return labels


def maximal_mmodules(
    space: DissimilaritySpace, points: Optional[Sequence[int]] = None
) -> tuple[list[frozenset[int]], set[Regime]]:
    """Inclusion-maximal proper mmodules, and whether they partition or copartition.

    Every maximal mmodule avoids some ``p`` and so is a copoint of ``p``.
    A copoint ``C`` is maximal iff for every ``p'`` outside ``C`` the
    ``p'``-copoint containing ``C`` is ``C`` itself. O(n^3) overall.

    The regime set holds ``PARTITION`` when the sets are pairwise disjoint
    and ``COPARTITION`` when their complements are; both hold when there
    are exactly two sets, complementary to each other.
    """
    pts = list(range(space.n)) if points is None else sorted(points)
    if len(pts) < 2:
        raise ValueError("need at least two points")
    labels = copoint_labels(space, pts)
    sizes = {}
    blocks_of = {}
    for p, lab in labels.items():
        groups: dict[int, list[int]] = {}
        for x, i in lab.items():
            groups.setdefault(i, []).append(x)
        blocks_of[p] = groups
        sizes[p] = {i: len(g) for i, g in groups.items()}
    found: set[frozenset[int]] = set()
    for p, groups in blocks_of.items():
        for C in groups.values():
            fc = frozenset(C)
            if fc in found:
                continue
            c0 = C[0]
            if all(sizes[q][labels[q][c0]] == len(C) for q in pts if q not in fc):
                found.add(fc)
    family = sorted(found, key=lambda s: (min(s), len(s)))
    whole = frozenset(pts)
    regimes = set()
    if sum(len(s) for s in family) == len(pts) and frozenset().union(*family) == whole:
        regimes.add(Regime.PARTITION)
    comps = [whole - s for s in family]
    if sum(len(c) for c in comps) == len(pts) and frozenset().union(*comps) == whole:
        regimes.add(Regime.COPARTITION)
    if not regimes:
        raise AssertionError("maximal mmodules neither partition nor copartition the space")
    return family, regimes


@dataclass(frozen=True)
class TreeNode:
    """A node of the mmodule tree: a leaf (``point``) or ``U``/``I`` with children."""

    label: Optional[str] = None
    children: tuple["TreeNode", ...] = ()
    point: Optional[int] = None

    @property
    def is_leaf(self) -> bool:
        return self.point is not None

    @cached_property
    def leaves(self) -> frozenset[int]:
        if self.is_leaf:
            return frozenset((self.point,))
        return frozenset().union(*(c.leaves for c in self.children))

    def nodes(self):
        stack = [self]
        while stack:
            node = stack.pop()
            yield node
            stack.extend(reversed(node.children))

    def to_text(self, offset: int = 0) -> str:
        """Serialize; ``offset`` is added to every point id (1 for 1-based)."""
        if self.is_leaf:
            return str(self.point + offset)
        inner = " ".join(c.to_text(offset) for c in self.children)
        return f"({self.label} {inner})"

    def __str__(self):
        return self.to_text()


def _make_node(label, children):
    return TreeNode(label, tuple(sorted(children, key=lambda c: min(c.leaves))))


def mmodule_tree(space: DissimilaritySpace) -> TreeNode:
    """The union/intersection tree whose encoded family is every mmodule.

    A set of two or more points becomes a ``U`` node over its maximal
    mmodules when those are disjoint, and an ``I`` node over their
    complements otherwise. A node with exactly two children fits both
    rules and is labelled ``I``.
    """
    if space.n == 0:
        raise ValueError("empty space")
    root_pts = list(range(space.n))
    # explicit stack: (points, parent child list)
    top: list[TreeNode] = []
    pending = [("visit", root_pts, top)]
    while pending:
        kind, pts, sink = pending.pop()
        if kind == "build":
            label, kids = pts
            sink.append(_make_node(label, kids))
            continue
        if len(pts) == 1:
            sink.append(TreeNode(point=pts[0]))
            continue
        family, regimes = maximal_mmodules(space, pts)
        if Regime.COPARTITION in regimes:
            label, parts = "I", [sorted(frozenset(pts) - s) for s in family]
        else:
            label, parts = "U", [sorted(s) for s in family]
        kids: list[TreeNode] = []
        pending.append(("build", (label, kids), sink))
        for part in parts:
            pending.append(("visit", part, kids))
    return top[0]


_TOKEN = re.compile(r"\(|\)|[UI]|-?\d+")


def parse_tree(text: str, offset: int = 0) -> TreeNode:
    """Inverse of :meth:`TreeNode.to_text`."""
    tokens = _TOKEN.findall(text)
    if "".join(tokens) != re.sub(r"\s+", "", text):
        raise ValueError("unexpected characters in tree text")
    stack: list[tuple[str, list]] = []
    root = None
    i = 0
    while i < len(tokens):
        tok = tokens[i]
        if tok == "(":
            if i + 1 >= len(tokens) or tokens[i + 1] not in ("U", "I"):
                raise ValueError("expected U or I after '('")
            stack.append((tokens[i + 1], []))
            i += 2
            continue
        if tok == ")":
            if not stack:
                raise ValueError("unbalanced ')'")
            label, kids = stack.pop()
            if len(kids) < 2:
                raise ValueError("inner node needs two children")
            node = _make_node(label, kids)
        elif tok in ("U", "I"):
            raise ValueError("label outside parentheses")
        else:
            node = TreeNode(point=int(tok) - offset)
        i += 1
        if stack:
            stack[-1][1].append(node)
        elif root is None:
            root = node
        else:
            raise ValueError("trailing input after tree")
    if stack or root is None:
        raise ValueError("incomplete tree")
    return root


def represented_family(tree: TreeNode) -> set[frozenset[int]]:
    """Every set the tree encodes. Refuses trees with more than 20 leaves."""
    if len(tree.leaves) > SFAMILY_LIMIT:
        raise ValueError(f"family expansion is limited to {SFAMILY_LIMIT} points")
    family: set[frozenset[int]] = {frozenset()}
    for node in tree.nodes():
        family.add(node.leaves)
        if node.label == "I":
            kids = [c.leaves for c in node.children]
            for r in range(1, len(kids)):
                for combo in itertools.combinations(kids, r):
                    family.add(frozenset().union(*combo))
    return family


def tree_contains(tree: TreeNode, M: Iterable[int]) -> bool:
    """Membership in the encoded family without expanding it."""
    target = frozenset(M)
    if not target:
        return True
    if not target <= tree.leaves:
        return False
    node = tree
    while True:
        nxt = next((c for c in node.children if target <= c.leaves), None)
        if nxt is None:
            break
        node = nxt
    if target == node.leaves:
        return True
    if node.label != "I":
        return False
    covered = [c.leaves for c in node.children if c.leaves & target]
    return frozenset().union(*covered) == target
