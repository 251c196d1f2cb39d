"""Divide and conquer recognition of Robinson spaces.

``find_compatible_order`` picks a point ``p``, splits the rest into the
copoints of ``p``, orders each copoint recursively, cuts the copoints that
must straddle ``p`` into two halves, orders one representative per piece
around ``p``, and concatenates the pieces. The whole run is O(n^2).
``recognize`` adds the final O(n^2) verification.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence, Union

import numpy as np

from .bipartition import LEFT, RIGHT, assign_sides
from .conical import NoAdmissibleHole, RepresentedBlock, separate_if_separable
from .core import DissimilaritySpace, diameter, first_violation
from .refinement import CopointDecomposition, copoint_partition, recursive_refine

__all__ = [
    "NotRobinson",
    "HoleWitness",
    "ViolationWitness",
    "RecognitionResult",
    "ExtendedQuotient",
    "find_compatible_order",
    "recognize",
    "quotient_space",
    "separated_copoints",
    "extended_quotient",
    "reference_chooser",
]

# (p, q) -> "L" or "R": side of q around p when the choice is free
SideChooser = Callable[[int, int], str]


class NotRobinson(Exception):
    def __init__(self, witness):
        super().__init__(str(witness))
        self.witness = witness


@dataclass(frozen=True)
class HoleWitness:
    """The sorted copoint ``block`` of ``p`` has no place for ``p``."""

    p: int
    block: tuple[int, ...]

    def __str__(self):
        return f"copoint of {self.p} with {len(self.block)} points has no admissible hole"


@dataclass(frozen=True)
class ViolationWitness:
    """Walking from ``a`` to the adjacent ``b`` moves away from ``row`` but gets closer."""

    row: int
    a: int
    b: int

    def __str__(self):
        return f"row {self.row}: d(row, {self.b}) < d(row, {self.a}) although {self.b} is farther out"


@dataclass
class RecognitionResult:
    robinson: bool
    order: Optional[list[int]] = None
    witness: Union[HoleWitness, ViolationWitness, None] = None

    def __bool__(self) -> bool:
        return self.robinson


def reference_chooser(reference: Sequence[int]) -> SideChooser:
    """Resolve free choices so as to agree with a known order.

    Useful to reproduce one particular compatible order among the many.
    """
    pos = {x: i for i, x in enumerate(reference)}
    return lambda p, q: LEFT if pos[q] < pos[p] else RIGHT


class _Frame:
    __slots__ = ("p", "copoints", "i", "pieces")

    def __init__(self, p, copoints):
        self.p = p
        self.copoints = copoints
        self.i = len(copoints) - 1
        self.pieces: list[list[RepresentedBlock]] = []


def _merge(space, p, pieces, choose, rng) -> list[int]:
    """Order the pieces around ``p`` by their representatives."""
    flat = [b for group in pieces for b in group]
    reps = [b.rep for b in flat]
    if choose is not None:
        chooser = lambda q, k: choose(p, q)  # noqa: E731
    elif rng is not None:
        chooser = lambda q, k: rng.choice((LEFT, RIGHT))  # noqa: E731
    else:
        chooser = None
    sides = assign_sides(space, p, reps, choose=chooser)
    by_rep = {b.rep: b.members for b in flat}
    left_set = set(sides.left)
    for group in pieces:
        if len(group) == 2:
            lo, hi = group
            # The halves were cut for lo's half to sit left of p. If the
            # side pass put it on the right, mirror both halves so that
            # each still has its cut end next to p.
            if lo.rep not in left_set:
                by_rep[lo.rep] = lo.members[::-1]
                by_rep[hi.rep] = hi.members[::-1]
    out: list[int] = []
    for r in reversed(sides.left):
        out.extend(by_rep[r])
    out.append(p)
    for r in sides.right:
        out.extend(by_rep[r])
    return out


def find_compatible_order(
    space: DissimilaritySpace,
    points: Optional[Sequence[int]] = None,
    choose: Optional[SideChooser] = None,
    seed: Optional[int] = None,
    pivot_seed: Optional[int] = None,
) -> list[int]:
    """A compatible order, if the space (or the given subset) is Robinson.

    Parameters
    ----------
    space : DissimilaritySpace
    points : sequence of int, optional
        Restrict to these points (an mmodule or any subset). Default: all.
    choose : callable, optional
        ``choose(p, q)`` returns ``"L"`` or ``"R"`` whenever the side of
        ``q`` around ``p`` is free. Default: always ``"R"``.
    seed : int, optional
        With no ``choose``, make free choices at random from this seed.
    pivot_seed : int, optional
        Pick each splitting point at random instead of the lowest index.

    Returns
    -------
    list of int
        On a Robinson input, a compatible order. On other inputs the
        result may be any permutation; check it with
        :func:`robinson.core.is_robinson_order`.

    Raises
    ------
    NoAdmissibleHole
        When a copoint cannot be split; the input is then not Robinson.
    """
    members = list(range(space.n)) if points is None else list(points)
    if not members:
        return []
    rng = random.Random(seed) if (seed is not None and choose is None) else None
    prng = random.Random(pivot_seed) if pivot_seed is not None else None

    def open_frame(X):
        p = prng.choice(X) if prng is not None else min(X)
        rest = [x for x in X if x != p]
        return _Frame(p, recursive_refine(space, p, [p], rest, []))

    stack = [open_frame(members)]
    result: Optional[list[int]] = None
    while stack:
        top = stack[-1]
        if result is not None:
            # a child copoint just finished; it was copoints[top.i]
            top.pieces.append(separate_if_separable(space, top.p, result))
            top.i -= 1
            result = None
        if top.i >= 0:
            C = top.copoints[top.i]
            if len(C) == 1:
                result = C
            else:
                stack.append(open_frame(C))
            continue
        stack.pop()
        top.pieces.reverse()  # copoints were handled last first
        result = _merge(space, top.p, top.pieces, choose, rng)
    return result


def recognize(space: DissimilaritySpace, **kwargs) -> RecognitionResult:
    """Decide whether ``space`` is Robinson, with an order or a witness.

    Keyword arguments are passed to :func:`find_compatible_order`.

    >>> from robinson.testkit import running_example
    >>> bool(recognize(running_example()))
    True
    """
    try:
        order = find_compatible_order(space, **kwargs)
    except NoAdmissibleHole as exc:
        return RecognitionResult(False, None, HoleWitness(exc.p, exc.block))
    bad = first_violation(space, order)
    if bad is not None:
        return RecognitionResult(False, order, ViolationWitness(*bad))
    return RecognitionResult(True, order, None)


def quotient_space(space: DissimilaritySpace, decomposition: CopointDecomposition) -> DissimilaritySpace:
    """Collapse each class of the copoint partition to a point.

    Class ``{p}`` comes first, then the copoints in order. ``labels`` of
    the result hold one member of each class.
    """
    blocks = decomposition.blocks()
    reps = np.asarray([b[0] for b in blocks], dtype=np.intp)
    return DissimilaritySpace(
        space.dist[np.ix_(reps, reps)],
        precision=space.precision,
        labels=[space.labels[r] for r in reps],
    )


def separated_copoints(space: DissimilaritySpace, p: int, **kwargs) -> list[list[RepresentedBlock]]:
    """Copoints of ``p``, each ordered and then split if it must straddle ``p``.

    One inner list per copoint, in proximity order.
    """
    dec = copoint_partition(space, p)
    return [separate_if_separable(space, p, find_compatible_order(space, C, **kwargs)) for C in dec.copoints]


@dataclass
class ExtendedQuotient:
    """Copoints of ``p`` with every split copoint replaced by its halves.

    ``pieces[0]`` is ``{p}``. ``origin[i]`` is the index of the copoint
    that piece ``i`` comes from (``-1`` for ``p``). ``dist`` is the
    distance matrix between pieces.
    """

    p: int
    pieces: list[RepresentedBlock]
    origin: list[int]
    dist: np.ndarray = field(repr=False)

    def as_space(self, precision: int = 0) -> DissimilaritySpace:
        return DissimilaritySpace(self.dist, precision=precision, labels=[b.rep for b in self.pieces])


def extended_quotient(space: DissimilaritySpace, p: int, separated: Sequence[Sequence[RepresentedBlock]]) -> ExtendedQuotient:
    """Distances between ``p``, whole copoints and halved copoints.

    Pieces from different copoints are at their common cross distance.
    The two halves of one copoint are at the diameter of that copoint.
    """
    pieces = [RepresentedBlock(p, (p,))]
    origin = [-1]
    for i, group in enumerate(separated):
        for b in group:
            pieces.append(b)
            origin.append(i)
    k = len(pieces)
    rows = space.rows
    dist = np.zeros((k, k), dtype=np.int64)
    for a in range(k):
        for b in range(a + 1, k):
            if origin[a] == origin[b]:
                whole = pieces[a].members + pieces[b].members
                v = diameter(space, whole)
            else:
                v = rows[pieces[a].rep][pieces[b].rep]
            dist[a, b] = dist[b, a] = v
    return ExtendedQuotient(p, pieces, origin, dist)
