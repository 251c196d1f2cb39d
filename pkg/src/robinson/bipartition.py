"""From a proximity order around ``p`` to a compatible order.

Listing the points by nondecreasing distance from ``p`` (with ties
broken the right way) leaves one question per point: does it sit left
or right of ``p``? ``sort_by_bipartition`` answers it with a single pass
per point. Only one side per *tangled component* is a free choice; all
other sides follow from distance comparisons.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence, Union

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .core import DissimilaritySpace

__all__ = [
    "LEFT",
    "RIGHT",
    "SideAssignment",
    "assign_sides",
    "sort_by_bipartition",
    "tangled_components",
]

LEFT = "L"
RIGHT = "R"

Chooser = Callable[[int, int], str]


@dataclass
class SideAssignment:
    """Result of the side pass.

    ``left`` and ``right`` are each listed nearest to ``p`` first.
    ``decisions`` holds the points whose side was a free choice, in the
    order the choices were made.
    """

    p: int
    left: list[int]
    right: list[int]
    decisions: list[int] = field(default_factory=list)

    def order(self) -> list[int]:
        return self.left[::-1] + [self.p] + self.right


def _make_chooser(choose, seed) -> Chooser:
    if choose is None and seed is None:
        return lambda q, k: RIGHT
    if choose is None:
        rng = random.Random(seed)
        return lambda q, k: rng.choice((LEFT, RIGHT))
    if callable(choose):
        return choose
    seq = list(choose)

    def by_index(q, k):
        return seq[k] if k < len(seq) else RIGHT

    return by_index


def assign_sides(
    space: DissimilaritySpace,
    p: int,
    proximity: Sequence[int],
    choose: Union[None, Chooser, Sequence[str]] = None,
    seed: Optional[int] = None,
) -> SideAssignment:
    """Split ``proximity`` into the points left and right of ``p``.

    Parameters
    ----------
    space : DissimilaritySpace
    p : int
    proximity : sequence of int
        All points except ``p``, in a ``p``-proximity order.
    choose : callable or sequence of {"L", "R"}, optional
        Resolves the free choices. A callable gets ``(q, k)`` with ``k``
        the number of earlier free choices. A sequence is indexed by
        ``k`` and falls back to ``"R"`` once exhausted. The default
        always picks ``"R"``.
    seed : int, optional
        With no ``choose``, pick sides uniformly at random from this seed.
    """
    pick = _make_chooser(choose, seed)
    rows = space.rows
    dp = rows[p]
    n = space.n
    side = [None] * n
    # L and R are kept back-to-front so that prepending is an append
    Lr: list[int] = []
    Rr: list[int] = []
    undecided = list(reversed(proximity))
    decisions: list[int] = []
    for q in reversed(proximity):
        if side[q] is None:
            s = pick(q, len(decisions))
            if s not in (LEFT, RIGHT):
                raise ValueError(f"side must be {LEFT!r} or {RIGHT!r}, got {s!r}")
            decisions.append(q)
            side[q] = s
            (Lr if s == LEFT else Rr).append(q)
            # q is the farthest undecided point, so it heads the list
            del undecided[0]
        rq = rows[q]
        dpq = dp[q]
        q_left = side[q] == LEFT
        skipped: list[int] = []  # back-to-front as well
        for x in undecided:
            dxq = rq[x]
            if dxq == dpq:
                skipped.append(x)
                continue
            if (dxq < dpq) == q_left:
                side[x] = LEFT
                Lr.append(x)
                Rr.extend(skipped)
                for y in skipped:
                    side[y] = RIGHT
            else:
                side[x] = RIGHT
                Rr.append(x)
                Lr.extend(skipped)
                for y in skipped:
                    side[y] = LEFT
            skipped = []
        undecided = skipped
    return SideAssignment(p, Lr[::-1], Rr[::-1], decisions)


def sort_by_bipartition(
    space: DissimilaritySpace,
    p: int,
    proximity: Sequence[int],
    choose: Union[None, Chooser, Sequence[str]] = None,
    seed: Optional[int] = None,
) -> list[int]:
    """Compatible order built from a ``p``-proximity order.

    Returns ``reversed(left) + [p] + right``. On a Robinson space every
    way of resolving the free choices gives a compatible order.
    """
    return assign_sides(space, p, proximity, choose=choose, seed=seed).order()


def tangled_components(space: DissimilaritySpace, p: int, proximity: Sequence[int]) -> list[list[int]]:
    """Groups of points whose sides are tied together, for testing.

    Two points ``u`` before ``v`` in ``proximity`` are linked when
    ``d(u, v) != d(p, v)``. Linked groups whose spans in ``proximity``
    interleave are merged. Groups are returned in proximity order, each
    listed in proximity order.
    """
    prox = list(proximity)
    k = len(prox)
    if k == 0:
        return []
    idx = np.asarray(prox, dtype=np.intp)
    sub = space.dist[np.ix_(idx, idx)]
    to_p = space.dist[p, idx]
    # edge (i, j) for i < j when d(prox[i], prox[j]) != d(p, prox[j])
    mask = np.triu(sub != to_p[None, :], k=1)
    ii, jj = np.nonzero(mask)
    graph = coo_matrix((np.ones(len(ii)), (ii, jj)), shape=(k, k))
    ncomp, label = connected_components(graph, directed=False)
    lo = np.full(ncomp, k)
    hi = np.full(ncomp, -1)
    np.minimum.at(lo, label, np.arange(k))
    np.maximum.at(hi, label, np.arange(k))
    # merge interleaving spans with one sweep
    group_of = np.empty(ncomp, dtype=np.intp)
    groups = 0
    reach = -1
    for c in np.argsort(lo, kind="stable"):
        if lo[c] > reach:
            groups += 1
        group_of[c] = groups - 1
        reach = max(reach, hi[c])
    out: list[list[int]] = [[] for _ in range(groups)]
    for pos in range(k):
        out[group_of[label[pos]]].append(prox[pos])
    return out
