"""Refinement by distance to a pivot, and the copoint partition.

``refine`` splits a set into buckets of equal distance to a pivot.
``recursive_refine`` applies it repeatedly with inner and outer pivots to
cut ``X - {p}`` into its copoints, listed in an order compatible with
distance from ``p``.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .core import DissimilaritySpace

__all__ = [
    "PivotInSet",
    "StepCounter",
    "CopointDecomposition",
    "refine",
    "recursive_refine",
    "copoint_partition",
]


class PivotInSet(ValueError):
    def __init__(self, q: int):
        super().__init__(f"pivot {q} belongs to the set being refined")
        self.q = q


class StepCounter:
    """Counts elementary steps of :func:`recursive_refine` outside ``refine``.

    ``calls`` is the number of nodes of the recursion tree, ``steps`` adds
    the per-node work (children created, blocks reversed).
    """

    def __init__(self):
        self.calls = 0
        self.steps = 0


@dataclass(frozen=True)
class CopointDecomposition:
    """The copoints of ``p`` in proximity pre-order."""

    p: int
    copoints: tuple[tuple[int, ...], ...]

    def blocks(self) -> list[tuple[int, ...]]:
        """All classes, ``{p}`` first."""
        return [(self.p,), *self.copoints]

    def __len__(self) -> int:
        return len(self.copoints)


def _buckets(rows, q: int, S: Iterable[int]) -> tuple[list[int], list[list[int]]]:
    row = rows[q]
    by_key: dict[int, list[int]] = {}
    for x in S:
        if x == q:
            raise PivotInSet(q)
        key = row[x]
        bucket = by_key.get(key)
        if bucket is None:
            by_key[key] = [x]
        else:
            bucket.append(x)
    keys = sorted(by_key)
    return keys, [by_key[k] for k in keys]


def refine(space: DissimilaritySpace, q: int, S: Sequence[int]) -> list[list[int]]:
    """Split ``S`` into blocks of equal distance to ``q``, nearest first.

    Members keep their order of appearance in ``S``.

    >>> from robinson.core import validate
    >>> sp = validate([[0, 1, 2], [1, 0, 1], [2, 1, 0]])
    >>> refine(sp, 0, [2, 1])
    [[1], [2]]
    """
    return _buckets(space.rows, q, S)[1]


# A pivot list is consumed only at its head, and every pivot list built
# below is "a run of sibling blocks, then an older list". It is stored as
# None (empty) or (blocks, k, stop, off, rest) meaning
#   blocks[k][off:] ++ blocks[k+1] ++ ... ++ blocks[stop-1] ++ rest
# with k < stop. Construction and tail are O(1), and tails are shared.


def _view(blocks, start, stop, rest):
    if start >= stop:
        return rest
    return (blocks, start, stop, 0, rest)


def _from_seq(seq):
    seq = list(seq)
    return (seq and ([seq], 0, 1, 0, None)) or None


def _head(lst) -> int:
    return lst[0][lst[1]][lst[3]]


def _tail(lst):
    blocks, k, stop, off, rest = lst
    off += 1
    if off == len(blocks[k]):
        k += 1
        off = 0
        if k == stop:
            return rest
    return (blocks, k, stop, off, rest)


def _to_list(lst) -> list[int]:
    out = []
    while lst is not None:
        out.append(_head(lst))
        lst = _tail(lst)
    return out


def _run(space, p, inn, S, out, counter: Optional[StepCounter]) -> list[list[int]]:
    rows = space.rows
    result: list[list[int]] = []
    stack = [(inn, S, out)]
    while stack:
        inn, S, out = stack.pop()
        while True:
            if counter is not None:
                counter.calls += 1
                counter.steps += 1
            if (inn is None and out is None) or len(S) == 1:
                # a single point can never be split, whatever pivots remain
                result.append(S)
                break
            if inn is not None:
                q = _head(inn)
                inn = _tail(inn)
                outer = False
            else:
                q = _head(out)
                out = _tail(out)
                outer = True
            keys, blocks = _buckets(rows, q, S)
            m = len(blocks)
            if m == 1:
                # a single child: the pivot is just dropped, no branching
                continue
            if outer:
                alpha = bisect_right(keys, rows[p][q])
                if alpha > 1:
                    blocks[:alpha] = blocks[alpha - 1 :: -1]
                if counter is not None:
                    counter.steps += alpha
            if counter is not None:
                counter.steps += m
            # children pushed last-first so they are processed in order
            for i in range(m - 1, -1, -1):
                stack.append((_view(blocks, 0, i, inn), blocks[i], _view(blocks, i + 1, m, out)))
            break
    return result


def recursive_refine(
    space: DissimilaritySpace,
    p: int,
    In: Sequence[int],
    S: Sequence[int],
    Out: Sequence[int],
    counter: Optional[StepCounter] = None,
) -> list[list[int]]:
    """Partition ``S`` into mmodules sorted by proximity to ``p``.

    Parameters
    ----------
    space : DissimilaritySpace
    p : int
        Attaching point.
    In, S, Out : sequences of int
        Inner pivots, the set to split, and outer pivots. They must be
        disjoint. Pivots are consumed front to back, inner ones first.
    counter : StepCounter, optional
        Incremented with the work done outside the bucket splits.

    Returns
    -------
    list of list of int
        Ordered partition of ``S``. When an outer pivot ``q`` splits a set,
        the blocks no farther from ``q`` than ``p`` is are listed in reverse
        so that blocks nearer to ``p`` come first.
    """
    S = list(S)
    if not S:
        return []
    return _run(space, p, _from_seq(In), S, _from_seq(Out), counter)


def copoint_partition(space: DissimilaritySpace, p: int) -> CopointDecomposition:
    """Copoints of ``p`` (maximal mmodules avoiding ``p``) in proximity order.

    >>> from robinson.testkit import running_example
    >>> dec = copoint_partition(running_example(), 0)
    >>> [sorted(x + 1 for x in c) for c in dec.copoints][:3]
    [[17], [9], [10]]
    """
    if not 0 <= p < space.n:
        raise IndexError("attaching point out of range")
    rest = [x for x in range(space.n) if x != p]
    blocks = recursive_refine(space, p, [p], rest, [])
    return CopointDecomposition(p, tuple(tuple(b) for b in blocks))
