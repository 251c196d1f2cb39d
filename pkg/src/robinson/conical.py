"""Inserting an apex into a sorted conical set.

A set ``X'`` is conical around ``p`` when every member is at the same
distance ``delta`` from ``p``. Given ``X'`` sorted along one of its
compatible orders, a *hole* is a gap between two consecutive members (or
the wrap-around gap past both ends) where ``p`` can be inserted. A hole
is admissible when the result is still compatible.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

from .core import DissimilaritySpace, diameter

__all__ = [
    "CopointClass",
    "NotEquidistant",
    "NoAdmissibleHole",
    "RepresentedBlock",
    "classify_copoint",
    "separate_if_separable",
    "admissible_holes",
]


class CopointClass(enum.Enum):
    SEPARABLE = "separable"
    TIGHT = "tight"
    NON_SEPARABLE = "non-separable"


class NotEquidistant(ValueError):
    pass


class NoAdmissibleHole(Exception):
    """No gap of the sorted block can take the apex.

    This cannot happen for a copoint of a Robinson space, so it proves
    the input is not Robinson.
    """

    def __init__(self, p: int, block: Sequence[int]):
        self.p = p
        self.block = tuple(block)
        super().__init__(f"no admissible hole for apex {p} in block of size {len(self.block)}")


@dataclass(frozen=True)
class RepresentedBlock:
    """A sorted run of points and the end of it that faces outward."""

    rep: int
    members: tuple[int, ...]


def classify_copoint(space: DissimilaritySpace, p: int, copoint: Sequence[int]) -> CopointClass:
    """Compare the diameter of ``copoint`` with its distance to ``p``."""
    members = list(copoint)
    if not members:
        raise ValueError("empty copoint")
    row = space.rows[p]
    delta = row[members[0]]
    if any(row[x] != delta for x in members):
        raise NotEquidistant(f"members of the copoint are not equidistant from {p}")
    diam = diameter(space, members)
    if diam > delta:
        return CopointClass.SEPARABLE
    if diam == delta:
        return CopointClass.TIGHT
    return CopointClass.NON_SEPARABLE


def separate_if_separable(space: DissimilaritySpace, p: int, block: Sequence[int]) -> list[RepresentedBlock]:
    """Split a sorted copoint at the first admissible hole, if it must be split.

    Parameters
    ----------
    space : DissimilaritySpace
    p : int
        The apex; every member of ``block`` is at the same distance from it.
    block : sequence of int
        The copoint, sorted along a compatible order of itself.

    Returns
    -------
    list of RepresentedBlock
        ``[(first, block)]`` when the apex may go past either end.
        Otherwise ``[(first, left), (last, right)]`` where ``p`` belongs
        between ``left`` and ``right``. Member order is preserved.

    Raises
    ------
    NoAdmissibleHole
        If the block has no admissible hole. The space is then not Robinson.
    """
    block = tuple(block)
    rows = space.rows
    lo, hi = block[0], block[-1]
    delta = rows[p][lo]
    if rows[lo][hi] <= delta:
        return [RepresentedBlock(lo, block)]
    row_lo, row_hi = rows[lo], rows[hi]
    for i in range(len(block) - 1):
        y, z = block[i], block[i + 1]
        if row_lo[y] <= delta and row_hi[z] <= delta and rows[y][z] >= delta:
            return [RepresentedBlock(lo, block[: i + 1]), RepresentedBlock(hi, block[i + 1 :])]
    raise NoAdmissibleHole(p, block)


def admissible_holes(space: DissimilaritySpace, p: int, block: Sequence[int]) -> list[tuple[int, int]]:
    """Every admissible hole of a sorted conical block, by direct check.

    Holes are pairs ``(y, z)`` of consecutive members; the wrap-around hole
    is ``(last, first)`` and is listed last. Costs O(k^3); for testing.
    """
    block = list(block)
    k = len(block)
    rows = space.rows
    delta = rows[p][block[0]]
    holes = []
    for h in range(k - 1):
        ok = True
        for a in range(k):
            for b in range(a + 1, k):
                dv = rows[block[a]][block[b]]
                if a <= h < b and dv < delta:
                    ok = False
                elif (b <= h or a > h) and dv > delta:
                    ok = False
        if ok:
            holes.append((block[h], block[h + 1]))
    if rows[block[0]][block[-1]] <= delta:
        holes.append((block[-1], block[0]))
    return holes
