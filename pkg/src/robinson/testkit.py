"""Brute-force oracles and seeded instance generators.

Generators draw from ``numpy.random.Generator(PCG64(seed))``, so a
``(kind, n, seed, params)`` tuple always gives the same matrix.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from importlib import resources
from typing import Iterator, Optional, Sequence

import numpy as np

from .core import DissimilaritySpace, parse_matrix
from .mmodules import mconv

__all__ = [
    "TooLarge",
    "running_example",
    "RUNNING_EXAMPLE_ORDER",
    "is_robinson_order_triples",
    "brute_force_compatible_order",
    "all_compatible_orders",
    "enumerate_mmodules",
    "gen_toeplitz",
    "gen_ultrametric",
    "gen_line_distance",
    "perturb",
    "GeneratorSpec",
    "KINDS",
    "generate",
    "BRUTE_LIMIT",
    "SUBSET_LIMIT",
]

BRUTE_LIMIT = 10
SUBSET_LIMIT = 12

# a known compatible order of the running example, 0-based
RUNNING_EXAMPLE_ORDER = tuple(x - 1 for x in (19, 5, 15, 2, 12, 13, 14, 11, 4, 3, 18, 8, 16, 9, 1, 17, 10, 6, 7))


class TooLarge(ValueError):
    pass


def running_example() -> DissimilaritySpace:
    """The bundled 19-point Robinson space (integer values, precision 0)."""
    text = resources.files("robinson").joinpath("data/running_example.txt").read_text(encoding="utf-8")
    return parse_matrix(text, precision=0)


def is_robinson_order_triples(space: DissimilaritySpace, order: Sequence[int]) -> bool:
    """Direct O(n^3) check of ``d(x,z) >= max(d(x,y), d(y,z))`` for ``x<y<z``."""
    rows = space.rows
    k = len(order)
    for a in range(k):
        ra = rows[order[a]]
        for b in range(a + 1, k):
            dab = ra[order[b]]
            rb = rows[order[b]]
            for c in range(b + 1, k):
                dac = ra[order[c]]
                if dac < dab or dac < rb[order[c]]:
                    return False
    return True


def _compatible_orders(space: DissimilaritySpace) -> Iterator[tuple[int, ...]]:
    """Lexicographic DFS over permutations, pruning any prefix that already fails."""
    n = space.n
    rows = space.rows
    prefix: list[int] = []
    used = [False] * n

    def extendable(z):
        # only triples ending in z are new
        rz = rows[z]
        for b in range(len(prefix)):
            y = prefix[b]
            dyz = rz[y]
            for a in range(b):
                x = prefix[a]
                dxz = rz[x]
                if dxz < rows[x][y] or dxz < dyz:
                    return False
        return True

    def dfs():
        if len(prefix) == n:
            yield tuple(prefix)
            return
        for z in range(n):
            if not used[z] and extendable(z):
                used[z] = True
                prefix.append(z)
                yield from dfs()
                prefix.pop()
                used[z] = False

    yield from dfs()


def brute_force_compatible_order(space: DissimilaritySpace) -> Optional[list[int]]:
    """Lexicographically first compatible order, or ``None``. ``n <= 10``."""
    if space.n > BRUTE_LIMIT:
        raise TooLarge(f"brute force is limited to {BRUTE_LIMIT} points")
    first = next(_compatible_orders(space), None)
    return None if first is None else list(first)


def all_compatible_orders(space: DissimilaritySpace) -> list[tuple[int, ...]]:
    """Every compatible order, lexicographically. ``n <= 10``."""
    if space.n > BRUTE_LIMIT:
        raise TooLarge(f"brute force is limited to {BRUTE_LIMIT} points")
    return list(_compatible_orders(space))


def enumerate_mmodules(space: DissimilaritySpace, cap: int = 100_000) -> set[frozenset[int]]:
    """All mmodules, straight from the definition.

    Up to 12 points every subset is tested. Beyond that the family is
    grown from the singletons by ``M -> mconv(M + {x})``, which reaches
    every mmodule; ``cap`` bounds the family size.
    """
    n = space.n
    if n <= SUBSET_LIMIT:
        return _mmodules_by_subsets(space)
    family: set[frozenset[int]] = {frozenset()}
    frontier = [frozenset((x,)) for x in range(n)]
    family.update(frontier)
    while frontier:
        nxt = []
        for M in frontier:
            for x in range(n):
                if x in M:
                    continue
                grown = frozenset(mconv(space, M | {x}))
                if grown not in family:
                    family.add(grown)
                    nxt.append(grown)
                    if len(family) > cap:
                        raise TooLarge(f"more than {cap} mmodules")
        frontier = nxt
    return family


def _mmodules_by_subsets(space: DissimilaritySpace) -> set[frozenset[int]]:
    n = space.n
    masks = np.arange(1 << n, dtype=np.int64)
    ok = np.ones(1 << n, dtype=bool)
    for z in range(n):
        has_z = (masks >> z) & 1 == 1
        # M (z outside) is fine iff it sits inside one distance class of z
        fits = np.zeros(1 << n, dtype=bool)
        row = space.dist[z]
        for v in np.unique(row):
            cls = 0
            for x in np.flatnonzero(row == v):
                if x != z:
                    cls |= 1 << int(x)
            fits |= (masks & ~cls) == 0
        ok &= has_z | fits
    out = set()
    for mask in np.flatnonzero(ok).tolist():
        out.add(frozenset(x for x in range(n) if mask >> x & 1))
    return out


# -- generators --------------------------------------------------------------


def _rng(seed) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def _shuffled(dist: np.ndarray, rng) -> tuple[np.ndarray, list[int]]:
    n = dist.shape[0]
    perm = rng.permutation(n)
    # new point i is old point perm[i]; the old identity order becomes inv
    inv = np.empty(n, dtype=np.intp)
    inv[perm] = np.arange(n)
    return dist[np.ix_(perm, perm)], inv.tolist()


def gen_toeplitz(n: int, max_val: int = 2, seed: int = 0, shuffle: bool = False) -> tuple[DissimilaritySpace, list[int]]:
    """Robinson Toeplitz matrix ``d(i,j) = t[|i-j|]`` and a compatible order.

    ``t[0] = 0`` and ``t[1..n-1]`` are sorted draws from ``0..max_val``.
    With ``shuffle`` the points are relabelled at random and the returned
    order is the hidden identity order in the new labels.
    """
    if max_val < 1:
        raise ValueError("max_val must be at least 1")
    rng = _rng(seed)
    t = np.zeros(max(n, 1), dtype=np.int64)
    if n > 1:
        t[1:] = np.sort(rng.integers(0, max_val + 1, size=n - 1))
    idx = np.arange(n)
    dist = t[np.abs(idx[:, None] - idx[None, :])]
    order = list(range(n))
    if shuffle:
        dist, order = _shuffled(dist, rng)
    return DissimilaritySpace(dist), order


def gen_ultrametric(n: int, seed: int = 0, max_height: Optional[int] = None) -> DissimilaritySpace:
    """Ultrametric from random merges at nondecreasing heights.

    Heights are drawn from ``1..max_height`` (default ``n``) and sorted,
    so equal heights and ties occur.
    """
    rng = _rng(seed)
    top = max_height if max_height is not None else max(n, 1)
    heights = np.sort(rng.integers(1, top + 1, size=max(n - 1, 0)))
    clusters = [[i] for i in range(n)]
    dist = np.zeros((n, n), dtype=np.int64)
    for h in heights:
        a, b = rng.choice(len(clusters), size=2, replace=False)
        A, B = clusters[a], clusters[b]
        dist[np.ix_(A, B)] = h
        dist[np.ix_(B, A)] = h
        clusters[a] = A + B
        clusters.pop(b)
    return DissimilaritySpace(dist)


def gen_line_distance(n: int, seed: int = 0, span: Optional[int] = None) -> DissimilaritySpace:
    """``|x_i - x_j|`` for distinct integer coordinates placed in random label order."""
    rng = _rng(seed)
    hi = span if span is not None else 4 * max(n, 1)
    if hi < n:
        raise ValueError("span must be at least n")
    coords = np.sort(rng.choice(hi, size=n, replace=False)).astype(np.int64)
    coords = coords[rng.permutation(n)]
    return DissimilaritySpace(np.abs(coords[:, None] - coords[None, :]))


def perturb(space: DissimilaritySpace, seed: int = 0, count: int = 1, max_val: Optional[int] = None) -> DissimilaritySpace:
    """Rewrite ``count`` random off-diagonal pairs (both halves) with random values.

    Values are drawn from ``0..max_val`` (default: the current maximum
    plus one). The result is a valid dissimilarity that may or may not
    be Robinson.
    """
    if count < 0:
        raise ValueError("count must be nonnegative")
    if count == 0 or space.n < 2:
        return space
    rng = _rng(seed)
    dist = space.dist.copy()
    top = int(dist.max()) + 1 if max_val is None else max_val
    n = space.n
    for _ in range(count):
        i, j = rng.choice(n, size=2, replace=False)
        v = rng.integers(0, top + 1)
        dist[i, j] = dist[j, i] = v
    return DissimilaritySpace(dist, precision=space.precision, labels=space.labels)


KINDS = ("toeplitz", "ultrametric", "line", "perturbed")


@dataclass(frozen=True)
class GeneratorSpec:
    """Everything needed to rebuild one generated instance."""

    kind: str
    n: int
    seed: int
    max_val: int = 2
    shuffle: bool = True
    perturb: int = 0

    def build(self) -> DissimilaritySpace:
        return generate(self)


def generate(spec: GeneratorSpec) -> DissimilaritySpace:
    """Build the instance described by ``spec``.

    ``perturbed`` draws a shuffled Toeplitz instance and rewrites
    ``max(perturb, 1)`` pairs. For other kinds ``perturb`` rewrites that
    many pairs afterwards.
    """
    if spec.n < 0:
        raise ValueError("n must be nonnegative")
    # one child stream for the base instance, another for the rewrites
    base_seed, noise_seed = np.random.SeedSequence(spec.seed).spawn(2)
    count = spec.perturb
    if spec.kind == "toeplitz":
        space, _ = gen_toeplitz(spec.n, spec.max_val, base_seed, shuffle=spec.shuffle)
    elif spec.kind == "ultrametric":
        space = gen_ultrametric(spec.n, base_seed)
    elif spec.kind == "line":
        space = gen_line_distance(spec.n, base_seed)
    elif spec.kind == "perturbed":
        space, _ = gen_toeplitz(spec.n, spec.max_val, base_seed, shuffle=spec.shuffle)
        count = max(count, 1)
    else:
        raise ValueError(f"unknown generator kind {spec.kind!r}; expected one of {', '.join(KINDS)}")
    return perturb(space, noise_seed, count, max_val=None if spec.kind != "perturbed" else spec.max_val + 1)
