"""Dissimilarity spaces with exact integer values.

A dissimilarity space is stored as a dense, read-only ``int64`` matrix.
Decimal input is scaled to integers at a fixed number of fractional
digits, so every comparison made by the algorithms is exact.
"""

from __future__ import annotations

import io
from decimal import Decimal, InvalidOperation
from functools import cached_property
from typing import Iterable, Optional, Sequence, TextIO, Union

import numpy as np

__all__ = [
    "DEFAULT_PRECISION",
    "DissimilaritySpace",
    "ValidationError",
    "NotSquare",
    "Asymmetric",
    "NonzeroDiagonal",
    "NegativeEntry",
    "PrecisionError",
    "EmptySubset",
    "parse_value",
    "format_value",
    "validate",
    "is_robinson_order",
    "first_violation",
    "restrict",
    "diameter",
    "read_matrix",
    "parse_matrix",
    "format_matrix",
    "write_matrix",
]

DEFAULT_PRECISION = 6


class ValidationError(ValueError):
    """Raised when a raw grid is not a valid dissimilarity."""


class NotSquare(ValidationError):
    pass


class Asymmetric(ValidationError):
    def __init__(self, i: int, j: int):
        super().__init__(f"asymmetric entry at ({i}, {j})")
        self.i, self.j = i, j


class NonzeroDiagonal(ValidationError):
    def __init__(self, i: int):
        super().__init__(f"nonzero diagonal entry at ({i}, {i})")
        self.i = i


class NegativeEntry(ValidationError):
    def __init__(self, i: int, j: int):
        super().__init__(f"negative entry at ({i}, {j})")
        self.i, self.j = i, j


class PrecisionError(ValidationError):
    """A decimal value has more fractional digits than allowed."""


class EmptySubset(ValueError):
    pass


def parse_value(text: str, precision: int = DEFAULT_PRECISION) -> int:
    """Parse a decimal string into an integer scaled by ``10**precision``.

    >>> parse_value("2.5", precision=2)
    250
    """
    try:
        value = Decimal(text)
    except InvalidOperation:
        raise ValidationError(f"not a decimal number: {text!r}") from None
    if not value.is_finite():
        raise ValidationError(f"not a finite number: {text!r}")
    scaled = value.scaleb(precision)
    if scaled != scaled.to_integral_value():
        raise PrecisionError(f"{text!r} has more than {precision} fractional digits")
    return int(scaled)


def format_value(value: int, precision: int) -> str:
    """Inverse of :func:`parse_value`; trailing zeros are dropped."""
    if precision == 0:
        return str(int(value))
    sign = "-" if value < 0 else ""
    whole, frac = divmod(abs(int(value)), 10**precision)
    if frac == 0:
        return f"{sign}{whole}"
    digits = str(frac).rjust(precision, "0").rstrip("0")
    return f"{sign}{whole}.{digits}"


class DissimilaritySpace:
    """A finite set of points ``0..n-1`` with a dissimilarity matrix.

    Parameters
    ----------
    dist : array_like of int
        Symmetric, nonnegative, zero-diagonal ``n x n`` matrix. Use
        :func:`validate` to build a space from untrusted input.
    precision : int
        Number of decimal digits folded into the integers (used only for
        printing values back).
    labels : sequence of int, optional
        Identifier of each point in the space this one was restricted from.
        Defaults to ``0..n-1``.
    """

    def __init__(self, dist, precision: int = 0, labels: Optional[Sequence[int]] = None):
        arr = np.array(dist, dtype=np.int64, copy=True)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise NotSquare(f"expected a square matrix, got shape {arr.shape}")
        arr.setflags(write=False)
        self.dist = arr
        self.precision = precision
        n = arr.shape[0]
        self.labels = tuple(range(n)) if labels is None else tuple(int(x) for x in labels)
        if len(self.labels) != n:
            raise ValueError("labels must have one entry per point")

    @property
    def n(self) -> int:
        return self.dist.shape[0]

    def __len__(self) -> int:
        return self.n

    @cached_property
    def rows(self) -> list[list[int]]:
        # plain nested lists: scalar lookups are much cheaper than on ndarrays
        return self.dist.tolist()

    def d(self, x: int, y: int) -> int:
        return self.rows[x][y]

    def __eq__(self, other) -> bool:
        if not isinstance(other, DissimilaritySpace):
            return NotImplemented
        return self.precision == other.precision and np.array_equal(self.dist, other.dist)

    def __hash__(self):
        return hash((self.n, self.precision, self.dist.tobytes()))

    def __repr__(self) -> str:
        return f"DissimilaritySpace(n={self.n}, precision={self.precision})"


def validate(raw, precision: int = 0, labels: Optional[Sequence[int]] = None) -> DissimilaritySpace:
    """Check ``raw`` against the dissimilarity axioms and wrap it.

    Errors name the first offending cell in row-major order, checking the
    diagonal, then negativity, then symmetry for each cell.
    """
    rows = [list(r) for r in raw]
    n = len(rows)
    for i, r in enumerate(rows):
        if len(r) != n:
            raise NotSquare(f"row {i} has {len(r)} entries, expected {n}")
    try:
        arr = np.array(rows, dtype=np.int64).reshape(n, n)
    except OverflowError:
        raise ValidationError("value does not fit in 64 bits") from None
    bad = (np.eye(n, dtype=bool) & (arr != 0)) | (arr < 0) | (arr != arr.T)
    if bad.any():
        i, j = (int(v) for v in np.argwhere(bad)[0])
        if i == j and arr[i, j] != 0:
            raise NonzeroDiagonal(i)
        if arr[i, j] < 0:
            raise NegativeEntry(i, j)
        raise Asymmetric(i, j)
    return DissimilaritySpace(arr, precision=precision, labels=labels)


def _permuted_rows(space: DissimilaritySpace, order: Sequence[int], start: int, stop: int) -> np.ndarray:
    idx = np.asarray(order, dtype=np.intp)
    return space.dist[np.ix_(idx[start:stop], idx)]


def first_violation(space: DissimilaritySpace, order: Sequence[int]) -> Optional[tuple[int, int, int]]:
    """First break of the Robinson property under ``order``.

    Returns ``(row, a, b)`` with point ids: ``a`` and ``b`` are adjacent in
    ``order`` and moving from one to the other steps away from the
    diagonal of ``row`` while the value decreases. ``None`` if there is
    no violation.
    """
    n = len(order)
    if n != space.n or sorted(order) != list(range(n)):
        raise ValueError("order must be a permutation of the points")
    if n < 3:
        return None
    chunk = max(1, min(n, 2**22 // n))
    for start in range(0, n, chunk):
        stop = min(n, start + chunk)
        block = _permuted_rows(space, order, start, stop)
        steps = np.diff(block, axis=1)  # steps[r, j] = P[r, j+1] - P[r, j]
        rows_idx = np.arange(start, stop)[:, None]
        cols_idx = np.arange(n - 1)[None, :]
        right = cols_idx >= rows_idx  # pair (j, j+1) lies right of the diagonal
        bad = np.where(right, steps < 0, steps > 0)
        hits = np.argwhere(bad)
        if hits.size:
            r, j = hits[0]
            r_pos = start + int(r)
            j = int(j)
            if j >= r_pos:
                a, b = order[j], order[j + 1]
            else:
                a, b = order[j + 1], order[j]
            return (order[r_pos], a, b)
    return None


def is_robinson_order(space: DissimilaritySpace, order: Sequence[int]) -> bool:
    """Whether the matrix permuted by ``order`` has the Robinson property.

    Every row must be nondecreasing when walking away from the diagonal in
    either direction; this is equivalent to the triple condition and costs
    O(n^2).
    """
    return first_violation(space, order) is None


def restrict(space: DissimilaritySpace, subset: Sequence[int]) -> DissimilaritySpace:
    """The subspace on ``subset``, in the given member order.

    The result's ``labels`` map its points back to the labels of ``space``.
    """
    idx = list(subset)
    if len(set(idx)) != len(idx):
        raise ValueError("subset members must be distinct")
    if any(x < 0 or x >= space.n for x in idx):
        raise IndexError("subset member out of range")
    ix = np.asarray(idx, dtype=np.intp)
    return DissimilaritySpace(
        space.dist[np.ix_(ix, ix)],
        precision=space.precision,
        labels=[space.labels[x] for x in idx],
    )


def diameter(space: DissimilaritySpace, subset: Iterable[int]) -> int:
    members = list(subset)
    if not members:
        raise EmptySubset("diameter of an empty set")
    ix = np.asarray(members, dtype=np.intp)
    return int(space.dist[np.ix_(ix, ix)].max())


# -- text format -------------------------------------------------------------
#
# line 1: n ; then n lines of n whitespace separated decimal values.
# Lines starting with '#' and blank lines are ignored.


def parse_matrix(text: str, precision: int = DEFAULT_PRECISION) -> DissimilaritySpace:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise ValidationError("empty input")
    try:
        n = int(lines[0])
    except ValueError:
        raise ValidationError(f"first line must be the point count, got {lines[0]!r}") from None
    if n < 0:
        raise ValidationError("negative point count")
    body = lines[1:]
    if len(body) != n:
        raise NotSquare(f"expected {n} matrix rows, found {len(body)}")
    raw = []
    for i, ln in enumerate(body):
        fields = ln.split()
        if len(fields) != n:
            raise NotSquare(f"row {i} has {len(fields)} entries, expected {n}")
        raw.append([parse_value(f, precision) for f in fields])
    return validate(raw, precision=precision)


def read_matrix(source: Union[str, TextIO], precision: int = DEFAULT_PRECISION) -> DissimilaritySpace:
    """Read a matrix file given a path or an open text stream."""
    if isinstance(source, str):
        with open(source, encoding="utf-8") as fh:
            return parse_matrix(fh.read(), precision)
    return parse_matrix(source.read(), precision)


def format_matrix(space: DissimilaritySpace) -> str:
    out = io.StringIO()
    write_matrix(space, out)
    return out.getvalue()


def write_matrix(space: DissimilaritySpace, fh: TextIO) -> None:
    fh.write(f"{space.n}\n")
    for row in space.rows:
        fh.write(" ".join(format_value(v, space.precision) for v in row))
        fh.write("\n")
