"""Young diagrams (integer partitions) and their 3D height-field analogue.

Rows are stored as weakly decreasing positive lengths with rows[0] the
longest.  In the French picture the column of a cell grows upward; with
our indexing the hook of cell (i, j) is the cell itself, the cells to
its right in row i, and the cells in column j in rows below index i
(which sit *above* it in the French drawing).  Equivalently
hook(i, j) = (rows[i] - j) + (cols[j] - i) - 1.

All values here are immutable after construction and safe to share
between threads; every operation is a pure function.
"""

from __future__ import annotations

import math

import numpy as np

from .numerics import ln_factorial, ln_table


class Partition:
    """An integer partition, i.e. a 2D Young diagram.

    rows: tuple of weakly decreasing positive ints; n: cell count.
    The empty tuple is the valid size-0 diagram.
    """

    __slots__ = ("rows", "n")

    def __init__(self, rows=()):
        rows = tuple(int(r) for r in rows)
        for i, r in enumerate(rows):
            if r < 1:
                raise ValueError(f"non-positive row length at index {i}: {r}")
            if i > 0 and rows[i - 1] < r:
                raise ValueError(
                    f"rows not weakly decreasing at index {i}: "
                    f"{rows[i - 1]} < {r}")
        self.rows = rows
        self.n = sum(rows)

    def __eq__(self, other):
        return isinstance(other, Partition) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return f"Partition({list(self.rows)})"


def _conj_lengths(rows) -> list[int]:
    if not rows:
        return []
    cols = [0] * rows[0]
    for r in rows:
        for j in range(r):
            cols[j] += 1
    return cols


def conjugate(p: Partition) -> Partition:
    """The transposed diagram (column lengths of p); involutive."""
    return Partition(_conj_lengths(p.rows))


def hook_length(p: Partition, cell) -> int:
    """Hook length of one cell (i, j) of p."""
    i, j = cell
    if not (0 <= i < len(p.rows)) or not (0 <= j < p.rows[i]):
        raise ValueError(f"cell ({i}, {j}) outside diagram")
    cols = _conj_lengths(p.rows)
    return (p.rows[i] - j) + (cols[j] - i) - 1


def hook_lengths(p: Partition) -> list[int]:
    """All hook lengths, row-major order."""
    rows = p.rows
    cols = _conj_lengths(rows)
    out = []
    for i, r in enumerate(rows):
        base = r - i - 1
        for j in range(r):
            out.append(base + cols[j] - j)
    return out


def dim_exact(p: Partition) -> int:
    """Number of standard tableaux of shape p, exact: n! // prod(hooks).

    Arbitrary precision; dim passes 2^63 around n = 40.  Intended for
    n up to a few hundred.
    """
    if p.n == 0:
        return 1
    den = 1
    for h in hook_lengths(p):
        den *= h
    return math.factorial(p.n) // den


def log_dim(p: Partition) -> float:
    """ln dim(p) = ln n! - sum of ln hook, both sides via exact summation."""
    if p.n == 0:
        return 0.0
    t = ln_table(p.n)
    s = math.fsum(t[h] for h in hook_lengths(p))
    return ln_factorial(p.n) - s


def normalized_c(p: Partition) -> float:
    """(2/sqrt n) * (sum ln hooks - ln(n!)/2) = -(2/sqrt n) ln(dim/sqrt(n!))."""
    if p.n == 0:
        raise ValueError("normalized_c undefined for the empty diagram")
    t = ln_table(p.n)
    s = math.fsum(t[h] for h in hook_lengths(p))
    return (2.0 / math.sqrt(p.n)) * (s - 0.5 * ln_factorial(p.n))


def addable_corners(p: Partition) -> list[tuple[int, int]]:
    """Cells whose addition keeps the diagram valid, in increasing row order.

    Count = number of distinct row lengths + 1 (the new-row slot).
    """
    rows = p.rows
    out = []
    for i, r in enumerate(rows):
        if i == 0 or rows[i - 1] > r:
            out.append((i, r))
    out.append((len(rows), 0))
    return out


def removable_corners(p: Partition) -> list[int]:
    """Row indices whose last cell can be removed, increasing order."""
    rows = p.rows
    return [i for i, r in enumerate(rows)
            if i + 1 == len(rows) or rows[i + 1] < r]


def durfee_side(p: Partition) -> int:
    """Side of the largest square of cells anchored at the origin."""
    k = 0
    for i, r in enumerate(p.rows):
        if r >= i + 1:
            k = i + 1
        else:
            break
    return k


def count_standard_tableaux(p: Partition) -> int:
    """Brute-force tableau count by backtracking over removal chains.

    Exponential in n; this is the independent oracle for dim_exact at
    small n (it never touches the hook formula).
    """
    rows = list(p.rows)

    def go(remaining):
        if remaining == 0:
            return 1
        total = 0
        for i in range(len(rows)):
            if i + 1 < len(rows) and rows[i + 1] >= rows[i]:
                continue
            if rows[i] == 1:
                # a removable 1 is necessarily the last row
                rows.pop()
                total += go(remaining - 1)
                rows.append(1)
            else:
                rows[i] -= 1
                total += go(remaining - 1)
                rows[i] += 1
        return total

    return go(p.n)


class PlanePartition:
    """A 3D Young diagram as a height field h(i, j).

    heights must be weakly decreasing along both axes and non-negative;
    the solid is the set of unit voxels (i, j, k) with k < h(i, j).
    """

    __slots__ = ("heights", "n")

    def __init__(self, heights=None):
        if heights is None:
            h = np.zeros((0, 0), dtype=np.int64)
        else:
            h = np.array(heights, dtype=np.int64)
        if h.ndim != 2:
            raise ValueError("heights must be a 2D array")
        if h.size:
            neg = np.argwhere(h < 0)
            if len(neg):
                i, j = (int(v) for v in neg[0])
                raise ValueError(f"negative height at ({i}, {j})")
            bad = np.argwhere(h[:-1, :] < h[1:, :])
            if len(bad):
                i, j = (int(v) for v in bad[0])
                raise ValueError(
                    f"heights increase along axis 0 at ({i + 1}, {j})")
            bad = np.argwhere(h[:, :-1] < h[:, 1:])
            if len(bad):
                i, j = (int(v) for v in bad[0])
                raise ValueError(
                    f"heights increase along axis 1 at ({i}, {j + 1})")
        h.setflags(write=False)
        self.heights = h
        self.n = int(h.sum())

    def __eq__(self, other):
        return (isinstance(other, PlanePartition)
                and self.heights.shape == other.heights.shape
                and bool(np.all(self.heights == other.heights)))

    def __repr__(self):
        return f"PlanePartition(n={self.n}, shape={self.heights.shape})"


def addable_cells_3d(p: PlanePartition) -> list[tuple[int, int]]:
    """All (i, j) where h(i, j) may grow by one without breaking monotonicity.

    Out-of-support neighbors at i-1 < 0 or j-1 < 0 count as infinitely
    tall, so (0, 0) is always addable.
    """
    h = p.heights
    nr, nc = h.shape

    def height(i, j):
        return int(h[i, j]) if i < nr and j < nc else 0

    out = []
    for i in range(nr + 1):
        for j in range(nc + 1):
            v = height(i, j)
            if i > 0 and height(i - 1, j) <= v:
                continue
            if j > 0 and height(i, j - 1) <= v:
                continue
            out.append((i, j))
    return out
