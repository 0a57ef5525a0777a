"""Random diagrams: RSK over uniform permutations, the dimension-biased
growth process, and Richardson (uniform-corner) growth in 2D and 3D.

Every sampler takes a numpy Generator and consumes a deterministic number
of draws per step, so runs are reproducible from (seed, stream) alone.
Monte-Carlo drivers give each sample its own Philox stream and reduce in
sample order; results do not depend on the thread count.
"""

from __future__ import annotations

import bisect
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .diagrams import Partition, addable_corners, dim_exact, normalized_c
from .numerics import (SampleStats, ln_factorial, ln_table, log_sum_exp,
                       rng_derive)

GROWTH_NORMALIZATION_TOL = 1e-9


def random_permutation(n: int, gen) -> np.ndarray:
    """A uniform permutation of 1..n."""
    return gen.permutation(np.arange(1, n + 1, dtype=np.int64))


def rsk_shape(perm) -> Partition:
    """Common shape of the RSK tableaux of a permutation.

    Row insertion only; the recording tableau is never built.  Row i of
    the result has the length of the i-th insertion row, so row 0 is the
    longest increasing subsequence length.
    """
    a = np.asarray(perm, dtype=np.int64)
    n = int(a.size)
    if n and (int(a.min()) < 1 or int(a.max()) > n
              or np.unique(a).size != n):
        raise ValueError("input is not a permutation of 1..n")
    rows: list[list[int]] = []
    for x in a:
        v = int(x)
        placed = False
        for row in rows:
            j = bisect.bisect_right(row, v)
            if j == len(row):
                row.append(v)
                placed = True
                break
            row[j], v = v, row[j]
        if not placed:
            rows.append([v])
    return Partition([len(r) for r in rows])


def sample_plancherel(n: int, gen) -> Partition:
    return rsk_shape(random_permutation(n, gen))


def plancherel_c_stats(n: int, samples: int, seed: int,
                       stream_base: int = 0, threads: int = 1,
                       progress=None) -> SampleStats:
    """Mean/std of normalized c over RSK samples, one stream per sample."""
    if samples < 1:
        raise ValueError("samples must be >= 1")

    def one(i):
        gen = rng_derive(seed, stream_base + i).gen
        return normalized_c(sample_plancherel(n, gen))

    stats = SampleStats()
    if threads <= 1:
        for i in range(samples):
            stats.push(one(i))
            if progress is not None and (i + 1) % 1000 == 0:
                progress(i + 1)
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            for i, c in enumerate(pool.map(one, range(samples),
                                           chunksize=16)):
                stats.push(c)
                if progress is not None and (i + 1) % 1000 == 0:
                    progress(i + 1)
    return stats


# ---------------------------------------------------------------------------
# dimension-biased growth (the Markov chain whose n-th marginal is the
# RSK/Plancherel measure)

def _corners_of(rows):
    corners = []
    for r in range(len(rows)):
        if r == 0 or rows[r] < rows[r - 1]:
            corners.append((r, rows[r]))
    corners.append((len(rows), 0))
    return corners


def growth_step_weights(rows, conj, lntab=None):
    """Transition data out of the shape given by rows (conj = conjugate).

    Returns (corners, probs, defect) where probs[i] is the chance of the
    i-th addable corner and defect = |log sum of weights|, which is 0 in
    exact arithmetic.  The weight of corner (r, c) is exp(-Delta) with
    Delta the total log-increase of the hooks in row r and column c.
    """
    k = sum(rows)
    if lntab is None:
        lntab = ln_table(k + 2)
    corners = _corners_of(rows)
    logw = np.empty(len(corners))
    for t, (r, c) in enumerate(corners):
        d = 0.0
        for j in range(c):
            h = (c - j) + (conj[j] - r) - 1
            d += lntab[h + 1] - lntab[h]
        for i in range(r):
            h = (rows[i] - c) + (r - i) - 1
            d += lntab[h + 1] - lntab[h]
        logw[t] = -d
    defect = abs(log_sum_exp(logw))
    if defect > GROWTH_NORMALIZATION_TOL:
        raise RuntimeError(
            f"growth weights off normalization by {defect:.3e} "
            f"at shape {tuple(rows)}")
    return corners, np.exp(logw), defect


@dataclass(frozen=True)
class GrowthPath:
    n: int
    checkpoints: tuple  # (k, c_k) pairs at stride multiples of k
    final_shape: Partition
    max_defect: float  # worst |log sum of weights| along the path


def plancherel_growth_path(n: int, gen, stride: int | None = None) -> GrowthPath:
    """Grow the empty diagram by n dimension-biased corner additions.

    Checkpoints of normalized c land on stride multiples (just the final
    shape when stride is None).  The running hook-log sum is updated
    incrementally -- the chosen corner's Delta is exactly the change --
    so a checkpoint costs O(1) beyond the step itself.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if stride is not None and stride < 1:
        raise ValueError("stride must be >= 1")
    lntab = ln_table(n + 2)
    rows: list[int] = []
    conj: list[int] = []
    s_hooks = 0.0  # Kahan pair for sum of ln hooks
    s_comp = 0.0
    lnf = 0.0  # Kahan pair for ln k!
    lnf_comp = 0.0
    checkpoints = []
    max_defect = 0.0
    for k in range(n):
        corners, probs, defect = growth_step_weights(rows, conj, lntab)
        if defect > max_defect:
            max_defect = defect
        cum = np.cumsum(probs)
        t = int(np.searchsorted(cum, gen.random() * cum[-1], side="right"))
        if t >= len(corners):
            t = len(corners) - 1
        r, c = corners[t]
        # the chosen corner's Delta, summed exactly as in the weight
        # routine so the incremental hook-log sum stays in lockstep
        d = 0.0
        for j in range(c):
            h = (c - j) + (conj[j] - r) - 1
            d += lntab[h + 1] - lntab[h]
        for i in range(r):
            h = (rows[i] - c) + (r - i) - 1
            d += lntab[h + 1] - lntab[h]
        delta = d
        if r == len(rows):
            rows.append(1)
        else:
            rows[r] += 1
        if c == len(conj):
            conj.append(1)
        else:
            conj[c] += 1
        y = delta - s_comp
        tsum = s_hooks + y
        s_comp = (tsum - s_hooks) - y
        s_hooks = tsum
        y = lntab[k + 1] - lnf_comp
        tsum = lnf + y
        lnf_comp = (tsum - lnf) - y
        lnf = tsum
        m = k + 1
        want = (m % stride == 0) if stride is not None else (m == n)
        if want:
            ck = (2.0 / math.sqrt(m)) * (s_hooks - 0.5 * lnf)
            checkpoints.append((m, ck))
    return GrowthPath(n=n, checkpoints=tuple(checkpoints),
                      final_shape=Partition(rows), max_defect=max_defect)


def growth_sample_counts(n: int, samples: int, gen) -> dict:
    """Histogram of the shape after n growth steps (small n only).

    Transition tables are memoized per shape with probabilities from
    exact integer dimensions, which doubles as an independent check on
    the log-domain weights.
    """
    if n > 25:
        raise ValueError("memoized sampler is for small n")
    table: dict[tuple, tuple] = {}

    def entry(rows):
        e = table.get(rows)
        if e is None:
            lam = Partition(rows)
            d = dim_exact(lam)
            k = lam.n
            nxt = []
            probs = []
            for (r, c) in addable_corners(lam):
                lst = list(rows)
                if r == len(lst):
                    lst.append(1)
                else:
                    lst[r] += 1
                nxt.append(tuple(lst))
                probs.append(dim_exact(Partition(lst)) / ((k + 1) * d))
            e = (nxt, np.cumsum(probs))
            table[rows] = e
        return e

    counts: dict[tuple, int] = {}
    for _ in range(samples):
        rows: tuple = ()
        us = gen.random(n)
        for k in range(n):
            nxt, cum = entry(rows)
            t = int(np.searchsorted(cum, us[k] * cum[-1], side="right"))
            if t >= len(nxt):
                t = len(nxt) - 1
            rows = nxt[t]
        counts[rows] = counts.get(rows, 0) + 1
    return counts


# ---------------------------------------------------------------------------
# Richardson growth: every addable corner equally likely

def _runs_capacity(n: int) -> int:
    return math.isqrt(2 * n) + 3


def richardson_grow_2d(n: int, gen) -> Partition:
    """n uniform-corner additions starting from the empty diagram.

    The shape is kept as runs of equal row length, so a step is O(1)
    except for the occasional insert; a partition of n has at most
    ~sqrt(2n) distinct lengths and the run arrays never need to grow.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    if n == 0:
        return Partition()
    cap = _runs_capacity(n)
    lens = np.zeros(cap, dtype=np.int64)
    counts = np.zeros(cap, dtype=np.int64)
    m = _kernels.richardson_2d_steps(n, lens, counts, 0, gen)
    return Partition(_runs_to_rows(lens, counts, m))


def _runs_to_rows(lens, counts, m):
    rows = []
    for t in range(m):
        rows.extend([int(lens[t])] * int(counts[t]))
    return rows


def richardson_c_path(n: int, gen, stride: int) -> GrowthPath:
    """Checkpoints of normalized c along one Richardson growth."""
    if n < 1 or stride < 1:
        raise ValueError("n and stride must be >= 1")
    cap = _runs_capacity(n)
    lens = np.zeros(cap, dtype=np.int64)
    counts = np.zeros(cap, dtype=np.int64)
    lntab = ln_table(n + 2)
    m = 0
    done = 0
    checkpoints = []
    while done < n:
        step = min(stride, n - done)
        m = _kernels.richardson_2d_steps(step, lens, counts, m, gen)
        done += step
        if done % stride == 0:
            rows = np.array(_runs_to_rows(lens, counts, m), dtype=np.int64)
            s = _kernels.hook_log_sum(rows, lntab)
            ck = (2.0 / math.sqrt(done)) * (s - 0.5 * ln_factorial(done))
            checkpoints.append((done, ck))
    return GrowthPath(n=n, checkpoints=tuple(checkpoints),
                      final_shape=Partition(_runs_to_rows(lens, counts, m)),
                      max_defect=0.0)


def _initial_grid_side(n: int) -> int:
    return 6 * int(round(n ** (1.0 / 3.0))) + 8


def _addable_state(h):
    """Addable-cell arrays (indices, position map) rebuilt from scratch."""
    up = np.empty(h.shape, dtype=np.bool_)
    up[0, :] = True
    up[1:, :] = h[:-1, :] > h[1:, :]
    left = np.empty(h.shape, dtype=np.bool_)
    left[:, 0] = True
    left[:, 1:] = h[:, :-1] > h[:, 1:]
    ai, aj = np.nonzero(up & left)
    g = h.shape[0]
    cap = g * g
    add_i = np.zeros(cap, dtype=np.int64)
    add_j = np.zeros(cap, dtype=np.int64)
    add_i[:ai.size] = ai
    add_j[:aj.size] = aj
    pos = np.full((g, g), -1, dtype=np.int64)
    pos[ai, aj] = np.arange(ai.size)
    return add_i, add_j, pos, int(ai.size)


def richardson_grow_3d(n: int, gen, grid: int | None = None) -> np.ndarray:
    """Plane-partition Richardson growth; returns the height field.

    Starts on a modest grid and doubles it whenever growth touches the
    last row or column, rebuilding the addable set on the bigger grid.
    Runs are reproducible from (stream, grid); the rebuilt set is in
    row-major order rather than insertion order, so forcing a smaller
    initial grid permutes later draws (the law is unchanged -- every
    ordering is uniform over the same set).
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    g = grid if grid is not None else _initial_grid_side(max(n, 1))
    if g < 2:
        raise ValueError("grid must be >= 2")
    h = np.zeros((g, g), dtype=np.int64)
    add_i, add_j, pos, nadd = _addable_state(h)
    done = 0
    while done < n:
        step, nadd = _kernels.richardson_3d_steps(n - done, h, add_i, add_j,
                                                  pos, nadd, gen)
        done += step
        if done < n:
            g *= 2
            grown = np.zeros((g, g), dtype=np.int64)
            grown[: h.shape[0], : h.shape[1]] = h
            h = grown
            add_i, add_j, pos, nadd = _addable_state(h)
    return h
