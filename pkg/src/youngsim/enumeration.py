"""Exhaustive computations over all partitions of n.

The exact Plancherel expectation of c and the max-dimension search both
scan every partition of n.  The scan is split into independent blocks by
the value of the leading part; blocks run on a thread pool (the kernels
release the GIL) and are reduced in a fixed order, so results are
bit-identical for any thread count.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .diagrams import (Partition, addable_corners, dim_exact, hook_lengths,
                       log_dim, normalized_c)
from .numerics import ln_factorial, ln_factorial_table, ln_table

DEFAULT_EXPECTATION_CAP = 70
DEFAULT_MAXDIM_CAP = 75

PROGRESS_EVERY = 10 ** 6


class CapExceeded(RuntimeError):
    """Raised instead of silently starting a multi-hour enumeration."""


@dataclass(frozen=True)
class ExactExpectation:
    n: int
    c_n: float
    partitions_count: int
    weight_sum: float


@dataclass(frozen=True)
class MaxDimResult:
    n: int
    best_shape: Partition
    log_dim: float
    c_bar: float
    diagrams_scanned: int
    restricted: bool


def partition_count(n: int) -> int:
    """p(n) by the Euler pentagonal-number recurrence (exact integers)."""
    if n < 0:
        raise ValueError("n must be >= 0")
    p = [1] + [0] * n
    for m in range(1, n + 1):
        total = 0
        k = 1
        while True:
            g = k * (3 * k - 1) // 2
            if g > m:
                break
            sign = 1 if k % 2 else -1
            total += sign * p[m - g]
            g = k * (3 * k + 1) // 2
            if g <= m:
                total += sign * p[m - g]
            k += 1
        p[m] = total
    return p[n]


def partitions_iter(n: int):
    """Every partition of n exactly once, reverse-lexicographic order.

    The successor is computed in place: decrement the rightmost part
    above 1, then redistribute the tail greedily under the new cap.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    if n == 0:
        yield Partition()
        return
    rows = [n]
    while True:
        yield Partition(rows)
        i = len(rows) - 1
        while i >= 0 and rows[i] == 1:
            i -= 1
        if i < 0:
            return
        v = rows[i] - 1
        rem = rows[i] + (len(rows) - 1 - i) - v
        del rows[i:]
        rows.append(v)
        while rem > 0:
            t = min(v, rem)
            rows.append(t)
            rem -= t


def _distinct_odd_parts(n: int, max_odd: int):
    # strictly decreasing odd parts summing to n, largest first
    if n == 0:
        yield []
        return
    o = min(max_odd, n)
    if o % 2 == 0:
        o -= 1
    while o >= 1:
        for rest in _distinct_odd_parts(n - o, o - 2):
            yield [o] + rest
        o -= 2


def self_conjugate_iter(n: int):
    """Self-conjugate partitions of n, one per set of distinct odd parts.

    Odd part o_d folds into the d-th principal hook: the diagonal cell
    (d, d) plus an arm and a leg of (o_d - 1)/2 cells each.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    for odds in _distinct_odd_parts(n, n):
        k = len(odds)
        if k == 0:
            yield Partition()
            continue
        arms = [(o - 1) // 2 for o in odds]
        rows = [d + 1 + arms[d] for d in range(k)]
        for i in range(k, 1 + arms[0]):
            cnt = 0
            for d in range(k):
                if d + arms[d] >= i:
                    cnt += 1
                else:
                    break
            rows.append(cnt)
        yield Partition(rows)


def _require_cap(n: int, cap, what: str):
    if cap is not None and n > cap:
        est = float(partition_count(n))
        raise CapExceeded(
            f"{what} at n={n} is over the cap of {cap}: about {est:.3g} "
            f"partitions (~{est * n:.2g} cell visits); "
            f"override the cap explicitly to run anyway")


def _run_blocks(n, kernel_call, threads, progress):
    """Run kernel_call(f) for f = n..1; collect results in that order."""
    fs = list(range(n, 0, -1))
    if threads <= 1:
        futures = [(f, None) for f in fs]
        results = []
        scanned = 0
        mark = PROGRESS_EVERY
        for f in fs:
            res = kernel_call(f)
            results.append(res)
            scanned += res[0]
            if progress is not None and scanned >= mark:
                progress(scanned)
                mark = (scanned // PROGRESS_EVERY + 1) * PROGRESS_EVERY
        return results
    with ThreadPoolExecutor(max_workers=threads) as pool:
        futures = [pool.submit(kernel_call, f) for f in fs]
        results = []
        scanned = 0
        mark = PROGRESS_EVERY
        for fut in futures:
            res = fut.result()
            results.append(res)
            scanned += res[0]
            if progress is not None and scanned >= mark:
                progress(scanned)
                mark = (scanned // PROGRESS_EVERY + 1) * PROGRESS_EVERY
    return results


def exact_expected_c(n: int, cap: int | None = DEFAULT_EXPECTATION_CAP,
                     threads: int = 1, progress=None) -> ExactExpectation:
    """Exact Plancherel expectation of normalized c over all partitions of n.

    Per diagram the weight is dim^2/n! and the contribution weight * c,
    accumulated with compensated summation; weight_sum must come out as
    1 up to roundoff and is reported as the consistency check.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    _require_cap(n, cap, "exact expectation")
    lnfact = ln_factorial_table(n)
    lntab = ln_table(n)

    def call(f):
        return _kernels.expectation_scan_block(n, f, lnfact, lntab)

    results = _run_blocks(n, call, threads, progress)
    count = sum(r[0] for r in results)
    weight_parts = []
    c_parts = []
    for _, ws, wc, cs, cc in results:
        weight_parts.append(ws)
        weight_parts.append(wc)
        c_parts.append(cs)
        c_parts.append(cc)
    return ExactExpectation(n=n, c_n=math.fsum(c_parts),
                            partitions_count=count,
                            weight_sum=math.fsum(weight_parts))


def max_dim_exact(n: int, cap: int | None = DEFAULT_MAXDIM_CAP,
                  threads: int = 1, progress=None) -> MaxDimResult:
    """Scan all partitions of n for the maximum dimension.

    Ties (equal hook-log sums) keep the reverse-lexicographically first
    shape, which is the first one the scan meets.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    _require_cap(n, cap, "max-dimension scan")
    lnfact = ln_factorial_table(n)
    lntab = ln_table(n)
    buffers = {f: np.zeros(n + 1, dtype=np.int64) for f in range(n, 0, -1)}

    def call(f):
        return _kernels.maxdim_scan_block(n, f, lnfact, lntab, buffers[f])

    results = _run_blocks(n, call, threads, progress)
    count = 0
    best_s = math.inf
    best_rows = None
    for f, (cnt, s, k) in zip(range(n, 0, -1), results):
        count += cnt
        if s < best_s:
            best_s = s
            best_rows = buffers[f][:k].tolist()
    shape = Partition(best_rows)
    return MaxDimResult(n=n, best_shape=shape, log_dim=log_dim(shape),
                        c_bar=normalized_c(shape), diagrams_scanned=count,
                        restricted=False)


def max_dim_restricted(n: int) -> MaxDimResult:
    """Best dimension over the symmetric family: self-conjugate shapes of
    size n plus every one-cell extension of a self-conjugate shape of
    size n-1, deduplicated.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    family = set()
    for p in self_conjugate_iter(n):
        family.add(p.rows)
    for q in self_conjugate_iter(n - 1):
        rows = list(q.rows)
        for (i, _) in addable_corners(q):
            if i == len(rows):
                family.add(tuple(rows) + (1,))
            else:
                rows[i] += 1
                family.add(tuple(rows))
                rows[i] -= 1
    best_rows = None
    best_s = math.inf
    lntab = ln_table(max(n, 1))
    for rows in sorted(family, reverse=True):  # reverse-lex scan order
        p = Partition(rows)
        s = math.fsum(lntab[h] for h in hook_lengths(p))
        if s < best_s:
            best_s = s
            best_rows = rows
    shape = Partition(best_rows)
    return MaxDimResult(n=n, best_shape=shape, log_dim=log_dim(shape),
                        c_bar=normalized_c(shape),
                        diagrams_scanned=len(family), restricted=True)


def mckay_ratio(n: int, cap: int | None = DEFAULT_MAXDIM_CAP,
                threads: int = 1) -> float:
    """max dim / sqrt(n!), to compare against 1/n."""
    r = max_dim_exact(n, cap=cap, threads=threads)
    return math.exp(r.log_dim - 0.5 * ln_factorial(n))


def verify_burnside(n: int) -> bool:
    """True iff sum of dim^2 over all partitions of n equals n! exactly.

    Big-integer arithmetic throughout; meant for n up to ~20.
    """
    total = sum(dim_exact(p) ** 2 for p in partitions_iter(n))
    return total == math.factorial(n)
