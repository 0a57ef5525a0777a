"""Shared numeric utilities: log-factorial tables, streaming stats, RNG streams.

Log-factorials are built by our own summation of ln k rather than lgamma,
so digits do not depend on the platform libm.  Random streams are
counter-based (numpy Philox) keyed by (seed, stream_id); a Monte-Carlo
run derives one stream per sample index, which makes every result
independent of worker count and scheduling.
"""

from __future__ import annotations

import math

import numpy as np

_MASK64 = (1 << 64) - 1

# grow-only caches, rebuilt from scratch when a larger n shows up
_ln_cache = np.zeros(1)
_lnfact_cache = np.zeros(1)
_lnfact_exact: dict[int, float] = {0: 0.0, 1: 0.0}


def ln_table(n_max: int) -> np.ndarray:
    """Array t with t[k] = ln k for 1 <= k <= n_max (t[0] = 0, unused)."""
    global _ln_cache
    if len(_ln_cache) <= n_max:
        size = max(n_max + 1, 2 * len(_ln_cache))
        t = np.zeros(size)
        t[1:] = np.log(np.arange(1, size, dtype=np.float64))
        t.setflags(write=False)
        _ln_cache = t
    return _ln_cache[: n_max + 1]


def ln_factorial_table(n_max: int) -> np.ndarray:
    """Array t with t[k] = ln k!, accumulated with Kahan compensation."""
    global _lnfact_cache
    if len(_lnfact_cache) <= n_max:
        size = max(n_max + 1, 2 * len(_lnfact_cache))
        logs = ln_table(size - 1)
        t = np.zeros(size)
        total = 0.0
        comp = 0.0
        for k in range(1, size):
            y = logs[k] - comp
            s = total + y
            comp = (s - total) - y
            total = s
            t[k] = total
        t.setflags(write=False)
        _lnfact_cache = t
    return _lnfact_cache[: n_max + 1]


def ln_factorial(n: int) -> float:
    """ln n! as an exactly-rounded (fsum) sum of logs; cached per n.

    fsum is order-independent, so expressions like
    sum(ln hooks) - ln n! cancel exactly when the multisets agree
    (single-row/column shapes).
    """
    v = _lnfact_exact.get(n)
    if v is None:
        t = ln_table(n)
        v = math.fsum(t[1 : n + 1].tolist())
        _lnfact_exact[n] = v
    return v


def log_sum_exp(xs) -> float:
    """m + ln sum exp(x - m) with m = max(xs); exact for singletons."""
    a = np.asarray(xs, dtype=np.float64)
    if a.size == 0:
        raise ValueError("log_sum_exp of an empty sequence")
    m = float(np.max(a))
    if a.size == 1 or not math.isfinite(m):
        return m
    return m + math.log(float(np.sum(np.exp(a - m))))


class SampleStats:
    """Streaming count/mean/M2 accumulator (Welford), mergeable.

    merge() is the pairwise-combination formula, so parallel reductions
    give the same mean/variance as a serial pass up to roundoff.
    """

    __slots__ = ("count", "mean", "m2")

    def __init__(self):
        self.count = 0
        self.mean = 0.0
        self.m2 = 0.0

    def push(self, x: float) -> None:
        x = float(x)
        if not math.isfinite(x):
            raise ValueError(f"non-finite sample rejected: {x!r}")
        self.count += 1
        delta = x - self.mean
        self.mean += delta / self.count
        self.m2 += delta * (x - self.mean)

    def merge(self, other: "SampleStats") -> None:
        if other.count == 0:
            return
        if self.count == 0:
            self.count = other.count
            self.mean = other.mean
            self.m2 = other.m2
            return
        na, nb = self.count, other.count
        n = na + nb
        delta = other.mean - self.mean
        self.mean += delta * nb / n
        self.m2 += other.m2 + delta * delta * na * nb / n
        self.count = n

    @property
    def variance(self) -> float:
        if self.count < 2:
            return float("nan")
        return self.m2 / (self.count - 1)

    @property
    def std(self) -> float:
        v = self.variance
        return math.sqrt(v) if v == v else v

    def __repr__(self):
        return f"SampleStats(count={self.count}, mean={self.mean}, m2={self.m2})"


class RngStream:
    """One deterministic substream: Philox keyed by (seed, stream_id).

    Identical (seed, stream_id) gives an identical draw sequence on every
    platform.  Streams with different ids are independent by construction
    of the counter-based generator.  Single-owner: never share one stream
    between threads.
    """

    __slots__ = ("seed", "stream_id", "gen")

    def __init__(self, seed: int, stream_id: int = 0):
        self.seed = int(seed)
        self.stream_id = int(stream_id)
        key = np.array([self.seed & _MASK64, self.stream_id & _MASK64],
                       dtype=np.uint64)
        self.gen = np.random.Generator(np.random.Philox(key=key))

    def __repr__(self):
        return f"RngStream(seed={self.seed}, stream_id={self.stream_id})"


def rng_derive(seed: int, stream_id: int) -> RngStream:
    """Stream number stream_id of the family seeded by seed."""
    return RngStream(seed, stream_id)
