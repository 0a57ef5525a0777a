"""Rotated-coordinate profiles of 2D and 3D diagrams and the comparison
against the algebraic limit curve of uniform-corner growth.

A 2D profile is the rotated boundary height v = phi(u) sampled on a
uniform u-grid: u runs along (1,-1)/sqrt2, v along (1,1)/sqrt2, and phi
is the distance from the u-axis to the staircase (zeroed outside the
support).  A 3D profile is the analogous exit distance of diagonal rays
from the plane orthogonal to (1,1,1).  Grids always contain 0 exactly,
so the main-diagonal value is a grid sample, never interpolated.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
import scipy.stats

from . import _kernels
from .diagrams import Partition, PlanePartition, durfee_side
from .numerics import SampleStats, rng_derive
from .sampling import richardson_grow_2d, richardson_grow_3d, sample_plancherel

SQRT2 = math.sqrt(2.0)
SQRT3 = math.sqrt(3.0)

#: Height parameter for which the area under sqrt(x) + sqrt(y) = h is 1.
ROST_H = 6.0 ** 0.25


@dataclass(frozen=True)
class Grid1D:
    """Points k * step for k in i_lo..i_hi; must straddle 0."""

    i_lo: int
    i_hi: int
    step: float

    def __post_init__(self):
        if self.step <= 0.0:
            raise ValueError("step must be > 0")
        if self.i_lo > 0 or self.i_hi < 0:
            raise ValueError("grid must contain 0")

    @property
    def size(self) -> int:
        return self.i_hi - self.i_lo + 1

    def points(self) -> np.ndarray:
        return np.arange(self.i_lo, self.i_hi + 1, dtype=np.float64) * self.step

    @classmethod
    def symmetric(cls, extent: float, step: float) -> "Grid1D":
        m = int(math.ceil(extent / step))
        return cls(-m, m, step)


@dataclass(frozen=True, eq=False)
class Profile2D:
    grid: Grid1D
    f: np.ndarray

    @property
    def center_value(self) -> float:
        """f at u = 0 (the main-diagonal sample)."""
        return float(self.f[-self.grid.i_lo])


@dataclass(frozen=True, eq=False)
class Profile3D:
    grid_a: Grid1D
    grid_b: Grid1D
    f: np.ndarray

    @property
    def center_value(self) -> float:
        return float(self.f[-self.grid_a.i_lo, -self.grid_b.i_lo])


def boundary_vertices(p: Partition):
    """Corner points (u, v) of the rotated staircase, increasing in u.

    Endpoints sit on the wedge v = |u|; a vertex is inserted where the
    boundary crosses u = 0 (the corner of the Durfee square), so the
    diagonal value sqrt2 * durfee_side is exact.
    """
    if p.n == 0:
        return np.empty(0), np.empty(0)
    runs = []
    for r in p.rows:
        if runs and runs[-1][0] == r:
            runs[-1][1] += 1
        else:
            runs.append([r, 1])
    pts = [(float(runs[0][0]), 0.0)]
    y = 0
    for t, (length, count) in enumerate(runs):
        y += count
        pts.append((float(length), float(y)))
        nxt = float(runs[t + 1][0]) if t + 1 < len(runs) else 0.0
        pts.append((nxt, float(y)))
    us = [(x - y) / SQRT2 for (x, y) in pts]
    vs = [(x + y) / SQRT2 for (x, y) in pts]
    if not any(u == 0.0 for u in us):
        d = SQRT2 * durfee_side(p)
        at = next(t for t in range(len(us)) if us[t] < 0.0)
        us.insert(at, 0.0)
        vs.insert(at, d)
    return np.array(us[::-1]), np.array(vs[::-1])


def profile_2d(p: Partition, grid_step: float = 0.5,
               grid: Grid1D | None = None) -> Profile2D:
    """Sample the rotated boundary of p on a uniform u-grid.

    With no explicit grid, one is built to cover the support of p; a
    shared grid (for averaging over samples) may clip rare outliers,
    which only zeroes values past its ends.
    """
    if grid is None:
        extent = max(p.rows[0] if p.rows else 0, len(p.rows), 1) / SQRT2
        grid = Grid1D.symmetric(extent + grid_step, grid_step)
    u = grid.points()
    f = np.zeros(grid.size)
    if p.n > 0:
        us, vs = boundary_vertices(p)
        f = np.interp(u, us, vs)
        f[(u < us[0]) | (u > us[-1])] = 0.0
    return Profile2D(grid=grid, f=f)


def enclosed_area(profile: Profile2D) -> float:
    """Trapezoid area between the profile and the wedge v = |u|.

    Recovers the cell count up to O(grid_step) discretization error.
    """
    u = profile.grid.points()
    g = np.clip(profile.f - np.abs(u), 0.0, None)
    return float(np.trapezoid(g, dx=profile.grid.step))


def default_grid_2d(n: int, grid_step: float = 0.5) -> Grid1D:
    """Shared u-grid wide enough for all but vanishingly rare samples."""
    extent_cells = min(n, int(math.ceil(2.9 * math.sqrt(n))) + 10)
    return Grid1D.symmetric(extent_cells / SQRT2, grid_step)


def default_grids_3d(n: int, grid_step: float = 1.0):
    m = 6.0 * round(max(n, 1) ** (1.0 / 3.0)) + 8.0
    ga = Grid1D.symmetric(m / SQRT2 + 2.0 * grid_step, grid_step)
    gb = Grid1D.symmetric(2.0 * m / math.sqrt(6.0) + 2.0 * grid_step, grid_step)
    return ga, gb


def profile_3d(p, grid_step: float = 1.0, grids=None) -> Profile3D:
    """Exit distance of diagonal rays for a plane partition.

    p may be a PlanePartition or a raw height field.  Traversal is exact
    integer voxel stepping; a re-entry after exit would break the
    descending-ideal assumption and raises.
    """
    h = p.heights if isinstance(p, PlanePartition) else np.ascontiguousarray(
        p, dtype=np.int64)
    if grids is None:
        m = float(max(int(h.max(initial=0)), h.shape[0], h.shape[1]))
        ga = Grid1D.symmetric(m / SQRT2 + grid_step, grid_step)
        gb = Grid1D.symmetric(2.0 * m / math.sqrt(6.0) + grid_step, grid_step)
    else:
        ga, gb = grids
        if ga.step != gb.step:
            raise ValueError("3D profile grids must share a step")
    out = np.empty((ga.size, gb.size))
    violations = _kernels.profile3d_rays(h, ga.i_lo * ga.step,
                                         gb.i_lo * gb.step, ga.step,
                                         ga.size, gb.size, out)
    if violations:
        raise RuntimeError(
            f"{violations} rays re-entered the solid after exit")
    return Profile3D(grid_a=ga, grid_b=gb, f=out)


class ShapeAccumulator:
    """Pointwise sum / sum of squares / count over a stream of profiles.

    All profiles must live on the same grid; merging is associative, and
    accumulating in a fixed sample order keeps float results identical
    across thread counts.
    """

    __slots__ = ("grid", "total", "total_sq", "count")

    def __init__(self, grid):
        self.grid = grid
        self.total = None
        self.total_sq = None
        self.count = 0

    @staticmethod
    def _grid_of(profile):
        if isinstance(profile, Profile2D):
            return profile.grid
        return (profile.grid_a, profile.grid_b)

    def add(self, profile) -> None:
        if self._grid_of(profile) != self.grid:
            raise ValueError("profile grid does not match accumulator grid")
        f = profile.f
        if self.total is None:
            self.total = f.astype(np.float64).copy()
            self.total_sq = (f * f).astype(np.float64)
        else:
            self.total += f
            self.total_sq += f * f
        self.count += 1

    def merge(self, other: "ShapeAccumulator") -> None:
        if other.grid != self.grid:
            raise ValueError("accumulator grids do not match")
        if other.count == 0:
            return
        if self.total is None:
            self.total = other.total.copy()
            self.total_sq = other.total_sq.copy()
            self.count = other.count
        else:
            self.total += other.total
            self.total_sq += other.total_sq
            self.count += other.count

    def mean(self) -> np.ndarray:
        if self.count == 0:
            raise ValueError("no profiles accumulated")
        return self.total / self.count

    def std(self) -> np.ndarray:
        """Pointwise sample standard deviation (ddof=1)."""
        if self.count < 2:
            raise ValueError("need at least two profiles for a stddev")
        var = (self.total_sq - self.total * self.total / self.count)
        var = np.clip(var / (self.count - 1), 0.0, None)
        return np.sqrt(var)

    def mean_profile(self):
        if isinstance(self.grid, Grid1D):
            return Profile2D(grid=self.grid, f=self.mean())
        ga, gb = self.grid
        return Profile3D(grid_a=ga, grid_b=gb, f=self.mean())


def shape_accumulate(profiles) -> ShapeAccumulator:
    acc = None
    for prof in profiles:
        if acc is None:
            acc = ShapeAccumulator(ShapeAccumulator._grid_of(prof))
        acc.add(prof)
    if acc is None:
        raise ValueError("empty profile stream")
    return acc


def scale_profile(profile, factor: float):
    """Similarity-scale a profile: coordinates and values by factor."""
    if factor <= 0.0:
        raise ValueError("factor must be > 0")

    def scale_grid(g):
        return Grid1D(g.i_lo, g.i_hi, g.step * factor)

    if isinstance(profile, Profile2D):
        return Profile2D(grid=scale_grid(profile.grid), f=profile.f * factor)
    return Profile3D(grid_a=scale_grid(profile.grid_a),
                     grid_b=scale_grid(profile.grid_b),
                     f=profile.f * factor)


# ---------------------------------------------------------------------------
# the limit curve sqrt(x) + sqrt(y) = h

@dataclass(frozen=True)
class RostCurve:
    """The curve sqrt(x) + sqrt(y) = h, area h**4/6 (1/6 of its square)."""

    h: float

    def y_of_x(self, x):
        x = np.asarray(x, dtype=np.float64)
        if np.any(x < 0.0) or np.any(x > self.h * self.h):
            raise ValueError("x outside [0, h^2]")
        return (self.h - np.sqrt(x)) ** 2

    def profile_of_u(self, u):
        """Rotated boundary height v(u), |u| on and past the endpoints."""
        u = np.asarray(u, dtype=np.float64)
        hh = self.h * self.h
        t = np.clip((SQRT2 * u + hh) / (2.0 * self.h), 0.0, self.h)
        v = (t * t + (self.h - t) ** 2) / SQRT2
        return np.where(np.abs(u) <= hh / SQRT2, v, np.abs(u))

    def area(self) -> float:
        return self.h ** 4 / 6.0

    def support(self):
        hh = self.h * self.h
        return (-hh / SQRT2, hh / SQRT2)


def rost_reference(h: float = ROST_H) -> RostCurve:
    if h <= 0.0:
        raise ValueError("h must be > 0")
    return RostCurve(h=h)


def rost_profile(grid: Grid1D, h: float = ROST_H) -> Profile2D:
    """The limit curve sampled as a Profile2D (0 outside its support)."""
    curve = rost_reference(h)
    u = grid.points()
    f = curve.profile_of_u(u)
    lo, hi = curve.support()
    f = np.where((u < lo) | (u > hi), 0.0, f)
    return Profile2D(grid=grid, f=f)


def shape_residual(mean_profile: Profile2D, reference,
                   window: float = 0.90):
    """Sup and RMS deviation from the reference over the central part of
    the common support.

    The window keeps the middle `window` fraction; the ragged tails of a
    finite-n average are excluded on both sides.
    """
    if not 0.0 < window <= 1.0:
        raise ValueError("window must be in (0, 1]")
    u = mean_profile.grid.points()
    f = mean_profile.f
    pos = np.nonzero(f > 0.0)[0]
    if pos.size == 0:
        raise ValueError("mean profile has empty support")
    lo_p, hi_p = u[pos[0]], u[pos[-1]]
    if isinstance(reference, RostCurve):
        lo_r, hi_r = reference.support()
    else:
        rpos = np.nonzero(reference.f > 0.0)[0]
        if rpos.size == 0:
            raise ValueError("reference has empty support")
        ru = reference.grid.points()
        lo_r, hi_r = ru[rpos[0]], ru[rpos[-1]]
    lo, hi = max(lo_p, lo_r), min(hi_p, hi_r)
    if lo >= hi:
        raise ValueError("supports are disjoint")
    pad = 0.5 * (1.0 - window) * (hi - lo)
    sel = (u >= lo + pad) & (u <= hi - pad)
    if not np.any(sel):
        raise ValueError("residual window contains no grid points")
    if isinstance(reference, RostCurve):
        ref_vals = reference.profile_of_u(u[sel])
    else:
        ref_vals = np.interp(u[sel], reference.grid.points(), reference.f)
    res = np.abs(f[sel] - ref_vals)
    return float(res.max()), float(math.sqrt(np.mean(res * res)))


def sqrt_coords(points):
    """Componentwise square roots; straightens the limit curve.

    Takes (N, 2) boundary points or (N, 3) surface points.
    """
    a = np.asarray(points, dtype=np.float64)
    if a.ndim != 2 or a.shape[1] not in (2, 3):
        raise ValueError("expected an (N, 2) or (N, 3) array of points")
    if np.any(a < 0.0):
        raise ValueError("coordinates must be non-negative")
    return np.sqrt(a)


def cartesian_boundary(profile: Profile2D) -> np.ndarray:
    """Boundary points (x, y) back in unrotated coordinates.

    Only points on or above the wedge v = |u| are geometric boundary
    points; averaged profiles dip below the wedge in their ragged edge
    zone, and those samples are dropped rather than clipped.
    """
    u = profile.grid.points()
    keep = (profile.f > 0.0) & (profile.f >= np.abs(u))
    v = profile.f[keep]
    u = u[keep]
    return np.column_stack([(v + u) / SQRT2, (v - u) / SQRT2])


def line_fit(points):
    """Least-squares line through (N, 2) points: (slope, intercept, r^2)."""
    a = np.asarray(points, dtype=np.float64)
    fit = scipy.stats.linregress(a[:, 0], a[:, 1])
    return float(fit.slope), float(fit.intercept), float(fit.rvalue ** 2)


# ---------------------------------------------------------------------------
# main-diagonal segment statistics

@dataclass(frozen=True)
class DiagonalStats:
    n: int
    sample_size: int
    d_n: float  # stddev of the diagonal segment, in cell diagonals
    d_n_normalized: float  # d_n / sqrt(n)
    mean_segment: float  # mean segment, same unit


def diagonal_segment(p: Partition) -> float:
    """Length of the diagonal ray from the origin to the boundary.

    The ray x = y leaves the cell region at the far corner of the Durfee
    square, so the length is sqrt2 times its side.
    """
    return SQRT2 * durfee_side(p)


def _durfee_from_runs(lens, counts, m) -> int:
    cum = 0
    best = 0
    for t in range(m):
        cum += int(counts[t])
        side = min(int(lens[t]), cum)
        if side > best:
            best = side
    return best


def diagonal_deviation(n: int, sample_size: int, rng_seed: int,
                       stream_base: int = 0, threads: int = 1,
                       progress=None) -> DiagonalStats:
    """Stddev of the diagonal segment over uniform-corner growth samples.

    The segment is counted in cell diagonals -- one unit per Durfee row,
    the lattice step along x = y -- so growing the square by one cell
    moves it by exactly 1.  Multiply by sqrt2 for the Euclidean length
    that diagonal_segment and the profile center report.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if sample_size < 2:
        raise ValueError("sample_size must be >= 2")
    cap = math.isqrt(2 * n) + 3

    def one(i):
        gen = rng_derive(rng_seed, stream_base + i).gen
        lens = np.zeros(cap, dtype=np.int64)
        counts = np.zeros(cap, dtype=np.int64)
        m = _kernels.richardson_2d_steps(n, lens, counts, 0, gen)
        return float(_durfee_from_runs(lens, counts, m))

    stats = SampleStats()
    if threads <= 1:
        for i in range(sample_size):
            stats.push(one(i))
            if progress is not None and (i + 1) % 1000 == 0:
                progress(i + 1)
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            for i, val in enumerate(pool.map(one, range(sample_size),
                                             chunksize=8)):
                stats.push(val)
                if progress is not None and (i + 1) % 1000 == 0:
                    progress(i + 1)
    d = stats.std
    return DiagonalStats(n=n, sample_size=sample_size, d_n=d,
                         d_n_normalized=d / math.sqrt(n),
                         mean_segment=stats.mean)


# ---------------------------------------------------------------------------
# sample -> mean-shape drivers

def mean_shape_2d(n: int, samples: int, seed: int,
                  measure: str = "richardson", grid: Grid1D | None = None,
                  grid_step: float = 0.5, stream_base: int = 0,
                  threads: int = 1, progress=None) -> ShapeAccumulator:
    """Average 2D profile over independent samples (one stream each)."""
    if samples < 1:
        raise ValueError("samples must be >= 1")
    if measure == "richardson":
        draw = richardson_grow_2d
    elif measure == "plancherel":
        draw = sample_plancherel
    else:
        raise ValueError(f"unknown measure: {measure!r}")
    if grid is None:
        grid = default_grid_2d(n, grid_step)

    def one(i):
        gen = rng_derive(seed, stream_base + i).gen
        return profile_2d(draw(n, gen), grid=grid)

    return _accumulate(one, samples, grid, threads, progress)


def mean_shape_3d(n: int, samples: int, seed: int, grids=None,
                  grid_step: float = 1.0, stream_base: int = 0,
                  threads: int = 1, progress=None) -> ShapeAccumulator:
    """Average 3D profile over Richardson plane-partition samples."""
    if samples < 1:
        raise ValueError("samples must be >= 1")
    if grids is None:
        grids = default_grids_3d(n, grid_step)

    def one(i):
        gen = rng_derive(seed, stream_base + i).gen
        h = richardson_grow_3d(n, gen)
        return profile_3d(h, grids=grids)

    return _accumulate(one, samples, grids, threads, progress)


def _accumulate(one, samples, grid, threads, progress):
    acc = ShapeAccumulator(grid)
    if threads <= 1:
        for i in range(samples):
            acc.add(one(i))
            if progress is not None and (i + 1) % 100 == 0:
                progress(i + 1)
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            for i, prof in enumerate(pool.map(one, range(samples),
                                              chunksize=4)):
                acc.add(prof)
                if progress is not None and (i + 1) % 100 == 0:
                    progress(i + 1)
    return acc


def surface_points(profile: Profile3D) -> np.ndarray:
    """Surface samples back in (x, y, z) coordinates, support only.

    The grid point (a, b) with exit distance f maps to
    a e1 + b e2 + (f/sqrt3)(1,1,1); averaged edge artifacts that land
    outside the positive octant are dropped.
    """
    ua = profile.grid_a.points()
    ub = profile.grid_b.points()
    aa, bb = np.meshgrid(ua, ub, indexing="ij")
    keep = profile.f > 0.0
    a = aa[keep]
    b = bb[keep]
    t = profile.f[keep] / SQRT3
    inv6 = 1.0 / math.sqrt(6.0)
    x = a / SQRT2 + b * inv6 + t
    y = -a / SQRT2 + b * inv6 + t
    z = -2.0 * b * inv6 + t
    pts = np.column_stack([x, y, z])
    return pts[np.all(pts >= 0.0, axis=1)]


def h3_estimate(scaled_mean: Profile3D) -> float:
    """Corner constant of the conjectured 3D limit surface.

    Reads the scaled mean shape's main-diagonal sample f(0,0): the
    surface meets the diagonal at (s,s,s) with s*sqrt3 = f(0,0), and a
    surface sqrt x + sqrt y + sqrt z = h3 through that point has
    h3 = 3 * sqrt(s).
    """
    f0 = scaled_mean.center_value
    if f0 < 0.0:
        raise ValueError("negative center value")
    return 3.0 * math.sqrt(f0 / SQRT3)
