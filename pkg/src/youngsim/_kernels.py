"""Numba kernels for the hot loops.

Partition scans walk the reverse-lex successor in place, split into
independent blocks by the value of the leading part.  Growth kernels
consume a numpy Generator directly; numba draws the same bit stream as
pure numpy would, so seeds stay portable between the python and compiled
paths.  Everything is deterministic given its inputs; no fastmath, so
float results are reproducible across thread counts.
"""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True, nogil=True)
def expectation_scan_block(n, f, lnfact, lntab):
    """Accumulate Plancherel weight and weighted c over the block of
    partitions of n whose first part is exactly f.

    Returns (count, weight_sum, weight_comp, csum, csum_comp); the comp
    terms are the Kahan compensations, kept separate so the caller can
    fold all block results through fsum in a fixed order.
    """
    rows = np.empty(n + 1, dtype=np.int64)
    conj = np.empty(f + 1, dtype=np.int64)
    rows[0] = f
    m = n - f
    k = 1
    while m > 0:
        t = min(f, m)
        rows[k] = t
        k += 1
        m -= t
    count = 0
    ws = 0.0
    wc = 0.0
    cs = 0.0
    cc = 0.0
    lf = lnfact[n]
    half_lf = 0.5 * lf
    two_isqrt = 2.0 / np.sqrt(np.float64(n))
    while True:
        count += 1
        for j in range(rows[0]):
            conj[j] = 0
        for i in range(k):
            for j in range(rows[i]):
                conj[j] += 1
        s = 0.0
        for i in range(k):
            base = rows[i] - i - 1
            for j in range(rows[i]):
                s += lntab[base - j + conj[j]]
        logdim = lf - s
        w = np.exp(2.0 * logdim - lf)
        cval = two_isqrt * (s - half_lf)
        y = w - wc
        t1 = ws + y
        wc = (t1 - ws) - y
        ws = t1
        y = w * cval - cc
        t2 = cs + y
        cc = (t2 - cs) - y
        cs = t2
        # reverse-lex successor with the first part pinned at f
        i = k - 1
        while i >= 1 and rows[i] == 1:
            i -= 1
        if i < 1:
            break
        v = rows[i] - 1
        rem = rows[i] + (k - 1 - i) - v
        rows[i] = v
        k = i + 1
        while rem > 0:
            t3 = min(v, rem)
            rows[k] = t3
            k += 1
            rem -= t3
    return count, ws, wc, cs, cc


@njit(cache=True, nogil=True)
def maxdim_scan_block(n, f, lnfact, lntab, best_rows):
    """Minimum hook-log sum (= maximum dim) over the first-part-f block.

    Strict improvement only, so the first shape seen in reverse-lex order
    wins exact ties.  The best shape is copied into best_rows; returns
    (count, best_s, best_k).
    """
    rows = np.empty(n + 1, dtype=np.int64)
    conj = np.empty(f + 1, dtype=np.int64)
    rows[0] = f
    m = n - f
    k = 1
    while m > 0:
        t = min(f, m)
        rows[k] = t
        k += 1
        m -= t
    count = 0
    best_s = 1e300
    best_k = 0
    while True:
        count += 1
        for j in range(rows[0]):
            conj[j] = 0
        for i in range(k):
            for j in range(rows[i]):
                conj[j] += 1
        s = 0.0
        for i in range(k):
            base = rows[i] - i - 1
            for j in range(rows[i]):
                s += lntab[base - j + conj[j]]
        if s < best_s:
            best_s = s
            best_k = k
            for t in range(k):
                best_rows[t] = rows[t]
        i = k - 1
        while i >= 1 and rows[i] == 1:
            i -= 1
        if i < 1:
            break
        v = rows[i] - 1
        rem = rows[i] + (k - 1 - i) - v
        rows[i] = v
        k = i + 1
        while rem > 0:
            t3 = min(v, rem)
            rows[k] = t3
            k += 1
            rem -= t3
    return count, best_s, best_k


@njit(cache=True, nogil=True)
def hook_log_sum(rows, lntab):
    """Kahan-compensated sum of ln hook over all cells of a partition."""
    k = len(rows)
    if k == 0:
        return 0.0
    conj = np.zeros(rows[0], dtype=np.int64)
    for i in range(k):
        for j in range(rows[i]):
            conj[j] += 1
    s = 0.0
    comp = 0.0
    for i in range(k):
        base = rows[i] - i - 1
        for j in range(rows[i]):
            y = lntab[base - j + conj[j]] - comp
            t = s + y
            comp = (t - s) - y
            s = t
    return s


@njit(cache=True, nogil=True)
def richardson_2d_steps(steps, lens, counts, m, gen):
    """Advance a Richardson-growing partition by `steps` cells.

    State is run-length encoded: lens strictly decreasing, counts the
    number of rows per run, m runs in use.  Corner r < m extends the top
    row of run r; corner m opens a new row.  Returns the new m.
    """
    for _ in range(steps):
        r = gen.integers(0, m + 1)
        if r == m:
            if m > 0 and lens[m - 1] == 1:
                counts[m - 1] += 1
            else:
                lens[m] = 1
                counts[m] = 1
                m += 1
        else:
            grown = lens[r] + 1
            if r > 0 and lens[r - 1] == grown:
                counts[r - 1] += 1
                counts[r] -= 1
                if counts[r] == 0:
                    for t in range(r, m - 1):
                        lens[t] = lens[t + 1]
                        counts[t] = counts[t + 1]
                    m -= 1
            elif counts[r] == 1:
                lens[r] = grown
            else:
                counts[r] -= 1
                for t in range(m, r, -1):
                    lens[t] = lens[t - 1]
                    counts[t] = counts[t - 1]
                lens[r] = grown
                counts[r] = 1
                m += 1
    return m


@njit(cache=True, nogil=True, inline="always")
def _addable3(h, i, j):
    v = h[i, j]
    if i > 0 and h[i - 1, j] <= v:
        return False
    if j > 0 and h[i, j - 1] <= v:
        return False
    return True


@njit(cache=True, nogil=True)
def richardson_3d_steps(steps, h, add_i, add_j, pos, nadd, gen):
    """Advance a Richardson-growing plane partition by up to `steps` cells.

    h is the G x G height field; (add_i, add_j, pos, nadd) is an indexed
    set of currently addable cells (pos[i, j] = slot or -1).  Stops early
    when the support touches the grid edge so the caller can regrow the
    arrays; returns (steps_done, nadd).
    """
    G = h.shape[0]
    done = 0
    while done < steps:
        r = gen.integers(0, nadd)
        i = add_i[r]
        j = add_j[r]
        h[i, j] += 1
        done += 1
        if i >= G - 1 or j >= G - 1:
            return done, nadd
        if not _addable3(h, i, j):
            idx = pos[i, j]
            last = nadd - 1
            li = add_i[last]
            lj = add_j[last]
            add_i[idx] = li
            add_j[idx] = lj
            pos[li, lj] = idx
            pos[i, j] = -1
            nadd = last
        if _addable3(h, i + 1, j) and pos[i + 1, j] < 0:
            add_i[nadd] = i + 1
            add_j[nadd] = j
            pos[i + 1, j] = nadd
            nadd += 1
        if _addable3(h, i, j + 1) and pos[i, j + 1] < 0:
            add_i[nadd] = i
            add_j[nadd] = j + 1
            pos[i, j + 1] = nadd
            nadd += 1
    return done, nadd


@njit(cache=True, nogil=True)
def profile3d_rays(h, a0, b0, step, na, nb, out):
    """Exit distance of the diagonal ray through the voxel solid, per grid
    point: how far from the base plane the ray leaves the diagram (0 for
    rays that miss it entirely).

    The grid lives on the plane through the origin orthogonal to (1,1,1),
    spanned by e1 = (1,-1,0)/sqrt2 and e2 = (1,1,-2)/sqrt6.  Voxel
    crossings are stepped exactly: each crossing time is (face - origin),
    an integer minus the ray origin, so no epsilon accumulates.  Because
    the solid is a descending ideal and the direction increases every
    coordinate, membership past entry is a prefix interval; the walk
    re-checks a few voxels after exit and counts violations (returned,
    0 expected).
    """
    G1 = h.shape[0]
    G2 = h.shape[1]
    inv_s2 = 1.0 / np.sqrt(2.0)
    inv_s6 = 1.0 / np.sqrt(6.0)
    s3 = np.sqrt(3.0)
    violations = 0
    for ia in range(na):
        a = a0 + step * ia
        for ib in range(nb):
            b = b0 + step * ib
            x0 = a * inv_s2 + b * inv_s6
            y0 = -a * inv_s2 + b * inv_s6
            z0 = -2.0 * b * inv_s6
            t0 = 0.0
            if -x0 > t0:
                t0 = -x0
            if -y0 > t0:
                t0 = -y0
            if -z0 > t0:
                t0 = -z0
            xi = x0 + t0
            yi = y0 + t0
            zi = z0 + t0
            if xi < 0.0:
                xi = 0.0
            if yi < 0.0:
                yi = 0.0
            if zi < 0.0:
                zi = 0.0
            ix = int(np.floor(xi))
            iy = int(np.floor(yi))
            iz = int(np.floor(zi))
            tx = (ix + 1.0) - x0
            ty = (iy + 1.0) - y0
            tz = (iz + 1.0) - z0
            t_end = t0
            entered = False
            while ix < G1 and iy < G2:
                if iz >= h[ix, iy]:
                    break
                entered = True
                tmin = tx
                if ty < tmin:
                    tmin = ty
                if tz < tmin:
                    tmin = tz
                t_end = tmin
                if tx == tmin:
                    ix += 1
                    tx += 1.0
                if ty == tmin:
                    iy += 1
                    ty += 1.0
                if tz == tmin:
                    iz += 1
                    tz += 1.0
            out[ia, ib] = t_end * s3 if entered else 0.0
            # interval check: the ray must stay outside from here on
            for _ in range(3):
                if ix >= G1 or iy >= G2:
                    break
                if iz < h[ix, iy]:
                    violations += 1
                    break
                tmin = tx
                if ty < tmin:
                    tmin = ty
                if tz < tmin:
                    tmin = tz
                if tx == tmin:
                    ix += 1
                    tx += 1.0
                if ty == tmin:
                    iy += 1
                    ty += 1.0
                if tz == tmin:
                    iz += 1
                    tz += 1.0
    return violations
