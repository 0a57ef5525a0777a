#!/usr/bin/env python3
"""Average rotated profile of 2D Richardson samples vs the algebraic curve.

Runs the CLI once to write the shape CSVs (profile, cartesian boundary,
square-rooted boundary), then reloads them and reports the enclosed area,
the sup/rms residual against sqrt(x) + sqrt(y) = h over the central window,
and the least-squares line through the square-rooted boundary.
"""
import argparse
from pathlib import Path

import numpy as np

from youngsim.cli import main as youngsim
from youngsim.shapes import (
    Grid1D,
    Profile2D,
    enclosed_area,
    line_fit,
    rost_reference,
    shape_residual,
)


def profile_from_csv(path):
    """Rebuild a Profile2D from the (u, mean_f, std_f) table the CLI wrote."""
    rows = np.loadtxt(path, delimiter=",", skiprows=1)
    us, f = rows[:, 0], rows[:, 1]
    step = (us[-1] - us[0]) / (len(us) - 1)
    i_lo = round(float(us[0]) / step)
    return Profile2D(Grid1D(i_lo, i_lo + len(us) - 1, step), f)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=100_000)
    ap.add_argument("--samples", type=int, default=200)
    ap.add_argument("--threads", type=int, default=8)
    ap.add_argument("--out-dir", type=Path, default=Path("results"))
    args = ap.parse_args()
    args.out_dir.mkdir(parents=True, exist_ok=True)
    out = args.out_dir / "shape2d.csv"

    rc = youngsim(["shape", "--n", str(args.n), "--samples", str(args.samples),
                   "--dim", "2", "--measure", "richardson", "--scaled",
                   "--threads", str(args.threads), "--out", str(out)])
    if rc:
        raise SystemExit(rc)

    prof = profile_from_csv(out)
    sup, rms = shape_residual(prof, rost_reference())
    sq = np.loadtxt(out.with_name(out.stem + "_sqrt" + out.suffix),
                    delimiter=",", skiprows=1)
    slope, intercept, r2 = line_fit(sq)
    print(f"area {enclosed_area(prof):.4f}")
    print(f"residual sup {sup:.4f}  rms {rms:.4f}  (central 90% window)")
    print(f"sqrt-line slope {slope:.4f}  intercept {intercept:.4f}  r2 {r2:.6f}")


if __name__ == "__main__":
    main()
