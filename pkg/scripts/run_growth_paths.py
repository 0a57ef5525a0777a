#!/usr/bin/env python3
# c(k) along single growing diagrams, a few independent runs per measure.
# Plancherel paths settle near 1.8 quickly; uniform-corner (Richardson)
# paths keep climbing, since that measure favors far-from-typical shapes.
import argparse
from pathlib import Path

from youngsim.cli import main as youngsim

SEEDS = (1, 2, 3)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out-dir", type=Path, default=Path("results"))
    ap.add_argument("--n-plancherel", type=int, default=5_000)
    ap.add_argument("--n-richardson", type=int, default=1_000_000)
    args = ap.parse_args()
    args.out_dir.mkdir(parents=True, exist_ok=True)

    for measure, n_max in (("plancherel", args.n_plancherel),
                           ("richardson", args.n_richardson)):
        for seed in SEEDS:
            out = args.out_dir / f"growth_{measure}_s{seed}.csv"
            rc = youngsim(["growth-path", "--n-max", str(n_max),
                           "--stride", str(max(1, n_max // 100)),
                           "--measure", measure, "--seed", str(seed),
                           "--out", str(out)])
            if rc:
                raise SystemExit(rc)
            print("wrote", out)


if __name__ == "__main__":
    main()
