#!/usr/bin/env python3
"""Tables of the normalized dimension statistic c.

Three blocks, each a single CLI call writing one CSV under results/:

  expectation.csv   exact Plancherel expectation of c (full partition scan)
  maxdim.csv        maximum-dimension diagram per n, full and restricted scans
  mc.csv            Monte-Carlo mean/std of c via RSK at n beyond any scan

The exact blocks are deterministic; the MC block is seed-pinned, so reruns
reproduce every byte.
"""
import argparse
from pathlib import Path

from youngsim.cli import main as youngsim


def run(argv):
    rc = youngsim(argv)
    if rc:
        raise SystemExit(rc)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out-dir", type=Path, default=Path("results"))
    ap.add_argument("--threads", type=int, default=8)
    ap.add_argument("--mc-samples", type=int, default=2000)
    args = ap.parse_args()
    args.out_dir.mkdir(parents=True, exist_ok=True)
    common = ["--threads", str(args.threads)]

    exact_n = [str(n) for n in range(5, 65, 5)]
    run(["exact-expectation", "--n", *exact_n, *common,
         "--out", str(args.out_dir / "expectation.csv")])
    print("wrote", args.out_dir / "expectation.csv")

    scan_n = [str(n) for n in range(5, 75, 5)]
    run(["maxdim", "--n", *scan_n, "--restricted", *common,
         "--out", str(args.out_dir / "maxdim.csv")])
    print("wrote", args.out_dir / "maxdim.csv")

    run(["plancherel-mc", "--n", "1000", "2000",
         "--samples", str(args.mc_samples), *common,
         "--out", str(args.out_dir / "mc.csv")])
    print("wrote", args.out_dir / "mc.csv")


if __name__ == "__main__":
    main()
