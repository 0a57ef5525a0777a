"""Command-line front end.

One binary, one subcommand per experiment.  All randomness flows from
--seed through per-sample Philox streams, so any run is byte-identical
when repeated with the same flags, whatever --threads is.  Data goes to
stdout or --out; progress and warnings go to stderr.

Exit codes: 0 success, 1 bad configuration, 2 enumeration-cap refusal,
3 I/O failure, 4 selftest failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
from dataclasses import dataclass

import scipy.stats

from .diagrams import Partition, count_standard_tableaux, dim_exact
from .enumeration import (DEFAULT_EXPECTATION_CAP, DEFAULT_MAXDIM_CAP,
                          CapExceeded, exact_expected_c, max_dim_exact,
                          max_dim_restricted, partitions_iter, verify_burnside)
from .numerics import rng_derive
from .sampling import (growth_sample_counts, plancherel_c_stats,
                       plancherel_growth_path, richardson_c_path,
                       sample_plancherel)
from .shapes import (cartesian_boundary, diagonal_deviation, h3_estimate,
                     mean_shape_2d, mean_shape_3d, scale_profile, sqrt_coords,
                     surface_points)

DEFAULT_SEED = 12345

#: chi-square rejection level for the selftest; extreme on purpose so the
#: verdict is seed-stable and only gross sampler bugs trip it.
SELFTEST_ALPHA = 1e-9


class ConfigError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    n_values: tuple = ()
    n_max: int | None = None
    samples: int | None = None
    stride: int | None = None
    seed: int = DEFAULT_SEED
    threads: int = 1
    out: str | None = None
    format: str = "csv"
    measure: str | None = None
    dim: int | None = None
    scaled: bool = False
    restricted: bool = False
    cap_override: int | None = None

    @classmethod
    def from_args(cls, ns: argparse.Namespace) -> "RunConfig":
        n = getattr(ns, "n", None)
        if n is None:
            n_values = ()
        elif isinstance(n, list):
            n_values = tuple(n)
        else:
            n_values = (n,)
        return cls(command=ns.command, n_values=n_values,
                   n_max=getattr(ns, "n_max", None),
                   samples=getattr(ns, "samples", None),
                   stride=getattr(ns, "stride", None),
                   seed=ns.seed, threads=ns.threads,
                   out=getattr(ns, "out", None),
                   format=getattr(ns, "format", "csv"),
                   measure=getattr(ns, "measure", None),
                   dim=getattr(ns, "dim", None),
                   scaled=getattr(ns, "scaled", False),
                   restricted=getattr(ns, "restricted", False),
                   cap_override=getattr(ns, "cap_override", None))


def _sample_stream(n: int, i: int) -> int:
    """Stream id for sample i of an experiment at size n."""
    return (n << 32) | i


# ---------------------------------------------------------------------------
# output plumbing

def _fmt_cell(v) -> str:
    if isinstance(v, float):
        return f"{v:.9g}"
    return str(v)


def _json_cell(v):
    if isinstance(v, float):
        return float(f"{v:.9g}")
    return v


def _suffixed(path: str, suffix: str) -> str:
    stem, ext = os.path.splitext(path)
    return f"{stem}{suffix}{ext}"


def _write_table(fh, command, header, rows, fmt):
    if fmt == "csv":
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([_fmt_cell(v) for v in row])
    else:
        doc = {"command": command,
               "rows": [dict(zip(header, (_json_cell(v) for v in row)))
                        for row in rows]}
        json.dump(doc, fh, indent=2)
        fh.write("\n")


def _emit(cfg: RunConfig, header, rows, suffix: str = "") -> None:
    if cfg.out is None:
        _write_table(sys.stdout, cfg.command, header, rows, cfg.format)
        return
    path = _suffixed(cfg.out, suffix) if suffix else cfg.out
    with open(path, "w", encoding="utf-8", newline="") as fh:
        _write_table(fh, cfg.command, header, rows, cfg.format)


def _enum_progress(what: str):
    def cb(count):
        print(f"{what}: scanned {count} partitions", file=sys.stderr)
    return cb


# ---------------------------------------------------------------------------
# commands

def cmd_plancherel_mc(cfg: RunConfig) -> int:
    rows = []
    for n in cfg.n_values:
        stats = plancherel_c_stats(n, cfg.samples, cfg.seed,
                                   stream_base=_sample_stream(n, 0),
                                   threads=cfg.threads)
        rows.append((n, cfg.samples, stats.mean, stats.std))
    _emit(cfg, ("n", "sample_size", "c_mean", "c_std"), rows)
    return 0


def cmd_exact_expectation(cfg: RunConfig) -> int:
    cap = cfg.cap_override if cfg.cap_override is not None \
        else DEFAULT_EXPECTATION_CAP
    rows = []
    for n in cfg.n_values:
        res = exact_expected_c(n, cap=cap, threads=cfg.threads,
                               progress=_enum_progress(f"n={n}"))
        rows.append((n, res.partitions_count, res.c_n))
    _emit(cfg, ("n", "p_n", "c_n"), rows)
    return 0


def cmd_maxdim(cfg: RunConfig) -> int:
    cap = cfg.cap_override if cfg.cap_override is not None \
        else DEFAULT_MAXDIM_CAP
    rows = []
    for n in cfg.n_values:
        res = max_dim_exact(n, cap=cap, threads=cfg.threads,
                            progress=_enum_progress(f"n={n}"))
        rows.append((n, res.c_bar, ",".join(map(str, res.best_shape.rows)),
                     res.diagrams_scanned, 0))
        if cfg.restricted:
            rr = max_dim_restricted(n)
            rows.append((n, rr.c_bar,
                         ",".join(map(str, rr.best_shape.rows)),
                         rr.diagrams_scanned, 1))
    _emit(cfg, ("n", "c_bar", "best_shape", "scanned", "restricted"), rows)
    return 0


def cmd_growth_path(cfg: RunConfig) -> int:
    n_max = cfg.n_max
    stride = cfg.stride if cfg.stride is not None else max(1, n_max // 10)
    if n_max < stride:
        print(f"warning: n-max {n_max} is below stride {stride}; "
              f"no checkpoint rows", file=sys.stderr)
    gen = rng_derive(cfg.seed, _sample_stream(n_max, 0)).gen
    if cfg.measure == "richardson":
        path = richardson_c_path(n_max, gen, stride)
    else:
        path = plancherel_growth_path(n_max, gen, stride)
    _emit(cfg, ("n", "c"), list(path.checkpoints))
    return 0


def cmd_shape(cfg: RunConfig) -> int:
    n = cfg.n_values[0]
    if cfg.dim == 2:
        acc = mean_shape_2d(n, cfg.samples, cfg.seed, measure=cfg.measure,
                            stream_base=_sample_stream(n, 0),
                            threads=cfg.threads)
        factor = 1.0 / math.sqrt(n) if cfg.scaled else 1.0
        mean = scale_profile(acc.mean_profile(), factor) if cfg.scaled \
            else acc.mean_profile()
        std = acc.std() * factor
        u = mean.grid.points()
        rows = [(float(u[k]), float(mean.f[k]), float(std[k]))
                for k in range(mean.grid.size)]
        _emit(cfg, ("u", "mean_f", "std_f"), rows)
        boundary = cartesian_boundary(mean)
        _emit(cfg, ("x", "y"), [tuple(map(float, p)) for p in boundary],
              suffix="_boundary")
        roots = sqrt_coords(boundary)
        _emit(cfg, ("sqrt_x", "sqrt_y"),
              [tuple(map(float, p)) for p in roots], suffix="_sqrt")
        return 0
    acc = mean_shape_3d(n, cfg.samples, cfg.seed,
                        stream_base=_sample_stream(n, 0), threads=cfg.threads)
    raw = acc.mean_profile()
    raw_std = acc.std()

    def grid_rows(profile, std):
        ua = profile.grid_a.points()
        ub = profile.grid_b.points()
        out = []
        for ia in range(profile.grid_a.size):
            for ib in range(profile.grid_b.size):
                out.append((float(ua[ia]), float(ub[ib]),
                            float(profile.f[ia, ib]), float(std[ia, ib])))
        return out

    header = ("a", "b", "mean_f", "std_f")
    factor = n ** (-1.0 / 3.0)
    if cfg.scaled:
        mean = scale_profile(raw, factor)
        _emit(cfg, header, grid_rows(mean, raw_std * factor))
        _emit(cfg, header, grid_rows(raw, raw_std), suffix="_raw")
    else:
        mean = raw
        _emit(cfg, header, grid_rows(raw, raw_std))
    pts = surface_points(mean)
    _emit(cfg, ("x", "y", "z"), [tuple(map(float, p)) for p in pts],
          suffix="_points")
    roots = sqrt_coords(pts)
    _emit(cfg, ("sqrt_x", "sqrt_y", "sqrt_z"),
          [tuple(map(float, p)) for p in roots], suffix="_sqrt")
    scaled_mean = mean if cfg.scaled else scale_profile(raw, factor)
    print(f"h3 estimate: {h3_estimate(scaled_mean):.9g}", file=sys.stderr)
    return 0


def cmd_diagonal(cfg: RunConfig) -> int:
    rows = []
    for n in cfg.n_values:
        st = diagonal_deviation(n, cfg.samples, cfg.seed,
                                stream_base=_sample_stream(n, 0),
                                threads=cfg.threads)
        rows.append((n, cfg.samples, st.d_n, st.d_n_normalized))
    _emit(cfg, ("n", "sample_size", "d_n", "d_n_normalized"), rows)
    return 0


def _chi_square_check(counts: dict, expected: dict, total: int):
    stat = 0.0
    for shape, p in expected.items():
        e = p * total
        o = counts.get(shape, 0)
        stat += (o - e) ** 2 / e
    extra = set(counts) - set(expected)
    if extra:
        return math.inf, 0.0
    df = len(expected) - 1
    bound = float(scipy.stats.chi2.isf(SELFTEST_ALPHA, df))
    return stat, bound


def cmd_selftest(cfg: RunConfig) -> int:
    samples = cfg.samples
    checks = []

    ok = all(verify_burnside(n) for n in range(1, 13))
    checks.append(("burnside n<=12", ok, "sum dim^2 == n!"))

    ok = True
    for n in range(1, 13):
        for p in partitions_iter(n):
            if dim_exact(p) != count_standard_tableaux(p):
                ok = False
                break
        if not ok:
            break
    checks.append(("hooks-vs-backtracking n<=12", ok,
                   "hook formula == tableau count"))

    n6 = 6
    fact6 = math.factorial(n6)
    expected = {p.rows: dim_exact(p) ** 2 / fact6 for p in partitions_iter(n6)}

    gen = rng_derive(cfg.seed, 1).gen
    counts: dict = {}
    for _ in range(samples):
        rows = sample_plancherel(n6, gen).rows
        counts[rows] = counts.get(rows, 0) + 1
    stat, bound = _chi_square_check(counts, expected, samples)
    checks.append((f"rsk-chi-square n=6 ({samples} samples)", stat < bound,
                   f"stat {stat:.2f} bound {bound:.2f}"))

    gen = rng_derive(cfg.seed, 2).gen
    counts = growth_sample_counts(n6, samples, gen)
    stat, bound = _chi_square_check(counts, expected, samples)
    checks.append((f"growth-chi-square n=6 ({samples} samples)", stat < bound,
                   f"stat {stat:.2f} bound {bound:.2f}"))

    gen = rng_derive(cfg.seed, 3).gen
    path = plancherel_growth_path(400, gen)
    ok = path.max_defect <= 1e-9
    checks.append(("growth-normalization n=400", ok,
                   f"max |log sum w| = {path.max_defect:.3e}"))

    failed = 0
    for name, ok, detail in checks:
        verdict = "PASS" if ok else "FAIL"
        if not ok:
            failed += 1
        print(f"{verdict} {name}: {detail}")
    return 4 if failed else 0


# ---------------------------------------------------------------------------
# argument parsing

class _Parser(argparse.ArgumentParser):
    """argparse exits with 2 on bad flags; the contract here is 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(1)


def _positive(kind):
    def convert(text):
        value = int(text)
        if value < kind:
            raise argparse.ArgumentTypeError(f"must be >= {kind}")
        return value
    return convert


def _build_parser() -> _Parser:
    p = _Parser(prog="youngsim",
                description="Statistics of normalized dimensions and limit "
                            "shapes of random Young diagrams.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--seed", type=int, default=DEFAULT_SEED,
                        help="master seed (default fixed for reproducibility)")
        sp.add_argument("--threads", type=_positive(1), default=1)
        sp.add_argument("--out", help="output path (default: stdout)")
        sp.add_argument("--format", choices=("csv", "json"), default="csv")

    sp = sub.add_parser("plancherel-mc",
                        help="Monte-Carlo mean/std of c under RSK sampling")
    sp.add_argument("--n", type=_positive(1), nargs="+", required=True)
    sp.add_argument("--samples", type=_positive(1), default=2000)
    common(sp)

    sp = sub.add_parser("exact-expectation",
                        help="exact Plancherel expectation of c by full scan")
    sp.add_argument("--n", type=_positive(1), nargs="+", required=True)
    sp.add_argument("--cap-override", type=_positive(1), dest="cap_override")
    common(sp)

    sp = sub.add_parser("maxdim",
                        help="maximum-dimension diagram by full scan")
    sp.add_argument("--n", type=_positive(1), nargs="+", required=True)
    sp.add_argument("--restricted", action="store_true",
                    help="also scan the self-conjugate-based family")
    sp.add_argument("--cap-override", type=_positive(1), dest="cap_override")
    common(sp)

    sp = sub.add_parser("growth-path",
                        help="normalized c along one growing diagram")
    sp.add_argument("--n-max", type=_positive(1), dest="n_max", required=True)
    sp.add_argument("--stride", type=_positive(1),
                    help="checkpoint every this many cells "
                         "(default n-max/10)")
    sp.add_argument("--measure", choices=("plancherel", "richardson"),
                    default="plancherel")
    common(sp)

    sp = sub.add_parser("shape", help="average rotated profile of samples")
    sp.add_argument("--n", type=_positive(1), required=True)
    sp.add_argument("--samples", type=_positive(1), default=200)
    sp.add_argument("--dim", type=int, choices=(2, 3), default=2)
    sp.add_argument("--measure", choices=("plancherel", "richardson"),
                    default="richardson")
    sp.add_argument("--scaled", action="store_true",
                    help="similarity-normalize to unit area/volume scale")
    common(sp)

    sp = sub.add_parser("diagonal",
                        help="stddev of the main-diagonal segment "
                             "(uniform-corner growth)")
    sp.add_argument("--n", type=_positive(1), nargs="+", required=True)
    sp.add_argument("--samples", type=_positive(2), default=2000)
    common(sp)

    sp = sub.add_parser("selftest", help="small-n oracle checks")
    sp.add_argument("--samples", type=_positive(100), default=100000)
    common(sp)

    return p


_DISPATCH = {
    "plancherel-mc": cmd_plancherel_mc,
    "exact-expectation": cmd_exact_expectation,
    "maxdim": cmd_maxdim,
    "growth-path": cmd_growth_path,
    "shape": cmd_shape,
    "diagonal": cmd_diagonal,
    "selftest": cmd_selftest,
}


def _validate(cfg: RunConfig) -> None:
    if cfg.command == "shape":
        if cfg.out is None:
            raise ConfigError("shape writes companion files; --out is "
                              "required")
        if cfg.dim == 3 and cfg.measure == "plancherel":
            raise ConfigError("3D sampling is uniform-corner growth only; "
                              "use --measure richardson")


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 1
    cfg = RunConfig.from_args(ns)
    try:
        _validate(cfg)
    except ConfigError as exc:
        print(f"youngsim: error: {exc}", file=sys.stderr)
        return 1
    try:
        return _DISPATCH[cfg.command](cfg)
    except CapExceeded as exc:
        print(f"youngsim: refusing to enumerate: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"youngsim: I/O error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
