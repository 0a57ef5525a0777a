"""End-to-end CLI checks: schemas, determinism, exit codes.

Every invocation goes through main() in-process so coverage tools see
it and failures carry tracebacks instead of subprocess noise.
"""

import csv
import json
import math

from youngsim.cli import main
from youngsim.enumeration import exact_expected_c


def run(capsys, *argv):
    rc = main(list(argv))
    captured = capsys.readouterr()
    return rc, captured.out, captured.err


def parse_csv(text):
    rows = list(csv.reader(text.splitlines()))
    return rows[0], rows[1:]


def test_exact_expectation_stdout_schema(capsys):
    rc, out, _ = run(capsys, "exact-expectation", "--n", "10")
    assert rc == 0
    header, rows = parse_csv(out)
    assert header == ["n", "p_n", "c_n"]
    assert rows == [["10", "42", "0.934836679"]]


def test_exact_expectation_multiple_n(capsys):
    rc, out, _ = run(capsys, "exact-expectation", "--n", "1", "5", "10")
    assert rc == 0
    _, rows = parse_csv(out)
    assert [r[0] for r in rows] == ["1", "5", "10"]
    assert rows[0][2] == "0"


def test_plancherel_mc_degenerate_n1(capsys):
    rc, out, _ = run(capsys, "plancherel-mc", "--n", "1", "--samples", "5")
    assert rc == 0
    header, rows = parse_csv(out)
    assert header == ["n", "sample_size", "c_mean", "c_std"]
    assert rows == [["1", "5", "0", "0"]]


def test_maxdim_restricted_rows(capsys):
    rc, out, _ = run(capsys, "maxdim", "--n", "14", "--restricted")
    assert rc == 0
    header, rows = parse_csv(out)
    assert header == ["n", "c_bar", "best_shape", "scanned", "restricted"]
    assert len(rows) == 2
    full, restr = rows
    assert full[2] == "5,3,2,2,1,1" and full[4] == "0"
    assert restr[2] == "5,4,2,2,1" and restr[4] == "1"
    assert full[3] == "135"  # p(14)
    assert float(restr[1]) > float(full[1])
    # the shape cell itself must round-trip through csv quoting
    assert '"5,3,2,2,1,1"' in out


def test_growth_path_checkpoints(capsys):
    rc, out, err = run(capsys, "growth-path", "--n-max", "20",
                       "--stride", "5")
    assert rc == 0 and err == ""
    header, rows = parse_csv(out)
    assert header == ["n", "c"]
    assert [r[0] for r in rows] == ["5", "10", "15", "20"]


def test_growth_path_richardson_measure(capsys):
    rc, out, _ = run(capsys, "growth-path", "--n-max", "30", "--stride",
                     "10", "--measure", "richardson")
    assert rc == 0
    _, rows = parse_csv(out)
    assert [r[0] for r in rows] == ["10", "20", "30"]


def test_growth_path_stride_warning(capsys):
    rc, out, err = run(capsys, "growth-path", "--n-max", "3", "--stride", "5")
    assert rc == 0
    _, rows = parse_csv(out)
    assert rows == []
    assert "below stride" in err


def test_diagonal_schema_and_thread_determinism(capsys, tmp_path):
    a = tmp_path / "a.csv"
    b = tmp_path / "b.csv"
    rc1, _, _ = run(capsys, "diagonal", "--n", "200", "--samples", "40",
                    "--threads", "1", "--out", str(a))
    rc8, _, _ = run(capsys, "diagonal", "--n", "200", "--samples", "40",
                    "--threads", "8", "--out", str(b))
    assert rc1 == rc8 == 0
    assert a.read_bytes() == b.read_bytes()
    header, rows = parse_csv(a.read_text())
    assert header == ["n", "sample_size", "d_n", "d_n_normalized"]
    (row,) = rows
    assert math.isclose(float(row[3]), float(row[2]) / math.sqrt(200),
                        rel_tol=1e-8)


def test_rerun_is_byte_identical(capsys, tmp_path):
    a = tmp_path / "a.csv"
    b = tmp_path / "b.csv"
    for path in (a, b):
        rc, _, _ = run(capsys, "plancherel-mc", "--n", "30", "--samples",
                       "25", "--seed", "7", "--out", str(path))
        assert rc == 0
    assert a.read_bytes() == b.read_bytes()


def test_shape_2d_writes_companions(capsys, tmp_path):
    out = tmp_path / "s2.csv"
    rc, _, _ = run(capsys, "shape", "--n", "50", "--samples", "10",
                   "--out", str(out))
    assert rc == 0
    assert out.exists()
    assert (tmp_path / "s2_boundary.csv").exists()
    assert (tmp_path / "s2_sqrt.csv").exists()
    header, rows = parse_csv(out.read_text())
    assert header == ["u", "mean_f", "std_f"]
    us = [float(r[0]) for r in rows]
    assert us == sorted(us)
    assert any(u == 0.0 for u in us)
    bh, brows = parse_csv((tmp_path / "s2_boundary.csv").read_text())
    assert bh == ["x", "y"]
    assert all(float(x) >= 0 and float(y) >= 0 for x, y in brows)
    sh, srows = parse_csv((tmp_path / "s2_sqrt.csv").read_text())
    assert sh == ["sqrt_x", "sqrt_y"]
    assert len(srows) == len(brows)


def test_shape_2d_scaled_center(capsys, tmp_path):
    out = tmp_path / "s.csv"
    n, samples = 64, 6
    rc, _, _ = run(capsys, "shape", "--n", str(n), "--samples", str(samples),
                   "--scaled", "--seed", "3", "--out", str(out))
    assert rc == 0
    _, rows = parse_csv(out.read_text())
    raw = tmp_path / "r.csv"
    rc, _, _ = run(capsys, "shape", "--n", str(n), "--samples", str(samples),
                   "--seed", "3", "--out", str(raw))
    assert rc == 0
    _, rrows = parse_csv(raw.read_text())
    at0 = {float(r[0]): float(r[1]) for r in rows}[0.0]
    rat0 = {float(r[0]): float(r[1]) for r in rrows}[0.0]
    assert math.isclose(at0, rat0 / math.sqrt(n), rel_tol=1e-6)


def test_shape_3d_files(capsys, tmp_path):
    out = tmp_path / "s3.csv"
    rc, _, _ = run(capsys, "shape", "--n", "40", "--samples", "4",
                   "--dim", "3", "--out", str(out))
    assert rc == 0
    header, rows = parse_csv(out.read_text())
    assert header == ["a", "b", "mean_f", "std_f"]
    assert not (tmp_path / "s3_raw.csv").exists()
    ph, prows = parse_csv((tmp_path / "s3_points.csv").read_text())
    assert ph == ["x", "y", "z"]
    assert all(float(v) >= 0.0 for row in prows for v in row)
    assert (tmp_path / "s3_sqrt.csv").exists()


def test_shape_3d_scaled_emits_raw_companion(capsys, tmp_path):
    out = tmp_path / "s3.csv"
    rc, _, _ = run(capsys, "shape", "--n", "40", "--samples", "4",
                   "--dim", "3", "--scaled", "--out", str(out))
    assert rc == 0
    assert (tmp_path / "s3_raw.csv").exists()
    _, main_rows = parse_csv(out.read_text())
    _, raw_rows = parse_csv((tmp_path / "s3_raw.csv").read_text())
    factor = 40 ** (-1.0 / 3.0)
    assert len(main_rows) == len(raw_rows)
    # grid coordinates and values shrink by the same similarity factor
    assert math.isclose(
        max(float(r[0]) for r in main_rows),
        factor * max(float(r[0]) for r in raw_rows), rel_tol=1e-9)
    assert math.isclose(
        max(float(r[2]) for r in main_rows),
        factor * max(float(r[2]) for r in raw_rows), rel_tol=1e-9)


def test_json_format(capsys):
    rc, out, _ = run(capsys, "exact-expectation", "--n", "5", "--format",
                     "json")
    assert rc == 0
    doc = json.loads(out)
    assert doc["command"] == "exact-expectation"
    assert doc["rows"] == [{"n": 5, "p_n": 7,
                            "c_n": float(f"{exact_expected_c(5).c_n:.9g}")}]


def test_config_errors_exit_1(capsys):
    rc, _, err = run(capsys, "plancherel-mc", "--n", "0")
    assert rc == 1
    rc, _, err = run(capsys, "shape", "--n", "10", "--samples", "2")
    assert rc == 1
    assert "error" in err
    rc, _, err = run(capsys, "shape", "--n", "10", "--samples", "2",
                     "--dim", "3", "--measure", "plancherel",
                     "--out", "/tmp/never-written.csv")
    assert rc == 1
    rc, _, err = run(capsys, "no-such-command")
    assert rc == 1


def test_cap_exit_2(capsys):
    rc, _, err = run(capsys, "exact-expectation", "--n", "71")
    assert rc == 2
    assert "refusing to enumerate" in err
    # an explicit override lifts the cap (n stays small here)
    rc, _, _ = run(capsys, "exact-expectation", "--n", "12",
                   "--cap-override", "12")
    assert rc == 0


def test_io_error_exit_3(capsys, tmp_path):
    missing = tmp_path / "nope" / "out.csv"
    rc, _, err = run(capsys, "plancherel-mc", "--n", "4", "--samples", "3",
                     "--out", str(missing))
    assert rc == 3
    assert "I/O error" in err


def test_selftest_passes(capsys):
    rc, out, _ = run(capsys, "selftest", "--samples", "2000")
    assert rc == 0
    lines = [l for l in out.splitlines() if l]
    assert len(lines) == 5
    assert all(l.startswith("PASS") for l in lines)
    assert "burnside" in out and "rsk" in out and "growth" in out


def test_maxdim_cap_override_allows_small_caps(capsys):
    rc, _, _ = run(capsys, "maxdim", "--n", "20", "--cap-override", "20")
    assert rc == 0
    rc, _, err = run(capsys, "maxdim", "--n", "20", "--cap-override", "19")
    assert rc == 2


def test_large_seed_accepted(capsys):
    rc, out, _ = run(capsys, "plancherel-mc", "--n", "10", "--samples", "4",
                     "--seed", str(2 ** 70))
    assert rc == 0
