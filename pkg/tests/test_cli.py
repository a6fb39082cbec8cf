import json
import math
import subprocess
import sys

import pytest

from fraccap.cli import CSV_HEADER, build_sweep, main, read_csv, read_json, render_csv, sigma_grid


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_angle_text(capsys):
    code, out, _ = run(capsys, "angle", "--s", "0.5", "--sigma", "0")
    assert code == 0
    assert "1.5707963267948966" in out and "90.0" in out and "iterations" in out


def test_angle_json_near_one(capsys):
    code, out, _ = run(capsys, "angle", "--s", "0.999", "--sigma", "-0.5", "--format", "json")
    data = json.loads(out)
    assert code == 0 and set(data) == {"s", "sigma", "theta", "residual"}
    slope = -(-math.log(4) / 2 + 1.5 * math.log(1.5) - 0.5 * math.log(0.5)) / (2 * math.sqrt(0.75))
    assert data["theta"] == pytest.approx(math.pi / 3 + slope * 1e-3, abs=1e-5)


def test_angle_sigma_out_of_range(capsys):
    code, _, err = run(capsys, "angle", "--s", "0.5", "--sigma", "2")
    assert code == 2 and "sigma out of range" in err


def test_angle_bad_flags():
    with pytest.raises(SystemExit) as exc:
        main(["angle", "--s", "abc", "--sigma", "0"])
    assert exc.value.code == 2


def test_angle_bad_tol(capsys):
    code, _, _ = run(capsys, "angle", "--s", "0.5", "--sigma", "0.1", "--tol", "-1")
    assert code == 2


def test_sweep_shape_and_order(tmp_path, capsys):
    out = tmp_path / "t.csv"
    code, _, _ = run(capsys, "sweep", "--s-list", "0.95,0.05,0.5", "--sigma-count", "41", "--out", str(out))
    rows = read_csv(out.read_text())
    assert code == 0 and len(rows) == 123
    assert out.read_text().splitlines()[0] == ",".join(CSV_HEADER)
    assert [(r.s, r.sigma) for r in rows] == sorted((r.s, r.sigma) for r in rows)
    for s in (0.05, 0.5, 0.95):
        block = [r.theta_exact for r in rows if r.s == s]
        assert all(b > a for a, b in zip(block, block[1:]))


def test_sweep_single_sigma(capsys):
    code, out, _ = run(capsys, "sweep", "--s-list", "0.2,0.8", "--sigma-count", "1")
    rows = read_csv(out)
    assert code == 0 and [r.sigma for r in rows] == [0.0, 0.0]
    assert all(r.theta_exact == math.pi / 2 for r in rows)


def test_sweep_empty_s_list(capsys):
    code, _, err = run(capsys, "sweep", "--s-list", "")
    assert code == 2 and "empty" in err


def test_sweep_io_error_leaves_no_file(tmp_path, capsys):
    target = tmp_path / "missing" / "x.csv"
    code, _, err = run(capsys, "sweep", "--s-list", "0.5", "--sigma-count", "2", "--out", str(target))
    assert code == 1 and str(target) in err
    assert not target.exists() and not (tmp_path / "missing").exists()


def test_sweep_csv_deterministic(tmp_path, capsys):
    paths = [tmp_path / "a.csv", tmp_path / "b.csv"]
    for p, workers in zip(paths, ("1", "3")):
        run(capsys, "sweep", "--s-list", "0.3,0.7", "--sigma-count", "5", "--out", str(p), "--workers", workers)
    assert paths[0].read_bytes() == paths[1].read_bytes()


def test_sweep_json_round_trip(capsys):
    code, out, _ = run(capsys, "sweep", "--s-list", "0.4", "--sigma-count", "7", "--format", "json")
    data = json.loads(out)
    assert code == 0 and {"meta", "rows"} <= set(data)
    assert read_json(out) == build_sweep([0.4], sigma_grid(7))


def test_csv_round_trip_is_lossless():
    rows = build_sweep([0.01, 0.6], sigma_grid(5))
    assert read_csv(render_csv(rows)) == rows


def test_sigma_grid_default():
    grid = sigma_grid(81)
    assert len(grid) == 81 and grid[0] == -0.975 and grid[-1] == 0.975 and 0.0 in grid


@pytest.mark.parametrize("suite", ["lemma", "kappa", "expansions"])
def test_verify_suites_pass(suite, capsys):
    code, out, _ = run(capsys, "verify", "--suite", suite)
    assert code == 0 and "all" in out and "passed" in out


def test_verify_reports_failure(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "kappa", "--tol", "1e-300")
    assert code == 1 and "FAILED" in out


def test_verify_unknown_suite():
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--suite", "nope"])
    assert exc.value.code == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "fraccap", "angle", "--s", "0.5", "--sigma", "0.5",
                           "--format", "json"], capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["theta"] == pytest.approx(2.189842853113926, abs=1e-11)
