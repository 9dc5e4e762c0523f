import json
import subprocess
import sys

import pytest

from blockmap import cli, criticality
from blockmap.errors import ConvergenceError


@pytest.fixture(autouse=True)
def isolated_cache(monkeypatch, tmp_path):
    monkeypatch.setenv("BLOCKMAP_CACHE", str(tmp_path / "cache"))


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_block_counts(capsys):
    code, out, _ = run(capsys, "coeffs", "--model", "quad", "--what", "blocks", "--n", "3")
    assert code == 0
    assert out == "j,count\n1,2\n2,1\n3,2\n"


def test_weighted_counts_text(capsys):
    code, out, _ = run(capsys, "coeffs", "--model", "quad", "--what", "mu", "--n", "2", "--format", "text")
    assert code == 0
    assert out.splitlines() == ["0 0 1", "1 1 2", "2 1 1", "2 2 8"]


def test_meander_components(capsys):
    code, out, _ = run(capsys, "coeffs", "--model", "meander", "--what", "components", "--n", "2")
    assert code == 0
    assert out.splitlines()[1:] == ["2,1,2", "2,2,2"]


def test_open_path_two_point(capsys):
    code, out, _ = run(capsys, "coeffs", "--model", "open", "--what", "two-point", "--n", "1")
    assert out.splitlines()[1:] == ["0,0,1", "1,0,2", "1,1,2"]


def test_critical_report(capsys):
    code, out, _ = run(capsys, "critical", "--model", "quad")
    assert code == 0
    report = json.loads(out)
    assert report["results"]["u_cr"]["exact"] == "9/5"
    assert report["results"]["g_c_at_ucr"]["exact"] == "25/432"
    assert report["exponents"]["gamma_S"]["exact"] == "-1/2"
    assert report["passed"]


def test_meander_q_report_uses_brute_force(capsys):
    code, out, _ = run(capsys, "critical", "--model", "meander-q", "--q", "2", "--n", "9")
    assert code == 0
    report = json.loads(out)
    assert report["inputs"]["source"] == "brute-force"
    assert report["exponents"]["c"]["value"] == -1


def test_estimate_is_byte_identical(capsys, tmp_path):
    paths = [tmp_path / "a.csv", tmp_path / "b.csv", tmp_path / "c.csv"]
    args = ["estimate", "--model", "quad", "--N", "30", "--p", "4", "--u", "1", "9/5", "--sweep", "2:3:0.5"]
    reports = []
    for i, path in enumerate(paths):
        extra = ["--no-cache"] if i == 2 else []
        code, out, _ = run(capsys, *extra, *args, "--out", str(path))
        assert code == 0
        reports.append(out)
    assert paths[0].read_bytes() == paths[1].read_bytes() == paths[2].read_bytes()
    assert reports[0] == reports[1] == reports[2]
    rows = paths[0].read_text().splitlines()
    assert rows[0] == "u,estimate" and len(rows) == 1 + 2 + 3


def test_profile_csv(capsys):
    code, out, err = run(capsys, "profile", "--points", "3", "--rmax", "2", "--crosscheck")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "r,phi,rho,phi_contour"
    assert lines[1].startswith("0,0,0")
    assert json.loads(err)["command"] == "profile"


@pytest.mark.parametrize("argv", [
    ["coeffs", "--model", "hexagons", "--n", "3"],
    ["coeffs", "--model", "quad"],
    ["coeffs", "--model", "quad", "--n", "500"],
    ["coeffs", "--model", "cubic", "--source", "brute-force", "--n", "13"],
    ["coeffs", "--model", "cubic", "--what", "components", "--n", "2"],
    ["estimate", "--model", "quad", "--N", "30"],
    ["estimate", "--model", "quad", "--sweep", "3:1:1"],
    ["profile", "--rmin", "3", "--rmax", "1"],
])
def test_usage_errors_exit_1(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 1
    assert "error" in err


def test_bicubic_without_file_exits_2(capsys):
    code, _, err = run(capsys, "critical", "--model", "bicubic")
    assert code == 2
    assert "--file" in err


def test_bad_file_exits_2(capsys, tmp_path):
    path = tmp_path / "counts.txt"
    path.write_text("1 2\n2 9\n")
    code, _, err = run(capsys, "coeffs", "--model", "bicubic", "--file", str(path), "--n", "2")
    assert code == 2


def test_convergence_failure_exits_3(capsys, monkeypatch):
    def fail(*args, **kwargs):
        raise ConvergenceError("bisection stalled")

    monkeypatch.setattr(criticality, "solve_tc", fail)
    code, _, err = run(capsys, "critical", "--model", "cubic")
    assert code == 3
    assert "stalled" in err


def test_module_entry_point(tmp_path):
    result = subprocess.run([sys.executable, "-m", "blockmap", "coeffs", "--model", "quad",
                             "--what", "counts", "--n", "3"],
                            capture_output=True, text=True, timeout=120,
                            env={"BLOCKMAP_CACHE": str(tmp_path), "PATH": ""})
    assert result.returncode == 0
    assert result.stdout == "n,count\n0,1\n1,2\n2,9\n3,54\n"


def test_profile_default_grid_ends_near_one(capsys, tmp_path):
    out_path = tmp_path / "profile.csv"
    code, out, _ = run(capsys, "profile", "--out", str(out_path))
    assert code == 0
    rows = out_path.read_text().splitlines()
    assert len(rows) == 201
    phis = [float(row.split(",")[1]) for row in rows[1:]]
    assert all(b >= a for a, b in zip(phis, phis[1:]))
    assert abs(phis[-1] - 1) <= 1e-6, f"Phi(4) = {phis[-1]}"
