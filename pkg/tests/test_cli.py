import json
import subprocess
import sys

import pytest

from heckelab.cli import main
from heckelab.orbits import census, count_function


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_orbits_csv(capsys):
    code, out, _ = run(capsys, "orbits", "--level", "23", "--weight", "2")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "N,k,orbit,degree,witness_p"
    assert lines[1].startswith("23,2,23.2.1,2,")
    assert len(lines) == 2


def test_orbits_json(capsys):
    code, out, _ = run(capsys, "orbits", "--level", "37", "--weight", "2", "--format", "json")
    assert code == 0
    obj = json.loads(out)
    assert obj["schema"] == 1 and obj["level"] == 37
    assert [o["degree"] for o in obj["orbits"]] == [1, 1]


def test_census_csv(capsys):
    code, out, _ = run(
        capsys, "census", "--level", "63", "--weight", "2", "--bound", "50"
    )
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "N,k,orbit,degree,p,reducible"
    assert len(lines) == 1 + 15  # pi(50) = 15
    assert "63,2,63.2.2,2,3,1" in lines  # ramified prime is recorded reducible
    assert all(line.endswith(",0") or line.endswith(",1") for line in lines[1:])


def test_census_json(capsys):
    code, out, _ = run(
        capsys,
        "census", "--level", "63", "--weight", "2", "--bound", "300",
        "--format", "json",
    )
    assert code == 0
    (orbit,) = json.loads(out)["orbits"]
    assert orbit["orbit"] == "63.2.2"
    assert orbit["primes_tested"] == 62
    assert orbit["count"] == 32
    assert orbit["level_primes"] == [3, 7]
    assert orbit["level_primes_square"] == [3]
    assert orbit["count_excluding_level_primes"] == 30


def test_twists_csv(capsys):
    code, out, _ = run(capsys, "twists", "--level", "63", "--weight", "2")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == (
        "N,k,orbit,degree,cm_disc,twists,group_order,fixed_degree,predicted_density"
    )
    assert lines[1] == "63,2,63.2.2,2,,3.2.[1],2,1,1/2"


def test_twists_cm_row(capsys):
    code, out, _ = run(
        capsys, "twists", "--level", "27", "--weight", "2", "--orbit", "27.2.1"
    )
    assert code == 0
    assert out.splitlines()[1] == "27,2,27.2.1,1,-3,,1,,"


def test_density_csv(capsys):
    code, out, _ = run(
        capsys, "density", "--level", "63", "--weight", "2", "--bound", "300"
    )
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == (
        "orbit,bound,primes,non_generating,empirical_failure,"
        "predicted_failure,predicted_density"
    )
    assert lines[1] == "63.2.2,300,62,32,16/31,1/2,1/2"


def test_count_matches_library(capsys):
    code, out, _ = run(
        capsys,
        "count", "--level", "63", "--weight", "2",
        "--orbit", "63.2.2", "--grid", "10,50,100",
    )
    assert code == 0
    (row,) = census(63, 2, 100)
    expected = count_function(row, [10, 50, 100])
    lines = out.splitlines()
    assert lines[0] == "orbit,x,count"
    assert [int(line.split(",")[2]) for line in lines[1:]] == list(expected)


def test_count_bad_grid(capsys):
    code, _, err = run(
        capsys,
        "count", "--level", "63", "--weight", "2", "--grid", "10,abc",
    )
    assert code == 2 and "bad grid" in err


def test_count_descending_grid_rejected(capsys):
    code, _, err = run(
        capsys,
        "count", "--level", "63", "--weight", "2",
        "--orbit", "63.2.2", "--grid", "100,10",
    )
    assert code == 2 and "ascending" in err


def test_count_ambiguous_orbit(capsys):
    code, _, err = run(
        capsys,
        "count", "--level", "37", "--weight", "2",
        "--orbit-degree", "1", "--grid", "10",
    )
    assert code == 2 and "ambiguous" in err


def test_unknown_orbit(capsys):
    code, _, err = run(
        capsys, "census", "--level", "23", "--weight", "2", "--orbit", "23.2.9"
    )
    assert code == 2 and "no orbit 23.2.9" in err


def test_no_orbit_of_degree(capsys):
    code, _, err = run(capsys, "census", "--level", "37", "--weight", "2")
    assert code == 2 and "no orbit of degree" in err


def test_gl2_census_csv(capsys):
    code, out, _ = run(capsys, "gl2", "--q", "5")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "q,kind,representative,trace,det,size"
    assert len(lines) == 1 + 24  # q^2 - 1 classes
    kinds = {line.split(",")[1] for line in lines[1:]}
    assert kinds == {"S", "T", "U", "V"}


def test_gl2_budget_exit(capsys):
    code, _, err = run(capsys, "gl2", "--q", "17")
    assert code == 3 and "budget error" in err


def test_gl2_flag_validation(capsys):
    code, _, err = run(capsys, "gl2", "--q", "4", "--grid-max", "9")
    assert code == 2 and "exactly one" in err
    code, _, err = run(capsys, "gl2")
    assert code == 2


def test_gl2_grid_json(capsys):
    code, out, _ = run(capsys, "gl2", "--grid-max", "4", "--format", "json")
    assert code == 0
    points = json.loads(out)["points"]
    assert len(points) == 20
    assert all(p["ok"] for p in points)
    skipped = [p for p in points if p["skip_reason"]]
    assert all(p["variant"] == "full" for p in skipped)


def test_cache_dir_flag(capsys, tmp_path):
    code, out, _ = run(
        capsys,
        "census", "--level", "63", "--weight", "2", "--bound", "30",
        "--cache-dir", str(tmp_path),
    )
    assert code == 0
    path = tmp_path / "census-63-2.jsonl"
    assert path.exists() and path.stat().st_size > 0

    # warm rerun through the CLI gives identical output, file untouched
    blob = path.read_bytes()
    code2, out2, _ = run(
        capsys,
        "census", "--level", "63", "--weight", "2", "--bound", "30",
        "--cache-dir", str(tmp_path),
    )
    assert code2 == 0 and out2 == out
    assert path.read_bytes() == blob


def test_cache_dir_env(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("HECKELAB_CACHE_DIR", str(tmp_path))
    code, _, _ = run(
        capsys, "census", "--level", "63", "--weight", "2", "--bound", "30"
    )
    assert code == 0
    assert (tmp_path / "census-63-2.jsonl").exists()


def test_workers_flag_same_output(capsys):
    _, seq, _ = run(
        capsys, "census", "--level", "63", "--weight", "2", "--bound", "100"
    )
    _, par, _ = run(
        capsys,
        "census", "--level", "63", "--weight", "2", "--bound", "100",
        "--workers", "3",
    )
    assert seq == par


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "heckelab.cli", "orbits", "--level", "11", "--weight", "2"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[1] == "11,2,11.2.1,1,2"
