import json
import subprocess
import sys

import pytest

from pcforest import parse_instance, parse_solution, verify_pc_forest
from pcforest.cli import main, pick_algorithm
from pcforest.instances import gen_complete, gen_random

TRIANGLE = "p pcf 3 3 2 simple\ne 1 2 1\ne 2 3 2\ne 1 3 1\n"


@pytest.fixture
def tri(tmp_path):
    path = tmp_path / "tri.pcf"
    path.write_text(TRIANGLE)
    return path


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_solve_writes_valid_solution(capsys, tri):
    code, out, _ = run(capsys, "solve", "--input", tri)
    assert code == 0
    ids = parse_solution(out)
    g = parse_instance(TRIANGLE)
    assert verify_pc_forest(g, ids).valid and len(ids) == 2
    assert "c alg complete2" in out


def test_solve_json(capsys, tri):
    code, out, _ = run(capsys, "solve", "--input", tri, "--alg", "general", "--json")
    rec = json.loads(out)
    assert code == 0 and rec["algorithm"] == "general" and rec["size"] == len(rec["forest"])
    assert rec["size"] <= min(rec["upper_bounds"].values())


def test_verify_round_trip(capsys, tri, tmp_path):
    _, out, _ = run(capsys, "solve", "--input", tri)
    sol = tmp_path / "sol"
    sol.write_text(out)
    assert run(capsys, "verify", "--input", tri, "--solution", sol)[0] == 0
    sol.write_text("s pcf 3\nf 1\nf 2\nf 3\n")
    code, out, _ = run(capsys, "verify", "--input", tri, "--solution", sol)
    assert code == 1 and out.startswith("not-forest")
    sol.write_text("s pcf 1\nf 9\n")
    assert run(capsys, "verify", "--input", tri, "--solution", sol)[0] == 2


def test_verify_tree_flag(capsys, tmp_path):
    inst = tmp_path / "g"
    inst.write_text("p pcf 4 2 1 simple\ne 1 2 1\ne 3 4 1\n")
    sol = tmp_path / "s"
    sol.write_text("s pcf 2\nf 1\nf 2\n")
    assert run(capsys, "verify", "-i", inst, "-s", sol)[0] == 0
    code, out, _ = run(capsys, "verify", "-i", inst, "-s", sol, "--tree")
    assert code == 1 and out.strip() == "not-connected"


def test_oracle(capsys, tri):
    code, out, _ = run(capsys, "oracle", "--input", tri)
    assert code == 0 and "c opt 2" in out
    assert run(capsys, "oracle", "--input", tri, "--cap", "2")[0] == 3


def test_parse_error_exit_code(capsys, tmp_path):
    bad = tmp_path / "bad"
    bad.write_text("p pcf 2 1 1 simple\ne 1 3 1\n")
    code, _, err = run(capsys, "solve", "--input", bad)
    assert code == 2 and "parse error" in err


def test_precondition_exit_code(capsys, tmp_path):
    path = tmp_path / "g"
    path.write_text("p pcf 3 1 2 simple\ne 1 2 1\n")
    assert run(capsys, "solve", "--input", path, "--alg", "complete2")[0] == 3
    assert run(capsys, "solve", "--input", path, "--alg", "maxpt")[0] == 3


def test_solve_maxpt_with_partition(capsys, tmp_path):
    path = tmp_path / "g"
    path.write_text("p pcf 3 3 2 simple\ne 1 2 1\ne 2 3 1\ne 1 3 2\n")
    part = tmp_path / "p"
    part.write_text("1 2\n")
    code, out, _ = run(capsys, "solve", "-i", path, "--alg", "maxpt", "--partition", part, "--json")
    rec = json.loads(out)
    assert code == 0 and rec["size"] == 2 and rec["branch"] == "F1+F12"


def test_gen_writes_sidecar(capsys, tmp_path):
    out = tmp_path / "t.pcf"
    assert run(capsys, "gen", "--family", "lf2pcf", "--n", 4, "--m", 3, "--seed", 1, "--out", out)[0] == 0
    g = parse_instance(out.read_text())
    assert g.n == 12
    side = (tmp_path / "t.pcf.map").read_text().splitlines()
    assert len([line for line in side if not line.startswith("#")]) == g.m


def test_gen_infeasible(capsys):
    assert run(capsys, "gen", "--n", 3, "--m", 10, "--simple")[0] == 3


def test_gen_is_byte_deterministic(capsys):
    a = run(capsys, "gen", "--family", "complete", "--n", 5, "--k", 3, "--seed", 4)[1]
    b = run(capsys, "gen", "--family", "complete", "--n", 5, "--k", 3, "--seed", 4)[1]
    assert a == b and parse_instance(a).is_complete()


def test_bench_zero_trials(capsys):
    code, out, _ = run(capsys, "bench", "--trials", 0)
    assert code == 0 and out.strip().endswith("# trials 0 failures 0")


def test_bench_is_byte_deterministic(capsys):
    args = ("bench", "--family", "random", "--trials", 8, "--nmax", 6, "--mmax", 10, "--check-ratio", "--json")
    a = run(capsys, *args)
    b = run(capsys, *args)
    assert a == b and a[0] == 0
    rows = [json.loads(line) for line in a[1].splitlines()]
    assert len(rows) == 8 and all(r["status"] == "ok" for r in rows)


def test_pick_algorithm():
    assert pick_algorithm(gen_complete(4, 2, 0)) == "complete2"
    assert pick_algorithm(gen_random(5, 6, 3, True, 0)) == "simplek"
    assert pick_algorithm(gen_random(5, 9, 4, False, 0)) == "general"
    # complete, only color 1 present, but k=4 declared: complete2 would refuse it
    assert pick_algorithm(parse_instance("p pcf 2 1 4 simple\ne 1 2 1\n")) == "simplek"


def test_module_entry_point_reads_stdin():
    proc = subprocess.run(
        [sys.executable, "-m", "pcforest", "solve"], input=TRIANGLE, capture_output=True, text=True
    )
    assert proc.returncode == 0 and proc.stdout.startswith("s pcf 2")
