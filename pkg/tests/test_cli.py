import csv
import io
import json

from kforest.cli import main

TRIANGLE = "p kforest 3 4 1\ne 1 2\ne 2 3\ne 3 3\ne 3 1\n"


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def test_solve_and_verify(tmp_path, capsys):
    graph = write(tmp_path, "g.txt", TRIANGLE)
    sol = str(tmp_path / "s.txt")
    stats = str(tmp_path / "stats.json")
    assert main(["solve", "--in", graph, "--out", sol, "--stats", stats]) == 0
    assert (tmp_path / "s.txt").read_text().startswith("s kforest 2\n")
    doc = json.loads((tmp_path / "stats.json").read_text())
    assert doc["size"] == 2 and doc["self_loops_dropped"] == 1 and "seconds" in doc
    assert main(["verify", "--graph", graph, "--solution", sol, "--check-optimal", "--oracle", "partition"]) == 0
    assert "OK size 2 (optimum 2)" in capsys.readouterr().out


def test_verify_detects_suboptimal(tmp_path, capsys):
    graph = write(tmp_path, "g.txt", TRIANGLE)
    sol = write(tmp_path, "s.txt", "s kforest 1\na 1 1\n")
    assert main(["verify", "--graph", graph, "--solution", sol]) == 0
    assert main(["verify", "--graph", graph, "--solution", sol, "--check-optimal"]) == 1
    assert "optimality gap" in capsys.readouterr().out


def test_verify_detects_cycle(tmp_path, capsys):
    graph = write(tmp_path, "g.txt", TRIANGLE)
    sol = write(tmp_path, "s.txt", "s kforest 3\na 1 1\na 2 1\na 4 1\n")
    assert main(["verify", "--graph", graph, "--solution", sol]) == 1
    assert "acyclicity" in capsys.readouterr().out


def test_input_errors_exit_2(tmp_path, capsys):
    bad = write(tmp_path, "bad.txt", "p kforest 2 1 1\ne 1 5\n")
    assert main(["solve", "--in", bad, "--out", "-"]) == 2
    assert "line 2" in capsys.readouterr().err
    assert main(["solve", "--in", str(tmp_path / "missing.txt"), "--out", "-"]) == 2
    graph = write(tmp_path, "g.txt", TRIANGLE)
    short = write(tmp_path, "s.txt", "s kforest 3\na 1 1\n")
    assert main(["verify", "--graph", graph, "--solution", short]) == 2


def test_oracle(tmp_path, capsys):
    graph = write(tmp_path, "g.txt", TRIANGLE)
    assert main(["oracle", "--in", graph, "--method", "partition"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[0] == "2" and out[1] == "partition 1 2 3"
    assert main(["oracle", "--in", graph]) == 0
    assert capsys.readouterr().out == "2\n"


def test_generate_then_solve(tmp_path, capsys):
    out = str(tmp_path / "g.txt")
    assert main(["generate", "--model", "ktrees", "--n", "12", "--k", "3", "--seed", "4", "--out", out]) == 0
    assert main(["solve", "--in", out, "--out", "-"]) == 0
    assert capsys.readouterr().out.startswith("s kforest 33\n")
    assert main(["generate", "--model", "ktrees", "--n", "3", "--k", "3", "--out", out]) == 2


def test_bench_csv(capsys):
    assert main(["bench", "--sizes", "10,20", "--k", "2", "--repeat", "2", "--jobs", "2"]) == 0
    rows = list(csv.DictReader(io.StringIO(capsys.readouterr().out)))
    assert [int(r["n"]) for r in rows] == [10, 10, 20, 20]
    assert all(int(r["iterations"]) <= int(r["iteration_cap"]) for r in rows)
    assert set(rows[0]) == {
        "model", "n", "m", "k", "seed", "size", "iterations", "iteration_cap", "flow_calls", "seconds"
    }
