import pytest

from interdict.bench import CSV_HEADER
from interdict.cli import main

SINGLE_EDGE = "INTERDICT v1\nproblem edge\nnodes 2\nnode 0 F\nnode 1 C 3\nedges 1\nedge 0 1\nbudget 1\n"


@pytest.fixture
def one(tmp_path):
    p = tmp_path / "one.txt"
    p.write_text(SINGLE_EDGE)
    return str(p)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def objective(text):
    return next(line.split()[1] for line in text.splitlines() if line.startswith("objective"))


def test_solve_tree_and_btw_agree(capsys, one):
    code, out, _ = run(capsys, "solve", "--in", one, "--algo", "tree")
    assert code == 0 and objective(out) == "3"
    code, out2, _ = run(capsys, "solve", "--in", one, "--algo", "btw", "--emit-table")
    assert code == 0 and objective(out2) == "3" and "state" in out2


def test_malformed_file_exit_2(capsys, tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text(SINGLE_EDGE.replace("edge 0 1", "edge 0 0"))
    code, _, err = run(capsys, "solve", "--in", str(bad), "--algo", "tree")
    assert code == 2 and "line 7" in err


def test_kind_mismatch_exit_3(capsys, one):
    code, _, _ = run(capsys, "solve", "--in", one, "--algo", "rfic")
    assert code == 3
    code, _, _ = run(capsys, "solve", "--in", one, "--algo", "bogus")
    assert code == 3


def test_non_tree_input_exit_2(capsys, tmp_path):
    p = tmp_path / "tri.txt"
    p.write_text("INTERDICT v1\nproblem edge\nnodes 3\nnode 0 F\nnode 1 C 1\nnode 2 C 1\n"
                 "edges 3\nedge 0 1\nedge 1 2\nedge 0 2\nbudget 2\n")
    assert run(capsys, "solve", "--in", str(p), "--algo", "tree")[0] == 2
    code, out, _ = run(capsys, "solve", "--in", str(p), "--algo", "btw")
    assert code == 0 and objective(out) == "2"


def test_oracle_guard_exit_4(capsys, tmp_path):
    p = tmp_path / "big.txt"
    assert run(capsys, "generate", "--n", "40", "--r", "30", "--out", str(p))[0] == 0
    assert run(capsys, "oracle", "--in", str(p))[0] == 4


def test_generate_seed_env_override(capsys, monkeypatch):
    _, a, _ = run(capsys, "generate", "--n", "12", "--seed", "5")
    monkeypatch.setenv("INTERDICT_SEED", "5")
    _, b, _ = run(capsys, "generate", "--n", "12", "--seed", "77")
    assert a == b
    monkeypatch.setenv("INTERDICT_SEED", "x")
    assert run(capsys, "generate", "--n", "12")[0] == 3


def test_decompose_validate_roundtrip(capsys, tmp_path):
    inst = tmp_path / "g.txt"
    run(capsys, "generate", "--family", "walker-grid", "--planes", "3", "--per-plane", "4", "--out", str(inst))
    dec = tmp_path / "g.td"
    assert run(capsys, "decompose", "--in", str(inst), "--out", str(dec))[0] == 0
    code, out, _ = run(capsys, "validate", "--in", str(inst), "--decomp", str(dec))
    assert code == 0 and out.strip() == "ok"
    code, out, _ = run(capsys, "solve", "--in", str(inst), "--algo", "btw", "--decomp", str(dec))
    assert code == 0
    grid = tmp_path / "grid.td"
    assert run(capsys, "decompose", "--method", "grid", "--planes", "3", "--per-plane", "4", "--out", str(grid))[0] == 0
    # the grid decomposition misses the station leaves
    code, out, _ = run(capsys, "validate", "--in", str(inst), "--decomp", str(grid))
    assert code == 2 and "VertexNotCovered" in out


def test_export_and_import(capsys, one, tmp_path):
    lp = tmp_path / "m.lp"
    assert run(capsys, "export-lp", "--in", one, "--out", str(lp))[0] == 0
    assert "Subject To" in lp.read_text()
    sol = tmp_path / "s.txt"
    sol.write_text("x_1 0\ny_0 1\n")
    code, out, _ = run(capsys, "export-lp", "--in", one, "--solution", str(sol))
    assert code == 0 and objective(out) == "3"


def test_bench_and_stats(capsys, tmp_path):
    csv_path = tmp_path / "b.csv"
    code, _, _ = run(capsys, "bench", "--sizes", "20,30", "--reps", "2", "--r", "3", "--verify-small",
                     "--out", str(csv_path))
    assert code == 0
    rows = csv_path.read_text().splitlines()
    assert rows[0] == ",".join(CSV_HEADER) and len(rows) == 5
    code, out, _ = run(capsys, "stats", "--in", str(csv_path), "--by", "n")
    assert code == 0 and out.splitlines()[0] == "n,metric,count,mean,std,ci95,cv"
    assert run(capsys, "stats", "--in", str(csv_path), "--by", "nope")[0] == 3
    assert run(capsys, "bench", "--sizes", "20", "--p", "3")[0] == 3


def test_joints(capsys, tmp_path):
    p = tmp_path / "star.txt"
    p.write_text("INTERDICT v1\nproblem edge\nnodes 4\nnode 0 C 1\nnode 1 F\nnode 2 F\nnode 3 F\n"
                 "edges 3\nedge 0 1\nedge 0 2\nedge 0 3\nbudget 0\n")
    code, out, _ = run(capsys, "joints", "--in", str(p))
    assert code == 0 and out.strip() == "1"
