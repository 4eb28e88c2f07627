import json
import subprocess
import sys
from pathlib import Path

import pytest

from tempered.cli import main

FIX = Path(__file__).resolve().parent.parent / "fixtures"
F2 = '{"family":"free","rank":2}'


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, (json.loads(out) if out.strip() else None), err


def test_group_ball(capsys):
    code, rep, err = run(capsys, "group", "ball", "--spec", F2, "--radius", 1)
    assert code == 0
    assert rep["size"] == 5 and rep["elements"][0] == []
    assert "5 elements" in err


def test_chain_boundary_and_degree_zero(capsys):
    c = {"degree": 1, "group": json.loads(F2), "terms": [{"tuple": [[], [1]], "coeff": "1"}]}
    code, rep, _ = run(capsys, "chain", "boundary", "--in", json.dumps(c))
    assert code == 0
    assert {(tuple(t["tuple"][0]), t["coeff"]) for t in rep["terms"]} == {((1,), "1"), ((), "-1")}
    d0 = {"degree": 0, "terms": [{"tuple": [[1]], "coeff": "1"}]}
    code, rep, err = run(capsys, "chain", "boundary", "--in", json.dumps(d0), "--group", F2)
    assert code == 1 and rep is None and "degree 0" in err


def test_chain_norm(capsys):
    c = {"degree": 0, "terms": [{"tuple": [[1, 2]], "coeff": "1"}]}
    code, rep, _ = run(capsys, "chain", "norm", "--in", json.dumps(c), "--group", F2, "--k", 3)
    assert code == 0 and rep["norm"] == "27"
    code, rep, _ = run(capsys, "chain", "norm", "--in", json.dumps(c), "--group", F2, "--alpha", "3/2")
    assert code == 0 and rep["norm"] == "9/4"
    code, _, _ = run(capsys, "chain", "norm", "--in", json.dumps(c), "--group", F2, "--alpha", "1")
    assert code == 1
    code, _, _ = run(capsys, "chain", "norm", "--in", json.dumps(c), "--k", 1)
    assert code == 1


def test_homotopy_verify(capsys):
    ident = '{"kind":"identity"}'
    stage = '{"kind":"combing_stage","combing":{"kind":"free_prefix","rank":2},"n":1}'
    code, rep, _ = run(capsys, "homotopy", "verify", "--f", ident, "--fp", stage,
                       "--chains", FIX / "free_chains.json")
    assert code == 0 and rep["ok"] and rep["checked"] == 12
    code, rep, _ = run(capsys, "homotopy", "verify", "--f", ident, "--fp", stage,
                       "--group", F2, "--seed", 3, "--count", 10)
    assert code == 0 and rep["passed"] == 10
    # a table map that misses part of the support is an input error
    code, _, err = run(capsys, "homotopy", "verify", "--f", '{"kind":"table","table":[[[],[]]]}',
                       "--fp", ident, "--chains", FIX / "free_chains.json")
    assert code == 1 and "MapDomainError" in err


def test_comb_verify(capsys):
    code, rep, _ = run(capsys, "comb", "verify", "--comb", FIX / "free_prefix.json", "--radius", 4)
    assert code == 0 and rep["axioms_ok"] and rep["S_obs"] == 1
    code, rep, _ = run(capsys, "comb", "verify", "--comb", FIX / "bad_combing.json", "--radius", 3)
    assert code == 2 and not rep["axioms_ok"] and rep["violations"]


def test_comb_contract(capsys):
    code, rep, _ = run(capsys, "comb", "contract", "--comb", FIX / "free_prefix.json",
                       "--chains", FIX / "free_chains.json", "--check")
    assert code == 0 and rep["ok"] and rep["count"] == 12
    code, _, err = run(capsys, "comb", "contract", "--comb", FIX / "free_prefix.json",
                       "--chains", FIX / "unreduced_chain.json", "--check")
    assert code == 1 and "ChainError" in err
    code, rep, _ = run(capsys, "comb", "contract", "--comb", FIX / "free_prefix.json",
                       "--chains", FIX / "unreduced_chain.json", "--check", "--unreduced")
    assert code == 2 and rep["ok"] is False
    assert rep["results"][0]["discrepancy"]["terms"] == [{"tuple": [[]], "coeff": "-2"}]


def test_comb_profile(capsys):
    code, rep, _ = run(capsys, "comb", "profile", "--comb", '{"kind":"free_prefix","rank":2}',
                       "--k", 0, "--deg", 0, "--len", 3, "--radius", 0)
    assert code == 0
    assert [s["max_ratio"] for s in rep["shells"]] == ["0", "1/2", "2/3", "3/4"]


def test_cohomology(capsys):
    code, rep, _ = run(capsys, "cohomology", "--group", F2, "--method", "resolution")
    assert code == 0 and rep["dims"] == [1, 2, 0] and rep["method"] == "small_resolution"
    z2 = '{"family":"finite","table":[[0,1],[1,0]],"generators":[1]}'
    code, rep, _ = run(capsys, "cohomology", "--group", z2, "--method", "bar", "--nmax", 2)
    assert code == 0 and rep["dims"] == [1, 0, 0]
    code, _, _ = run(capsys, "cohomology", "--group", F2, "--method", "bar")
    assert code == 1


def test_rips(capsys):
    code, rep, _ = run(capsys, "rips", "--space", FIX / "z_ball3.json", "--radius", 1, "--maxdim", 1)
    assert code == 0 and rep["dims"] == [1, 0] and rep["boundary_squares_to_zero"]
    code, rep, _ = run(capsys, "rips", "--space", FIX / "clique3.json", "--radius", 1, "--maxdim", 2)
    assert code == 0 and rep["dims"] == [1, 0, 0]
    bad = '{"points":[0,1],"dist":[[0,1],[2,0]]}'
    code, _, _ = run(capsys, "rips", "--space", bad, "--radius", 1, "--maxdim", 1)
    assert code == 1


@pytest.mark.parametrize("argv", [
    ["nonsense"],
    ["group", "ball", "--spec", F2],
    ["group", "ball", "--spec", "{not json", "--radius", "1"],
    ["chain", "boundary", "--in", "/no/such/file.json"],
    ["cohomology", "--group", F2, "--method", "magic"],
    ["chain", "norm", "--in", "{}", "--k", "1", "--alpha", "2"],
])
def test_usage_errors(capsys, argv):
    assert main(argv) == 1


def test_json_round_trip_of_emitted_chains(capsys, tmp_path):
    code, first, _ = run(capsys, "comb", "contract", "--comb", FIX / "free_prefix.json",
                         "--seed", 5, "--count", 6)
    assert code == 0
    inputs = {"group": json.loads(F2), "chains": [r["input"] for r in first["results"]]}
    path = tmp_path / "chains.json"
    path.write_text(json.dumps(inputs))
    code, second, _ = run(capsys, "comb", "contract", "--comb", FIX / "free_prefix.json",
                          "--chains", path)
    assert code == 0 and second == first
    # boundary output fed back in gives zero
    c = json.dumps(first["results"][-1]["homotopy"])
    code, b, _ = run(capsys, "chain", "boundary", "--in", c, "--group", F2)
    if b["degree"] > 0:
        code, bb, _ = run(capsys, "chain", "boundary", "--in", json.dumps(b), "--group", F2)
        assert bb["terms"] == []


def test_seed_determinism(capsys):
    args = ["comb", "contract", "--comb", FIX / "free_prefix.json", "--seed", 11, "--count", 4, "--check"]
    _, a, _ = run(capsys, *args)
    _, b, _ = run(capsys, *args)
    assert a == b
    _, c, _ = run(capsys, *args[:-4], "--seed", 12, "--count", 4, "--check")
    assert c != a


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "tempered", "cohomology", "--group",
                           '{"family":"abelian","rank":1}', "--method", "resolution"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["dims"] == [1, 1, 0]
