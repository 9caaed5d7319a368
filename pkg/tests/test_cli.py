import json
import pathlib

import pytest

from posbp.cli import main
from conftest import FIXTURES


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_check_fixture(capsys):
    code, out, _ = run(["check", str(FIXTURES / "truth1.proof")], capsys)
    assert code == 0 and "ok" in out


def test_check_corrupt_premise(tmp_path, capsys):
    text = (FIXTURES / "truth1.proof").read_text()
    bad = text.replace("posPL(L1, L4)", "posPL(L1, L3)")
    f = tmp_path / "bad.proof"
    f.write_text(bad)
    code, out, _ = run(["check", str(f)], capsys)
    assert code == 1 and "L5" in out or "line 5" in out


def test_check_missing_file(capsys):
    code, out, _ = run(["check", str(FIXTURES / "nope.proof")], capsys)
    assert code == 2


def test_check_parse_error(tmp_path, capsys):
    f = tmp_path / "junk.proof"
    f.write_text("dialect: elndt+\nL0: p0 |- p0 ; frobnicate\n")
    code, out, _ = run(["check", str(f)], capsys)
    assert code == 2


def test_check_jobs(tmp_path, capsys):
    paths = [str(FIXTURES / f"truth{i}.proof") for i in (1, 2, 3, 4)]
    code, out, _ = run(["check", "--jobs", "2", *paths], capsys)
    assert code == 0 and out.count(": ok") == 4


def test_php_roundtrip(tmp_path, capsys):
    out_file = tmp_path / "php2.proof"
    report = tmp_path / "php2.json"
    code, _, _ = run(["php", "--n", "2", "--out", str(out_file),
                      "--report", str(report)], capsys)
    assert code == 0
    rep = json.loads(report.read_text())
    assert rep["n"] == 2 and rep["lines"] > 0 and rep["schema"] == 1
    assert "wall_ms" in rep and "rule_histogram" in rep
    code, out, _ = run(["check", str(out_file)], capsys)
    assert code == 0


def test_simulate_roundtrip(tmp_path, capsys):
    import importlib

    S = importlib.import_module("posbp.simulate")
    from posbp.search import prove_by_search
    from posbp.sequents import Sequent, proof_text
    from posbp.terms import Or, PDec, Var, Zero

    seq = Sequent((PDec(Zero, Var(0), Var(1)),),
                  (Or(PDec(Zero, Var(0), Var(1)), Var(2)),))
    pr, _ = prove_by_search(seq)
    dep = S.depositivize(pr)
    src = tmp_path / "in.proof"
    src.write_text(proof_text(dep))
    out_file = tmp_path / "out.proof"
    report = tmp_path / "sizes.json"
    code, _, _ = run(["simulate", "--in", str(src), "--out", str(out_file),
                      "--report", str(report)], capsys)
    assert code == 0
    code, _, _ = run(["check", str(out_file)], capsys)
    assert code == 0
    rep = json.loads(report.read_text())
    assert rep["input_tokens"] > 0 and rep["tokens"] > rep["input_tokens"]


def test_eval(capsys):
    code, out, _ = run(
        ["eval", "thr[p0 p1 p2; 2]", "--assign", "p0=1,p1=1"], capsys)
    assert code == 0 and out.strip() == "1"
    code, out, _ = run(["eval", "thr[p0 p1 p2; 2]", "--assign", "p0=1"], capsys)
    assert out.strip() == "0"
    code, *_ = run(["eval", "dec(0, e1, 1)"], capsys)
    assert code == 2


def test_valid(capsys):
    code, out, _ = run(["valid", "p0 |- or(p0, p1)"], capsys)
    assert code == 0 and "valid" in out
    code, out, _ = run(["valid", "|- p0"], capsys)
    assert code == 1 and "p0=0" in out


def test_prove(tmp_path, capsys):
    out_file = tmp_path / "pr.proof"
    code, _, _ = run(["prove", "p0 |- or(p0, p1)", "--out", str(out_file)], capsys)
    assert code == 0
    code, _, _ = run(["check", str(out_file)], capsys)
    assert code == 0
    code, out, _ = run(["prove", "|- p0"], capsys)
    assert code == 1 and "countermodel" in out


def test_bp_pipeline(tmp_path, capsys):
    raw = tmp_path / "exact.bp"
    code, _, _ = run(["bp", "exact", "--n", "4", "--k", "2",
                      "--out", str(raw)], capsys)
    assert code == 0
    closed = tmp_path / "closed.bp"
    code, _, _ = run(["bp", "closure", "--in", str(raw),
                      "--out", str(closed)], capsys)
    assert code == 0
    code, out, _ = run(["bp", "eval", "--in", str(closed),
                        "--assign", "p0=1,p2=1"], capsys)
    assert code == 0 and out.strip() == "1"
    code, out, _ = run(["bp", "print", "--in", str(closed), "--dot"], capsys)
    assert code == 0 and "digraph" in out
    code, out, _ = run(["bp", "to-endt", "--in", str(closed)], capsys)
    assert code == 0 and "<->" in out


def test_bp_closure_dot_is_stable(tmp_path, capsys):
    raw = tmp_path / "e.bp"
    run(["bp", "exact", "--n", "4", "--k", "2", "--out", str(raw)], capsys)
    code, a, _ = run(["bp", "closure", "--in", str(raw), "--dot"], capsys)
    code, b, _ = run(["bp", "closure", "--in", str(raw), "--dot"], capsys)
    assert a == b
    # every dotted edge in the closure is shadowed by a solid one
    dotted = {l.split("[")[0] for l in a.splitlines() if "dotted" in l}
    solid = {l.rstrip(";").strip() + " " for l in a.splitlines()
             if "->" in l and "dotted" not in l}
    for edge in dotted:
        assert any(edge.strip() in s for s in solid)


def test_scaling(tmp_path, capsys):
    csv = tmp_path / "s.csv"
    js = tmp_path / "s.json"
    code, _, _ = run(["scaling", "--generator", "php", "--range", "1..2",
                      "--csv", str(csv), "--json", str(js)], capsys)
    assert code == 0
    rows = csv.read_text().strip().splitlines()
    assert rows[0] == "n,lines,tokens,wall_ms" and len(rows) == 3
    rep = json.loads(js.read_text())
    assert [r["n"] for r in rep["rows"]] == [1, 2]
    code, _, err = run(["scaling", "--generator", "php", "--range", "3..1"], capsys)
    assert code == 2
    code, _, err = run(["scaling", "--generator", "nope", "--range", "1..2"], capsys)
    assert code == 2


def test_scaling_identity_slope(tmp_path, capsys):
    js = tmp_path / "ident.json"
    code, _, _ = run(["scaling", "--generator", "identity",
                      "--range", "2..10", "--json", str(js)], capsys)
    assert code == 0
    rep = json.loads(js.read_text())
    assert rep["loglog_slope"] < 3.5
