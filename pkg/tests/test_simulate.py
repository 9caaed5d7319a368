import itertools
import random

import pytest

import importlib

S = importlib.import_module("posbp.simulate")

from posbp import terms as T
from posbp.search import prove_by_search
from posbp.sequents import (ELNDT, ELNDT_POS, Proof, Sequent, check_proof,
                            proof_size, sequent_valid)
from posbp.tables import table_of_function, truth_table
from conftest import vet

p, q, r = T.Var(0), T.Var(1), T.Var(2)


def all_assignments(vars):
    for bits in itertools.product((0, 1), repeat=len(vars)):
        yield dict(zip(vars, bits))


def test_negtrans_shape_and_semantics():
    assert S.negtrans(p) is p
    f = T.Dec(T.Zero, p, T.One)
    nf = S.negtrans(f)
    assert nf is T.Or(T.PDec(T.Zero, T.NegLit(0), T.Zero),
                      T.PDec(T.Zero, p, T.One))
    ax = T.ExtAxiomSet()
    g = T.Dec(T.Or(p, q), r, T.Or(T.Or(p, q), T.Dec(q, p, T.Or(q, r))))
    ng = S.negtrans(g)
    for alpha in all_assignments((0, 1, 2)):
        assert T.evaluate(g, ax, alpha) == T.evaluate(ng, ax, alpha)


def test_negtrans_axioms():
    ax = T.ExtAxiomSet()
    e = ax.plain(0, T.Dec(T.Zero, T.Var(0), T.One))
    nax = S.negtrans_axioms(ax)
    assert nax.body(T.PlainVar(0)) is S.negtrans(ax.body(T.PlainVar(0)))


def test_negtrans_truth_proofs():
    for pr in S.gen_negtrans_truth(p, 2, T.Or(q, p)):
        vet(pr)


def test_translate_to_minus_trivial():
    pr, _ = prove_by_search(Sequent((), (T.One,)))
    dep = S.depositivize(pr)
    minus = S.translate_to_minus(dep)
    vet(minus)
    assert minus.conclusion.same_tokens(Sequent((), (T.One,)))


def test_translate_to_minus_simulates_decisions():
    seq = Sequent((T.PDec(T.Zero, p, q),), (T.Or(T.PDec(T.Zero, p, q), r),))
    pr, _ = prove_by_search(seq)
    dep = S.depositivize(pr)
    assert check_proof(dep).ok
    hist = {j[0] for _, j in dep.lines}
    assert "pL" in hist or "pR" in hist
    minus = S.translate_to_minus(dep)
    vet(minus)
    # the decision blocks appear as cut pairs
    assert any(j[0] == "cut" for _, j in minus.lines)


def test_strip_negtrans_round_trip():
    seq = Sequent((T.PDec(T.Zero, p, q), r), (T.Or(r, T.PDec(T.Zero, p, q)),))
    pr, _ = prove_by_search(seq)
    dep = S.depositivize(pr)
    minus = S.translate_to_minus(dep)
    stripped = S.strip_negtrans(minus, seq)
    vet(stripped)
    assert stripped.conclusion.same_tokens(seq)


def test_refthr_axioms_and_semantics():
    st = T.ExtAxiomSet()
    A = T.Or(T.Var(4), T.Var(5))
    B = T.Var(6)
    assert st.refthr((), 0, A, B).evar.name().startswith("rthr")
    assert st.body(T.RefThrVar((), 0, A, B)) is T.Or(A, B)
    st.refthr((), 2, A, B)
    assert st.body(T.RefThrVar((), 2, A, B)) is A  # k != 0 collapses to A
    st.refthr((0, 1), 1, A, B)
    want = table_of_function(
        (0, 1, 4, 5, 6),
        lambda a: (a[4] or a[5]) or ((a[0] + a[1] >= 1) and a[6]))
    got = truth_table(st.refthr((0, 1), 1, A, B), st, vars=(0, 1, 4, 5, 6))
    assert got.bits == want.bits
    assert st.check() is None


@pytest.mark.parametrize("k", [0, 1, 2])
def test_refthr_truth_proofs(k):
    for pr in S.gen_refthr_truth((0, 1), k, T.Or(T.Var(4), T.Var(5)), T.Var(6)):
        vet(pr)
    # item 4 with the constant true branch
    for pr in S.gen_refthr_truth((0,), k, T.Var(4), T.One):
        vet(pr)


def test_ttrans_clauses():
    ctx = S.SimContext((0, 1, 2))
    store = T.ExtAxiomSet()
    src = T.ExtAxiomSet()
    out = S.ttrans(T.NegLit(1), 2, ctx, store, src)
    assert out.evar == T.ThrVar((0, 2), 2)
    f = T.PDec(p, T.NegLit(1), q)
    out = S.ttrans(f, 1, ctx, store, src)
    assert out.evar == T.RefThrVar((0, 2), 1, p, q)
    # negation-free formulas are fixed up to extension-variable renaming
    g = T.Or(p, T.PDec(T.Zero, q, r))
    assert S.ttrans(g, 1, ctx, store, src) is g
    assert T.is_positive(S.ttrans(f, 1, ctx, store, src))
    assert store.check() is None


def test_ttrans_namespaces_plain_variables():
    ctx = S.SimContext((0, 1))
    store = T.ExtAxiomSet()
    src = T.ExtAxiomSet()
    e = src.plain(0, T.Or(p, T.NegLit(1)))
    out = S.ttrans(e, 1, ctx, store, src)
    assert out.evar == T.PlainVar(0, "k1")
    body = store.body(out.evar)
    assert body is T.Or(p, store.thr((0,), 1))


def _minus_proof(seq):
    pr, cm = prove_by_search(seq)
    assert cm is None
    dep = S.depositivize(pr)
    minus = S.translate_to_minus(dep)
    return S.strip_negtrans(minus, seq)


def test_translate_to_Tk_and_eliminate():
    seq = Sequent((T.PDec(T.Zero, p, q), r), (T.Or(r, T.PDec(T.Zero, p, q)),))
    stripped = _minus_proof(seq)
    ctx = S.SimContext(S._proof_vars(stripped))
    store = T.ExtAxiomSet()
    for k in range(ctx.m + 1):
        tk = S.translate_to_Tk(stripped, k, ctx, store)
        assert check_proof(tk).ok, k
        assert tk.conclusion == seq  # multiset; interior display may reorder
        bk = S.eliminate_Tk(tk, k, ctx, store)
        vet(bk)
        tlo = T.Ext(T.ThrVar(ctx.vars, k))
        thi = T.Ext(T.ThrVar(ctx.vars, k + 1))
        assert bk.conclusion == Sequent((tlo,) + seq.ant, seq.suc + (thi,))
    assert store.check() is None


def test_eliminate_trivial_line_shape():
    one = Proof(S.ELNDT_POS_NEG if False else ELNDT_POS, T.ExtAxiomSet(),
                [(Sequent((), (T.One,)), ("ax1",))], {}, True)
    from posbp.sequents import TK

    tk = Proof(TK(0, (0,)), T.ExtAxiomSet(), [(Sequent((), (T.One,)), ("ax1",))],
               {}, True)
    out = S.eliminate_Tk(tk, 0, S.SimContext((0,)), T.ExtAxiomSet())
    assert len(out.lines) >= 3
    assert out.lines[0][1] == ("ax1",)
    heads = [j[0] for _, j in out.lines[:3]]
    assert heads[1:] == ["wL", "wR"]


def test_simulate_end_to_end():
    seq = Sequent((p,), (T.Or(p, q),))
    pr, _ = prove_by_search(seq)
    out = S.simulate(S.depositivize(pr))
    vet(out)
    assert out.conclusion.same_tokens(seq)
    assert out.axioms.check() is None


def test_simulate_purity_scan():
    seq = Sequent((T.PDec(T.Zero, p, q), r), (T.Or(r, T.PDec(T.Zero, p, q)),))
    pr, _ = prove_by_search(seq)
    out = S.simulate(S.depositivize(pr, random.Random(1), noise=0.2))
    vet(out)
    for s, just in out.lines:
        assert just[0] not in ("negL", "negR", "thrL", "thrR")
        for f in s.formulas():
            for g in T.subnodes(f):
                assert g.kind != T.DEC
                assert not (g.kind == T.LIT and g.neg)


def test_simulate_rejects_mismatched_target():
    seq = Sequent((p,), (T.Or(p, q),))
    pr, _ = prove_by_search(seq)
    dep = S.depositivize(pr)
    with pytest.raises(S.SimulateError):
        S.simulate(dep, Sequent((p,), (T.Or(q, p),)))


def test_depositivize_produces_general_proofs():
    seq = Sequent((T.PDec(T.Zero, p, q),), (T.Or(T.PDec(T.Zero, p, q), r),))
    pr, _ = prove_by_search(seq)
    dep = S.depositivize(pr, random.Random(0), noise=0.3)
    assert dep.dialect is ELNDT
    assert check_proof(dep).ok
    assert vet(dep) is dep
    for s, _ in dep.lines:
        for f in s.formulas():
            assert all(g.kind != T.PDEC for g in T.subnodes(f))


def test_corpus_properties():
    corpus = S.make_corpus(4, seed=13)
    assert len(corpus) == 4
    for dep, seq in corpus:
        assert check_proof(dep).ok
        assert sequent_valid(seq) is None
        assert proof_size(dep) <= 2000


def test_simulate_corpus_small():
    for dep, seq in S.make_corpus(3, seed=5, max_vars=4):
        out = S.simulate(dep)
        assert check_proof(out).ok
        assert out.conclusion.same_tokens(S.repositivize_sequent(dep.conclusion))
        assert out.axioms.check() is None
        assert vet(out) is out
