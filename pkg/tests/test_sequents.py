import itertools

import pytest

from posbp import terms as T
from posbp.proofbuild import Builder
from posbp.sequents import (ELNDT, ELNDT_POS, ELNDT_POS_NEG, LNDT, TK,
                            CheckResult, Proof, Sequent, check_proof,
                            dialect_by_name, dialect_violation, display_sequent,
                            dnf_to_positive_sequent, dnf_valid, parse_proof,
                            parse_sequent, proof_report, proof_size, proof_text,
                            rule_histogram, sequent_valid, unsound_line)
from conftest import read_fixture, vet

p0, p1, p2 = T.Var(0), T.Var(1), T.Var(2)


def proof_of(dialect, lines, ax=None, hyps=None, intermediate=False):
    return Proof(dialect, ax or T.ExtAxiomSet(), lines, hyps or {}, intermediate)


def test_initial_sequents():
    good = [
        (Sequent((T.Zero,), ()), ("ax0",)),
        (Sequent((), (T.One,)), ("ax1",)),
        (Sequent((p0,), (p0,)), ("id",)),
    ]
    for seq, just in good:
        assert check_proof(proof_of(ELNDT_POS, [(seq, just)], intermediate=True)).ok
    bad = [
        (Sequent((T.Zero, p0), ()), ("ax0",)),
        (Sequent((), (T.One, T.One)), ("ax1",)),
        (Sequent((T.Or(p0, p1),), (T.Or(p0, p1),)), ("id",)),  # not atomic
    ]
    for seq, just in bad:
        assert not check_proof(proof_of(ELNDT_POS, [(seq, just)]))


def test_multiset_contexts_ignore_order():
    lines = [
        (Sequent((p0,), (p0,)), ("id",)),
        (Sequent((p0, p1), (p0,)), ("wL", 0)),
        (Sequent((p1, p0), (p0, p2)), ("wR", 1)),
    ]
    assert check_proof(proof_of(ELNDT_POS, lines, intermediate=True)).ok


def test_cut_mismatch_detected():
    lines = [
        (Sequent((p0,), (p0,)), ("id",)),
        (Sequent((p1,), (p1,)), ("id",)),
        (Sequent((p0, p1), (p0,)), ("cut", 0, 1)),
    ]
    r = check_proof(proof_of(ELNDT_POS, lines))
    assert not r and "cut" in r.reason


def test_contraction_requires_duplicate():
    lines = [
        (Sequent((p0,), (p0,)), ("id",)),
        (Sequent((p0, p0), (p0,)), ("wL", 0)),
        (Sequent((p0,), (p0,)), ("cL", 1)),
    ]
    assert check_proof(proof_of(ELNDT_POS, lines)).ok
    bad = [
        (Sequent((p0,), (p0,)), ("id",)),
        (Sequent((), (p0,)), ("cL", 0)),
    ]
    assert not check_proof(proof_of(ELNDT_POS, bad))


def test_dialect_rule_gating():
    # a pL step is fine under elndt but the formula is rejected under elndt+
    dec = T.Dec(p0, p1, T.Or(p0, p0))
    b = Builder(ELNDT)
    i = b.add(Sequent((p0,), (p0,)), ("id",))
    a = b.wR(i, p1)
    w1 = b.wL(i, p1)
    c = b.add(Sequent((p1, T.Or(p0, p0)), (p0,)), ("orL", w1, w1))
    d = b.add(Sequent((dec,), (p0,)), ("pL", a, c))
    pr = b.extract(d, intermediate=True)
    assert check_proof(pr).ok
    pr_pos = Proof(ELNDT_POS, pr.axioms, pr.lines, {}, True)
    r = check_proof(pr_pos)
    assert not r and "decision" in r.reason


def test_posdec_rules_not_in_elndt():
    f = T.PDec(p0, p1, p2)
    lines = [
        (Sequent((p0,), (p0,)), ("id",)),
        (Sequent((p0,), (p0, p1)), ("wR", 0)),
        (Sequent((p0,), (p0, p2)), ("wR", 0)),
        (Sequent((p0,), (f,)), ("posPR", 1, 2)),
    ]
    assert check_proof(proof_of(ELNDT_POS, lines, intermediate=True)).ok
    r = check_proof(proof_of(ELNDT, lines, intermediate=True))
    assert not r


def test_extension_axiom_lines():
    ax = T.ExtAxiomSet()
    e = ax.plain(0, T.Or(p0, p1))
    lines = [(Sequent((e,), (T.Or(p0, p1),)), ("extLR", e.evar))]
    assert check_proof(proof_of(ELNDT_POS, lines, ax=ax, intermediate=True)).ok
    lines = [(Sequent((e,), (T.Or(p1, p0),)), ("extLR", e.evar))]
    assert not check_proof(proof_of(ELNDT_POS, lines, ax=ax, intermediate=True))


def test_tk_initial_sequents():
    d = TK(2, (0, 1, 2))
    ax = T.ExtAxiomSet()
    th = ax.thr((1, 2), 2)
    lines = [(Sequent((p0, th), ()), ("thrL", 0)),
             (Sequent((), (p0, th)), ("thrR", 0))]
    assert check_proof(proof_of(d, lines, ax=ax, intermediate=True)).ok
    wrong = [(Sequent((p1, th), ()), ("thrL", 0))]
    assert not check_proof(proof_of(d, wrong, ax=ax, intermediate=True))
    # and they are unavailable elsewhere
    assert not check_proof(proof_of(ELNDT_POS, lines, ax=ax, intermediate=True))


def test_neg_axioms_only_in_minus_dialect():
    lines = [(Sequent((p0, T.NegLit(0)), ()), ("negL",))]
    assert check_proof(proof_of(ELNDT_POS_NEG, lines, intermediate=True)).ok
    assert not check_proof(proof_of(ELNDT_POS, lines, intermediate=True))


def test_conclusion_extension_policy():
    ax = T.ExtAxiomSet()
    e = ax.plain(0, T.One)
    lines = [(Sequent((T.One,), (e,)), ("extRL", e.evar))]
    r = check_proof(proof_of(ELNDT_POS, lines, ax=ax))
    assert not r and "conclusion" in r.reason
    assert check_proof(proof_of(ELNDT_POS, lines, ax=ax, intermediate=True)).ok


def test_hypothesis_lines():
    h = Sequent((p0,), (p1,))
    lines = [(Sequent((p0,), (p1,)), ("hyp", "H"))]
    assert check_proof(proof_of(ELNDT_POS, lines, hyps={"H": h})).ok
    assert not check_proof(proof_of(ELNDT_POS, lines, hyps={}))


def test_premise_must_be_earlier():
    lines = [(Sequent((p0, p0), (p0,)), ("wL", 1)),
             (Sequent((p0,), (p0,)), ("id",))]
    assert not check_proof(proof_of(ELNDT_POS, lines, intermediate=True))


def test_proof_size_examples():
    lines = [(Sequent((), (T.One,)), ("ax1",))]
    assert proof_size(proof_of(ELNDT_POS, lines, intermediate=True)) == 2
    lines = [(Sequent((p0,), (p0,)), ("id",))]
    assert proof_size(proof_of(ELNDT_POS, lines, intermediate=True)) == 3
    lines = [(Sequent((p0, p1), (T.PDec(T.Zero, p0, p1),)), ("hyp", "H"))]
    # p0, p1 |- pdec(0,p0,p1): 1+1+1(comma)+1(arrow)+5 = 9
    assert proof_size(proof_of(ELNDT_POS, lines,
                               hyps={"H": lines[0][0]}, intermediate=True)) == 9


def test_sequent_valid():
    assert sequent_valid(Sequent((T.Zero,), ())) is None
    cm = sequent_valid(Sequent((p0,), (p1,)))
    assert cm == {0: 1, 1: 0}
    ax = T.ExtAxiomSet()
    th = ax.thr((0, 1), 1)
    assert sequent_valid(Sequent((p0,), (th,)), ax) is None
    assert sequent_valid(Sequent((th,), (p0,)), ax) == {0: 0, 1: 1}


def test_dialect_violation_memo():
    assert dialect_violation(ELNDT_POS, T.NegLit(0))
    assert dialect_violation(ELNDT_POS, T.NegLit(0))  # cached path
    assert dialect_violation(LNDT, T.Ext(T.PlainVar(0)))
    assert dialect_violation(ELNDT_POS, T.Dec(p0, p1, T.Or(p0, p1)))
    assert dialect_violation(ELNDT_POS_NEG,
                             T.PDec(p0, T.NegLit(1), p1)) is None


def test_dialect_names_roundtrip():
    for d in (LNDT, ELNDT, ELNDT_POS, ELNDT_POS_NEG, TK(3, (0, 2, 5))):
        assert dialect_by_name(str(d)) == d


def test_proof_text_roundtrip_with_counting_names():
    from posbp.counting import gen_merge

    pr = gen_merge((0,), (1,), 1, 0)
    text = proof_text(pr)
    pr2 = parse_proof(text)
    assert check_proof(pr2).ok
    assert proof_size(pr2) == proof_size(pr)
    assert proof_text(pr2) == text
    assert len(pr2.lines) == len(pr.lines)


def test_fixture_proofs_check(fixtures_dir):
    for name in ("truth1", "truth2", "truth3", "truth4",
                 "ntruth1", "ntruth2", "ntruth3", "ntruth4"):
        pr = parse_proof(read_fixture(f"{name}.proof"))
        vet(pr)


def test_fixture_mutations_fail(fixtures_dir):
    for name in ("truth1", "ntruth3"):
        pr = parse_proof(read_fixture(f"{name}.proof"))
        for i, (seq, just) in enumerate(pr.lines):
            if just[0] in ("id", "ax0", "ax1", "negL", "negR"):
                continue
            for slot in range(1, len(just)):
                for alt in range(i):
                    if alt == just[slot]:
                        continue
                    mutated = list(pr.lines)
                    njust = list(just)
                    njust[slot] = alt
                    mutated[i] = (seq, tuple(njust))
                    r = check_proof(Proof(pr.dialect, pr.axioms, mutated,
                                          dict(pr.hypotheses), pr.intermediate))
                    assert not r, f"{name} L{i} slot {slot} -> {alt} still checks"


def test_report_shapes():
    from posbp.counting import gen_identity

    pr = gen_identity(T.Or(p0, p1))
    rep = proof_report(pr)
    assert rep["schema"] == 1
    assert rep["lines"] == len(pr.lines)
    assert sum(rule_histogram(pr).values()) == len(pr.lines)


def test_dnf_encoding_examples():
    seq, primed = dnf_to_positive_sequent([[(0, False), (1, True)],
                                           [(0, True), (1, False)]])
    assert len(seq.ant) == 2 and len(seq.suc) == 2
    assert display_sequent(seq) == (
        "or(p0, p2), or(p1, p3) |- pdec(0, p0, p3), pdec(0, p2, p1)")
    # single positive term
    seq2, _ = dnf_to_positive_sequent([[(0, False)]])
    assert display_sequent(seq2) == "or(p0, p1) |- p0"
    # tautological input stays valid
    seq3, _ = dnf_to_positive_sequent([[(0, False)], [(0, True)]])
    assert dnf_valid([[(0, False)], [(0, True)]])
    assert sequent_valid(seq3) is None


def test_dnf_equivalidity_random():
    import random

    rng = random.Random(3)
    for _ in range(150):
        nv = rng.randrange(1, 5)
        dnf = [[(rng.randrange(nv), rng.random() < 0.5)
                for _ in range(rng.randrange(1, 4))]
               for _ in range(rng.randrange(1, 5))]
        seq, _ = dnf_to_positive_sequent(dnf)
        assert dnf_valid(dnf) == (sequent_valid(seq) is None)
