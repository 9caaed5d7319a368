import itertools

import pytest

from posbp import counting as C
from posbp import terms as T
from posbp.sequents import Sequent, check_proof, proof_size, sequent_valid
from posbp.tables import popcount_table, truth_table
from conftest import vet

p, q, r = T.Var(0), T.Var(1), T.Var(2)


def test_counting_semantics_anchor():
    ax = T.ExtAxiomSet()
    for n in range(0, 6):
        word = tuple(range(n))
        for k in range(-1, n + 3):
            tt = truth_table(ax.thr(word, k), ax, vars=word)
            if k >= 0:
                assert tt.bits == popcount_table(word, k, True).bits
            else:
                assert tt.bits == 0  # the positive-closure convention
            te = truth_table(ax.exact(word, k), ax, vars=word)
            assert te.bits == popcount_table(word, k, False).bits


def test_thr_matches_closed_exact_obdd():
    from posbp.bp import build_exact_obdd, nbp_to_endt, positive_closure

    for n in range(1, 5):
        for k in range(0, n + 1):
            f, axg = nbp_to_endt(positive_closure(build_exact_obdd(n, k)))
            ax = T.ExtAxiomSet()
            assert truth_table(f, axg, vars=tuple(range(n))).bits == \
                truth_table(ax.thr(tuple(range(n)), k), ax,
                            vars=tuple(range(n))).bits


def test_identity_atomic_and_compound():
    vet(C.gen_identity(p))
    vet(C.gen_identity(T.Zero))
    vet(C.gen_identity(T.One))
    vet(C.gen_identity(T.Or(p, T.PDec(T.Zero, q, T.One))))


def test_identity_follows_posdec_shape():
    pr = C.gen_identity(T.PDec(p, q, r))
    vet(pr)
    hist = {}
    for _, just in pr.lines:
        hist[just[0]] = hist.get(just[0], 0) + 1
    assert hist.get("posPL") == 1 and hist.get("posPR") == 2
    assert hist.get("id") == 3


def test_identity_line_budget_is_cone_bound():
    ax = T.ExtAxiomSet()
    f = ax.thr((0, 1, 2, 3), 2)
    e = C.LemmaEngine(ax)
    i = e.identity(f)
    pr = e.extract(i)
    vet(pr, sound=True)
    ids = sum(1 for s, _ in pr.lines
              if len(s.ant) == 1 and len(s.suc) == 1 and s.ant[0] is s.suc[0])
    cone = 1 + sum(1 + len(list(T.subnodes(body))) for _, body in ax)
    assert ids <= cone


def test_truth_conditions():
    a = T.Or(p, q)
    b = T.PDec(T.Zero, r, p)
    for i, pr in enumerate(C.gen_truth(a, r, b)):
        vet(pr)
    # degenerate instantiation a = b
    e = C.LemmaEngine()
    line = e.truth1(a, r, a)
    vet(e.extract(line))
    # explicit instance of the a-side truth condition on constants
    e2 = C.LemmaEngine()
    line = e2.truth3(T.Zero, p, T.One)
    pr = e2.extract(line)
    vet(pr)
    assert pr.conclusion.same_tokens(
        Sequent((T.Zero,), (T.PDec(T.Zero, p, T.One),)))


def test_replacement_degenerates_to_identity_shape():
    e = C.LemmaEngine()
    ia = e.identity(p)
    ic = e.identity(q)
    line = e.replacement((), (), p, p, q, q, r, ia, ic)
    pr = e.extract(line)
    vet(pr)
    f = T.PDec(p, r, q)
    assert pr.conclusion == Sequent((f,), (f,))


def test_replacement_with_hypotheses():
    pr = C.gen_replacement((r,), (), p, T.Or(p, q), q, T.Or(q, p), T.Var(5))
    assert check_proof(pr).ok
    assert "H0" in pr.hypotheses and "H1" in pr.hypotheses


def test_medial_both_directions():
    A, B, Cc, D = p, q, r, T.Var(3)
    fwd, bwd = C.gen_pos_medial(A, B, Cc, D, T.Var(4), T.Var(5))
    vet(fwd)
    vet(bwd)
    lhs = T.PDec(T.PDec(A, T.Var(5), B), T.Var(4), T.PDec(Cc, T.Var(5), D))
    rhs = T.PDec(T.PDec(A, T.Var(4), Cc), T.Var(5), T.PDec(B, T.Var(4), D))
    assert fwd.conclusion == Sequent((lhs,), (rhs,))
    assert bwd.conclusion == Sequent((rhs,), (lhs,))


def test_medial_with_threshold_arguments():
    ax = T.ExtAxiomSet()
    e = C.LemmaEngine(ax)
    args = (ax.thr((0,), 1), ax.thr((0,), 0), ax.thr((0,), 0), ax.thr((0,), -1))
    f, b = e.medial(*args, T.Var(1), T.Var(2))
    vet(e.extract(f))
    vet(e.extract(b))


def test_thr_monotone():
    z, d, a = C.gen_thr_monotone((0, 1, 2), 4)
    vet(z)
    assert z.conclusion == Sequent((), (T.Ext(T.ThrVar((0, 1, 2), 0)),))
    vet(d)
    vet(a)
    a_seq = a.conclusion
    assert a_seq.suc == () and a_seq.ant[0].evar == T.ThrVar((0, 1, 2), 4)
    # k = 0 special instance and the empty-word base
    _, d0, _ = C.gen_thr_monotone((0, 1), 0)
    vet(d0)
    z_eps, d_eps, a_eps = C.gen_thr_monotone((), 1)
    vet(z_eps)
    vet(d_eps)
    vet(a_eps)


def test_thr_absurd_negative_k():
    e = C.LemmaEngine()
    line = e.thr_absurd((0, 1), -1)
    vet(e.extract(line))


def test_case_analysis():
    fwd, bwd = C.gen_case_analysis((0,), 1, (2,), 1)
    vet(fwd)
    vet(bwd)
    tl = T.ThrVar((0, 1, 2), 1)
    tr = T.ThrVar((1, 0, 2), 1)
    assert fwd.conclusion == Sequent((T.Ext(tl),), (T.Ext(tr),))
    # empty prefix degenerates to identity
    f2, b2 = C.gen_case_analysis((), 1, (0,), 2)
    assert f2.conclusion == b2.conclusion
    vet(f2)
    # k = 0: both sides provable outright, equivalence still checks
    f3, b3 = C.gen_case_analysis((0, 1), 2, (), 0)
    vet(f3)
    vet(b3)


def test_symmetry():
    fwd, bwd = C.gen_symmetry((0, 1, 2), (2, 1, 0), 2)
    vet(fwd)
    vet(bwd)
    assert fwd.conclusion == Sequent((T.Ext(T.ThrVar((0, 1, 2), 2)),),
                                     (T.Ext(T.ThrVar((2, 1, 0), 2)),))
    idp, _ = C.gen_symmetry((0, 1), (0, 1), 1)
    assert idp.conclusion == Sequent((T.Ext(T.ThrVar((0, 1), 1)),),
                                     (T.Ext(T.ThrVar((0, 1), 1)),))
    # truth tables of both sides agree on every permutation instance
    ax = T.ExtAxiomSet()
    for perm in itertools.permutations((0, 1, 2)):
        t1 = truth_table(ax.thr((0, 1, 2), 2), ax, vars=(0, 1, 2))
        t2 = truth_table(ax.thr(perm, 2), ax, vars=(0, 1, 2))
        assert t1.bits == t2.bits


def test_merge_split_instances():
    vet(C.gen_merge((), (1,), 0, 1))
    vet(C.gen_merge((0,), (1,), 1, 1))
    vet(C.gen_split((0,), (1,), 0, 1))
    m = C.gen_merge((0, 1), (2, 3), 1, 2)
    vet(m)
    assert m.conclusion == Sequent(
        (T.Ext(T.ThrVar((0, 1), 1)), T.Ext(T.ThrVar((2, 3), 2))),
        (T.Ext(T.ThrVar((0, 1, 2, 3), 3)),))
    s = C.gen_split((0, 1), (2,), 1, 1)
    vet(s)
    assert s.conclusion == Sequent(
        (T.Ext(T.ThrVar((0, 1, 2), 2)),),
        (T.Ext(T.ThrVar((0, 1), 2)), T.Ext(T.ThrVar((2,), 1))))
    # absurd-side bases
    vet(C.gen_merge((0,), (1,), 2, 1))


def test_unit_thr():
    fwd, bwd, member = C.gen_unit_thr(1, (0, 1, 2))
    vet(fwd)
    vet(bwd)
    vet(member)
    assert member.conclusion == Sequent((q,), (T.Ext(T.ThrVar((0, 1, 2), 1)),))
    # degenerate single-variable word
    fwd1, bwd1, member1 = C.gen_unit_thr(0, (0,))
    vet(member1)
    with pytest.raises(C.BuildError):
        C.gen_unit_thr(7, (0, 1))


def test_two_in_hole():
    pr0 = C.gen_two_in_hole(())
    vet(pr0)
    assert pr0.conclusion == Sequent((T.Ext(T.ThrVar((), 2)),), ())
    pr2 = C.gen_two_in_hole((0, 1))
    vet(pr2)
    assert pr2.conclusion == Sequent(
        (T.Ext(T.ThrVar((0, 1), 2)),), (T.PDec(T.Zero, p, q),))
    vet(C.gen_two_in_hole((0, 1, 2)))


def test_thresh_increment():
    left, right = C.gen_thresh_increment((0,), 0, 0)
    vet(left)
    vet(right)
    assert left.conclusion == Sequent((p, T.Ext(T.ThrVar((), 0))),
                                      (T.Ext(T.ThrVar((0,), 1)),))
    l2, r2 = C.gen_thresh_increment((0, 1, 2), 1, 1)
    vet(l2)
    vet(r2)
    # vacuous high thresholds still check
    l3, r3 = C.gen_thresh_increment((0, 1), 0, 3)
    vet(l3)
    vet(r3)


def test_generated_sizes_are_deterministic():
    a = proof_size(C.gen_two_in_hole((0, 1, 2)))
    b = proof_size(C.gen_two_in_hole((0, 1, 2)))
    assert a == b


def test_shared_store_requests_lemma_once():
    e = C.LemmaEngine()
    i1 = e.thr_decr((0, 1), 1)
    before = len(e.b.lines)
    i2 = e.thr_decr((0, 1), 1)
    assert i1 == i2 and len(e.b.lines) == before
