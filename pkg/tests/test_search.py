import itertools

import pytest

from posbp import terms as T
from posbp.search import SearchError, prove_by_search
from posbp.sequents import Sequent, check_proof, sequent_valid
from conftest import vet

p, q, r = T.Var(0), T.Var(1), T.Var(2)


def test_simple_or():
    pr, cm = prove_by_search(Sequent((p,), (T.Or(p, q),)))
    assert cm is None
    vet(pr)
    assert len(pr.lines) <= 4
    assert pr.conclusion.same_tokens(Sequent((p,), (T.Or(p, q),)))


def refutes(seq, cm, ax=None):
    ax = ax or T.EMPTY_AXIOMS
    return (all(T.evaluate(f, ax, cm) == 1 for f in seq.ant)
            and all(T.evaluate(f, ax, cm) == 0 for f in seq.suc))


def test_countermodel():
    pr, cm = prove_by_search(Sequent((), (p,)))
    assert pr is None and cm == {0: 0}
    seq = Sequent((T.Or(p, q),), (p,))
    pr, cm = prove_by_search(seq)
    assert pr is None and refutes(seq, cm)


def test_pdec_equivalence_with_variable():
    f = T.PDec(T.Zero, p, T.One)
    for seq in (Sequent((f,), (p,)), Sequent((p,), (f,))):
        pr, cm = prove_by_search(seq)
        assert cm is None
        vet(pr)


def test_rejects_non_positive():
    with pytest.raises(SearchError):
        prove_by_search(Sequent((T.Dec(p, q, r),), ()))


def test_extension_unwinding():
    ax = T.ExtAxiomSet()
    e = ax.plain(0, T.Or(p, q))
    pr, cm = prove_by_search(Sequent((p,), (e,)), ax)
    assert cm is None
    vet(pr)
    pr, cm = prove_by_search(Sequent((e,), (p, q)), ax)
    assert cm is None
    vet(pr)
    seq = Sequent((e,), (p,))
    pr, cm = prove_by_search(seq, ax)
    assert pr is None and refutes(seq, cm, ax)


def test_threshold_goals_via_unwinding():
    ax = T.ExtAxiomSet()
    th = ax.thr((0, 1), 1)
    pr, cm = prove_by_search(Sequent((p,), (th,)), ax)
    assert cm is None
    vet(pr)


def formula_pool(vars, depth):
    pool = [T.Zero, T.One] + [T.Var(v) for v in vars]
    for _ in range(depth):
        newly = []
        for a, b in itertools.product(pool, repeat=2):
            newly.append(T.Or(a, b))
        for a in pool:
            for v in vars:
                for b in pool:
                    newly.append(T.PDec(a, T.Var(v), b))
        pool = [T.Zero, T.One] + [T.Var(v) for v in vars] + newly
    return pool


def test_search_agrees_with_oracle_exhaustive_small():
    # every 1-vs-1 sequent over the depth-1 pool on two variables
    pool = formula_pool((0, 1), 1)
    for a, b in itertools.product(pool, repeat=2):
        seq = Sequent((a,), (b,))
        pr, cm = prove_by_search(seq)
        want = sequent_valid(seq)
        if want is None:
            assert cm is None
            assert check_proof(pr).ok
        else:
            assert pr is None
            # the returned assignment indeed refutes
            assert T.evaluate(a, T.EMPTY_AXIOMS, cm) == 1
            assert T.evaluate(b, T.EMPTY_AXIOMS, cm) == 0


def test_search_deterministic():
    seq = Sequent((T.Or(p, q), T.PDec(T.Zero, r, p)), (T.Or(q, p),))
    a, _ = prove_by_search(seq)
    b, _ = prove_by_search(seq)
    from posbp.sequents import proof_text

    assert proof_text(a) == proof_text(b)
