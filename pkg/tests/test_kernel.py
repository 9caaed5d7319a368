import random

import pytest

from posbp import terms as T
from posbp.kernel import (OP_DEC, OP_NVAR, OP_ONE, OP_OR, OP_PDEC, OP_PDECN,
                          OP_VAR, OP_ZERO, OracleCapError, PyTape, TableOracle,
                          kernel_name, make_tape, var_mask)
from posbp.tables import table_of_function, truth_table


def test_var_mask_matches_enumeration():
    for n in range(0, 7):
        for j in range(n):
            want = 0
            for i in range(1 << n):
                if (i >> (n - 1 - j)) & 1:
                    want |= 1 << i
            assert var_mask(n, j) == want


def random_program(rng, nvars, size):
    ops = []
    for i in range(size):
        if i < 2 or rng.random() < 0.25:
            if nvars and rng.random() < 0.7:
                ops.append((rng.choice((OP_VAR, OP_NVAR)), rng.randrange(nvars), 0, 0))
            else:
                ops.append((rng.choice((OP_ZERO, OP_ONE)), 0, 0, 0))
        else:
            op = rng.choice((OP_OR, OP_DEC, OP_PDEC, OP_PDECN))
            a, c = rng.randrange(i), rng.randrange(i)
            if op == OP_OR or not nvars:
                ops.append((OP_OR, a, c, 0))
            else:
                ops.append((op, a, rng.randrange(nvars), c))
    return ops


@pytest.mark.parametrize("nvars", [0, 1, 4, 6, 7, 9])
def test_tapes_agree(nvars):
    rng = random.Random(nvars)
    ops = random_program(rng, nvars, 150)
    py = PyTape(nvars)
    other = make_tape(nvars)
    py.run(ops)
    other.run(ops)
    for s in range(len(ops)):
        assert py.mask(s) == other.mask(s)
    for _ in range(40):
        ant = [rng.randrange(len(ops)) for _ in range(rng.randrange(3))]
        suc = [rng.randrange(len(ops)) for _ in range(rng.randrange(3))]
        assert py.countermodel(ant, suc) == other.countermodel(ant, suc)
    jobs = []
    counts, flat = [], []
    for _ in range(25):
        ant = [rng.randrange(len(ops)) for _ in range(rng.randrange(3))]
        suc = [rng.randrange(len(ops)) for _ in range(rng.randrange(3))]
        counts += [len(ant), len(suc)]
        flat += ant + suc
    assert py.countermodel_many(counts, flat) == other.countermodel_many(counts, flat)


def test_oracle_cap():
    with pytest.raises(OracleCapError):
        TableOracle(T.ExtAxiomSet(), tuple(range(17)), cap=16)
    with pytest.raises(ValueError):
        truth_table(T.Var(20), vars=())


def test_oracle_tables_match_evaluation():
    ax = T.ExtAxiomSet()
    f = T.Or(ax.thr((0, 1, 2), 2), T.PDec(T.Zero, T.Var(3), T.NegLit(0)))
    tt = truth_table(f, ax, vars=(0, 1, 2, 3))
    ind = table_of_function(
        (0, 1, 2, 3),
        lambda a: (sum(a[v] for v in (0, 1, 2)) >= 2) or (a[3] and not a[0]))
    assert tt.bits == ind.bits


def test_kernel_name_reports():
    assert kernel_name() in ("cython", "python")
