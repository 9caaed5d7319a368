"""The pigeonhole sequent and its generated three-stage proof.

Variables p_{i,j} ("pigeon i sits in hole j", 1-based) are flattened to
indices (i-1)*n + (j-1).  The proof cuts together: left side to an
(n+1)-threshold over all variables, a symmetry step to the transposed variable
order, and the transposed threshold to the two-pigeons-in-a-hole disjunction.
"""

from __future__ import annotations

from .counting import LemmaEngine, S
from .proofbuild import Builder, prune_proof
from .sequents import Proof, Sequent
from .terms import Formula, Or, PDec, Var, Zero, or_fold


class PhpInstance:
    def __init__(self, n: int):
        if n < 1:
            raise ValueError("pigeonhole instances need n >= 1")
        self.n = n

    def var(self, i: int, j: int) -> int:
        return (i - 1) * self.n + (j - 1)

    def row(self, i: int) -> tuple[int, ...]:
        return tuple(self.var(i, j) for j in range(1, self.n + 1))

    def col(self, j: int) -> tuple[int, ...]:
        return tuple(self.var(i, j) for i in range(1, self.n + 2))

    @property
    def word(self) -> tuple[int, ...]:
        return tuple(v for i in range(1, self.n + 2) for v in self.row(i))

    @property
    def word_t(self) -> tuple[int, ...]:
        return tuple(v for j in range(1, self.n + 1) for v in self.col(j))

    def lphp(self) -> tuple[Formula, ...]:
        return tuple(or_fold([Var(v) for v in self.row(i)])
                     for i in range(1, self.n + 2))

    def hole_pairs(self, j: int) -> tuple[Formula, ...]:
        col = self.col(j)
        return tuple(PDec(Zero, Var(col[i]), Var(col[i2]))
                     for i in range(len(col)) for i2 in range(i + 1, len(col)))

    def rphp(self) -> Formula:
        leaves = [f for j in range(1, self.n + 1) for f in self.hole_pairs(j)]
        return or_fold(leaves)


def php_sequent(n: int) -> Sequent:
    inst = PhpInstance(n)
    return Sequent(inst.lphp(), (inst.rphp(),))


def _left(e: LemmaEngine, inst: PhpInstance) -> int:
    b = e.b
    n = inst.n
    rows = [inst.row(i) for i in range(1, n + 2)]
    lphp = inst.lphp()
    row_lines = []
    for i, row in enumerate(rows):
        member = {inst.var(i + 1, j): e.unit_member(row, j - 1)
                  for j in range(1, n + 1)}
        t_row = e.thr(row, 1)
        row_lines.append(b.or_left(lphp[i], (), (t_row,),
                                   lambda leaf, m=member: m[leaf.var]))
    # merge the per-row unit thresholds into the full (n+1)-threshold
    singles = [e.thr(row, 1) for row in rows]
    acc = e.identity(singles[0])
    concat: tuple[int, ...] = rows[0]
    for t in range(1, n + 1):
        m = e.merge(concat, rows[t], t, 1)
        target = S(tuple(singles[:t + 1]), (e.thr(concat + rows[t], t + 1),))
        acc = b.cut(target, acc, m, e.thr(concat, t))
        concat = concat + rows[t]
    goal_thr = e.thr(inst.word, n + 1)
    # replace each unit threshold by its row disjunction
    for t in range(n + 1):
        cur = b.seq(acc)
        ant = lphp[:t + 1] + tuple(singles[t + 1:])
        acc = b.cut(S(ant, (goal_thr,)), row_lines[t], acc, singles[t])
    return acc


def _right(e: LemmaEngine, inst: PhpInstance) -> int:
    b = e.b
    n = inst.n
    cols = [inst.col(j) for j in range(1, n + 1)]
    t_in = e.thr(inst.word_t, n + 1)
    # peel one column at a time: each keeps a 2-threshold
    col2 = [e.thr(col, 2) for col in cols]
    acc = e.identity(t_in)
    rest = inst.word_t
    level = n + 1
    for t in range(n - 1):
        rest_next = rest[len(cols[t]):]
        sp = e.split(cols[t], rest_next, 1, level - 1)
        target = S((t_in,), tuple(col2[:t + 1]) + (e.thr(rest_next, level - 1),))
        acc = b.cut(target, acc, sp, e.thr(rest, level))
        rest = rest_next
        level -= 1
    # now: t_in |- thr(col_1,2), ..., thr(col_n,2)
    pair_sets = [inst.hole_pairs(j) for j in range(1, n + 1)]
    done: tuple[Formula, ...] = ()
    for t in range(n):
        lemma = e.two_in_hole(cols[t])
        target = S((t_in,), done + pair_sets[t] + tuple(col2[t + 1:]))
        acc = b.cut(target, acc, lemma, col2[t])
        done = done + pair_sets[t]
    return b.or_right(acc, inst.rphp())


def build_php(n: int, engine: LemmaEngine | None = None):
    """Returns (engine, left line, transpose line, right line, final line)."""
    inst = PhpInstance(n)
    e = engine if engine is not None else LemmaEngine()
    b = e.b
    left = _left(e, inst)
    tr_f = e.symmetry_dir(inst.word, inst.word_t, n + 1, True)
    right = _right(e, inst)
    t_p = e.thr(inst.word, n + 1)
    t_pt = e.thr(inst.word_t, n + 1)
    goal = php_sequent(n)
    mid = b.cut(S(goal.ant, (t_pt,)), left, tr_f, t_p)
    final = b.cut(goal, mid, right, t_pt)
    assert b.seq(final).same_tokens(goal)
    return e, left, tr_f, right, final


def gen_php_left(n: int) -> Proof:
    e = LemmaEngine()
    return e.extract(_left(e, PhpInstance(n)))


def gen_php_transpose(n: int) -> Proof:
    inst = PhpInstance(n)
    e = LemmaEngine()
    return e.extract(e.symmetry_dir(inst.word, inst.word_t, n + 1, True))


def gen_php_right(n: int) -> Proof:
    e = LemmaEngine()
    return e.extract(_right(e, PhpInstance(n)))


def gen_php(n: int) -> Proof:
    e, *_, final = build_php(n)
    return prune_proof(e.extract(final, intermediate=False))
