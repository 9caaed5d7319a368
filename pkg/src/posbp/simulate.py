"""Positive simulation of general-decision proofs over positive sequents.

Pipeline: rewrite a general proof into the negative-literal positive dialect
(decision nodes become disjunctions of positive decisions on dual literals),
strip the rewriting from the positive conclusion, then for every threshold
level substitute counting formulas for the negative literals (threshold-
decision extension variables stand in for decisions on them), eliminate the
threshold initial sequents by bracketing every line between consecutive
thresholds, and cut the bracketed proofs together.
"""

from __future__ import annotations

import random

from .counting import LemmaEngine, S
from .proofbuild import Builder, BuildError
from .search import prove_by_search
from .sequents import (ELNDT, ELNDT_POS, ELNDT_POS_NEG, TK, Proof, Sequent,
                       check_proof, ext_vars_in_sequent)
from .terms import (DEC, EXT, LIT, OR, PDEC, Dec, ExtAxiomSet, Formula, Lit,
                    NegLit, One, Or, PDec, PlainVar, Var, Zero, decision_lit,
                    desugar, is_positive, map_formula)


class SimulateError(Exception):
    pass


# ---------------------------------------------------------------------------
# Negative-literal normal form

def negtrans(f: Formula, memo: dict[int, Formula] | None = None) -> Formula:
    """Positive normal form of a general formula: homomorphic except on
    decisions, which become or(pdec(0,~p,A'), pdec(0,p,B'))."""
    if memo is None:
        memo = {}

    def rule(g):
        if g.kind == PDEC:
            raise SimulateError("input to the rewriting must be decision-general")
        if g.kind == LIT and g.neg:
            raise SimulateError("input already carries negative literals")
        if g.kind == DEC:
            a = memo[g.a.serial]
            b = memo[g.b.serial]
            return Or(PDec(Zero, NegLit(g.var), a), PDec(Zero, Var(g.var), b))
        return None

    return map_formula(f, rule, memo)


def negtrans_axioms(ax: ExtAxiomSet) -> ExtAxiomSet:
    out = ExtAxiomSet()
    memo: dict[int, Formula] = {}
    for ev, body in ax:
        out.add(ev, negtrans(body, memo))
    return out


def negtrans_pos(f: Formula, memo: dict[int, Formula] | None = None) -> Formula:
    """negtrans of the shared-left desugaring, computed directly on positive
    formulas: pdec(A,p,B) maps like dec(A,p,or(A,B))."""
    if memo is None:
        memo = {}

    def rule(g):
        if g.kind == DEC:
            raise SimulateError("positive input expected")
        if g.kind == LIT and g.neg:
            raise SimulateError("positive input expected")
        if g.kind == PDEC:
            a = memo[g.a.serial]
            b = memo[g.b.serial]
            return Or(PDec(Zero, NegLit(g.var), a),
                      PDec(Zero, Var(g.var), Or(a, b)))
        return None

    return map_formula(f, rule, memo)


class MinusEngine(LemmaEngine):
    """Lemma engine over the negative-literal dialect, with the four truth
    conditions for rewritten decisions."""

    def __init__(self, axioms=None, builder=None):
        super().__init__(axioms, dialect=ELNDT_POS_NEG, builder=builder)

    def nt_parts(self, p: int, na: Formula, nb: Formula):
        left = PDec(Zero, NegLit(p), na)
        right = PDec(Zero, Var(p), nb)
        return Or(left, right), left, right

    def nt_truth1(self, p: int, na: Formula, nb: Formula) -> int:
        """N |- na, p   (N the rewritten decision on translated branches)"""
        b = self.b
        n, left, right = self.nt_parts(p, na, nb)
        goal = S((n,), (na, Var(p)))
        hit = self._hit(goal)
        if hit is not None:
            return hit
        pv = Var(p)
        z = b.add(S((Zero,), ()), ("ax0",))
        z1 = b.weaken_to(z, (Zero,), (na, pv))
        ia = b.weaken_to(self.identity(na), (NegLit(p), na), (na, pv))
        l1 = b.add(S((left,), (na, pv)), ("posPL", z1, ia))
        ip = b.weaken_to(b.add(S((pv,), (pv,)), ("id",)), (pv, nb), (na, pv))
        l2 = b.add(S((right,), (na, pv)), ("posPL", z1, ip))
        return b.add(goal, ("orL", l1, l2))

    def nt_truth2(self, p: int, na: Formula, nb: Formula) -> int:
        """N, p |- nb"""
        b = self.b
        n, left, right = self.nt_parts(p, na, nb)
        pv = Var(p)
        goal = S((n, pv), (nb,))
        hit = self._hit(goal)
        if hit is not None:
            return hit
        z = b.add(S((Zero,), ()), ("ax0",))
        z1 = b.weaken_to(z, (pv, Zero), (nb,))
        neg = b.add(S((pv, NegLit(p)), ()), ("negL",))
        n1 = b.weaken_to(neg, (pv, NegLit(p), na), (nb,))
        l1 = b.add(S((pv, left), (nb,)), ("posPL", z1, n1))
        ib = b.weaken_to(self.identity(nb), (pv, pv, nb), (nb,))
        l2 = b.add(S((pv, right), (nb,)), ("posPL", z1, ib))
        return b.add(goal, ("orL", l1, l2))

    def nt_truth3(self, p: int, na: Formula, nb: Formula) -> int:
        """na |- N, p"""
        b = self.b
        n, left, right = self.nt_parts(p, na, nb)
        pv = Var(p)
        goal = S((na,), (n, pv))
        hit = self._hit(goal)
        if hit is not None:
            return hit
        nr = b.add(S((), (pv, NegLit(p))), ("negR",))
        d1 = b.weaken_to(nr, (na,), (pv, Zero, NegLit(p)))
        d2 = b.weaken_to(self.identity(na), (na,), (pv, Zero, na))
        pd = b.add(S((na,), (pv, left)), ("posPR", d1, d2))
        w = b.wR(pd, right)
        return b.add(goal, ("orR", w))

    def nt_truth4(self, p: int, na: Formula, nb: Formula) -> int:
        """p, nb |- N"""
        b = self.b
        n, left, right = self.nt_parts(p, na, nb)
        pv = Var(p)
        goal = S((pv, nb), (n,))
        hit = self._hit(goal)
        if hit is not None:
            return hit
        ip = b.weaken_to(b.add(S((pv,), (pv,)), ("id",)), (pv, nb), (Zero, pv))
        ib = b.weaken_to(self.identity(nb), (pv, nb), (Zero, nb))
        pd = b.add(S((pv, nb), (right,)), ("posPR", ip, ib))
        w = b.wR(pd, left)
        return b.add(goal, ("orR", w))

    # -- equivalence of a positive formula with its rewritten desugaring ------

    def equiv_negtrans(self, f: Formula) -> tuple[int, int]:
        """(f |- negtrans_pos(f), negtrans_pos(f) |- f)"""
        b = self.b
        nf = negtrans_pos(f)
        g_fwd = S((f,), (nf,))
        g_bwd = S((nf,), (f,))
        h1, h2 = self._hit(g_fwd), self._hit(g_bwd)
        if h1 is not None and h2 is not None:
            return h1, h2
        if nf is f:
            i = self.identity(f)
            return i, i
        if f.kind == OR:
            fa, ba = self.equiv_negtrans(f.a)
            fb, bb = self.equiv_negtrans(f.b)
            return (self._or_mono(f, negtrans_pos(f.a), negtrans_pos(f.b), fa, fb),
                    self._or_mono(nf, f.a, f.b, ba, bb))
        assert f.kind == PDEC and not f.neg
        p = f.var
        pv = Var(p)
        a, c = f.a, f.b
        na, nc = negtrans_pos(a), negtrans_pos(c)
        n_or = Or(na, nc)
        fa, ba = self.equiv_negtrans(a)
        # equivalence of or(a, c) with its image
        fc, bc = self.equiv_negtrans(c)
        or_f = self._or_mono(Or(a, c), na, nc, fa, fc)
        or_b = self._or_mono(n_or, a, c, ba, bc)

        # forward: f |- N
        t1 = self.truth1(a, pv, c)                      # f |- a, p
        t2 = self.truth2(a, pv, c)                      # f |- a, c
        t2o = b.add(S((f,), (Or(a, c),)), ("orR", t2))  # f |- or(a,c)
        n3 = self.nt_truth3(p, na, n_or)                # na |- N, p
        e29 = b.cut(S((a,), (negtrans_pos(f), pv)), fa, n3, na)
        n4 = self.nt_truth4(p, na, n_or)                # p, n_or |- N
        e30 = b.cut(S((pv, Or(a, c)), (negtrans_pos(f),)), or_f, n4, n_or)
        nf_ = negtrans_pos(f)
        cA = b.cut(S((f,), (nf_, pv)), t1, e29, a)
        cB = b.cut(S((f, pv), (nf_,)), t2o, e30, Or(a, c))
        fwd = b.cut(g_fwd, cA, cB, pv)

        # backward: N |- f
        t3 = self.truth3(a, pv, c)                      # a |- f
        t4 = self.truth4(a, pv, c)                      # p, c |- f
        n1 = self.nt_truth1(p, na, n_or)                # N |- na, p
        e34 = b.cut(S((nf_,), (a, pv)), n1, ba, na)
        n2 = self.nt_truth2(p, na, n_or)                # N, p |- n_or
        e35 = b.cut(S((nf_, pv), (Or(a, c),)), n2, or_b, n_or)
        pa = b.wL(t3, pv)
        por = b.add(S((pv, Or(a, c)), (f,)), ("orL", pa, t4))
        cA2 = b.cut(S((nf_,), (f, pv)), e34, b.wR(t3, pv), a)
        cB2 = b.cut(S((nf_, pv), (f,)), e35, por, Or(a, c))
        bwd = b.cut(g_bwd, cA2, cB2, pv)
        return fwd, bwd

    def _or_mono(self, src: Formula, ta: Formula, tb: Formula,
                 la: int, lb: int) -> int:
        """src = or(a,b) with a |- ta (la) and b |- tb (lb) gives
        src |- or(ta, tb)."""
        b = self.b
        tgt = Or(ta, tb)
        goal = S((src,), (tgt,))
        hit = self._hit(goal)
        if hit is not None:
            return hit
        a1 = b.wR(la, tb)
        b1 = b.weaken_to(lb, (src.b,), (ta, tb))
        split = b.add(S((src,), (ta, tb)), ("orL", a1, b1))
        return b.add(goal, ("orR", split))


# ---------------------------------------------------------------------------
# Stage 1: general proofs into the negative-literal dialect

_STRUCTURAL = ("cut", "wL", "wR", "cL", "cR", "orL", "orR", "posPL", "posPR")


def translate_to_minus(proof: Proof) -> Proof:
    """Replace every formula by its positive normal form; decision steps are
    simulated by cuts against the rewritten-decision truth conditions."""
    r = check_proof(proof)
    if not r:
        raise SimulateError(f"input does not check: {r}")
    memo: dict[int, Formula] = {}
    nax = negtrans_axioms(proof.axioms)
    eng = MinusEngine(nax)
    b = eng.b
    for tag, seq in proof.hypotheses.items():
        b.hyp(tag, _map_seq(seq, memo))
    remap: list[int] = []
    out = -1
    for seq, just in proof.lines:
        head = just[0]
        nseq = _map_seq(seq, memo, nax)
        if head in _STRUCTURAL and head not in ("posPL", "posPR"):
            out = b.add(nseq, (head, *(remap[j] for j in just[1:])))
        elif head in ("ax0", "ax1", "id", "extLR", "extRL", "hyp"):
            out = b.add(nseq, just)
        elif head == "pL":
            p1, p2 = (remap[j] for j in just[1:])
            out = _sim_pl(eng, proof, seq, memo, p1, p2)
        elif head == "pR":
            p1, p2 = (remap[j] for j in just[1:])
            out = _sim_pr(eng, proof, seq, memo, p1, p2)
        else:
            raise SimulateError(f"unexpected rule {head!r} in a general proof")
        remap.append(out)
    return Proof(ELNDT_POS_NEG, nax, list(b.lines[:out + 1]),
                 dict(b.hypotheses), proof.intermediate)


def _map_seq(seq: Sequent, memo, ax=None) -> Sequent:
    return Sequent(tuple(negtrans(f, memo) for f in seq.ant),
                   tuple(negtrans(f, memo) for f in seq.suc))


def _dec_of(seq_side, kind=DEC):
    for f in seq_side:
        if f.kind == kind:
            yield f


def _sim_pl(eng: MinusEngine, proof: Proof, seq: Sequent, memo, m1: int, m2: int) -> int:
    b = eng.b
    # recover the principal decision: the formula whose translated premises match
    s1 = b.seq(m1)
    s2 = b.seq(m2)
    for f in _dec_of(seq.ant):
        gammad = tuple(negtrans(g, memo) for g in _without(seq.ant, f))
        deltad = tuple(negtrans(g, memo) for g in seq.suc)
        na = negtrans(f.a, memo)
        nb = negtrans(f.b, memo)
        pv = Var(f.var)
        want1 = Sequent(gammad + (na,), deltad + (pv,))
        want2 = Sequent(gammad + (pv, nb), deltad)
        if s1 == want1 and s2 == want2:
            n = negtrans(f, memo)
            tr1 = eng.nt_truth1(f.var, na, nb)
            tr2 = eng.nt_truth2(f.var, na, nb)
            c1 = b.cut(Sequent(gammad + (n,), deltad + (pv,)), tr1, m1, na)
            c2 = b.cut(Sequent(gammad + (n, pv), deltad), tr2, m2, nb)
            return b.add(Sequent(gammad + (n,), deltad), ("cut", c1, c2))
    raise SimulateError("left decision step does not match its premises")


def _sim_pr(eng: MinusEngine, proof: Proof, seq: Sequent, memo, m1: int, m2: int) -> int:
    b = eng.b
    s1 = b.seq(m1)
    s2 = b.seq(m2)
    for f in _dec_of(seq.suc):
        gammad = tuple(negtrans(g, memo) for g in seq.ant)
        deltad = tuple(negtrans(g, memo) for g in _without(seq.suc, f))
        na = negtrans(f.a, memo)
        nb = negtrans(f.b, memo)
        pv = Var(f.var)
        want1 = Sequent(gammad, deltad + (na, pv))
        want2 = Sequent(gammad + (pv,), deltad + (nb,))
        if s1 == want1 and s2 == want2:
            n = negtrans(f, memo)
            tr3 = eng.nt_truth3(f.var, na, nb)
            tr4 = eng.nt_truth4(f.var, na, nb)
            d1 = b.cut(Sequent(gammad, deltad + (n, pv)), m1, tr3, na)
            d2 = b.cut(Sequent(gammad + (pv,), deltad + (n,)), m2, tr4, nb)
            return b.add(Sequent(gammad, deltad + (n,)), ("cut", d1, d2))
    raise SimulateError("right decision step does not match its premises")


def _without(forms, f):
    done = False
    out = []
    for g in forms:
        if g is f and not done:
            done = True
            continue
        out.append(g)
    return tuple(out)


def strip_negtrans(minus: Proof, target: Sequent) -> Proof:
    """From a proof of the rewritten positive sequent, conclude the sequent
    itself by cutting in the structural-induction equivalences."""
    for f in target.formulas():
        if not is_positive(f) or terms_has_dec(f):
            raise SimulateError("target sequent must be positive-decision only")
    if ext_vars_in_sequent(target):
        raise SimulateError("target sequent must be extension-free")
    eng = MinusEngine(minus.axioms)
    b = eng.b
    cur = b.import_proof(minus)
    want = Sequent(tuple(negtrans_pos(f) for f in target.ant),
                   tuple(negtrans_pos(f) for f in target.suc))
    if b.seq(cur) != want:
        raise SimulateError("proof does not conclude the rewritten target")
    ant = list(b.seq(cur).ant)
    suc = list(b.seq(cur).suc)
    for idx, f in enumerate(target.ant):
        nf = negtrans_pos(f)
        if nf is f:
            ant[_index_of(ant, nf)] = f
            continue
        fwd, _ = eng.equiv_negtrans(f)
        pos = _index_of(ant, nf)
        ant[pos] = f
        cur = b.cut(Sequent(tuple(ant), tuple(suc)), fwd, cur, nf)
    for idx, f in enumerate(target.suc):
        nf = negtrans_pos(f)
        if nf is f:
            suc[_index_of(suc, nf)] = f
            continue
        _, bwd = eng.equiv_negtrans(f)
        pos = _index_of(suc, nf)
        suc[pos] = f
        cur = b.cut(Sequent(tuple(ant), tuple(suc)), cur, bwd, nf)
    cur = b.redisplay(cur, target)
    return Proof(ELNDT_POS_NEG, minus.axioms, list(b.lines[:cur + 1]),
                 dict(b.hypotheses), minus.intermediate)


def terms_has_dec(f: Formula) -> bool:
    from .terms import subnodes

    return any(g.kind == DEC for g in subnodes(f))


def _index_of(forms, f) -> int:
    for i, g in enumerate(forms):
        if g is f:
            return i
    raise SimulateError("formula not present")


# ---------------------------------------------------------------------------
# Stage 2: thresholds for negative literals

class SimContext:
    """Fixed data of one simulation run: the source variables in order, the
    threshold words with each variable removed, and per-level namespaces."""

    def __init__(self, variables):
        self.vars = tuple(sorted(set(variables)))

    def without(self, v: int) -> tuple[int, ...]:
        return tuple(u for u in self.vars if u != v)

    @property
    def m(self) -> int:
        return len(self.vars)


def ttrans(f: Formula, k: int, ctx: SimContext, store: ExtAxiomSet,
           source_ax: ExtAxiomSet, memo: dict[int, Formula] | None = None) -> Formula:
    """Substitute level-k thresholds for negative literals: ~p_i becomes the
    k-threshold over the other variables, a positive decision on ~p_i the
    corresponding threshold-decision variable, and plain extension variables
    get level-namespaced copies with translated bodies."""
    if memo is None:
        memo = {}
    ns = f"k{k}"

    def rule(g):
        if g.kind == LIT and g.neg:
            if g.var not in ctx.vars:
                raise SimulateError(f"variable p{g.var} outside the context")
            return store.thr(ctx.without(g.var), k)
        if g.kind == DEC:
            raise SimulateError("general decisions cannot be threshold-substituted")
        if g.kind == PDEC and g.neg:
            a = memo[g.a.serial]
            b = memo[g.b.serial]
            return store.refthr(ctx.without(g.var), k, a, b)
        if g.kind == EXT:
            ev = g.evar
            if not isinstance(ev, PlainVar):
                raise SimulateError("source proofs may only use plain extension variables")
            nev = PlainVar(ev.index, ns)
            if nev not in store:
                body = ttrans(source_ax.body(ev), k, ctx, store, source_ax, memo)
                store.plain(ev.index, body, ns)
            return terms_Ext(nev)
        return None

    return map_formula(f, rule, memo)


def terms_Ext(ev):
    from .terms import Ext

    return Ext(ev)


class RefThrEngine(LemmaEngine):
    """Truth conditions for threshold-decision variables (positive dialect)."""

    def refthr_truth(self, word, k: int, a: Formula, c: Formula,
                     item: int) -> int:
        word = tuple(word)
        b = self.b
        r = self.ax.refthr(word, k, a, c)
        t = self.thr(word, k)
        goals = {
            1: S((r,), (a, t)),
            2: S((r,), (a, c)),
            3: S((a,), (r,)),
            4: S((t, c), (r,)),
        }
        goal = goals[item]
        hit = self._hit(goal)
        if hit is not None:
            return hit
        if not word:
            return self._refthr_base(k, a, c, item, r, t, goal)
        p = Var(word[0])
        rest = word[1:]
        r1 = self.ax.refthr(rest, k, a, c)
        r2 = self.ax.refthr(rest, k - 1, a, c)
        t1 = self.thr(rest, k)
        t2 = self.thr(rest, k - 1)
        body_r = self.ax.body(r.evar)
        if item == 1:
            ih1 = self.refthr_truth(rest, k, a, c, 1)
            ih2 = self.refthr_truth(rest, k - 1, a, c, 1)
            rep = self.replacement((), (a,), r1, t1, r2, t2, p, ih1, ih2)
            body_t = self.ax.body(t.evar)
            mid = b.cut(S((r,), (a, body_t)), b.ext_lr(r.evar), rep, body_r)
            return b.cut(goal, mid, b.ext_rl(t.evar), body_t)
        if item == 2:
            ih1 = self.refthr_truth(rest, k, a, c, 2)
            ih2 = b.wL(self.refthr_truth(rest, k - 1, a, c, 2), p)
            pd = b.add(S((body_r,), (a, c)), ("posPL", ih1, ih2))
            return b.cut(goal, b.ext_lr(r.evar), pd, body_r)
        if item == 3:
            ih1 = self.refthr_truth(rest, k, a, c, 3)
            w1 = b.wR(ih1, p)
            w2 = b.wR(ih1, r2)
            pd = b.add(S((a,), (body_r,)), ("posPR", w1, w2))
            return b.cut(goal, pd, b.ext_rl(r.evar), body_r)
        ih1 = self.refthr_truth(rest, k, a, c, 4)
        ih2 = self.refthr_truth(rest, k - 1, a, c, 4)
        rep = self.replacement((c,), (), t1, r1, t2, r2, p, ih1, ih2)
        body_t = self.ax.body(t.evar)
        mid = b.cut(S((body_t, c), (r,)), rep, b.ext_rl(r.evar), body_r)
        return b.cut(goal, b.ext_lr(t.evar), mid, body_t)

    def _refthr_base(self, k, a, c, item, r, t, goal):
        b = self.b
        if item == 1:
            if k == 0:
                z = self.thr_zero(())
                return b.weaken_to(z, (r,), (a, t))
            lr = b.ext_lr(r.evar)  # r |- a
            return b.wR(lr, t)
        if item == 2:
            if k == 0:
                lr = b.ext_lr(r.evar)  # r |- a v c
                ia = b.wR(self.identity(a), c)
                ic = b.weaken_to(self.identity(c), (c,), (a, c))
                sp = b.add(S((Or(a, c),), (a, c)), ("orL", ia, ic))
                return b.cut(goal, lr, sp, Or(a, c))
            lr = b.ext_lr(r.evar)
            return b.wR(lr, c)
        if item == 3:
            if k == 0:
                up = b.wR(self.identity(a), c)
                orr = b.add(S((a,), (Or(a, c),)), ("orR", up))
                return b.cut(goal, orr, b.ext_rl(r.evar), Or(a, c))
            return b.ext_rl(r.evar)  # a |- r
        if k == 0:
            up = b.weaken_to(self.identity(c), (c,), (a, c))
            orr = b.add(S((c,), (Or(a, c),)), ("orR", up))
            got = b.cut(S((c,), (r,)), orr, b.ext_rl(r.evar), Or(a, c))
            return b.wL(got, t)
        lr = b.ext_lr(t.evar)  # t |- 0
        z = b.add(S((Zero,), ()), ("ax0",))
        absurd = b.cut(S((t,), ()), lr, z, Zero)
        return b.weaken_to(absurd, (t, c), (r,))


# ---------------------------------------------------------------------------
# Stage 2/3: per-level translation and threshold-sequent elimination

def translate_to_Tk(minus: Proof, k: int, ctx: SimContext,
                    store: ExtAxiomSet | None = None) -> Proof:
    """Image of a negative-literal proof at threshold level k; negation
    initial sequents become the threshold initial sequents."""
    store = store if store is not None else ExtAxiomSet()
    eng = RefThrEngine(store, dialect=TK(k, ctx.vars))
    b = eng.b
    memo: dict[int, Formula] = {}

    def tt(f):
        return ttrans(f, k, ctx, store, minus.axioms, memo)

    def tseq(seq):
        return Sequent(tuple(tt(f) for f in seq.ant), tuple(tt(f) for f in seq.suc))

    for tag, seq in minus.hypotheses.items():
        b.hyp(tag, tseq(seq))
    remap: list[int] = []
    out = -1
    for seq, just in minus.lines:
        head = just[0]
        if head in ("posPL", "posPR"):
            p1, p2 = (remap[j] for j in just[1:])
            out = _tk_decision(eng, minus, seq, just, tt, tseq, p1, p2)
        elif head in _STRUCTURAL:
            out = b.add(tseq(seq), (head, *(remap[j] for j in just[1:])))
        elif head in ("ax0", "ax1", "hyp"):
            out = b.add(tseq(seq), just)
        elif head == "id":
            lit = seq.ant[0]
            if lit.neg:
                out = eng.identity(tt(lit))
            else:
                out = b.add(tseq(seq), just)
        elif head in ("negL", "negR"):
            forms = seq.ant if head == "negL" else seq.suc
            v = next(f for f in forms if not f.neg).var
            idx = ctx.vars.index(v)
            pv = Var(v)
            th = store.thr(ctx.without(v), k)
            if head == "negL":
                out = b.add(Sequent((pv, th), ()), ("thrL", idx))
            else:
                out = b.add(Sequent((), (pv, th)), ("thrR", idx))
        elif head in ("extLR", "extRL"):
            ev = just[1]
            tt(terms_Ext(ev))  # ensure the level copy and its body exist
            nev = PlainVar(ev.index, f"k{k}")
            out = b.add(tseq(seq), (head, nev))
        else:
            raise SimulateError(f"unexpected rule {head!r}")
        remap.append(out)
    return Proof(TK(k, ctx.vars), store, list(b.lines[:out + 1]),
                 dict(b.hypotheses), True)


def _tk_decision(eng: RefThrEngine, minus: Proof, seq: Sequent, just: tuple,
                 tt, tseq, m1: int, m2: int) -> int:
    """Translate one positive decision step; decisions on negative literals
    become cut trees against the threshold-decision truth conditions."""
    b = eng.b
    head = just[0]
    side = seq.ant if head == "posPL" else seq.suc
    s1, s2 = b.seq(m1), b.seq(m2)
    for f in side:
        if f.kind != PDEC:
            continue
        lit = decision_lit(f)
        if head == "posPL":
            gamma = _without(seq.ant, f)
            want1 = tseq(Sequent(gamma + (f.a,), seq.suc))
            want2 = tseq(Sequent(gamma + (lit, f.b), seq.suc))
        else:
            delta = _without(seq.suc, f)
            want1 = tseq(Sequent(seq.ant, delta + (f.a, lit)))
            want2 = tseq(Sequent(seq.ant, delta + (f.a, f.b)))
        if s1 != want1 or s2 != want2:
            continue
        if not f.neg:
            return b.add(tseq(seq), (head, m1, m2))
        # decision on a negative literal: its image is an extension variable
        word = tuple(u for u in _ctx_vars(eng) if u != f.var)
        k = eng.b.dialect.tk[0]
        ta, tc = tt(f.a), tt(f.b)
        r = eng.ax.refthr(word, k, ta, tc)
        th = eng.thr(word, k)
        if head == "posPL":
            gd = tuple(tt(g) for g in gamma)
            dd = tuple(tt(g) for g in seq.suc)
            t2 = eng.refthr_truth(word, k, ta, tc, 2)
            inner1 = b.cut(Sequent(gd + (r, th), dd + (ta,)), t2, m2, tc)
            t1 = eng.refthr_truth(word, k, ta, tc, 1)
            inner2 = b.cut(Sequent(gd + (r,), dd + (ta,)), t1, inner1, th)
            return b.cut(Sequent(gd + (r,), dd), inner2, m1, ta)
        gd = tuple(tt(g) for g in seq.ant)
        dd = tuple(tt(g) for g in delta)
        t4 = eng.refthr_truth(word, k, ta, tc, 4)
        inner1 = b.cut(Sequent(gd + (th,), dd + (ta, r)), m2, t4, tc)
        inner2 = b.cut(Sequent(gd, dd + (ta, r)), m1, inner1, th)
        t3 = eng.refthr_truth(word, k, ta, tc, 3)
        return b.cut(Sequent(gd, dd + (r,)), inner2, t3, ta)
    raise SimulateError(f"{head} step does not match its premises")


def _ctx_vars(eng) -> tuple[int, ...]:
    return eng.b.dialect.tk[1]


def eliminate_Tk(tk: Proof, k: int, ctx: SimContext,
                 store: ExtAxiomSet | None = None) -> Proof:
    """Bracket every line between the k- and (k+1)-thresholds over all
    variables; threshold initial sequents become increment lemmas, other
    initial lines are repaired with weakenings."""
    store = store if store is not None else tk.axioms
    eng = RefThrEngine(store, dialect=ELNDT_POS)
    b = eng.b
    tlo = eng.thr(ctx.vars, k)
    thi = eng.thr(ctx.vars, k + 1)
    for tag, seq in tk.hypotheses.items():
        b.hyp(tag, seq)
    remap: list[int] = []
    out = -1
    for seq, just in tk.lines:
        head = just[0]
        tgt = Sequent((tlo,) + seq.ant, seq.suc + (thi,))
        if head in _STRUCTURAL:
            out = b.add(tgt, (head, *(remap[j] for j in just[1:])))
        elif head == "thrL":
            idx = just[1]
            base = eng.incr_left(ctx.vars, idx, k)
            out = b.weaken_to(base, tgt.ant, tgt.suc)
        elif head == "thrR":
            idx = just[1]
            base = eng.incr_right(ctx.vars, idx, k)
            out = b.weaken_to(base, tgt.ant, tgt.suc)
        else:  # initial lines: replay and weaken into the bracket
            base = b.add(seq, just)
            out = b.weaken_to(base, tgt.ant, tgt.suc)
        remap.append(out)
    return Proof(ELNDT_POS, store, list(b.lines[:out + 1]),
                 dict(b.hypotheses), True)


# ---------------------------------------------------------------------------
# The full simulation

def repositivize_sequent(seq: Sequent) -> Sequent:
    from .terms import repositivize

    return Sequent(tuple(repositivize(f) for f in seq.ant),
                   tuple(repositivize(f) for f in seq.suc))


def simulate(proof: Proof, target: Sequent | None = None) -> Proof:
    """Positive proof of the positive reading of a general proof's conclusion.

    The input concludes the shared-left desugaring of the positive sequent
    (general decisions whose 1-branch extends the 0-branch); the output proves
    the positive-decision form itself, token-identically.
    """
    if target is None:
        target = repositivize_sequent(proof.conclusion)
    for f, g in zip(target.formulas(), proof.conclusion.formulas()):
        if desugar(f) is not g:
            raise SimulateError(
                "target is not the positive reading of the conclusion")
    if len(target.ant) != len(proof.conclusion.ant) or \
            len(target.suc) != len(proof.conclusion.suc):
        raise SimulateError("target shape mismatch")
    minus = translate_to_minus(proof)
    stripped = strip_negtrans(minus, target)
    ctx = SimContext(_proof_vars(stripped))
    store = ExtAxiomSet()
    brackets = []
    for k in range(ctx.m + 1):
        tk = translate_to_Tk(stripped, k, ctx, store)
        brackets.append(eliminate_Tk(tk, k, ctx, store))
    eng = LemmaEngine(store, dialect=ELNDT_POS)
    b = eng.b
    acc = eng.thr_zero(ctx.vars)  # |- thr_0
    for k in range(ctx.m + 1):
        bk = b.import_proof(brackets[k])
        tgt = Sequent(target.ant, target.suc + (eng.thr(ctx.vars, k + 1),))
        acc = b.cut(tgt, acc, bk, eng.thr(ctx.vars, k))
    absurd = eng.thr_absurd(ctx.vars, ctx.m + 1)
    final = b.cut(target, acc, absurd, eng.thr(ctx.vars, ctx.m + 1))
    final = b.redisplay(final, target)
    return Proof(ELNDT_POS, store, list(b.lines[:final + 1]), {}, False)


def _proof_vars(proof: Proof) -> set[int]:
    from .sequents import used_ext_vars
    from .terms import free_vars

    vs: set[int] = set()
    for seq, _ in proof.lines:
        for f in seq.formulas():
            vs |= free_vars(f, proof.axioms)
    return vs


# ---------------------------------------------------------------------------
# Corpus: genuine general-decision proofs via de-positivisation

def depositivize(proof: Proof, rng: random.Random | None = None,
                 noise: float = 0.0) -> Proof:
    """Rewrite a positive proof into the general system: formulas are
    desugared with a shared left subterm and every positive decision step is
    expanded into its general-decision derivation; optional seeded structural
    noise appends vacuous weaken/contract detours."""
    dax = ExtAxiomSet()
    for ev, body in proof.axioms:
        dax.add(ev, desugar(body))
    b = Builder(ELNDT, dax, dedup=False)
    for tag, seq in proof.hypotheses.items():
        b.hypotheses[tag] = _ds_seq(seq)
    remap: list[int] = []
    out = -1
    for seq, just in proof.lines:
        head = just[0]
        nseq = _ds_seq(seq)
        if head in ("posPL", "posPR"):
            p1, p2 = (remap[j] for j in just[1:])
            out = _expand_pos_step(b, seq, nseq, head, p1, p2)
        elif head in _STRUCTURAL:
            out = b.add(nseq, (head, *(remap[j] for j in just[1:])))
        else:
            out = b.add(nseq, just)
        remap.append(out)
        if rng is not None and noise > 0 and rng.random() < noise:
            s = b.seq(out)
            if s.ant:
                f = s.ant[rng.randrange(len(s.ant))]
                w = b.add(Sequent(s.ant + (f,), s.suc), ("wL", out))
                b.add(s, ("cL", w))
    return Proof(ELNDT, dax, list(b.lines), dict(b.hypotheses),
                 proof.intermediate)


def _ds_seq(seq: Sequent) -> Sequent:
    return Sequent(tuple(desugar(f) for f in seq.ant),
                   tuple(desugar(f) for f in seq.suc))


def _expand_pos_step(b: Builder, seq: Sequent, nseq: Sequent, head: str,
                     m1: int, m2: int) -> int:
    s1, s2 = b.seq(m1), b.seq(m2)
    side = seq.ant if head == "posPL" else seq.suc
    for f in side:
        if f.kind != PDEC:
            continue
        lit = decision_lit(f)
        if head == "posPL":
            gamma = tuple(desugar(g) for g in _without(seq.ant, f))
            delta = tuple(desugar(g) for g in seq.suc)
            da, db = desugar(f.a), desugar(f.b)
            if s1 != Sequent(gamma + (da,), delta) or \
                    s2 != Sequent(gamma + (lit, db), delta):
                continue
            a = b.add(Sequent(gamma + (da,), delta + (lit,)), ("wR", m1))
            w = b.add(Sequent(gamma + (da, lit), delta), ("wL", m1))
            c = b.add(Sequent(gamma + (lit, Or(da, db)), delta), ("orL", w, m2))
            return b.add(nseq, ("pL", a, c))
        gamma = tuple(desugar(g) for g in seq.ant)
        delta = tuple(desugar(g) for g in _without(seq.suc, f))
        da, db = desugar(f.a), desugar(f.b)
        if s1 != Sequent(gamma, delta + (da, lit)) or \
                s2 != Sequent(gamma, delta + (da, db)):
            continue
        w = b.add(Sequent(gamma + (lit,), delta + (da, db)), ("wL", m2))
        o = b.add(Sequent(gamma + (lit,), delta + (Or(da, db),)), ("orR", w))
        return b.add(nseq, ("pR", m1, o))
    raise SimulateError(f"cannot expand {head} step")


def random_positive_formula(rng: random.Random, vars, depth: int) -> Formula:
    if depth == 0 or rng.random() < 0.25:
        r = rng.random()
        if r < 0.12:
            return Zero
        if r < 0.2:
            return One
        return Var(rng.choice(vars))
    a = random_positive_formula(rng, vars, depth - 1)
    b = random_positive_formula(rng, vars, depth - 1)
    if rng.random() < 0.55:
        return PDec(a, Var(rng.choice(vars)), b)
    return Or(a, b)


def random_valid_positive_sequent(rng: random.Random, vars, depth: int = 3) -> Sequent:
    """Valid by construction: some antecedent member reappears inside a
    succedent disjunction."""
    a = random_positive_formula(rng, vars, depth)
    c = random_positive_formula(rng, vars, depth)
    d = random_positive_formula(rng, vars, depth - 1)
    shape = rng.randrange(3)
    if shape == 0:
        return Sequent((a, c), (Or(d, c),))
    if shape == 1:
        return Sequent((c,), (d, Or(c, a)))
    return Sequent((a, PDec(c, Var(rng.choice(vars)), d)),
                   (Or(PDec(c, Var(rng.choice(vars)), d), a),))


def make_corpus(count: int, seed: int, max_vars: int = 6,
                max_tokens: int = 2000) -> list[tuple[Proof, Sequent]]:
    """Corpus of general-decision proofs of positive sequents: proof search on
    valid positive sequents followed by de-positivisation with noise."""
    from .sequents import proof_size, sequent_valid

    rng = random.Random(seed)
    out: list[tuple[Proof, Sequent]] = []
    seen = set()
    while len(out) < count:
        nv = rng.randrange(2, max_vars + 1)
        vars = list(range(nv))
        seq = random_valid_positive_sequent(rng, vars, depth=rng.randrange(2, 4))
        if seq.key() in seen:
            continue
        assert sequent_valid(seq) is None
        pr, cm = prove_by_search(seq)
        assert cm is None
        dep = depositivize(pr, rng, noise=0.1)
        if proof_size(dep) > max_tokens:
            continue
        seen.add(seq.key())
        out.append((dep, seq))
    return out


# ---------------------------------------------------------------------------
# Spec-level wrappers

def gen_negtrans_truth(a: Formula, p: int, c: Formula,
                       ax: ExtAxiomSet | None = None) -> list[Proof]:
    """The four truth conditions for a rewritten general decision on p, with
    already-rewritten branches a and c."""
    eng = MinusEngine(ax if ax is not None else ExtAxiomSet())
    ids = [eng.nt_truth1(p, a, c), eng.nt_truth2(p, a, c),
           eng.nt_truth3(p, a, c), eng.nt_truth4(p, a, c)]
    return [eng.extract(i) for i in ids]


def instantiate_refthr(word, k: int, a: Formula, c: Formula,
                       store: ExtAxiomSet | None = None) -> ExtAxiomSet:
    store = store if store is not None else ExtAxiomSet()
    store.refthr(word, k, a, c)
    return store


def gen_refthr_truth(word, k: int, a: Formula, c: Formula) -> list[Proof]:
    eng = RefThrEngine(ExtAxiomSet())
    ids = [eng.refthr_truth(word, k, a, c, i) for i in (1, 2, 3, 4)]
    return [eng.extract(i) for i in ids]

