"""Cut-free proof search for positive sequents.

All logical rules of the positive system are invertible, so the search simply
decomposes the leftmost non-atomic formula (antecedent first) bottom-up.  At
connective-free sequents it closes with an initial sequent plus weakenings,
unwinds the leftmost extension variable through its axiom when one is present,
or reads off a countermodel.  Any countermodel of a premise is one of the
conclusion, so failure propagates without backtracking.
"""

from __future__ import annotations

import sys

from .proofbuild import Builder
from .sequents import ELNDT_POS, Proof, Sequent, ext_vars_in_sequent
from .terms import (EXT, LIT, OR, PDEC, ZERO_KIND, ExtAxiomSet, Formula, One,
                    Zero, decision_lit, is_positive)


class SearchError(Exception):
    pass


class Countermodel(Exception):
    def __init__(self, assignment):
        self.assignment = assignment
        super().__init__(f"countermodel {assignment}")


def _atomic(f: Formula) -> bool:
    return f.kind not in (OR, PDEC)


def prove_by_search(seq: Sequent, ax: ExtAxiomSet | None = None,
                    builder: Builder | None = None,
                    max_lines: int = 2_000_000):
    """A checkable positive proof of seq, or the countermodel that refutes it.

    Returns (proof, None) on success and (None, assignment) otherwise.  With a
    shared builder the proof reuses previously derived lines and the caller is
    expected to extract proofs itself.
    """
    if ax is None:
        ax = ExtAxiomSet() if builder is None else builder.axioms
    for f in seq.formulas():
        if not is_positive(f):
            raise SearchError(f"search requires positive formulas: {f!r}")
    b = builder if builder is not None else Builder(ELNDT_POS, ax)
    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, 100_000))
    try:
        i = _search(b, seq, max_lines)
    except Countermodel as cm:
        return None, cm.assignment
    finally:
        sys.setrecursionlimit(old)
    if builder is not None:
        return i, None
    i = b.redisplay(i, seq)
    return b.extract(i, intermediate=ext_vars_in_sequent(seq)), None


def _search(b: Builder, seq: Sequent, max_lines: int) -> int:
    hit = b.memo.get(seq.key())
    if hit is not None:
        return hit
    if len(b.lines) > max_lines:
        raise SearchError("search exceeded the line budget")

    ant, suc = seq.ant, seq.suc

    for pos, f in enumerate(ant):
        if _atomic(f):
            continue
        rest = ant[:pos] + ant[pos + 1:]
        if f.kind == OR:
            i = _search(b, Sequent(rest + (f.a,), suc), max_lines)
            j = _search(b, Sequent(rest + (f.b,), suc), max_lines)
            return b.add(seq, ("orL", i, j))
        lit = decision_lit(f)
        i = _search(b, Sequent(rest + (f.a,), suc), max_lines)
        j = _search(b, Sequent(rest + (lit, f.b), suc), max_lines)
        return b.add(seq, ("posPL", i, j))

    for pos, f in enumerate(suc):
        if _atomic(f):
            continue
        rest = suc[:pos] + suc[pos + 1:]
        if f.kind == OR:
            i = _search(b, Sequent(ant, rest + (f.a, f.b)), max_lines)
            return b.add(seq, ("orR", i))
        lit = decision_lit(f)
        i = _search(b, Sequent(ant, rest + (f.a, lit)), max_lines)
        j = _search(b, Sequent(ant, rest + (f.a, f.b)), max_lines)
        return b.add(seq, ("posPR", i, j))

    # connective-free: close, unwind, or refute
    if any(f is Zero for f in ant):
        return b.weaken_to(b.add(Sequent((Zero,), ()), ("ax0",)), ant, suc)
    if any(f is One for f in suc):
        return b.weaken_to(b.add(Sequent((), (One,)), ("ax1",)), ant, suc)
    lits = {f for f in ant if f.kind == LIT}
    for f in suc:
        if f in lits:
            return b.weaken_to(b.add(Sequent((f,), (f,)), ("id",)), ant, suc)

    for pos, f in enumerate(ant):
        if f.kind == EXT:
            body = b.axioms.body(f.evar)
            sub = _search(b, Sequent(ant[:pos] + ant[pos + 1:] + (body,), suc),
                          max_lines)
            p2 = b.weaken_to(sub, ant + (body,), suc)
            p1 = b.weaken_to(b.ext_lr(f.evar), ant, suc + (body,))
            return b.add(seq, ("cut", p1, p2))
    for pos, f in enumerate(suc):
        if f.kind == EXT:
            body = b.axioms.body(f.evar)
            sub = _search(b, Sequent(ant, suc[:pos] + suc[pos + 1:] + (body,)),
                          max_lines)
            p1 = b.weaken_to(sub, ant, suc + (body,))
            p2 = b.weaken_to(b.ext_rl(f.evar), ant + (body,), suc)
            return b.add(seq, ("cut", p1, p2))

    cm = {f.var: 0 for f in suc if f.kind == LIT}
    cm.update((f.var, 1) for f in ant if f.kind == LIT)
    raise Countermodel(cm)
