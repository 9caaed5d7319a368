"""Line-by-line proof construction with dag sharing.

The builder deduplicates lines by sequent (multiset key), so a lemma instance
requested twice is derived once and later uses point at the first derivation.
Generators compose through three workhorses: ``weaken_to`` (explicit wL/wR
chains), ``cut`` against an explicit target, and the or-fold helpers.
"""

from __future__ import annotations

import os
from collections import Counter

from .sequents import Proof, Sequent, check_proof
from .terms import OR, ExtAxiomSet, Formula


class BuildError(Exception):
    pass


class Builder:
    def __init__(self, dialect, axioms: ExtAxiomSet | None = None,
                 hypotheses: dict[str, Sequent] | None = None, dedup: bool = True):
        self.dialect = dialect
        self.axioms = axioms if axioms is not None else ExtAxiomSet()
        self.hypotheses = dict(hypotheses or {})
        self.lines: list[tuple[Sequent, tuple]] = []
        self.memo: dict[tuple, int] = {}
        self.dedup = dedup
        self.cache: dict = {}  # free-form memo space for generators

    def __len__(self):
        return len(self.lines)

    def seq(self, i: int) -> Sequent:
        return self.lines[i][0]

    def add(self, seq: Sequent, just: tuple) -> int:
        if self.dedup:
            key = seq.key()
            hit = self.memo.get(key)
            if hit is not None:
                return hit
            self.memo[key] = len(self.lines)
        self.lines.append((seq, just))
        return len(self.lines) - 1

    def hyp(self, tag: str, seq: Sequent | None = None) -> int:
        if seq is not None:
            old = self.hypotheses.get(tag)
            if old is not None and old != seq:
                raise BuildError(f"hypothesis {tag!r} already bound")
            self.hypotheses[tag] = seq
        return self.add(self.hypotheses[tag], ("hyp", tag))

    # -- single-step helpers -------------------------------------------------

    def wL(self, i: int, f: Formula) -> int:
        s = self.seq(i)
        return self.add(Sequent(s.ant + (f,), s.suc), ("wL", i))

    def wR(self, i: int, f: Formula) -> int:
        s = self.seq(i)
        return self.add(Sequent(s.ant, s.suc + (f,)), ("wR", i))

    def cL(self, i: int, f: Formula) -> int:
        s = self.seq(i)
        ant = _remove_once(s.ant, f)
        if ant is None or f not in ant:
            raise BuildError("cL needs a duplicated antecedent formula")
        return self.add(Sequent(ant, s.suc), ("cL", i))

    def cR(self, i: int, f: Formula) -> int:
        s = self.seq(i)
        suc = _remove_once(s.suc, f)
        if suc is None or f not in suc:
            raise BuildError("cR needs a duplicated succedent formula")
        return self.add(Sequent(s.ant, suc), ("cR", i))

    def ext_lr(self, ev) -> int:
        import posbp.terms as terms

        return self.add(Sequent((terms.Ext(ev),), (self.axioms.body(ev),)),
                        ("extLR", ev))

    def ext_rl(self, ev) -> int:
        import posbp.terms as terms

        return self.add(Sequent((self.axioms.body(ev),), (terms.Ext(ev),)),
                        ("extRL", ev))

    # -- compound helpers ----------------------------------------------------

    def weaken_to(self, i: int, ant, suc) -> int:
        """Chain of wL/wR lines from line i up to the given cedents."""
        cur = self.seq(i)
        for f in _extras(ant, cur.ant):
            i = self.wL(i, f)
        for f in _extras(suc, cur.suc):
            i = self.wR(i, f)
        return i

    def cut(self, target: Sequent, i_right: int, i_left: int, cutf: Formula) -> int:
        """Cut on cutf: i_right has it in the succedent, i_left in the
        antecedent; both are weakened to the shared target context first."""
        p1 = self.weaken_to(i_right, target.ant, target.suc + (cutf,))
        p2 = self.weaken_to(i_left, target.ant + (cutf,), target.suc)
        return self.add(target, ("cut", p1, p2))

    def chain(self, i: int, j: int, cutf: Formula, target: Sequent | None = None) -> int:
        """Compose X |- .., cutf and cutf, .. |- Y through a cut; by default the
        target merges both contexts minus the cut formula."""
        if target is None:
            s1, s2 = self.seq(i), self.seq(j)
            ant = s1.ant + _removed(s2.ant, cutf)
            suc = _removed(s1.suc, cutf) + s2.suc
            target = Sequent(ant, suc)
        return self.cut(target, i, j, cutf)

    def or_left(self, tree: Formula, gamma, delta, line_for_leaf) -> int:
        """Derive gamma, tree |- delta from per-leaf lines (left-fold Or tree)."""
        gamma = tuple(gamma)
        delta = tuple(delta)

        def rec(node):
            if node.kind != OR:
                return self.weaken_to(line_for_leaf(node),
                                      gamma + (node,), delta)
            la = rec(node.a)
            lb = rec(node.b)
            return self.add(Sequent(gamma + (node,), delta), ("orL", la, lb))

        return rec(tree)

    def or_right(self, i: int, tree: Formula) -> int:
        """Fold the leaves of tree (present in line i's succedent) into tree."""
        if tree.kind != OR:
            return i
        i = self.or_right(i, tree.a)
        i = self.or_right(i, tree.b)
        s = self.seq(i)
        suc = _remove_once(s.suc, tree.a)
        if suc is None:
            raise BuildError("or_right: missing left leaf")
        suc = _remove_once(suc, tree.b)
        if suc is None:
            raise BuildError("or_right: missing right leaf")
        return self.add(Sequent(s.ant, suc + (tree,)), ("orR", i))

    def redisplay(self, i: int, target: Sequent) -> int:
        """Re-derive a multiset-equal line so it carries the target's exact
        display order (a vacuous weaken/contract pair, bypassing dedup)."""
        if self.seq(i).same_tokens(target):
            return i
        if self.seq(i) != target:
            raise BuildError("redisplay requires multiset-equal sequents")
        if target.ant:
            f = target.ant[0]
            self.lines.append((Sequent(self.seq(i).ant + (f,), self.seq(i).suc),
                               ("wL", i)))
            self.lines.append((target, ("cL", len(self.lines) - 1)))
        elif target.suc:
            f = target.suc[0]
            self.lines.append((Sequent(self.seq(i).ant, self.seq(i).suc + (f,)),
                               ("wR", i)))
            self.lines.append((target, ("cR", len(self.lines) - 1)))
        else:
            raise BuildError("cannot redisplay the empty sequent")
        return len(self.lines) - 1

    def extract(self, concl: int, intermediate: bool = False) -> Proof:
        proof = Proof(self.dialect, self.axioms, list(self.lines[:concl + 1]),
                      dict(self.hypotheses), intermediate)
        if os.environ.get("POSBP_CHECK_BUILD") == "1":
            r = check_proof(proof)
            if not r:
                raise BuildError(f"built proof fails to check: {r}")
        return proof

    def import_proof(self, proof: Proof) -> int:
        """Replay another proof's lines into this builder (premises remapped);
        returns the line id of its conclusion."""
        for tag, seq in proof.hypotheses.items():
            self.hyp(tag, seq)
        remap: list[int] = []
        last = -1
        for seq, just in proof.lines:
            head = just[0]
            if head in ("cut", "wL", "wR", "cL", "cR", "pL", "pR",
                        "posPL", "posPR", "orL", "orR"):
                just = (head, *(remap[j] for j in just[1:]))
            last = self.add(seq, just)
            remap.append(last)
        return last


def prune_proof(proof: Proof) -> Proof:
    """Drop lines the conclusion never references (dag garbage collection)."""
    lines = proof.lines
    keep = [False] * len(lines)
    keep[len(lines) - 1] = True
    for i in range(len(lines) - 1, -1, -1):
        if not keep[i]:
            continue
        just = lines[i][1]
        if just[0] in RULE_HEADS:
            for j in just[1:]:
                keep[j] = True
    remap = {}
    new_lines = []
    for i, (seq, just) in enumerate(lines):
        if not keep[i]:
            continue
        if just[0] in RULE_HEADS:
            just = (just[0], *(remap[j] for j in just[1:]))
        remap[i] = len(new_lines)
        new_lines.append((seq, just))
    return Proof(proof.dialect, proof.axioms, new_lines,
                 dict(proof.hypotheses), proof.intermediate)


RULE_HEADS = ("cut", "wL", "wR", "cL", "cR", "pL", "pR",
              "posPL", "posPR", "orL", "orR")


def _remove_once(forms: tuple, f: Formula) -> tuple | None:
    for idx, g in enumerate(forms):
        if g is f:
            return forms[:idx] + forms[idx + 1:]
    return None


def _removed(forms: tuple, f: Formula) -> tuple:
    out = _remove_once(forms, f)
    if out is None:
        raise BuildError("formula to cut is absent")
    return out


def _extras(target, cur) -> list[Formula]:
    """Formulas of target beyond cur (multiset difference), in target order."""
    need = Counter(target)
    need.subtract(Counter(cur))
    if any(v < 0 for v in need.values()):
        raise BuildError("weaken_to target does not contain the current line")
    out = []
    for f in target:
        if need[f] > 0:
            need[f] -= 1
            out.append(f)
    return out
