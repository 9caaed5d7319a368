"""Generators for the basic positive-system lemmas about counting formulas.

Every generator emits explicit checker-level lines into a shared builder, so a
lemma instance needed several times is derived once (dag sharing) and "by X"
chains become explicit cut-plus-weakening sequences against stated targets.
"""

from __future__ import annotations

from .proofbuild import Builder, BuildError, prune_proof
from .search import prove_by_search
from .sequents import ELNDT_POS, Proof, Sequent
from .terms import (EXT, LIT, OR, ExtAxiomSet, Formula, One, Or, PDec, Var,
                    Zero, decision_lit, is_positive, substitute)

# skeleton atoms for the medial law live far above any practical index
_SKEL_BASE = 1 << 32


def S(ant=(), suc=()) -> Sequent:
    return Sequent(ant, suc)


class LemmaEngine:
    """Lemma factory over one builder + axiom store (dialect elndt+ family)."""

    def __init__(self, axioms: ExtAxiomSet | None = None, dialect=ELNDT_POS,
                 builder: Builder | None = None):
        if builder is not None:
            self.b = builder
        else:
            self.b = Builder(dialect, axioms)
        self.ax = self.b.axioms

    # -- word plumbing --------------------------------------------------------

    def thr(self, word, k: int) -> Formula:
        return self.ax.thr(word, k)

    def _hit(self, seq: Sequent):
        return self.b.memo.get(seq.key())

    def extract(self, line: int, intermediate: bool = True) -> Proof:
        return self.b.extract(line, intermediate=intermediate)

    # -- general identity -----------------------------------------------------

    def identity(self, f: Formula) -> int:
        """f |- f; one identity line per subformula in the axiom order."""
        b = self.b
        goal = S((f,), (f,))
        hit = self._hit(goal)
        if hit is not None:
            return hit
        k = f.kind
        if k == LIT:
            return b.add(goal, ("id",))
        if f is Zero:
            return b.wR(b.add(S((Zero,), ()), ("ax0",)), Zero)
        if f is One:
            return b.wL(b.add(S((), (One,)), ("ax1",)), One)
        if k == EXT:
            body = self.ax.body(f.evar)
            ih = self.identity(body)
            lr = b.ext_lr(f.evar)
            rl = b.ext_rl(f.evar)
            mid = b.cut(S((f,), (body,)), lr, ih, body)
            return b.cut(goal, mid, rl, body)
        if k == OR:
            ia = self.identity(f.a)
            ib = self.identity(f.b)
            la = b.wR(ia, f.b)
            lb = b.weaken_to(ib, (f.b,), (f.a, f.b))
            split = b.add(S((f,), (f.a, f.b)), ("orL", la, lb))
            return b.add(goal, ("orR", split))
        # positive decision
        lit = decision_lit(f)
        ia = self.identity(f.a)
        ib = self.identity(f.b)
        il = b.add(S((lit,), (lit,)), ("id",))
        r1 = b.wR(ia, lit)
        r2 = b.wR(ia, f.b)
        r3 = b.add(S((f.a,), (f,)), ("posPR", r1, r2))
        r4 = b.weaken_to(il, (lit, f.b), (f.a, lit))
        r5 = b.weaken_to(ib, (lit, f.b), (f.a, f.b))
        r6 = b.add(S((lit, f.b), (f,)), ("posPR", r4, r5))
        return b.add(goal, ("posPL", r3, r6))

    # -- truth conditions for positive decisions -------------------------------

    def truth1(self, a: Formula, lit: Formula, c: Formula) -> int:
        """pdec(a,lit,c) |- a, lit"""
        b = self.b
        f = PDec(a, lit, c)
        goal = S((f,), (a, lit))
        hit = self._hit(goal)
        if hit is not None:
            return hit
        r1 = b.wR(self.identity(a), lit)
        il = b.add(S((lit,), (lit,)), ("id",))
        r2 = b.weaken_to(il, (lit, c), (a, lit))
        return b.add(goal, ("posPL", r1, r2))

    def truth2(self, a: Formula, lit: Formula, c: Formula) -> int:
        """pdec(a,lit,c) |- a, c"""
        b = self.b
        f = PDec(a, lit, c)
        goal = S((f,), (a, c))
        hit = self._hit(goal)
        if hit is not None:
            return hit
        r1 = b.wR(self.identity(a), c)
        r2 = b.weaken_to(self.identity(c), (lit, c), (a, c))
        return b.add(goal, ("posPL", r1, r2))

    def truth3(self, a: Formula, lit: Formula, c: Formula) -> int:
        """a |- pdec(a,lit,c)"""
        b = self.b
        f = PDec(a, lit, c)
        goal = S((a,), (f,))
        hit = self._hit(goal)
        if hit is not None:
            return hit
        ia = self.identity(a)
        r1 = b.wR(ia, lit)
        r2 = b.wR(ia, c)
        return b.add(goal, ("posPR", r1, r2))

    def truth4(self, a: Formula, lit: Formula, c: Formula) -> int:
        """lit, c |- pdec(a,lit,c)"""
        b = self.b
        f = PDec(a, lit, c)
        goal = S((lit, c), (f,))
        hit = self._hit(goal)
        if hit is not None:
            return hit
        il = b.add(S((lit,), (lit,)), ("id",))
        r1 = b.weaken_to(il, (lit, c), (a, lit))
        r2 = b.weaken_to(self.identity(c), (lit, c), (a, c))
        return b.add(goal, ("posPR", r1, r2))

    # -- replacement inside a positive decision --------------------------------

    def replacement(self, gamma, delta, a, a2, c, c2, lit, h_a: int, h_c: int) -> int:
        """From gamma,a |- delta,a2 and gamma,c |- delta,c2 derive
        gamma, pdec(a,lit,c) |- delta, pdec(a2,lit,c2)."""
        b = self.b
        gamma = tuple(gamma)
        delta = tuple(delta)
        f2 = PDec(a2, lit, c2)
        goal = S(gamma + (PDec(a, lit, c),), delta + (f2,))
        hit = self._hit(goal)
        if hit is not None:
            return hit
        t3 = self.truth3(a2, lit, c2)
        t4 = self.truth4(a2, lit, c2)
        c1 = b.cut(S(gamma + (a,), delta + (f2,)), h_a, t3, a2)
        c2l = b.cut(S(gamma + (lit, c), delta + (f2,)), h_c, t4, c2)
        return b.add(goal, ("posPL", c1, c2l))

    def equiv_replacement(self, a, a2, c, c2, lit, fwd_a, bwd_a, fwd_c, bwd_c):
        """Both directions of pdec(a,lit,c) == pdec(a2,lit,c2) from the four
        one-directional hypotheses on the arguments."""
        f = self.replacement((), (), a, a2, c, c2, lit, fwd_a, fwd_c)
        g = self.replacement((), (), a2, a, c2, c, lit, bwd_a, bwd_c)
        return f, g

    # -- the positive medial law ----------------------------------------------

    def medial(self, A, B, C, D, p_lit, q_lit) -> tuple[int, int]:
        """Both directions of
        pdec(pdec(A,q,B), p, pdec(C,q,D)) == pdec(pdec(A,p,C), q, pdec(B,p,D)),
        by searching the six-atom skeleton once and substituting."""
        return (self.medial_dir(A, B, C, D, p_lit, q_lit, True),
                self.medial_dir(A, B, C, D, p_lit, q_lit, False))

    def medial_dir(self, A, B, C, D, p_lit, q_lit, fwd: bool) -> int:
        lhs = PDec(PDec(A, q_lit, B), p_lit, PDec(C, q_lit, D))
        rhs = PDec(PDec(A, p_lit, C), q_lit, PDec(B, p_lit, D))
        goal = S((lhs,), (rhs,)) if fwd else S((rhs,), (lhs,))
        hit = self._hit(goal)
        if hit is not None:
            return hit
        # a coincident middle pair (the threshold instances) takes the sharper
        # five-atom skeleton; the searched proof is much smaller
        if B is C:
            skel = self._medial_skeleton(fwd, shared_mid=True)
            atoms = (A, B, D)
        else:
            skel = self._medial_skeleton(fwd, shared_mid=False)
            atoms = (A, B, C, D)
        sigma = {_SKEL_BASE + i: img for i, img in enumerate(atoms)}
        sigma[_SKEL_BASE + 4] = p_lit
        sigma[_SKEL_BASE + 5] = q_lit
        line = self._splice(skel, sigma)
        assert self.b.seq(line) == goal
        return line

    def _medial_skeleton(self, fwd: bool, shared_mid: bool):
        key = ("medial-skeleton", fwd, shared_mid)
        skel = self.b.cache.get(key)
        if skel is None:
            if shared_mid:
                a, bb, d = (Var(_SKEL_BASE + i) for i in range(3))
                c = bb
            else:
                a, bb, c, d = (Var(_SKEL_BASE + i) for i in range(4))
            p = Var(_SKEL_BASE + 4)
            q = Var(_SKEL_BASE + 5)
            lhs = PDec(PDec(a, q, bb), p, PDec(c, q, d))
            rhs = PDec(PDec(a, p, c), q, PDec(bb, p, d))
            goal = S((lhs,), (rhs,)) if fwd else S((rhs,), (lhs,))
            skel, cm = prove_by_search(goal)
            assert cm is None
            skel = prune_proof(skel)
            self.b.cache[key] = skel
        return skel

    def _splice(self, proof: Proof, sigma) -> int:
        """Substitute sigma through a searched skeleton proof and replay it;
        identity lines on substituted atoms become general identities."""
        b = self.b
        memo: dict[int, Formula] = {}
        ev_map: dict = {}

        def sub(f):
            return substitute(f, sigma, memo=memo, ev_map=ev_map)

        remap: list[int] = []
        out = -1
        for seq, just in proof.lines:
            if just[0] == "id":
                x = seq.ant[0]
                img = sigma.get(x.var)
                if img is not None and img.kind != LIT:
                    out = self.identity(img)
                    remap.append(out)
                    continue
            nseq = S(tuple(sub(f) for f in seq.ant), tuple(sub(f) for f in seq.suc))
            if just[0] in ("cut", "wL", "wR", "cL", "cR", "posPL", "posPR",
                           "orL", "orR"):
                just = (just[0], *(remap[j] for j in just[1:]))
            out = b.add(nseq, just)
            remap.append(out)
        return out

    # -- threshold monotonicity -----------------------------------------------

    def thr_zero(self, word) -> int:
        """|- thr(word, 0)"""
        word = tuple(word)
        b = self.b
        t0 = self.thr(word, 0)
        goal = S((), (t0,))
        hit = self._hit(goal)
        if hit is not None:
            return hit
        if not word:
            one = b.add(S((), (One,)), ("ax1",))
            rl = b.ext_rl(t0.evar)
            return b.cut(goal, one, rl, One)
        ih = self.thr_zero(word[1:])
        a = self.thr(word[1:], 0)
        c = self.thr(word[1:], -1)
        body = PDec(a, Var(word[0]), c)
        t3 = self.truth3(a, Var(word[0]), c)
        mid = b.cut(S((), (body,)), ih, t3, a)
        rl = b.ext_rl(t0.evar)
        return b.cut(goal, mid, rl, body)

    def thr_decr(self, word, k: int) -> int:
        """thr(word, k+1) |- thr(word, k), for k >= 0."""
        word = tuple(word)
        if k < 0:
            raise BuildError("thr_decr needs k >= 0")
        b = self.b
        hi = self.thr(word, k + 1)
        lo = self.thr(word, k)
        goal = S((hi,), (lo,))
        hit = self._hit(goal)
        if hit is not None:
            return hit
        if k == 0:
            # the uniform step would need the invalid thr_0 |- thr_-1
            return b.wL(self.thr_zero(word), hi)
        if not word:
            lr = b.ext_lr(hi.evar)  # thr_eps_{k+1} |- 0
            z = b.add(S((Zero,), ()), ("ax0",))
            return b.cut(goal, lr, z, Zero)
        p = Var(word[0])
        a_hi = self.thr(word[1:], k + 1)
        a_lo = self.thr(word[1:], k)
        c_lo = self.thr(word[1:], k - 1)
        ih1 = self.thr_decr(word[1:], k)
        ih2 = self.thr_decr(word[1:], k - 1)
        rep = self.replacement((), (), a_hi, a_lo, a_lo, c_lo, p, ih1, ih2)
        lr = b.ext_lr(hi.evar)
        body_hi = self.ax.body(hi.evar)
        body_lo = self.ax.body(lo.evar)
        mid = b.cut(S((hi,), (body_lo,)), lr, rep, body_hi)
        rl = b.ext_rl(lo.evar)
        return b.cut(goal, mid, rl, body_lo)

    def thr_absurd(self, word, k: int) -> int:
        """thr(word, k) |- , for k > len(word) or k < 0."""
        word = tuple(word)
        if 0 <= k <= len(word):
            raise BuildError(f"thr({len(word)} vars, {k}) is not absurd")
        b = self.b
        t = self.thr(word, k)
        goal = S((t,), ())
        hit = self._hit(goal)
        if hit is not None:
            return hit
        if not word:
            lr = b.ext_lr(t.evar)
            z = b.add(S((Zero,), ()), ("ax0",))
            return b.cut(goal, lr, z, Zero)
        a = self.thr(word[1:], k)
        c = self.thr(word[1:], k - 1)
        lr = b.ext_lr(t.evar)
        t2 = self.truth2(a, Var(word[0]), c)
        split = b.cut(S((t,), (a, c)), lr, t2, self.ax.body(t.evar))
        if k < 0:
            ia = self.thr_absurd(word[1:], k)
            ic = self.thr_absurd(word[1:], k - 1)
            no_a = b.cut(S((t,), (c,)), split, ia, a)
            return b.cut(goal, no_a, ic, c)
        # k > len(word): follow the decreasing chain then the inductive hypothesis
        dec = self.thr_decr(word[1:], k - 1)
        two = b.cut(S((t,), (c, c)), split, dec, a)
        one = b.add(S((t,), (c,)), ("cR", two))
        ih = self.thr_absurd(word[1:], k - 1)
        return b.cut(goal, one, ih, c)

    def thr_descend(self, word, k_from: int, k_to: int) -> int:
        """thr(word, k_from) |- thr(word, k_to) for k_from >= k_to >= 0."""
        word = tuple(word)
        if k_from < k_to or k_to < 0:
            raise BuildError("thr_descend needs k_from >= k_to >= 0")
        if k_from == k_to:
            return self.identity(self.thr(word, k_from))
        cur = self.thr_decr(word, k_from - 1)
        for k in range(k_from - 1, k_to, -1):
            nxt = self.thr_decr(word, k - 1)
            cur = self.b.cut(S((self.thr(word, k_from),), (self.thr(word, k - 1),)),
                             cur, nxt, self.thr(word, k))
        return cur

    # -- case analysis and symmetry --------------------------------------------

    def case_analysis(self, pre, q: int, post, k: int) -> tuple[int, int]:
        """Both directions of thr(pre+q+post, k) == thr(q+pre+post, k)."""
        return (self.case_dir(pre, q, post, k, True),
                self.case_dir(pre, q, post, k, False))

    def case_dir(self, pre, q: int, post, k: int, fwd: bool) -> int:
        """One direction of the head-extraction equivalence, by induction on
        pre through the six-formula chain (axioms, inductive replacement,
        axioms again, the medial law, and axioms back)."""
        pre = tuple(pre)
        post = tuple(post)
        b = self.b
        left = self.thr(pre + (q,) + post, k)
        right = self.thr((q,) + pre + post, k)
        goal = S((left,), (right,)) if fwd else S((right,), (left,))
        hit = self._hit(goal)
        if hit is not None:
            return hit
        if left is right:
            return self.identity(left)
        if k < 0:
            src = pre + (q,) + post if fwd else (q,) + pre + post
            tgt = right if fwd else left
            return b.wR(self.thr_absurd(src, k), tgt)
        p, rest = pre[0], pre[1:]
        qv = Var(q)
        pv = Var(p)
        w = rest + post  # tail word with both p and q removed

        def thr_(word, kk):
            return self.thr(word, kk)

        # chain of equivalent formulas, paper-order
        f0 = self.thr(pre + (q,) + post, k)
        f1 = PDec(thr_(rest + (q,) + post, k), pv, thr_(rest + (q,) + post, k - 1))
        f2 = PDec(thr_((q,) + w, k), pv, thr_((q,) + w, k - 1))
        f3 = PDec(PDec(thr_(w, k), qv, thr_(w, k - 1)), pv,
                  PDec(thr_(w, k - 1), qv, thr_(w, k - 2)))
        f4 = PDec(PDec(thr_(w, k), pv, thr_(w, k - 1)), qv,
                  PDec(thr_(w, k - 1), pv, thr_(w, k - 2)))
        f5 = PDec(thr_(pre + post, k), qv, thr_(pre + post, k - 1))
        f6 = self.thr((q,) + pre + post, k)
        chain = [f0, f1, f2, f3, f4, f5, f6]

        if fwd:
            ih1 = self.case_dir(rest, q, post, k, True)
            ih2 = self.case_dir(rest, q, post, k - 1, True)
            steps = [
                b.ext_lr(f0.evar),
                self.replacement((), (), thr_(rest + (q,) + post, k),
                                 thr_((q,) + w, k),
                                 thr_(rest + (q,) + post, k - 1),
                                 thr_((q,) + w, k - 1), pv, ih1, ih2),
                self.replacement((), (), thr_((q,) + w, k), f3.a,
                                 thr_((q,) + w, k - 1), f3.b, pv,
                                 b.ext_lr(thr_((q,) + w, k).evar),
                                 b.ext_lr(thr_((q,) + w, k - 1).evar)),
                self.medial_dir(thr_(w, k), thr_(w, k - 1), thr_(w, k - 1),
                                thr_(w, k - 2), pv, qv, True),
                self.replacement((), (), f4.a, thr_(pre + post, k), f4.b,
                                 thr_(pre + post, k - 1), qv,
                                 b.ext_rl(thr_(pre + post, k).evar),
                                 b.ext_rl(thr_(pre + post, k - 1).evar)),
                b.ext_rl(f6.evar),
            ]
            out = steps[0]
            for idx in range(1, 6):
                out = b.cut(S((f0,), (chain[idx + 1],)), out, steps[idx],
                            chain[idx])
            return out
        ih1 = self.case_dir(rest, q, post, k, False)
        ih2 = self.case_dir(rest, q, post, k - 1, False)
        steps = [
            b.ext_rl(f0.evar),
            self.replacement((), (), thr_((q,) + w, k),
                             thr_(rest + (q,) + post, k),
                             thr_((q,) + w, k - 1),
                             thr_(rest + (q,) + post, k - 1), pv, ih1, ih2),
            self.replacement((), (), f3.a, thr_((q,) + w, k), f3.b,
                             thr_((q,) + w, k - 1), pv,
                             b.ext_rl(thr_((q,) + w, k).evar),
                             b.ext_rl(thr_((q,) + w, k - 1).evar)),
            self.medial_dir(thr_(w, k), thr_(w, k - 1), thr_(w, k - 1),
                            thr_(w, k - 2), pv, qv, False),
            self.replacement((), (), thr_(pre + post, k), f4.a,
                             thr_(pre + post, k - 1), f4.b, qv,
                             b.ext_lr(thr_(pre + post, k).evar),
                             b.ext_lr(thr_(pre + post, k - 1).evar)),
            b.ext_lr(f6.evar),
        ]
        out = steps[5]
        for idx in range(4, -1, -1):
            out = b.cut(S((f6,), (chain[idx],)), out, steps[idx],
                        chain[idx + 1])
        return out

    def symmetry(self, word, target, k: int) -> tuple[int, int]:
        return (self.symmetry_dir(word, target, k, True),
                self.symmetry_dir(word, target, k, False))

    def symmetry_dir(self, word, target, k: int, fwd: bool) -> int:
        """One direction of thr(word, k) == thr(target, k) for a permuted
        variable word, as a chain of case analyses moving target's variables
        to the front from the last to the first."""
        word = tuple(word)
        target = tuple(target)
        if sorted(word) != sorted(target):
            raise BuildError("symmetry requires a permutation of the word")
        b = self.b
        if word == target:
            return self.identity(self.thr(word, k))
        cur = word
        out = None
        for t in range(len(target) - 1, -1, -1):
            q = target[t]
            moved = len(target) - 1 - t  # how many already sit at the front
            pos = _find_move_pos(cur, q, moved)
            pre, post = cur[:pos], cur[pos + 1:]
            nxt = (q,) + pre + post
            if nxt == cur:
                continue
            step = self.case_dir(pre, q, post, k, fwd)
            if out is None:
                out = step
            elif fwd:
                out = b.cut(S((self.thr(word, k),), (self.thr(nxt, k),)),
                            out, step, self.thr(cur, k))
            else:
                out = b.cut(S((self.thr(nxt, k),), (self.thr(word, k),)),
                            step, out, self.thr(cur, k))
            cur = nxt
        assert cur == target
        if out is None:
            return self.identity(self.thr(word, k))
        return out

    # -- merging and splitting --------------------------------------------------

    def merge(self, pw, qw, k: int, l: int) -> int:
        """thr(pw,k), thr(qw,l) |- thr(pw+qw, k+l)"""
        pw, qw = tuple(pw), tuple(qw)
        b = self.b
        tp = self.thr(pw, k)
        tq = self.thr(qw, l)
        tout = self.thr(pw + qw, k + l)
        goal = S((tp, tq), (tout,))
        hit = self._hit(goal)
        if hit is not None:
            return hit
        if k < 0 or (k > len(pw)):
            return b.weaken_to(self.thr_absurd(pw, k), (tp, tq), (tout,))
        if l < 0 or l > len(qw):
            return b.weaken_to(self.thr_absurd(qw, l), (tp, tq), (tout,))
        if not pw:  # k == 0 by the guards above
            return b.wL(self.identity(tq), tp)
        p = Var(pw[0])
        ih1 = self.merge(pw[1:], qw, k, l)
        ih2 = self.merge(pw[1:], qw, k - 1, l)
        rep = self.replacement(
            (tq,), (), self.thr(pw[1:], k), self.thr(pw[1:] + qw, k + l),
            self.thr(pw[1:], k - 1), self.thr(pw[1:] + qw, k + l - 1),
            p, ih1, ih2)
        lr = b.ext_lr(tp.evar)
        body_in = self.ax.body(tp.evar)
        body_out = self.ax.body(tout.evar)
        mid = b.cut(S((tp, tq), (body_out,)), lr, rep, body_in)
        rl = b.ext_rl(tout.evar)
        return b.cut(goal, mid, rl, body_out)

    def split(self, pw, qw, k: int, l: int) -> int:
        """thr(pw+qw, k+l) |- thr(pw, k+1), thr(qw, l); k >= -1, l >= 0."""
        pw, qw = tuple(pw), tuple(qw)
        if l < 0 or k < -1:
            raise BuildError("split needs l >= 0 and k >= -1")
        b = self.b
        tin = self.thr(pw + qw, k + l)
        tp = self.thr(pw, k + 1)
        tq = self.thr(qw, l)
        goal = S((tin,), (tp, tq))
        hit = self._hit(goal)
        if hit is not None:
            return hit
        if k == -1:
            # right side already holds: thr(pw, 0) is provable outright
            return b.weaken_to(self.thr_zero(pw), (tin,), (tp, tq))
        if not pw:
            desc = self.thr_descend(qw, k + l, l)
            return b.wR(desc, tp)
        p = Var(pw[0])
        ih1 = self.split(pw[1:], qw, k, l)
        ih2 = self.split(pw[1:], qw, k - 1, l)
        rep = self.replacement(
            (), (tq,), self.thr(pw[1:] + qw, k + l), self.thr(pw[1:], k + 1),
            self.thr(pw[1:] + qw, k + l - 1), self.thr(pw[1:], k),
            p, ih1, ih2)
        lr = b.ext_lr(tin.evar)
        body_in = self.ax.body(tin.evar)
        body_p = self.ax.body(tp.evar)
        mid = b.cut(S((tin,), (body_p, tq)), lr, rep, body_in)
        rl = b.ext_rl(tp.evar)
        return b.cut(goal, mid, rl, body_p)

    # -- unit thresholds ---------------------------------------------------------

    def unit_fwd(self, q: int) -> int:
        """q |- thr(q, 1)"""
        b = self.b
        qv = Var(q)
        t1 = self.thr((q,), 1)
        goal = S((qv,), (t1,))
        hit = self._hit(goal)
        if hit is not None:
            return hit
        f1 = PDec(Zero, qv, One)
        t4 = self.truth4(Zero, qv, One)  # q, 1 |- pdec(0,q,1)
        one = b.add(S((), (One,)), ("ax1",))
        s1 = b.cut(S((qv,), (f1,)), one, t4, One)
        te1 = self.thr((), 1)
        te0 = self.thr((), 0)
        f2 = PDec(te1, qv, te0)
        rl1 = b.ext_rl(te1.evar)  # 0 |- thr_eps_1
        rl0 = b.ext_rl(te0.evar)  # 1 |- thr_eps_0
        rep = self.replacement((), (), Zero, te1, One, te0, qv, rl1, rl0)
        s2 = b.cut(S((qv,), (f2,)), s1, rep, f1)
        rl = b.ext_rl(t1.evar)
        return b.cut(goal, s2, rl, f2)

    def unit_bwd(self, q: int) -> int:
        """thr(q, 1) |- q"""
        b = self.b
        qv = Var(q)
        t1 = self.thr((q,), 1)
        goal = S((t1,), (qv,))
        hit = self._hit(goal)
        if hit is not None:
            return hit
        te1 = self.thr((), 1)
        te0 = self.thr((), 0)
        f2 = PDec(te1, qv, te0)
        f1 = PDec(Zero, qv, One)
        lr = b.ext_lr(t1.evar)
        lr1 = b.ext_lr(te1.evar)  # thr_eps_1 |- 0
        lr0 = b.ext_lr(te0.evar)  # thr_eps_0 |- 1
        rep = self.replacement((), (), te1, Zero, te0, One, qv, lr1, lr0)
        s1 = b.cut(S((t1,), (f1,)), lr, rep, f2)
        t1q = self.truth1(Zero, qv, One)  # pdec(0,q,1) |- 0, q
        s2 = b.cut(S((t1,), (Zero, qv)), s1, t1q, f1)
        z = b.add(S((Zero,), ()), ("ax0",))
        return b.cut(goal, s2, z, Zero)

    def unit_member(self, word, j: int) -> int:
        """word[j] |- thr(word, 1)"""
        word = tuple(word)
        b = self.b
        q = word[j]
        goal = S((Var(q),), (self.thr(word, 1),))
        hit = self._hit(goal)
        if hit is not None:
            return hit
        # accumulate merges of the singleton thresholds, 1 at position j
        ks = [1 if t == j else 0 for t in range(len(word))]
        singles = [self.thr((v,), kk) for v, kk in zip(word, ks)]
        acc = self.identity(singles[0])
        pref_k = ks[0]
        for t in range(1, len(word)):
            m = self.merge(word[:t], (word[t],), pref_k, ks[t])
            pref_k += ks[t]
            target = S(tuple(singles[:t + 1]), (self.thr(word[:t + 1], pref_k),))
            acc = b.cut(target, acc, m, self.thr(word[:t], pref_k - ks[t]))
        # cut away the |- thr(v,0) hypotheses
        for t in range(len(word)):
            if t == j:
                continue
            s = b.seq(acc)
            z = self.thr_zero((word[t],))
            acc = b.cut(S(_drop_one(s.ant, singles[t]), s.suc), z, acc, singles[t])
        # now: thr(q,1) |- thr(word,1); compose with q |- thr(q,1)
        u = self.unit_fwd(q)
        return b.cut(goal, u, acc, self.thr((q,), 1))

    # -- two in a hole -----------------------------------------------------------

    def pair_disjuncts(self, word) -> tuple[Formula, ...]:
        word = tuple(word)
        return tuple(PDec(Zero, Var(word[i]), Var(word[j]))
                     for i in range(len(word)) for j in range(i + 1, len(word)))

    def x_and_thr1(self, q: int, word) -> int:
        """q, thr(word, 1) |- { pdec(0, q, w_i) : w_i in word }"""
        word = tuple(word)
        b = self.b
        qv = Var(q)
        tw = self.thr(word, 1)
        targets = tuple(PDec(Zero, qv, Var(v)) for v in word)
        goal = S((qv, tw), targets)
        hit = self._hit(goal)
        if hit is not None:
            return hit
        if not word:
            absurd = self.thr_absurd((), 1)
            return b.weaken_to(absurd, (qv, tw), ())
        singles = [self.thr((v,), 1) for v in word]

        def member_line(tv):
            # q, thr(v,1) |- pdec(0,q,v)
            v = tv.evar.word[0]
            t4 = self.truth4(Zero, qv, Var(v))
            ub = self.unit_bwd(v)
            return b.cut(S((qv, tv), (PDec(Zero, qv, Var(v)),)), ub, t4, Var(v))

        big = None
        for tv in singles:
            big = tv if big is None else Or(big, tv)
        disj = b.or_left(big, (qv,), targets,
                         lambda leaf: member_line(leaf))
        # thr(word,1) |- big disjunction of unit thresholds
        flat = self._split_to_singles(word)
        folded = b.or_right(flat, big)
        return b.cut(goal, folded, disj, big)

    def _split_to_singles(self, word) -> int:
        """thr(word,1) |- thr(w0,1), ..., thr(wn-1,1)"""
        word = tuple(word)
        b = self.b
        if len(word) == 1:
            return self.identity(self.thr(word, 1))
        suffix = word
        cur = None
        for t in range(len(word) - 1):
            sp = self.split((word[t],), suffix[1:], 0, 1)
            if cur is None:
                cur = sp
            else:
                head = tuple(self.thr((v,), 1) for v in word[:t])
                target = S((self.thr(word, 1),),
                           head + (self.thr((word[t],), 1),
                                   self.thr(suffix[1:], 1)))
                cur = b.cut(target, cur, sp, self.thr(suffix, 1))
            suffix = suffix[1:]
        return cur

    def two_in_hole(self, word) -> int:
        """thr(word, 2) |- { pdec(0, w_i, w_j) : i < j }"""
        word = tuple(word)
        b = self.b
        t2 = self.thr(word, 2)
        targets = self.pair_disjuncts(word)
        goal = S((t2,), targets)
        hit = self._hit(goal)
        if hit is not None:
            return hit
        if len(word) < 2:
            absurd = self.thr_absurd(word, 2)
            return b.weaken_to(absurd, (t2,), targets)
        q, rest = word[0], word[1:]
        qv = Var(q)
        s_a = self.split((q,), rest, 0, 2)   # thr(q rest,2) |- thr(q,1), thr(rest,2)
        s_b = self.split((q,), rest, 1, 1)   # thr(q rest,2) |- thr(q,2), thr(rest,1)
        ub = self.unit_bwd(q)
        eq4 = b.cut(S((t2,), (qv, self.thr(rest, 2))), s_a, ub, self.thr((q,), 1))
        ab = self.thr_absurd((q,), 2)
        eq5 = b.cut(S((t2,), (self.thr(rest, 1),)), s_b, ab, self.thr((q,), 2))
        lem = self.x_and_thr1(q, rest)
        first = tuple(PDec(Zero, qv, Var(v)) for v in rest)
        cut_a = b.cut(S((t2, qv), first), eq5, lem, self.thr(rest, 1))
        cut_b = b.cut(S((t2,), first + (self.thr(rest, 2),)), eq4, cut_a, qv)
        ih = self.two_in_hole(rest)
        return b.cut(goal, cut_b, ih, self.thr(rest, 2))

    # -- threshold increments -------------------------------------------------------

    def incr_left(self, word, i: int, k: int) -> int:
        """word[i], thr(word minus i, k) |- thr(word, k+1)"""
        word = tuple(word)
        b = self.b
        rest = word[:i] + word[i + 1:]
        pv = Var(word[i])
        trest = self.thr(rest, k)
        tout = self.thr(word, k + 1)
        goal = S((pv, trest), (tout,))
        hit = self._hit(goal)
        if hit is not None:
            return hit
        m = self.merge((word[i],), rest, 1, k)
        u = self.unit_fwd(word[i])
        moved = self.thr((word[i],) + rest, k + 1)
        s1 = b.cut(S((pv, trest), (moved,)), u, m, self.thr((word[i],), 1))
        ca_b = self.case_dir(word[:i], word[i], word[i + 1:], k + 1, False)
        return b.cut(goal, s1, ca_b, moved)

    def incr_right(self, word, i: int, k: int) -> int:
        """thr(word, k) |- word[i], thr(word minus i, k)"""
        word = tuple(word)
        b = self.b
        rest = word[:i] + word[i + 1:]
        pv = Var(word[i])
        tin = self.thr(word, k)
        trest = self.thr(rest, k)
        goal = S((tin,), (pv, trest))
        hit = self._hit(goal)
        if hit is not None:
            return hit
        ca_f = self.case_dir(word[:i], word[i], word[i + 1:], k, True)
        moved = self.thr((word[i],) + rest, k)
        sp = self.split((word[i],), rest, 0, k)
        s1 = b.cut(S((tin,), (self.thr((word[i],), 1), trest)), ca_f, sp, moved)
        ub = self.unit_bwd(word[i])
        return b.cut(goal, s1, ub, self.thr((word[i],), 1))


def _find_move_pos(cur: tuple, q: int, moved: int) -> int:
    limit = len(cur) - 0
    for pos in range(moved, len(cur)):
        if cur[pos] == q:
            return pos
    raise BuildError(f"variable p{q} not found outside the moved block")


def _drop_one(forms: tuple, f) -> tuple:
    for idx, g in enumerate(forms):
        if g is f:
            return forms[:idx] + forms[idx + 1:]
    raise BuildError("formula not present")


# ---------------------------------------------------------------------------
# Spec-level wrappers returning standalone proofs

def _engine(ax=None) -> LemmaEngine:
    return LemmaEngine(ax if ax is not None else ExtAxiomSet())


def gen_identity(f: Formula, ax: ExtAxiomSet | None = None) -> Proof:
    if not is_positive(f):
        raise BuildError("general identity is generated for positive formulas")
    e = _engine(ax)
    return e.extract(e.identity(f))


def gen_truth(a: Formula, lit: Formula, c: Formula,
              ax: ExtAxiomSet | None = None) -> list[Proof]:
    e = _engine(ax)
    ids = [e.truth1(a, lit, c), e.truth2(a, lit, c),
           e.truth3(a, lit, c), e.truth4(a, lit, c)]
    return [e.extract(i) for i in ids]


def gen_replacement(gamma, delta, a, a2, c, c2, lit,
                    ax: ExtAxiomSet | None = None) -> Proof:
    e = _engine(ax)
    h1 = e.b.hyp("H0", Sequent(tuple(gamma) + (a,), tuple(delta) + (a2,)))
    h2 = e.b.hyp("H1", Sequent(tuple(gamma) + (c,), tuple(delta) + (c2,)))
    return e.extract(e.replacement(gamma, delta, a, a2, c, c2, lit, h1, h2))


def gen_pos_medial(a, b_, c, d, p_lit, q_lit,
                   ax: ExtAxiomSet | None = None) -> tuple[Proof, Proof]:
    e = _engine(ax)
    f, g = e.medial(a, b_, c, d, p_lit, q_lit)
    return e.extract(f), e.extract(g)


def gen_thr_monotone(word, k: int):
    """(|- thr_0, thr_{k+1} |- thr_k, and thr_k |- when k > |word|, else None)."""
    e = _engine()
    z = e.extract(e.thr_zero(word))
    d = e.extract(e.thr_decr(word, k))
    a = e.extract(e.thr_absurd(word, k)) if k > len(tuple(word)) else None
    return z, d, a


def gen_case_analysis(pre, q, post, k) -> tuple[Proof, Proof]:
    e = _engine()
    f, b = e.case_analysis(pre, q, post, k)
    return e.extract(f), e.extract(b)


def gen_symmetry(word, target, k) -> tuple[Proof, Proof]:
    e = _engine()
    f, b = e.symmetry(word, target, k)
    return e.extract(f), e.extract(b)


def gen_merge(pw, qw, k, l) -> Proof:
    e = _engine()
    return e.extract(e.merge(pw, qw, k, l))


def gen_split(pw, qw, k, l) -> Proof:
    e = _engine()
    return e.extract(e.split(pw, qw, k, l))


def gen_unit_thr(q: int, word) -> tuple[Proof, Proof, Proof]:
    """(q == thr(q,1) both ways, and q |- thr(word,1) for q a word member)."""
    e = _engine()
    word = tuple(word)
    try:
        j = word.index(q)
    except ValueError:
        raise BuildError(f"p{q} does not occur in the word") from None
    return (e.extract(e.unit_fwd(q)), e.extract(e.unit_bwd(q)),
            e.extract(e.unit_member(word, j)))


def gen_two_in_hole(word) -> Proof:
    e = _engine()
    return e.extract(e.two_in_hole(word))


def gen_thresh_increment(word, i, k) -> tuple[Proof, Proof]:
    e = _engine()
    return e.extract(e.incr_left(word, i, k)), e.extract(e.incr_right(word, i, k))
