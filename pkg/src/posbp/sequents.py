"""Sequents, proof objects, the four-dialect line checker, and the text format.

A proof is a dag-like list of lines; each line carries a sequent and a
justification referencing strictly earlier lines.  Cedents are multisets: the
checker matches contexts up to multiset equality (strict context sharing, no
implicit weakening) while the stored tuple order is kept for display.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field, replace

from . import terms
from .kernel import OracleCapError, TableOracle
from .terms import (DEC, EXT, LIT, OR, PDEC, ExtAxiomSet, Formula, One, Zero,
                    display, evar_name, ext_vars, formula_tokens, free_vars,
                    parse_formula)


class Sequent:
    __slots__ = ("ant", "suc", "_key")

    def __init__(self, ant=(), suc=()):
        self.ant = tuple(ant)
        self.suc = tuple(suc)
        self._key = None

    def key(self):
        k = self._key
        if k is None:
            k = (tuple(sorted(f.serial for f in self.ant)),
                 tuple(sorted(f.serial for f in self.suc)))
            self._key = k
        return k

    def __eq__(self, other):
        return isinstance(other, Sequent) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def same_tokens(self, other: "Sequent") -> bool:
        """Literal display identity, not just multiset equality."""
        return self.ant == other.ant and self.suc == other.suc

    def formulas(self):
        return self.ant + self.suc

    def __repr__(self):
        return f"<{display_sequent(self)}>"


def display_sequent(s: Sequent) -> str:
    left = ", ".join(display(f) for f in s.ant)
    right = ", ".join(display(f) for f in s.suc)
    return f"{left} |- {right}".strip()


def sequent_tokens(s: Sequent) -> int:
    t = 1  # arrow
    for f in s.formulas():
        t += formula_tokens(f)
    t += max(len(s.ant) - 1, 0) + max(len(s.suc) - 1, 0)
    return t


# ---------------------------------------------------------------------------
# Dialects

@dataclass(frozen=True)
class Dialect:
    name: str
    allow_ext: bool = True
    allow_dec: bool = False
    allow_posdec: bool = True
    allow_neg: bool = False
    dec_rules: bool = False
    pos_rules: bool = True
    neg_axioms: bool = False
    tk: tuple[int, tuple[int, ...]] | None = None

    def syntax_sig(self):
        return (self.allow_ext, self.allow_dec, self.allow_posdec, self.allow_neg)

    def __str__(self):
        if self.tk is not None:
            k, vs = self.tk
            return f"tk[{k}; {' '.join('p%d' % v for v in vs)}]"
        return self.name


LNDT = Dialect("lndt", allow_ext=False, allow_dec=True, allow_posdec=False,
               dec_rules=True, pos_rules=False)
ELNDT = Dialect("elndt", allow_dec=True, allow_posdec=False,
                dec_rules=True, pos_rules=False)
ELNDT_POS = Dialect("elndt+")
ELNDT_POS_NEG = Dialect("elndt+-", allow_neg=True, neg_axioms=True)


def TK(k: int, vars) -> Dialect:
    return Dialect("tk", tk=(k, tuple(vars)))


_DIALECTS = {d.name: d for d in (LNDT, ELNDT, ELNDT_POS, ELNDT_POS_NEG)}


def dialect_by_name(text: str) -> Dialect:
    text = text.strip()
    if text.startswith("tk[") and text.endswith("]"):
        inner = text[3:-1]
        kpart, vpart = inner.split(";")
        vs = tuple(int(w[1:]) for w in vpart.split())
        return TK(int(kpart), vs)
    try:
        return _DIALECTS[text]
    except KeyError:
        raise ValueError(f"unknown dialect {text!r}") from None


_syntax_memo: dict[tuple, str | None] = {}


def dialect_violation(d: Dialect, f: Formula) -> str | None:
    """None if f is legal in the dialect, else a reason string."""
    sig = d.syntax_sig()
    key = (sig, f.serial)
    hit = _syntax_memo.get(key, False)
    if hit is not False:
        return hit
    reason = None
    for g in terms.subnodes(f):
        gk = (sig, g.serial)
        cached = _syntax_memo.get(gk, False)
        if cached is not False:
            if cached is not None:
                reason = cached
                break
            continue
        r = None
        if g.kind == LIT and g.neg and not d.allow_neg:
            r = "negative literal not admitted"
        elif g.kind == DEC:
            if not d.allow_dec:
                r = "general decision not admitted"
            elif g.neg:
                r = "decision on a negative literal"
        elif g.kind == PDEC:
            if not d.allow_posdec:
                r = "positive decision not admitted"
            elif g.neg and not d.allow_neg:
                r = "decision on a negative literal"
        elif g.kind == EXT and not d.allow_ext:
            r = "extension variable not admitted"
        _syntax_memo[gk] = r
        if r is not None:
            reason = r
            break
    _syntax_memo[key] = reason
    return reason


# ---------------------------------------------------------------------------
# Proofs

@dataclass
class Proof:
    dialect: Dialect
    axioms: ExtAxiomSet
    lines: list[tuple[Sequent, tuple]]
    hypotheses: dict[str, Sequent] = field(default_factory=dict)
    intermediate: bool = False

    @property
    def conclusion(self) -> Sequent:
        return self.lines[-1][0]

    def __len__(self):
        return len(self.lines)


def used_ext_vars(proof: Proof) -> set:
    """Extension variables reachable from the proof's lines and hypotheses."""
    out = set()
    pending = []
    for seq, _ in proof.lines:
        for f in seq.formulas():
            pending.extend(ext_vars(f))
    for seq in proof.hypotheses.values():
        for f in seq.formulas():
            pending.extend(ext_vars(f))
    while pending:
        ev = pending.pop()
        if ev in out:
            continue
        out.add(ev)
        if ev in proof.axioms:
            pending.extend(ext_vars(proof.axioms.body(ev)))
    return out


@dataclass
class CheckResult:
    ok: bool
    line: int = -1
    reason: str = ""

    def __bool__(self):
        return self.ok

    def __str__(self):
        return "ok" if self.ok else f"line {self.line}: {self.reason}"


def _cnt(forms) -> Counter:
    return Counter(forms)


def _is_plus(big: Counter, small: Counter, extra) -> bool:
    """big == small + extra (extra an iterable of formulas)."""
    d = big - small
    e = Counter(extra)
    return d == e and small - big == Counter()


def _single_extra(big, small) -> Formula | None:
    d = Counter(big) - Counter(small)
    if sum(d.values()) != 1 or Counter(small) - Counter(big):
        return None
    return next(iter(d))


RULE_ARITY = {"cut": 2, "wL": 1, "wR": 1, "cL": 1, "cR": 1, "pL": 2, "pR": 2,
              "posPL": 2, "posPR": 2, "orL": 2, "orR": 1}


def check_proof(proof: Proof) -> CheckResult:
    d = proof.dialect
    ax = proof.axioms
    bad = ax.check()
    if bad is not None:
        return CheckResult(False, -1, f"axiom set ill-founded: {bad}")

    for ev in used_ext_vars(proof):
        if ev not in ax:
            return CheckResult(False, -1,
                               f"extension variable {evar_name(ev)} has no axiom")
        r = dialect_violation(d, ax.body(ev))
        if r is not None:
            return CheckResult(False, -1,
                               f"axiom body for {evar_name(ev)}: {r}")

    lines = proof.lines
    for i, (seq, just) in enumerate(lines):
        for f in seq.formulas():
            r = dialect_violation(d, f)
            if r is not None:
                return CheckResult(False, i, r)
        r = _check_line(proof, i, seq, just)
        if r is not None:
            return CheckResult(False, i, r)

    if not lines:
        return CheckResult(False, -1, "empty proof")
    if (d.allow_ext and not proof.hypotheses and not proof.intermediate
            and ext_vars_in_sequent(proof.conclusion)):
        return CheckResult(False, len(lines) - 1,
                           "conclusion of a hypothesis-free proof carries "
                           "extension variables")
    return CheckResult(True)


def ext_vars_in_sequent(seq: Sequent) -> bool:
    return any(ext_vars(f) for f in seq.formulas())


def _check_line(proof: Proof, i: int, seq: Sequent, just: tuple) -> str | None:
    d = proof.dialect
    tag = just[0]
    lines = proof.lines

    def prem(j):
        if not (0 <= j < i):
            return None
        return lines[j][0]

    if tag == "ax0":
        if len(seq.ant) == 1 and seq.ant[0] is Zero and not seq.suc:
            return None
        return "axiom 0 must be exactly '0 |-'"
    if tag == "ax1":
        if not seq.ant and len(seq.suc) == 1 and seq.suc[0] is One:
            return None
        return "axiom 1 must be exactly '|- 1'"
    if tag == "id":
        if (len(seq.ant) == 1 and len(seq.suc) == 1 and seq.ant[0] is seq.suc[0]
                and seq.ant[0].kind == LIT):
            if seq.ant[0].neg and not d.allow_neg:
                return "identity on a negative literal out of dialect"
            return None
        return "identity must be 'l |- l' on a literal"
    if tag in ("negL", "negR"):
        if not d.neg_axioms:
            return f"{tag} not available in dialect {d}"
        forms = seq.ant if tag == "negL" else seq.suc
        other = seq.suc if tag == "negL" else seq.ant
        if other or len(forms) != 2:
            return f"{tag} must be exactly the pair of dual literals"
        a, b = forms
        if (a.kind == LIT and b.kind == LIT and a.var == b.var
                and a.neg != b.neg):
            return None
        return f"{tag} literals must be dual"
    if tag in ("thrL", "thrR"):
        if d.tk is None:
            return f"{tag} only available in a tk dialect"
        k, vs = d.tk
        idx = just[1]
        if not (0 <= idx < len(vs)):
            return f"{tag} index {idx} out of range"
        rest = vs[:idx] + vs[idx + 1:]
        pv = terms.Var(vs[idx])
        th = terms.Ext(terms.ThrVar(rest, k))
        want = (Sequent((pv, th), ()) if tag == "thrL" else Sequent((), (pv, th)))
        if seq == want:
            return None
        return f"{tag} sequent mismatch"
    if tag in ("extLR", "extRL"):
        if not d.allow_ext:
            return "extension axioms not available in dialect lndt"
        ev = just[1]
        if ev not in proof.axioms:
            return f"no axiom for {evar_name(ev)}"
        e = terms.Ext(ev)
        body = proof.axioms.body(ev)
        if tag == "extLR":
            okline = (len(seq.ant) == 1 and seq.ant[0] is e
                      and len(seq.suc) == 1 and seq.suc[0] is body)
        else:
            okline = (len(seq.ant) == 1 and seq.ant[0] is body
                      and len(seq.suc) == 1 and seq.suc[0] is e)
        return None if okline else "extension-axiom line mismatch"
    if tag == "hyp":
        want = proof.hypotheses.get(just[1])
        if want is None:
            return f"unknown hypothesis {just[1]!r}"
        return None if seq == want else "hypothesis sequent mismatch"

    arity = RULE_ARITY.get(tag)
    if arity is None:
        return f"unknown rule {tag!r}"
    prems = just[1:1 + arity]
    if len(prems) != arity:
        return f"rule {tag} expects {arity} premises"
    ps = []
    for j in prems:
        s = prem(j)
        if s is None:
            return f"premise {j} is not an earlier line"
        ps.append(s)

    if tag == "cut":
        p1, p2 = ps
        if _cnt(p1.ant) != _cnt(seq.ant):
            return "cut: left premise context mismatch"
        if _cnt(p2.suc) != _cnt(seq.suc):
            return "cut: right premise context mismatch"
        a = _single_extra(p2.ant, seq.ant)
        if a is None:
            return "cut: cannot identify cut formula"
        if _cnt(p1.suc) != _cnt(seq.suc) + Counter([a]):
            return "cut: premises disagree on the cut formula"
        return None
    if tag == "wL":
        (p,) = ps
        if _cnt(p.suc) != _cnt(seq.suc):
            return "wL: succedent mismatch"
        if _single_extra(seq.ant, p.ant) is None:
            return "wL: antecedent is not premise plus one formula"
        return None
    if tag == "wR":
        (p,) = ps
        if _cnt(p.ant) != _cnt(seq.ant):
            return "wR: antecedent mismatch"
        if _single_extra(seq.suc, p.suc) is None:
            return "wR: succedent is not premise plus one formula"
        return None
    if tag == "cL":
        (p,) = ps
        if _cnt(p.suc) != _cnt(seq.suc):
            return "cL: succedent mismatch"
        a = _single_extra(p.ant, seq.ant)
        if a is None or a not in seq.ant:
            return "cL: premise must repeat a retained formula"
        return None
    if tag == "cR":
        (p,) = ps
        if _cnt(p.ant) != _cnt(seq.ant):
            return "cR: antecedent mismatch"
        a = _single_extra(p.suc, seq.suc)
        if a is None or a not in seq.suc:
            return "cR: premise must repeat a retained formula"
        return None
    if tag == "orR":
        (p,) = ps
        if _cnt(p.ant) != _cnt(seq.ant):
            return "orR: antecedent mismatch"
        base = _cnt(seq.suc)
        have = _cnt(p.suc)
        for f in set(seq.suc):
            if f.kind == OR:
                want = base - Counter([f]) + Counter([f.a, f.b])
                if want == have:
                    return None
        return "orR: no disjunction matches the premise"
    if tag == "orL":
        p1, p2 = ps
        base = _cnt(seq.ant)
        for f in set(seq.ant):
            if f.kind == OR:
                g = base - Counter([f])
                if (_cnt(p1.ant) == g + Counter([f.a])
                        and _cnt(p2.ant) == g + Counter([f.b])
                        and _cnt(p1.suc) == _cnt(seq.suc)
                        and _cnt(p2.suc) == _cnt(seq.suc)):
                    return None
        return "orL: no disjunction matches the premises"
    if tag in ("pL", "pR"):
        if not d.dec_rules:
            return f"{tag} not available in dialect {d}"
        kind = DEC
    else:
        if not d.pos_rules:
            return f"{tag} not available in dialect {d}"
        kind = PDEC
    p1, p2 = ps
    side = seq.ant if tag.endswith("L") else seq.suc
    base = _cnt(side)
    for f in set(side):
        if f.kind != kind:
            continue
        lit = terms.decision_lit(f)
        if tag in ("pL", "posPL"):
            g = base - Counter([f])
            dd = _cnt(seq.suc)
            if tag == "pL":
                ok = (_cnt(p1.ant) == g + Counter([f.a])
                      and _cnt(p1.suc) == dd + Counter([lit])
                      and _cnt(p2.ant) == g + Counter([lit, f.b])
                      and _cnt(p2.suc) == dd)
            else:
                ok = (_cnt(p1.ant) == g + Counter([f.a])
                      and _cnt(p1.suc) == dd
                      and _cnt(p2.ant) == g + Counter([lit, f.b])
                      and _cnt(p2.suc) == dd)
        else:
            dd = base - Counter([f])
            g = _cnt(seq.ant)
            if tag == "pR":
                ok = (_cnt(p1.ant) == g
                      and _cnt(p1.suc) == dd + Counter([f.a, lit])
                      and _cnt(p2.ant) == g + Counter([lit])
                      and _cnt(p2.suc) == dd + Counter([f.b]))
            else:
                ok = (_cnt(p1.ant) == g
                      and _cnt(p1.suc) == dd + Counter([f.a, lit])
                      and _cnt(p2.ant) == g
                      and _cnt(p2.suc) == dd + Counter([f.a, f.b]))
        if ok:
            return None
    return f"{tag}: no decision formula matches the premises"


# ---------------------------------------------------------------------------
# Sizes

def proof_size(proof: Proof) -> int:
    """Token count: every variable/constant/connective/arrow/comma is one
    token; an extension variable is one token regardless of its parameters."""
    return sum(sequent_tokens(seq) for seq, _ in proof.lines)


def rule_histogram(proof: Proof) -> dict[str, int]:
    h = Counter(just[0] for _, just in proof.lines)
    return dict(sorted(h.items()))


def proof_report(proof: Proof) -> dict:
    return {"schema": 1,
            "dialect": str(proof.dialect),
            "lines": len(proof.lines),
            "tokens": proof_size(proof),
            "rule_histogram": rule_histogram(proof)}


# ---------------------------------------------------------------------------
# Brute-force validity

def sequent_frame(seq: Sequent, ax: ExtAxiomSet) -> tuple[int, ...]:
    return frame_of(seq.formulas(), ax)


def sequent_valid(seq: Sequent, ax: ExtAxiomSet | None = None, cap: int = 16,
                  oracle: TableOracle | None = None) -> dict[int, int] | None:
    """None when valid; otherwise a countermodel assignment."""
    if ax is None:
        ax = terms.EMPTY_AXIOMS
    if oracle is None:
        oracle = TableOracle(ax, sequent_frame(seq, ax), cap=cap)
    return oracle.countermodel(seq.ant, seq.suc)


def frame_of(formulas, ax: ExtAxiomSet) -> tuple[int, ...]:
    """Propositional variables of many formulas in one shared graph walk."""
    vs: set[int] = set()
    seen: set[int] = set()
    stack = list(formulas)
    while stack:
        g = stack.pop()
        if g.serial in seen:
            continue
        seen.add(g.serial)
        k = g.kind
        if k == LIT:
            vs.add(g.var)
        elif k in (DEC, PDEC):
            vs.add(g.var)
            stack.append(g.a)
            stack.append(g.b)
        elif k == OR:
            stack.append(g.a)
            stack.append(g.b)
        elif k == EXT:
            stack.append(ax.body(g.evar))
    return tuple(sorted(vs))


def proof_oracle(proof: Proof, cap: int = 16) -> TableOracle:
    forms = [f for seq, _ in proof.lines for f in seq.formulas()]
    return TableOracle(proof.axioms, frame_of(forms, proof.axioms), cap=cap)


def unsound_line(proof: Proof, cap: int = 16):
    """First (index, countermodel) whose sequent the oracle falsifies, else None.

    Not meaningful for tk dialects, whose threshold initial sequents are not
    tautologies; callers skip those.
    """
    oracle = proof_oracle(proof, cap=cap)
    hit = oracle.countermodel_many([(seq.ant, seq.suc) for seq, _ in proof.lines])
    if hit is None:
        return None
    return hit


# ---------------------------------------------------------------------------
# DNF encoding

def dnf_to_positive_sequent(dnf) -> tuple[Sequent, dict[int, int]]:
    """Encode a DNF (list of terms; term = list of (var, negated) literals) as
    an equi-valid positive sequent.  Each variable gets a fresh primed partner
    standing for its negation; returns the sequent and the prime map.
    """
    vs = sorted({v for term in dnf for v, _ in term})
    base = max(vs, default=-1) + 1
    primed = {v: base + i for i, v in enumerate(vs)}
    ant = [terms.Or(terms.Var(v), terms.Var(primed[v])) for v in vs]
    suc = []
    for term in dnf:
        lits = [primed[v] if neg else v for v, neg in term]
        suc.append(terms.posterm(lits) if lits else One)
    return Sequent(ant, suc), primed


def dnf_valid(dnf, vars=None) -> bool:
    """Brute-force DNF validity; the independent side of the encoding check."""
    if vars is None:
        vars = sorted({v for term in dnf for v, _ in term})
    n = len(vars)
    for i in range(1 << n):
        alpha = {v: (i >> (n - 1 - j)) & 1 for j, v in enumerate(vars)}
        if not any(all(alpha.get(v, 0) != neg for v, neg in term) for term in dnf):
            return False
    return True


# ---------------------------------------------------------------------------
# Text format

def _just_str(just: tuple) -> str:
    tag = just[0]
    if tag in ("ax0", "ax1", "id", "negL", "negR"):
        return tag
    if tag in ("thrL", "thrR"):
        return f"{tag}[{just[1]}]"
    if tag in ("extLR", "extRL"):
        return f"{tag}[{evar_name(just[1])}]"
    if tag == "hyp":
        return f"hyp[{just[1]}]"
    prems = ", ".join(f"L{j}" for j in just[1:])
    return f"{tag}({prems})"


def proof_text(proof: Proof) -> str:
    out = [f"dialect: {proof.dialect}"]
    if proof.intermediate:
        out.append("intermediate: 1")
    used = used_ext_vars(proof)
    order = [e for e, _ in proof.axioms if e in used]
    for ev in order:
        out.append(f"axiom: {evar_name(ev)} <-> {display(proof.axioms.body(ev))}")
    for tag, seq in proof.hypotheses.items():
        out.append(f"hyp {tag}: {display_sequent(seq)}")
    for i, (seq, just) in enumerate(proof.lines):
        out.append(f"L{i}: {display_sequent(seq)} ; {_just_str(just)}")
    return "\n".join(out) + "\n"


class ProofParseError(Exception):
    pass


def _split_top(text: str, sep: str) -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        if ch == sep and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return parts


def parse_sequent(text: str, ax: ExtAxiomSet | None = None) -> Sequent:
    if "|-" not in text:
        raise ProofParseError(f"sequent missing '|-': {text!r}")
    left, right = text.split("|-", 1)

    def side(s):
        s = s.strip()
        if not s:
            return ()
        return tuple(parse_formula(p.strip(), ax=ax) for p in _split_top(s, ","))

    return Sequent(side(left), side(right))


def _parse_just(text: str, ax: ExtAxiomSet) -> tuple:
    text = text.strip()
    name = ""
    i = 0
    while i < len(text) and (text[i].isalnum() or text[i] in "+_"):
        name += text[i]
        i += 1
    rest = text[i:].strip()
    if name in ("ax0", "ax1", "id", "negL", "negR"):
        if rest:
            raise ProofParseError(f"unexpected arguments for {name}")
        return (name,)
    if name in ("thrL", "thrR", "extLR", "extRL", "hyp"):
        if not (rest.startswith("[") and rest.endswith("]")):
            raise ProofParseError(f"{name} expects [arg]")
        arg = rest[1:-1]
        if name in ("thrL", "thrR"):
            return (name, int(arg))
        if name == "hyp":
            return (name, arg)
        f = parse_formula(arg.strip(), ax=ax)
        if f.kind != EXT:
            raise ProofParseError(f"{name} argument must be an extension variable")
        return (name, f.evar)
    if name in RULE_ARITY:
        if not (rest.startswith("(") and rest.endswith(")")):
            raise ProofParseError(f"rule {name} expects premise list")
        ids = []
        for p in rest[1:-1].split(","):
            p = p.strip()
            if not p.startswith("L"):
                raise ProofParseError(f"bad premise reference {p!r}")
            ids.append(int(p[1:]))
        return (name, *ids)
    raise ProofParseError(f"unknown justification {text!r}")


def parse_proof(text: str) -> Proof:
    dialect = None
    ax = ExtAxiomSet()
    hyps: dict[str, Sequent] = {}
    lines: list[tuple[Sequent, tuple]] = []
    intermediate = False
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("dialect:"):
            dialect = dialect_by_name(line.split(":", 1)[1])
            continue
        if line.startswith("intermediate:"):
            intermediate = line.split(":", 1)[1].strip() in ("1", "true", "yes")
            continue
        if line.startswith("axiom:"):
            body = line.split(":", 1)[1]
            lhs, rhs = body.split("<->", 1)
            name = parse_formula(lhs.strip(), ax=ax)
            if name.kind != EXT:
                raise ProofParseError(f"axiom lhs must be an extension variable")
            b = parse_formula(rhs.strip(), ax=ax)
            if name.evar in ax:
                if ax.body(name.evar) is not b:
                    raise ProofParseError(
                        f"conflicting axiom for {evar_name(name.evar)}")
            else:
                ax.add(name.evar, b)
            continue
        if line.startswith("hyp "):
            head, seq = line.split(":", 1)
            hyps[head[4:].strip()] = parse_sequent(seq, ax)
            continue
        if line.startswith("L"):
            head, rest = line.split(":", 1)
            idx = int(head[1:])
            if idx != len(lines):
                raise ProofParseError(f"line id L{idx} out of order")
            parts = _split_top(rest, ";")
            if len(parts) != 2:
                raise ProofParseError(f"line missing justification: {line!r}")
            lines.append((parse_sequent(parts[0], ax), _parse_just(parts[1], ax)))
            continue
        raise ProofParseError(f"unrecognised line: {line!r}")
    if dialect is None:
        raise ProofParseError("missing dialect header")
    return Proof(dialect, ax, lines, hyps, intermediate)
