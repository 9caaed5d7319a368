"""Hash-consed term graphs for decision-tree formulas with extension variables.

Formulas are built from constants, literals, extension variables, disjunction
and two decision constructors: ``dec(A, l, B)`` ("if l then B else A") and its
positive refinement ``pdec(A, l, B)`` (semantically A or (l and B)).  pdec is a
first-class node, not sugar; ``desugar`` rewrites it to the general form with a
shared left subterm for cross-checking only.

Every node is interned, so structural equality is object identity and each node
carries a small ``serial`` used as a deterministic sort key.  Extension
variables are keyed by family: plain ``e_i`` names (optionally namespaced),
exact/threshold counters over a word of propositional variables, and
threshold-decision variables carrying two formula parameters.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Iterator

ZERO_KIND = "0"
ONE_KIND = "1"
LIT = "lit"
EXT = "ext"
OR = "or"
DEC = "dec"
PDEC = "pdec"


class TermError(Exception):
    pass


class Formula:
    """Interned formula node; construct via the factory functions below."""

    __slots__ = ("kind", "a", "b", "var", "neg", "evar", "serial")

    def __init__(self, kind, a=None, b=None, var=None, neg=False, evar=None, serial=0):
        self.kind = kind
        self.a = a
        self.b = b
        self.var = var
        self.neg = neg
        self.evar = evar
        self.serial = serial

    def __repr__(self):
        return f"<{display(self)}>"

    # identity-based hash/eq from object; interning makes that structural


_intern: dict[tuple, Formula] = {}


def _node(key, **fields) -> Formula:
    f = _intern.get(key)
    if f is None:
        f = Formula(key[0], serial=len(_intern), **fields)
        _intern[key] = f
    return f


Zero = _node((ZERO_KIND,))
One = _node((ONE_KIND,))


def Var(i: int) -> Formula:
    if i < 0:
        raise TermError(f"variable index must be >= 0, got {i}")
    return _node((LIT, i, False), var=i, neg=False)


def NegLit(i: int) -> Formula:
    if i < 0:
        raise TermError(f"variable index must be >= 0, got {i}")
    return _node((LIT, i, True), var=i, neg=True)


def Lit(i: int, neg: bool = False) -> Formula:
    return NegLit(i) if neg else Var(i)


def Ext(evar) -> Formula:
    return _node((EXT, evar), evar=evar)


def Or(a: Formula, b: Formula) -> Formula:
    return _node((OR, a.serial, b.serial), a=a, b=b)


def _check_decision_lit(lit: Formula):
    if lit.kind != LIT:
        raise TermError("decision position must hold a literal, got "
                        f"{display(lit)}")


def Dec(a: Formula, lit: Formula, b: Formula) -> Formula:
    _check_decision_lit(lit)
    return _node((DEC, a.serial, lit.serial, b.serial),
                 a=a, b=b, var=lit.var, neg=lit.neg)


def PDec(a: Formula, lit: Formula, b: Formula) -> Formula:
    _check_decision_lit(lit)
    return _node((PDEC, a.serial, lit.serial, b.serial),
                 a=a, b=b, var=lit.var, neg=lit.neg)


def decision_lit(f: Formula) -> Formula:
    assert f.kind in (DEC, PDEC)
    return Lit(f.var, f.neg)


def or_fold(parts: Iterable[Formula]) -> Formula:
    """Left-fold disjunction; empty input folds to 0."""
    acc = None
    for p in parts:
        acc = p if acc is None else Or(acc, p)
    return Zero if acc is None else acc


def or_leaves(f: Formula) -> list[Formula]:
    """Leaves of the left-fold Or spine (does not recurse into right args)."""
    out = []
    while f.kind == OR:
        out.append(f.b)
        f = f.a
    out.append(f)
    out.reverse()
    return out


# ---------------------------------------------------------------------------
# Extension-variable identities

@dataclass(frozen=True)
class PlainVar:
    index: int
    ns: str = ""

    def name(self):
        return f"e{self.index}" if not self.ns else f"e{self.ns}_{self.index}"


@dataclass(frozen=True)
class ExactVar:
    word: tuple[int, ...]
    k: int

    def name(self):
        return f"ex[{' '.join('p%d' % v for v in self.word)}; {self.k}]"


@dataclass(frozen=True)
class ThrVar:
    word: tuple[int, ...]
    k: int

    def name(self):
        return f"thr[{' '.join('p%d' % v for v in self.word)}; {self.k}]"


@dataclass(frozen=True)
class RefThrVar:
    word: tuple[int, ...]
    k: int
    left: Formula
    right: Formula

    def name(self):
        w = " ".join("p%d" % v for v in self.word)
        return f"rthr[{w}; {self.k}; {display(self.left)}; {display(self.right)}]"


def evar_name(evar) -> str:
    return evar.name()


# ---------------------------------------------------------------------------
# Axiom sets

class AxiomViolation(Exception):
    def __init__(self, evar, offending, position):
        self.evar = evar
        self.offending = offending
        self.position = position
        super().__init__(
            f"axiom for {evar_name(evar)} (entry {position}) references "
            f"{evar_name(offending)} which is not strictly earlier")


class ExtAxiomSet:
    """Ordered family e <-> body; list position is the well-foundedness witness.

    Entries may be appended as long as each new body only mentions extension
    variables already present.  The counting families (exact / thr / refthr)
    are instantiated on demand, dependencies first, so the order invariant
    holds by construction; ``check`` re-verifies it from scratch.
    """

    def __init__(self):
        self.entries: list[tuple[object, Formula]] = []
        self._pos: dict[object, int] = {}

    def __len__(self):
        return len(self.entries)

    def __iter__(self) -> Iterator[tuple[object, Formula]]:
        return iter(self.entries)

    def __contains__(self, evar):
        return evar in self._pos

    def body(self, evar) -> Formula:
        try:
            return self.entries[self._pos[evar]][1]
        except KeyError:
            raise TermError(f"undefined extension variable {evar_name(evar)}") from None

    def position(self, evar) -> int:
        return self._pos[evar]

    def add(self, evar, body: Formula):
        if evar in self._pos:
            if self.entries[self._pos[evar]][1] is not body:
                raise TermError(f"conflicting axiom for {evar_name(evar)}")
            return
        for used in ext_vars(body):
            if used not in self._pos:
                raise AxiomViolation(evar, used, len(self.entries))
        self._pos[evar] = len(self.entries)
        self.entries.append((evar, body))

    def check(self):
        """None if well-founded, else the first AxiomViolation (not raised)."""
        seen = set()
        for pos, (evar, body) in enumerate(self.entries):
            for used in ext_vars(body):
                if used not in seen:
                    return AxiomViolation(evar, used, pos)
            if evar in seen:
                return AxiomViolation(evar, evar, pos)
            seen.add(evar)
        return None

    # -- counting families ---------------------------------------------------

    def exact(self, word, k: int) -> Formula:
        """Extension variable for "exactly k of word true"; instantiates its cone."""
        word = tuple(word)
        ev = ExactVar(word, k)
        if ev not in self._pos:
            if not word:
                self.add(ev, One if k == 0 else Zero)
            else:
                a = self.exact(word[1:], k)
                b = self.exact(word[1:], k - 1)
                self.add(ev, Dec(a, Var(word[0]), b))
        return Ext(ev)

    def thr(self, word, k: int) -> Formula:
        """Extension variable for the k-threshold over word (positive closure)."""
        word = tuple(word)
        ev = ThrVar(word, k)
        if ev not in self._pos:
            if not word:
                self.add(ev, One if k == 0 else Zero)
            else:
                a = self.thr(word[1:], k)
                b = self.thr(word[1:], k - 1)
                self.add(ev, PDec(a, Var(word[0]), b))
        return Ext(ev)

    def refthr(self, word, k: int, left: Formula, right: Formula) -> Formula:
        """Threshold-decision variable: semantically left or (thr_k(word) and right)."""
        word = tuple(word)
        ev = RefThrVar(word, k, left, right)
        if ev not in self._pos:
            if not word:
                self.add(ev, Or(left, right) if k == 0 else left)
            else:
                a = self.refthr(word[1:], k, left, right)
                b = self.refthr(word[1:], k - 1, left, right)
                self.add(ev, PDec(a, Var(word[0]), b))
        return Ext(ev)

    def plain(self, index: int, body: Formula, ns: str = "") -> Formula:
        ev = PlainVar(index, ns)
        self.add(ev, body)
        return Ext(ev)


EMPTY_AXIOMS = ExtAxiomSet()


def check_axiom_set(ax: ExtAxiomSet):
    return ax.check()


# ---------------------------------------------------------------------------
# Structural walks (iterative; formulas can be deep)

def subnodes(f: Formula) -> Iterator[Formula]:
    """All distinct nodes of the syntax graph of f (no axiom unfolding)."""
    seen = set()
    stack = [f]
    while stack:
        g = stack.pop()
        if g.serial in seen:
            continue
        seen.add(g.serial)
        yield g
        if g.kind in (OR, DEC, PDEC):
            stack.append(g.a)
            stack.append(g.b)


def ext_vars(f: Formula) -> list:
    """Extension variables occurring syntactically in f (refthr args included)."""
    out = []
    seen = set()
    stack = [f]
    while stack:
        g = stack.pop()
        if g.serial in seen:
            continue
        seen.add(g.serial)
        if g.kind == EXT:
            out.append(g.evar)
            ev = g.evar
            if isinstance(ev, RefThrVar):
                stack.append(ev.left)
                stack.append(ev.right)
        elif g.kind in (OR, DEC, PDEC):
            stack.append(g.a)
            stack.append(g.b)
    return out


def free_vars(f: Formula, ax: ExtAxiomSet | None = None) -> set[int]:
    """Propositional variables of f, unfolding extension axioms when given."""
    out: set[int] = set()
    seen = set()
    stack = [f]
    while stack:
        g = stack.pop()
        if g.serial in seen:
            continue
        seen.add(g.serial)
        if g.kind == LIT:
            out.add(g.var)
        elif g.kind in (DEC, PDEC):
            out.add(g.var)
            stack.append(g.a)
            stack.append(g.b)
        elif g.kind == OR:
            stack.append(g.a)
            stack.append(g.b)
        elif g.kind == EXT and ax is not None:
            stack.append(ax.body(g.evar))
    return out


def formula_tokens(f: Formula, _memo: dict[int, int] | None = None) -> int:
    """Token count of the notation tree: leaves 1, or = a+b+1, decisions a+b+3."""
    memo = _memo if _memo is not None else _token_memo
    stack = [f]
    while stack:
        g = stack[-1]
        if g.serial in memo:
            stack.pop()
            continue
        if g.kind in (OR, DEC, PDEC):
            need = [c for c in (g.a, g.b) if c.serial not in memo]
            if need:
                stack.extend(need)
                continue
            extra = 1 if g.kind == OR else 3
            memo[g.serial] = memo[g.a.serial] + memo[g.b.serial] + extra
        else:
            memo[g.serial] = 1
        stack.pop()
    return memo[f.serial]


_token_memo: dict[int, int] = {}


def map_formula(f: Formula, leaf: Callable[[Formula], Formula | None],
                memo: dict[int, Formula] | None = None) -> Formula:
    """Bottom-up rewrite.  ``leaf(node)`` may return a replacement for any node
    whose children are already rewritten (children accessible via memo); return
    None to rebuild the node structurally."""
    if memo is None:
        memo = {}
    stack = [f]
    while stack:
        g = stack[-1]
        if g.serial in memo:
            stack.pop()
            continue
        if g.kind in (OR, DEC, PDEC):
            need = [c for c in (g.a, g.b) if c.serial not in memo]
            if need:
                stack.extend(need)
                continue
        r = leaf(g)
        if r is None:
            if g.kind == OR:
                r = Or(memo[g.a.serial], memo[g.b.serial])
            elif g.kind == DEC:
                r = Dec(memo[g.a.serial], decision_lit(g), memo[g.b.serial])
            elif g.kind == PDEC:
                r = PDec(memo[g.a.serial], decision_lit(g), memo[g.b.serial])
            else:
                r = g
        memo[g.serial] = r
        stack.pop()
    return memo[f.serial]


# ---------------------------------------------------------------------------
# Core operations

def desugar(f: Formula) -> Formula:
    """Rewrite pdec(A,l,B) to dec(A,l,or(A,B)); the left subterm is shared."""

    def leaf(g, memo={}):
        return None

    memo: dict[int, Formula] = {}

    def rule(g):
        if g.kind == PDEC:
            a = memo[g.a.serial]
            b = memo[g.b.serial]
            return Dec(a, decision_lit(g), Or(a, b))
        return None

    return map_formula(f, rule, memo)


def repositivize(f: Formula) -> Formula:
    """Inverse of desugar on its image: dec(A,l,or(A,B)) with shared A becomes
    pdec(A,l,B).  Other decisions are left alone."""
    memo: dict[int, Formula] = {}

    def rule(g):
        if g.kind == DEC:
            a = memo[g.a.serial]
            b = memo[g.b.serial]
            if b.kind == OR and b.a is a:
                return PDec(a, decision_lit(g), b.b)
        return None

    return map_formula(f, rule, memo)


def is_positive(f: Formula) -> bool:
    """No negative literals, and every general decision's 1-branch is
    or(0-branch, C) for some C (positive decisions qualify by construction)."""
    for g in subnodes(f):
        if g.kind == LIT and g.neg:
            return False
        if g.kind in (DEC, PDEC) and g.neg:
            return False
        if g.kind == DEC:
            if not (g.b.kind == OR and g.b.a is g.a):
                return False
    return True


def is_positive_axioms(ax: ExtAxiomSet) -> bool:
    return all(is_positive(body) for _, body in ax)


def evaluate(f: Formula, ax: ExtAxiomSet, assignment: dict[int, int]) -> int:
    """Truth value of f under the assignment (variables default to 0).

    Follows the satisfaction clauses by induction along the axiom order, with
    one memo entry per node so each extension-variable body is evaluated once.
    """
    memo: dict[int, int] = {}
    stack = [f]
    while stack:
        g = stack[-1]
        if g.serial in memo:
            stack.pop()
            continue
        k = g.kind
        if k == ZERO_KIND:
            memo[g.serial] = 0
        elif k == ONE_KIND:
            memo[g.serial] = 1
        elif k == LIT:
            v = assignment.get(g.var, 0)
            memo[g.serial] = (1 - v) if g.neg else v
        elif k == EXT:
            body = ax.body(g.evar)
            if body.serial in memo:
                memo[g.serial] = memo[body.serial]
            else:
                stack.append(body)
                continue
        elif k == OR:
            if g.a.serial in memo and g.b.serial in memo:
                memo[g.serial] = memo[g.a.serial] | memo[g.b.serial]
            else:
                stack.append(g.a)
                stack.append(g.b)
                continue
        else:  # DEC / PDEC
            if g.a.serial in memo and g.b.serial in memo:
                v = assignment.get(g.var, 0)
                if g.neg:
                    v = 1 - v
                if k == DEC:
                    memo[g.serial] = memo[g.b.serial] if v else memo[g.a.serial]
                else:
                    memo[g.serial] = memo[g.a.serial] | (v & memo[g.b.serial])
            else:
                stack.append(g.a)
                stack.append(g.b)
                continue
        stack.pop()
    return memo[f.serial]


def substitute(f: Formula, sigma: dict[int, Formula],
               ax: ExtAxiomSet | None = None,
               memo: dict[int, Formula] | None = None,
               ev_map: dict | None = None) -> Formula | tuple[Formula, ExtAxiomSet]:
    """Replace propositional variables by formulas.

    A variable in decision position may only be mapped to a literal (the
    decision slot must stay a literal); violations raise TermError.  When an
    axiom set is given, bodies are substituted consistently into a fresh set
    (counting-family identities are renamed through their words) and the pair
    (formula, new set) is returned.  memo/ev_map may be shared across calls
    applying the same sigma to many formulas.
    """

    def sub_lit(i: int, neg: bool) -> Formula:
        img = sigma.get(i)
        if img is None:
            return Lit(i, neg)
        if img.kind != LIT:
            raise TermError(
                f"substitution puts non-literal {display(img)} in decision "
                f"position of p{i}")
        return Lit(img.var, img.neg != neg)

    def sub_word(word):
        out = []
        for v in word:
            img = sigma.get(v)
            if img is None:
                out.append(v)
            elif img.kind == LIT and not img.neg:
                out.append(img.var)
            else:
                raise TermError(
                    f"substitution puts non-variable in counting word at p{v}")
        return tuple(out)

    new_ax = None
    if ev_map is None:
        ev_map = {}
    if ax is not None:
        new_ax = ExtAxiomSet()
    if memo is None:
        memo = {}

    def rule(g):
        if g.kind == LIT:
            img = sigma.get(g.var)
            if img is None:
                return g
            if g.neg:
                if img.kind != LIT:
                    raise TermError(
                        f"substitution of non-literal for negated variable p{g.var}")
                return Lit(img.var, not img.neg)
            return img
        if g.kind == DEC:
            return Dec(memo[g.a.serial], sub_lit(g.var, g.neg), memo[g.b.serial])
        if g.kind == PDEC:
            return PDec(memo[g.a.serial], sub_lit(g.var, g.neg), memo[g.b.serial])
        if g.kind == EXT:
            ev = g.evar
            if ev in ev_map:
                return Ext(ev_map[ev])
            if isinstance(ev, PlainVar):
                nev = ev
            elif isinstance(ev, ExactVar):
                nev = ExactVar(sub_word(ev.word), ev.k)
            elif isinstance(ev, ThrVar):
                nev = ThrVar(sub_word(ev.word), ev.k)
            else:
                nev = RefThrVar(sub_word(ev.word), ev.k,
                                _sub(ev.left), _sub(ev.right))
            ev_map[ev] = nev
            return Ext(nev)
        return None

    def _sub(g):
        return map_formula(g, rule, memo)

    out = _sub(f)
    if ax is None:
        return out
    for ev, body in ax:
        nbody = _sub(body)
        if isinstance(ev, PlainVar):
            new_ax.add(ev, nbody)
        else:
            rule(Ext(ev))  # ensure mapping exists
            new_ax.add(ev_map[ev], nbody)
    return out, new_ax


def posterm(vars: Iterable[int]) -> Formula:
    """Right-nested positive-decision chain computing the conjunction of vars."""
    vs = list(vars)
    if not vs:
        raise TermError("posterm needs at least one variable")
    acc = Var(vs[-1])
    for v in reversed(vs[:-1]):
        acc = PDec(Zero, Var(v), acc)
    return acc


# ---------------------------------------------------------------------------
# Display / parsing

def display(f: Formula) -> str:
    parts: list[str] = []
    _display_into(f, parts)
    return "".join(parts)


def _display_into(f: Formula, out: list[str]):
    # iterative with an instruction stack; formulas can nest deeply
    stack: list[object] = [f]
    while stack:
        g = stack.pop()
        if isinstance(g, str):
            out.append(g)
            continue
        k = g.kind
        if k == ZERO_KIND:
            out.append("0")
        elif k == ONE_KIND:
            out.append("1")
        elif k == LIT:
            out.append(("~p%d" if g.neg else "p%d") % g.var)
        elif k == EXT:
            out.append(evar_name(g.evar))
        elif k == OR:
            out.append("or(")
            stack.extend([")", g.b, ", ", g.a])
        else:
            out.append("dec(" if k == DEC else "pdec(")
            lit = ("~p%d" if g.neg else "p%d") % g.var
            stack.extend([")", g.b, f", {lit}, ", g.a])
    return out


class ParseError(TermError):
    def __init__(self, msg, pos):
        self.pos = pos
        super().__init__(f"{msg} (at position {pos})")


class _P:
    def __init__(self, text: str, ax: ExtAxiomSet | None):
        self.t = text
        self.i = 0
        self.ax = ax

    def err(self, msg):
        raise ParseError(msg, self.i)

    def ws(self):
        while self.i < len(self.t) and self.t[self.i] in " \t":
            self.i += 1

    def eat(self, s: str):
        self.ws()
        if not self.t.startswith(s, self.i):
            self.err(f"expected {s!r}")
        self.i += len(s)

    def peek(self):
        self.ws()
        return self.t[self.i] if self.i < len(self.t) else ""

    def number(self) -> int:
        self.ws()
        j = self.i
        if j < len(self.t) and self.t[j] == "-":
            j += 1
        while j < len(self.t) and self.t[j].isdigit():
            j += 1
        if j == self.i or self.t[self.i:j] == "-":
            self.err("expected integer")
        n = int(self.t[self.i:j])
        self.i = j
        return n

    def word(self) -> tuple[int, ...]:
        out = []
        while True:
            self.ws()
            if self.peek() == "p":
                self.i += 1
                out.append(self.number())
            else:
                return tuple(out)

    def lit(self) -> Formula:
        self.ws()
        neg = False
        if self.peek() == "~":
            self.i += 1
            neg = True
        if self.peek() != "p":
            self.err("expected literal pN or ~pN")
        self.i += 1
        return Lit(self.number(), neg)

    def formula(self) -> Formula:
        self.ws()
        c = self.peek()
        if c == "0":
            self.i += 1
            return Zero
        if c == "1":
            self.i += 1
            return One
        if c == "~" or (c == "p" and not self.t.startswith("pdec(", self.i)):
            return self.lit()
        if self.t.startswith("or(", self.i):
            self.i += 3
            a = self.formula()
            self.eat(",")
            b = self.formula()
            self.eat(")")
            return Or(a, b)
        if self.t.startswith("pdec(", self.i):
            self.i += 5
            a = self.formula()
            self.eat(",")
            lit = self.lit()
            self.eat(",")
            b = self.formula()
            self.eat(")")
            return PDec(a, lit, b)
        if self.t.startswith("dec(", self.i):
            self.i += 4
            a = self.formula()
            self.eat(",")
            self.ws()
            if self.peek() == "e" or self.t.startswith(("thr[", "ex[", "rthr["), self.i):
                self.err("extension variable in decision position")
            lit = self.lit()
            self.eat(",")
            b = self.formula()
            self.eat(")")
            return Dec(a, lit, b)
        if self.t.startswith("thr[", self.i):
            self.i += 4
            w = self.word()
            self.eat(";")
            k = self.number()
            self.eat("]")
            return self._family(ThrVar(w, k))
        if self.t.startswith("ex[", self.i):
            self.i += 3
            w = self.word()
            self.eat(";")
            k = self.number()
            self.eat("]")
            return self._family(ExactVar(w, k))
        if self.t.startswith("rthr[", self.i):
            self.i += 5
            w = self.word()
            self.eat(";")
            k = self.number()
            self.eat(";")
            left = self.formula()
            self.eat(";")
            right = self.formula()
            self.eat("]")
            return self._family(RefThrVar(w, k, left, right))
        if c == "e":
            self.i += 1
            self.ws()
            ns = ""
            if self.peek() == "k":
                j = self.i + 1
                while j < len(self.t) and self.t[j].isdigit():
                    j += 1
                if j < len(self.t) and self.t[j] == "_":
                    ns = self.t[self.i:j]
                    self.i = j + 1
            return Ext(PlainVar(self.number(), ns))
        self.err("expected formula")

    def _family(self, ev) -> Formula:
        if self.ax is not None:
            if isinstance(ev, ThrVar):
                return self.ax.thr(ev.word, ev.k)
            if isinstance(ev, ExactVar):
                return self.ax.exact(ev.word, ev.k)
            return self.ax.refthr(ev.word, ev.k, ev.left, ev.right)
        return Ext(ev)


def parse_formula(text: str, dialect=None, ax: ExtAxiomSet | None = None) -> Formula:
    """Parse the text grammar; with a dialect, reject constructs it forbids.

    Passing an axiom set instantiates counting-family variables on the fly so
    parsed formulas evaluate without further setup.
    """
    p = _P(text, ax)
    f = p.formula()
    p.ws()
    if p.i != len(text):
        p.err("trailing input")
    if dialect is not None:
        from .sequents import dialect_violation

        bad = dialect_violation(dialect, f)
        if bad is not None:
            raise ParseError(bad, 0)
    return f


def parse_axiom_file(text: str) -> ExtAxiomSet:
    """One ``NAME <-> F`` per line, order significant; blank/# lines skipped."""
    ax = ExtAxiomSet()
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "<->" not in line:
            raise TermError(f"malformed axiom line: {line!r}")
        lhs, rhs = line.split("<->", 1)
        name = parse_formula(lhs.strip(), ax=ax)
        if name.kind != EXT:
            raise TermError(f"axiom lhs must be an extension variable: {line!r}")
        body = parse_formula(rhs.strip(), ax=ax)
        if name.evar in ax:
            # counting families instantiate themselves; tolerate a re-statement
            if ax.body(name.evar) is not body:
                raise TermError(f"conflicting axiom for {evar_name(name.evar)}")
        else:
            ax.add(name.evar, body)
    return ax


def axiom_lines(ax: ExtAxiomSet, used: set | None = None) -> list[str]:
    out = []
    for ev, body in ax:
        if used is not None and ev not in used:
            continue
        out.append(f"{evar_name(ev)} <-> {display(body)}")
    return out
