"""Nondeterministic branching programs as explicit DAGs.

Nodes are either variable-labelled or one of the two sinks; edges carry a 0 or
1 label (both labels between the same pair are two entries).  A program accepts
an assignment when some consistent root path reaches the 1-sink.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import terms
from .terms import Dec, ExtAxiomSet, Formula, One, Or, PDec, PlainVar, Var, Zero

SINK0 = "sink0"
SINK1 = "sink1"


class BpError(Exception):
    pass


@dataclass
class Nbp:
    labels: dict[int, object]          # node id -> var index or SINK0/SINK1
    root: int
    e0: frozenset[tuple[int, int]]
    e1: frozenset[tuple[int, int]]

    def __post_init__(self):
        self.e0 = frozenset(self.e0)
        self.e1 = frozenset(self.e1)

    def nodes(self):
        return sorted(self.labels)

    def is_sink(self, u: int) -> bool:
        return self.labels[u] in (SINK0, SINK1)

    def succ(self, u: int, bit: int) -> list[int]:
        es = self.e1 if bit else self.e0
        return sorted(v for (x, v) in es if x == u)

    def validate(self):
        if self.root not in self.labels:
            raise BpError("root is not a node")
        indeg = {u: 0 for u in self.labels}
        for (u, v) in self.e0 | self.e1:
            if u not in self.labels or v not in self.labels:
                raise BpError(f"edge ({u},{v}) touches an unknown node")
            if self.is_sink(u):
                raise BpError(f"sink {u} has an outgoing edge")
            indeg[v] += 1
        if indeg[self.root] != 0:
            raise BpError("root has incoming edges")
        for u, d in indeg.items():
            if d == 0 and u != self.root and not self.is_sink(u):
                raise BpError(f"non-root node {u} has in-degree 0")
        # acyclicity via iterative DFS
        state: dict[int, int] = {}
        stack = [(self.root, iter(self.succ(self.root, 0) + self.succ(self.root, 1)))]
        state[self.root] = 1
        while stack:
            u, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                state[u] = 2
                stack.pop()
                continue
            s = state.get(nxt)
            if s == 1:
                raise BpError("cycle detected")
            if s is None:
                state[nxt] = 1
                stack.append((nxt, iter(self.succ(nxt, 0) + self.succ(nxt, 1))))
        return self

    def variables(self) -> list[int]:
        return sorted({l for l in self.labels.values() if not isinstance(l, str)})


def eval_nbp(g: Nbp, assignment: dict[int, int]) -> int:
    """1 iff some assignment-consistent path from the root reaches the 1-sink."""
    seen = {g.root}
    stack = [g.root]
    while stack:
        u = stack.pop()
        lab = g.labels[u]
        if lab == SINK1:
            return 1
        if lab == SINK0:
            continue
        bit = assignment.get(lab, 0)
        for v in g.succ(u, bit):
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return 0


def is_positive_nbp(g: Nbp) -> bool:
    return g.e0 <= g.e1


def positive_closure(g: Nbp) -> Nbp:
    return Nbp(dict(g.labels), g.root, g.e0, g.e0 | g.e1)


def _reachable(g: Nbp, starts) -> set[int]:
    seen = set(starts)
    stack = list(starts)
    while stack:
        u = stack.pop()
        if g.is_sink(u):
            continue
        for v in g.succ(u, 0) + g.succ(u, 1):
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return seen


def is_read_once(g: Nbp) -> bool:
    """No root-to-sink path repeats a variable label: equivalently, no node
    reaches a strictly later node with the same label."""
    live = _reachable(g, [g.root])
    for u in live:
        lab = g.labels[u]
        if isinstance(lab, str):
            continue
        below = _reachable(g, g.succ(u, 0) + g.succ(u, 1))
        if any(g.labels[v] == lab for v in below):
            return False
    return True


def build_exact_obdd(n: int, k: int) -> Nbp:
    """Layered OBDD over p1..pn counting ones; accepts exactly-k assignments.

    Node (i, j) means "j ones seen among the first i-1 variables"; ids are
    assigned row by row.  Out-of-range k yields the all-rejecting program.
    """
    if n < 0:
        raise BpError("n must be >= 0")
    labels: dict[int, object] = {}
    ids: dict[tuple[int, int], int] = {}
    nid = 0
    for i in range(1, n + 1):
        for j in range(i):
            ids[(i, j)] = nid
            labels[nid] = i - 1  # variable p_{i} carries index i-1
            nid += 1
    s0 = nid
    s1 = nid + 1
    labels[s0] = SINK0
    labels[s1] = SINK1
    e0, e1 = set(), set()
    for i in range(1, n + 1):
        for j in range(i):
            u = ids[(i, j)]
            if i < n:
                e0.add((u, ids[(i + 1, j)]))
                e1.add((u, ids[(i + 1, j + 1)]))
            else:
                e0.add((u, s1 if j == k else s0))
                e1.add((u, s1 if j + 1 == k else s0))
    if n == 0:
        root = s1 if k == 0 else s0
        return Nbp({s0: SINK0, s1: SINK1}, root, frozenset(), frozenset())
    return Nbp(labels, ids[(1, 0)], frozenset(e0), frozenset(e1)).validate()


def nbp_to_endt(g: Nbp) -> tuple[Formula, ExtAxiomSet]:
    """Encode the program as an extension formula: one extension variable per
    internal node (sinks become constants).  Deterministic nodes give plain
    decisions; for a positive program the 0-successor disjunction becomes the
    decision's shared branch and the extra 1-successors its right branch; other
    nondeterministic nodes become disjunctions of one decision per edge.
    """
    g.validate()
    ax = ExtAxiomSet()
    positive = is_positive_nbp(g)
    order = _reverse_topo(g)
    enc: dict[int, Formula] = {}
    counter = 0
    for u in order:
        lab = g.labels[u]
        if lab == SINK0:
            enc[u] = Zero
            continue
        if lab == SINK1:
            enc[u] = One
            continue
        p = Var(lab)
        s0 = g.succ(u, 0)
        s1 = g.succ(u, 1)
        if positive:
            extra = [v for v in s1 if v not in set(s0)]
            a = terms.or_fold([enc[v] for v in s0])
            b = terms.or_fold([enc[v] for v in extra])
            body = PDec(a, p, b)
        elif len(s0) == 1 and len(s1) == 1:
            body = Dec(enc[s0[0]], p, enc[s1[0]])
        else:
            parts = [Dec(enc[v], p, Zero) for v in s0]
            parts += [Dec(Zero, p, enc[v]) for v in s1]
            body = terms.or_fold(parts)
        enc[u] = ax.plain(counter, body)
        counter += 1
    return enc[g.root], ax


def _reverse_topo(g: Nbp) -> list[int]:
    out: list[int] = []
    state: dict[int, int] = {}

    for start in g.nodes():
        if start in state:
            continue
        stack = [(start, iter(g.succ(start, 0) + g.succ(start, 1)))]
        state[start] = 1
        while stack:
            u, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                state[u] = 2
                out.append(u)
                stack.pop()
                continue
            if state.get(nxt) is None:
                state[nxt] = 1
                stack.append((nxt, iter(g.succ(nxt, 0) + g.succ(nxt, 1))))
    return out


# ---------------------------------------------------------------------------
# Text formats

def nbp_text(g: Nbp) -> str:
    out = [f"root {g.root}"]
    for u in g.nodes():
        lab = g.labels[u]
        if lab == SINK0:
            out.append(f"node {u} 0")
        elif lab == SINK1:
            out.append(f"node {u} 1")
        else:
            out.append(f"node {u} p{lab}")
    for (u, v) in sorted(g.e0):
        out.append(f"e0 {u} {v}")
    for (u, v) in sorted(g.e1):
        out.append(f"e1 {u} {v}")
    return "\n".join(out) + "\n"


def parse_nbp(text: str) -> Nbp:
    labels: dict[int, object] = {}
    root = None
    e0, e1 = set(), set()
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] == "root":
            root = int(parts[1])
        elif parts[0] == "node":
            u = int(parts[1])
            if parts[2] == "0":
                labels[u] = SINK0
            elif parts[2] == "1":
                labels[u] = SINK1
            elif parts[2].startswith("p"):
                labels[u] = int(parts[2][1:])
            else:
                raise BpError(f"bad node label {parts[2]!r}")
        elif parts[0] in ("e0", "e1"):
            (e0 if parts[0] == "e0" else e1).add((int(parts[1]), int(parts[2])))
        else:
            raise BpError(f"unrecognised line {line!r}")
    if root is None:
        raise BpError("missing root")
    return Nbp(labels, root, frozenset(e0), frozenset(e1)).validate()


def nbp_dot(g: Nbp) -> str:
    """DOT export; 0-edges dotted, 1-edges solid (shared pairs drawn twice)."""
    out = ["digraph nbp {"]
    for u in g.nodes():
        lab = g.labels[u]
        if lab == SINK0:
            out.append(f'  n{u} [label="0", shape=box];')
        elif lab == SINK1:
            out.append(f'  n{u} [label="1", shape=box];')
        else:
            out.append(f'  n{u} [label="p{lab}"];')
    for (u, v) in sorted(g.e0):
        out.append(f"  n{u} -> n{v} [style=dotted];")
    for (u, v) in sorted(g.e1):
        out.append(f"  n{u} -> n{v};")
    out.append("}")
    return "\n".join(out) + "\n"
