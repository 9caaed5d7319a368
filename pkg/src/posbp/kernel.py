"""Truth-table evaluation kernel.

A formula graph (with its extension-axiom cone) is flattened into a straight-
line program over slots; each slot holds the formula's full truth table over a
fixed variable frame as a 2^n-bit mask (assignment i sets variable j to bit
n-1-j of i, i.e. tables are indexed in lexicographic assignment order).

Two interchangeable executors exist: a pure-Python tape using big-int masks,
and a compiled Cython tape (posbp._ttcore) looping over 64-bit words.  The
compiled one is picked at import when available; set POSBP_PURE_TABLES=1 to
force the fallback.  ``python benchmarks/bench_tables.py`` compares the two.
"""

from __future__ import annotations

import os

from . import terms
from .terms import DEC, EXT, LIT, ONE_KIND, OR, PDEC, ZERO_KIND, ExtAxiomSet, Formula

OP_ZERO = 0
OP_ONE = 1
OP_VAR = 2
OP_NVAR = 3
OP_OR = 4
OP_DEC = 5   # (a_slot, var_pos, b_slot): b where var, else a
OP_PDEC = 6  # a | (var & b)
OP_PDECN = 7  # a | (~var & b)


def var_mask(nvars: int, pos: int) -> int:
    """Mask of assignment indices where frame variable ``pos`` is 1."""
    s = nvars - 1 - pos
    total = 1 << nvars
    pattern = ((1 << (1 << s)) - 1) << (1 << s)  # ones in the upper half
    width = 1 << (s + 1)
    return pattern * (((1 << total) - 1) // ((1 << width) - 1))


class PyTape:
    """Pure-Python executor; slots are Python ints (2^n-bit masks)."""

    name = "python"

    def __init__(self, nvars: int):
        self.nvars = nvars
        self.full = (1 << (1 << nvars)) - 1
        self._vmask = [var_mask(nvars, j) for j in range(nvars)]
        self.slots: list[int] = []

    def __len__(self):
        return len(self.slots)

    def run(self, ops):
        slots = self.slots
        full = self.full
        vm = self._vmask
        for op, a, b, c in ops:
            if op == OP_OR:
                v = slots[a] | slots[b]
            elif op == OP_PDEC:
                v = slots[a] | (vm[b] & slots[c])
            elif op == OP_DEC:
                m = vm[b]
                v = (slots[a] & ~m) | (slots[c] & m)
            elif op == OP_PDECN:
                v = slots[a] | (~vm[b] & full & slots[c])
            elif op == OP_VAR:
                v = vm[a]
            elif op == OP_NVAR:
                v = vm[a] ^ full
            elif op == OP_ONE:
                v = full
            else:
                v = 0
            slots.append(v)

    def mask(self, slot: int) -> int:
        return self.slots[slot]

    def countermodel(self, ant: list[int], suc: list[int]) -> int:
        """First assignment index falsifying the sequent, or -1 if valid."""
        bad = self.full
        for s in ant:
            bad &= self.slots[s]
            if not bad:
                return -1
        sor = 0
        for s in suc:
            sor |= self.slots[s]
        bad &= sor ^ self.full
        if not bad:
            return -1
        return (bad & -bad).bit_length() - 1

    def countermodel_many(self, counts, flat) -> tuple[int, int]:
        """Batched validity over jobs encoded as (n_ant, n_suc) pairs in
        ``counts`` and their slot ids concatenated in ``flat``; returns
        (job index, assignment index) of the first falsified job or (-1, -1).
        """
        pos = 0
        for j in range(0, len(counts), 2):
            na, ns = counts[j], counts[j + 1]
            idx = self.countermodel(flat[pos:pos + na], flat[pos + na:pos + na + ns])
            if idx >= 0:
                return j // 2, idx
            pos += na + ns
        return -1, -1


def _load_compiled():
    if os.environ.get("POSBP_PURE_TABLES") == "1":
        return None
    try:
        from . import _ttcore
    except ImportError:
        return None
    return _ttcore.CyTape


_COMPILED = _load_compiled()


def make_tape(nvars: int, pure: bool = False):
    if _COMPILED is not None and not pure:
        return _COMPILED(nvars)
    return PyTape(nvars)


def kernel_name() -> str:
    return "cython" if _COMPILED is not None else "python"


class OracleCapError(Exception):
    pass


class TableOracle:
    """Caches per-node truth tables over a fixed frame of variables.

    One oracle per (axiom set, frame); formulas are flattened incrementally so
    shared subterms and axiom cones are evaluated once no matter how many
    sequent lines mention them.
    """

    def __init__(self, ax: ExtAxiomSet, frame, cap: int = 16, pure: bool = False):
        self.ax = ax
        self.frame = tuple(frame)
        if len(self.frame) > cap:
            raise OracleCapError(
                f"frame of {len(self.frame)} variables exceeds oracle cap {cap}")
        self.pos = {v: j for j, v in enumerate(self.frame)}
        self.tape = make_tape(len(self.frame), pure=pure)
        self._slot: dict[int, int] = {}

    def slot(self, f: Formula) -> int:
        s = self._slot.get(f.serial)
        if s is not None:
            return s
        ops: list[tuple[int, int, int, int]] = []
        self._flatten(f, ops)
        if ops:
            self.tape.run(ops)
        return self._slot[f.serial]

    def _flatten(self, root: Formula, ops):
        slot = self._slot
        base = len(self.tape)
        stack = [root]
        while stack:
            g = stack[-1]
            if g.serial in slot:
                stack.pop()
                continue
            k = g.kind
            if k == EXT:
                body = self.ax.body(g.evar)
                if body.serial in slot:
                    slot[g.serial] = slot[body.serial]
                    stack.pop()
                else:
                    stack.append(body)
                continue
            if k in (OR, DEC, PDEC):
                need = [c for c in (g.a, g.b) if c.serial not in slot]
                if need:
                    stack.extend(need)
                    continue
            if k == ZERO_KIND:
                ops.append((OP_ZERO, 0, 0, 0))
            elif k == ONE_KIND:
                ops.append((OP_ONE, 0, 0, 0))
            elif k == LIT:
                ops.append((OP_NVAR if g.neg else OP_VAR, self._vpos(g), 0, 0))
            elif k == OR:
                ops.append((OP_OR, slot[g.a.serial], slot[g.b.serial], 0))
            elif k == DEC:
                # decision on a negated literal flips the branches
                a, b = (g.b, g.a) if g.neg else (g.a, g.b)
                ops.append((OP_DEC, slot[a.serial], self._vpos(g), slot[b.serial]))
            else:
                op = OP_PDECN if g.neg else OP_PDEC
                ops.append((op, slot[g.a.serial], self._vpos(g), slot[g.b.serial]))
            slot[g.serial] = base + len(ops) - 1
            stack.pop()

    def _vpos(self, g) -> int:
        try:
            return self.pos[g.var]
        except KeyError:
            raise OracleCapError(
                f"variable p{g.var} outside oracle frame {self.frame}") from None

    def table_bits(self, f: Formula) -> int:
        return self.tape.mask(self.slot(f))

    def countermodel(self, ant, suc) -> dict[int, int] | None:
        """None when every assignment falsifies some antecedent member or
        satisfies some succedent member; otherwise a witness assignment."""
        idx = self.tape.countermodel([self.slot(f) for f in ant],
                                     [self.slot(f) for f in suc])
        if idx < 0:
            return None
        return self.assignment(idx)

    def countermodel_many(self, sequents) -> tuple[int, dict[int, int]] | None:
        """First (index, countermodel) among (ant, suc) pairs, else None."""
        counts: list[int] = []
        flat: list[int] = []
        for ant, suc in sequents:
            counts.append(len(ant))
            counts.append(len(suc))
            flat.extend(self.slot(f) for f in ant)
            flat.extend(self.slot(f) for f in suc)
        job, idx = self.tape.countermodel_many(counts, flat)
        if job < 0:
            return None
        return job, self.assignment(idx)

    def assignment(self, idx: int) -> dict[int, int]:
        n = len(self.frame)
        return {v: (idx >> (n - 1 - j)) & 1 for j, v in enumerate(self.frame)}
