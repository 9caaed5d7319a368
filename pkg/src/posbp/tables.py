"""Truth tables as bitmasks, plus the monotonicity operators over them."""

from __future__ import annotations

from dataclasses import dataclass

from .kernel import OracleCapError, TableOracle, var_mask
from .terms import EMPTY_AXIOMS, ExtAxiomSet, Formula, free_vars

DEFAULT_CAP = 16


@dataclass(frozen=True)
class TruthTable:
    """Output bits of a Boolean function over an ordered variable list.

    Bit i is the value on the i-th assignment in lexicographic order, i.e.
    variable j reads bit n-1-j of i.
    """

    vars: tuple[int, ...]
    bits: int

    def __post_init__(self):
        if len(set(self.vars)) != len(self.vars):
            raise ValueError("truth-table variable list must be duplicate-free")
        if self.bits >> (1 << len(self.vars)):
            raise ValueError("truth-table bits exceed 2^n")

    @property
    def n(self) -> int:
        return len(self.vars)

    @property
    def size(self) -> int:
        return 1 << self.n

    def value(self, i: int) -> int:
        return (self.bits >> i) & 1

    def as_tuple(self) -> tuple[int, ...]:
        return tuple((self.bits >> i) & 1 for i in range(self.size))

    def assignment(self, i: int) -> dict[int, int]:
        return {v: (i >> (self.n - 1 - j)) & 1 for j, v in enumerate(self.vars)}


def truth_table(f: Formula, ax: ExtAxiomSet | None = None,
                vars=None, cap: int = DEFAULT_CAP) -> TruthTable:
    """Brute-force table of f over the given (or inferred) variable list."""
    if ax is None:
        ax = EMPTY_AXIOMS
    if vars is None:
        vars = sorted(free_vars(f, ax))
    vars = tuple(vars)
    missing = free_vars(f, ax) - set(vars)
    if missing:
        raise ValueError(f"variable list misses free variables {sorted(missing)}")
    oracle = TableOracle(ax, vars, cap=cap)
    return TruthTable(vars, oracle.table_bits(f))


def table_of_function(vars, fn) -> TruthTable:
    """Independent table builder: enumerates assignments and calls fn(dict)."""
    vars = tuple(vars)
    n = len(vars)
    bits = 0
    for i in range(1 << n):
        alpha = {v: (i >> (n - 1 - j)) & 1 for j, v in enumerate(vars)}
        if fn(alpha):
            bits |= 1 << i
    return TruthTable(vars, bits)


def is_monotone(t: TruthTable) -> bool:
    """True iff flipping any variable from 0 to 1 never drops the output."""
    n = t.n
    bits = t.bits
    for j in range(n):
        s = n - 1 - j
        m = var_mask(n, j)
        low = bits & ~m
        partner = (bits >> (1 << s)) & ~m
        if low & ~partner:
            return False
    return True


def monotone_closure(t: TruthTable) -> TruthTable:
    """Least monotone function dominating t (spread ones upward)."""
    n = t.n
    bits = t.bits
    for j in range(n):
        s = n - 1 - j
        m = var_mask(n, j)
        bits |= (bits & ~m) << (1 << s)
    return TruthTable(t.vars, bits)


def popcount_table(vars, k: int, at_least: bool) -> TruthTable:
    """Oracle table for "popcount >= k" or "popcount == k" over vars."""
    if at_least:
        return table_of_function(vars, lambda a: sum(a.values()) >= k)
    return table_of_function(vars, lambda a: sum(a.values()) == k)
