#!/usr/bin/env python3
"""Compare the compiled and pure truth-table kernels.

Workloads mirror the hot paths: full-table sweeps over threshold-counter
cones, and per-line sequent validity over a generated pigeonhole proof.

    python benchmarks/bench_tables.py [--nvars 14] [--php 3]
"""

import argparse
import time

from posbp.kernel import TableOracle, kernel_name
from posbp.php import gen_php
from posbp.sequents import proof_oracle, sequent_frame
from posbp.terms import ExtAxiomSet


def bench_thr_tables(nvars: int, pure: bool) -> tuple[float, int]:
    ax = ExtAxiomSet()
    word = tuple(range(nvars))
    roots = [ax.thr(word, k) for k in range(nvars + 1)]
    t0 = time.perf_counter()
    oracle = TableOracle(ax, word, cap=24, pure=pure)
    acc = 0
    for r in roots:
        acc ^= oracle.table_bits(r)
    return time.perf_counter() - t0, acc


_PHP_CACHE = {}


def bench_php_soundness(n: int, pure: bool) -> tuple[float, int]:
    proof = _PHP_CACHE.get(n)
    if proof is None:
        proof = _PHP_CACHE[n] = gen_php(n)
    from posbp.sequents import frame_of

    frame = frame_of([f for s, _ in proof.lines for f in s.formulas()],
                     proof.axioms)
    t0 = time.perf_counter()
    oracle = TableOracle(proof.axioms, frame, cap=24, pure=pure)
    hit = oracle.countermodel_many([(s.ant, s.suc) for s, _ in proof.lines])
    return time.perf_counter() - t0, -1 if hit is None else hit[0]


def bench_small_frame(nvars: int, pure: bool) -> tuple[float, int]:
    """Instruction-heavy workload on a narrow frame (one machine word)."""
    ax = ExtAxiomSet()
    word = tuple(range(6))
    roots = [ax.thr(word * r, k) for r in range(1, 40) for k in range(8)]
    t0 = time.perf_counter()
    oracle = TableOracle(ax, word, cap=24, pure=pure)
    acc = 0
    for r in roots:
        acc ^= oracle.table_bits(r)
    return time.perf_counter() - t0, acc


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--nvars", type=int, default=14)
    ap.add_argument("--php", type=int, default=3)
    args = ap.parse_args()

    print(f"selected kernel at import: {kernel_name()}")
    for name, fn, arg in (("thr tables", bench_thr_tables, args.nvars),
                          ("narrow-frame tables", bench_small_frame, 6),
                          ("php line validity", bench_php_soundness, args.php)):
        times = {}
        check = {}
        for pure in (False, True):
            label = "python" if pure else kernel_name()
            t, c = fn(arg, pure)
            times[label] = t
            check[label] = c
        assert len(set(check.values())) == 1, "kernels disagree"
        base = times.get("python", 0.0)
        for label, t in times.items():
            speed = f"  ({base / t:.1f}x vs python)" if label != "python" and t else ""
            print(f"  {name:20s} {label:8s} {t * 1e3:9.1f} ms{speed}")


if __name__ == "__main__":
    main()
