"""Command-line surface: check, generate, simulate, evaluate, report.

Exit codes: 0 success, 1 check/validity failure, 2 parse or usage error.
All reports are deterministic for fixed inputs; randomized commands take an
explicit --seed.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import bp, php
from .kernel import kernel_name
from .simulate import SimulateError, simulate as run_simulate
from .counting import LemmaEngine, gen_identity
from .search import prove_by_search
from .sequents import (Proof, ProofParseError, check_proof, dialect_by_name,
                       display_sequent, parse_proof, parse_sequent,
                       proof_report, proof_size, proof_text, sequent_valid)
from .terms import (ExtAxiomSet, ParseError, TermError, display, evaluate,
                    parse_axiom_file, parse_formula)

OK, FAIL, BAD_INPUT = 0, 1, 2


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as e:
        raise CliInputError(f"cannot read {path}: {e}") from None


class CliInputError(Exception):
    pass


def _write_report(path: str | None, payload: dict):
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if path:
        Path(path).write_text(text)
    else:
        print(text, end="")


def _check_one(path: str) -> tuple[str, int, str]:
    try:
        proof = parse_proof(_read(path))
    except (ProofParseError, ParseError, TermError, CliInputError) as e:
        return path, BAD_INPUT, f"parse error: {e}"
    r = check_proof(proof)
    if not r:
        return path, FAIL, str(r)
    return path, OK, f"ok ({len(proof.lines)} lines, {proof_size(proof)} tokens)"


def cmd_check(args) -> int:
    paths = args.proof
    if args.jobs > 1 and len(paths) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_check_one, paths))
    else:
        results = [_check_one(p) for p in paths]
    worst = OK
    for path, code, msg in results:
        print(f"{path}: {msg}")
        worst = max(worst, code)
    return worst


def _emit_proof(proof: Proof, out: str | None, report: str | None,
                wall_ms: float, extra: dict | None = None) -> None:
    text = proof_text(proof)
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)
    if report is not None:
        payload = proof_report(proof)
        payload["wall_ms"] = round(wall_ms, 3)
        payload.update(extra or {})
        _write_report(report, payload)


def cmd_php(args) -> int:
    t0 = time.monotonic()
    proof = php.gen_php(args.n)
    _emit_proof(proof, args.out, args.report,
                (time.monotonic() - t0) * 1e3, {"n": args.n})
    return OK


def cmd_simulate(args) -> int:
    try:
        proof = parse_proof(_read(getattr(args, "in")))
    except (ProofParseError, ParseError, TermError, CliInputError) as e:
        print(f"parse error: {e}", file=sys.stderr)
        return BAD_INPUT
    t0 = time.monotonic()
    try:
        out = run_simulate(proof)
    except SimulateError as e:
        print(f"simulation failed: {e}", file=sys.stderr)
        return FAIL
    _emit_proof(out, args.out, args.report, (time.monotonic() - t0) * 1e3,
                {"input_tokens": proof_size(proof)})
    return OK


def cmd_prove(args) -> int:
    ax = parse_axiom_file(_read(args.axioms)) if args.axioms else ExtAxiomSet()
    try:
        seq = parse_sequent(args.sequent, ax)
    except (ProofParseError, ParseError, TermError) as e:
        print(f"parse error: {e}", file=sys.stderr)
        return BAD_INPUT
    proof, cm = prove_by_search(seq, ax)
    if proof is None:
        print("countermodel: " + ", ".join(f"p{v}={b}" for v, b in sorted(cm.items())))
        return FAIL
    _emit_proof(proof, args.out, args.report, 0.0)
    return OK


def cmd_eval(args) -> int:
    ax = parse_axiom_file(_read(args.axioms)) if args.axioms else ExtAxiomSet()
    try:
        f = parse_formula(args.formula, ax=ax)
    except ParseError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return BAD_INPUT
    assignment = {}
    if args.assign:
        for part in args.assign.split(","):
            name, _, val = part.partition("=")
            name = name.strip()
            if not name.startswith("p"):
                print(f"bad assignment {part!r}", file=sys.stderr)
                return BAD_INPUT
            assignment[int(name[1:])] = int(val)
    print(evaluate(f, ax, assignment))
    return OK


def cmd_valid(args) -> int:
    ax = parse_axiom_file(_read(args.axioms)) if args.axioms else ExtAxiomSet()
    try:
        seq = parse_sequent(args.sequent, ax)
    except (ProofParseError, ParseError, TermError) as e:
        print(f"parse error: {e}", file=sys.stderr)
        return BAD_INPUT
    cm = sequent_valid(seq, ax, cap=args.cap)
    if cm is None:
        print("valid")
        return OK
    print("countermodel: " + ", ".join(f"p{v}={b}" for v, b in sorted(cm.items())))
    return FAIL


def cmd_bp(args) -> int:
    if args.bp_cmd == "exact":
        g = bp.build_exact_obdd(args.n, args.k)
    else:
        try:
            g = bp.parse_nbp(_read(getattr(args, "in")))
        except bp.BpError as e:
            print(f"parse error: {e}", file=sys.stderr)
            return BAD_INPUT
    if args.bp_cmd == "closure":
        g = bp.positive_closure(g)
    if args.bp_cmd == "eval":
        assignment = {}
        if args.assign:
            for part in args.assign.split(","):
                name, _, val = part.partition("=")
                assignment[int(name.strip()[1:])] = int(val)
        print(bp.eval_nbp(g, assignment))
        return OK
    if args.bp_cmd == "to-endt":
        f, ax = bp.nbp_to_endt(g)
        lines = [f"{display(f)}"]
        from .terms import axiom_lines

        lines += axiom_lines(ax)
        text = "\n".join(lines) + "\n"
    elif args.dot:
        text = bp.nbp_dot(g)
    else:
        text = bp.nbp_text(g)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return OK


def _loglog_slope(points) -> float:
    xs = [math.log(x) for x, _ in points]
    ys = [math.log(y) for _, y in points]
    mx = sum(xs) / len(xs)
    my = sum(ys) / len(ys)
    num = sum((x - mx) * (y - my) for x, y in zip(xs, ys))
    den = sum((x - mx) ** 2 for x in xs)
    return num / den


def _identity_gen(n):
    ax = ExtAxiomSet()
    return gen_identity(ax.thr(tuple(range(n)), max(1, n // 2)), ax)


GENERATORS = {
    "php": lambda n: php.gen_php(n),
    "identity": _identity_gen,
    "merge": lambda n: _merge_gen(n),
    "symmetry": lambda n: _sym_gen(n),
}


def _merge_gen(n):
    from .counting import gen_merge

    half = tuple(range(n))
    return gen_merge(half, tuple(range(n, 2 * n)), max(1, n // 2), max(1, n // 2))


def _sym_gen(n):
    from .counting import gen_symmetry

    word = tuple(range(n))
    return gen_symmetry(word, tuple(reversed(word)), max(1, n // 2))[0]


def cmd_scaling(args) -> int:
    lo, _, hi = args.range.partition("..")
    try:
        lo, hi = int(lo), int(hi)
    except ValueError:
        print(f"bad range {args.range!r}", file=sys.stderr)
        return BAD_INPUT
    if hi < lo:
        print("empty range", file=sys.stderr)
        return BAD_INPUT
    gen = GENERATORS.get(args.generator)
    if gen is None:
        print(f"unknown generator {args.generator!r}; "
              f"choices: {sorted(GENERATORS)}", file=sys.stderr)
        return BAD_INPUT
    rows = []
    for n in range(lo, hi + 1):
        t0 = time.monotonic()
        proof = gen(n)
        rows.append({"n": n, "lines": len(proof.lines),
                     "tokens": proof_size(proof),
                     "wall_ms": round((time.monotonic() - t0) * 1e3, 3)})
    slope = (_loglog_slope([(r["n"], r["tokens"]) for r in rows])
             if len(rows) > 1 and lo >= 1 else None)
    if args.csv:
        lines = ["n,lines,tokens,wall_ms"]
        lines += [f"{r['n']},{r['lines']},{r['tokens']},{r['wall_ms']}" for r in rows]
        Path(args.csv).write_text("\n".join(lines) + "\n")
    payload = {"schema": 1, "generator": args.generator, "rows": rows,
               "loglog_slope": slope, "kernel": kernel_name()}
    _write_report(args.json, payload)
    return OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="posbp", description=__doc__)
    sub = ap.add_subparsers(dest="cmd", required=True)

    c = sub.add_parser("check", help="check proof files")
    c.add_argument("proof", nargs="+")
    c.add_argument("--jobs", type=int, default=1)
    c.set_defaults(fn=cmd_check)

    c = sub.add_parser("php", help="generate a pigeonhole proof")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--out")
    c.add_argument("--report")
    c.set_defaults(fn=cmd_php)

    c = sub.add_parser("simulate", help="translate a general proof to the positive system")
    c.add_argument("--in", required=True)
    c.add_argument("--out")
    c.add_argument("--report")
    c.set_defaults(fn=cmd_simulate)

    c = sub.add_parser("prove", help="cut-free search for a positive sequent")
    c.add_argument("sequent")
    c.add_argument("--axioms")
    c.add_argument("--out")
    c.add_argument("--report")
    c.set_defaults(fn=cmd_prove)

    c = sub.add_parser("eval", help="evaluate a formula under an assignment")
    c.add_argument("formula")
    c.add_argument("--axioms")
    c.add_argument("--assign", help="e.g. p0=1,p1=0 (unlisted variables are 0)")
    c.set_defaults(fn=cmd_eval)

    c = sub.add_parser("valid", help="brute-force validity of a sequent")
    c.add_argument("sequent")
    c.add_argument("--axioms")
    c.add_argument("--cap", type=int, default=16)
    c.set_defaults(fn=cmd_valid)

    c = sub.add_parser("bp", help="branching-program utilities")
    bsub = c.add_subparsers(dest="bp_cmd", required=True)
    x = bsub.add_parser("exact", help="layered OBDD for exact-k-of-n")
    x.add_argument("--n", type=int, required=True)
    x.add_argument("--k", type=int, required=True)
    x.add_argument("--out")
    x.add_argument("--dot", action="store_true")
    for name in ("closure", "print", "eval", "to-endt"):
        y = bsub.add_parser(name)
        y.add_argument("--in", required=True)
        y.add_argument("--out")
        y.add_argument("--dot", action="store_true")
        if name == "eval":
            y.add_argument("--assign")
    c.set_defaults(fn=cmd_bp)

    c = sub.add_parser("scaling", help="size curves for a generator family")
    c.add_argument("--generator", required=True)
    c.add_argument("--range", required=True, help="e.g. 1..6")
    c.add_argument("--csv")
    c.add_argument("--json")
    c.add_argument("--seed", type=int, default=0, help=argparse.SUPPRESS)
    c.set_defaults(fn=cmd_scaling)

    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except CliInputError as e:
        print(str(e), file=sys.stderr)
        return BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
