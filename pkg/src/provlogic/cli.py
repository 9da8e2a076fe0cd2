"""Command-line interface: prove / interpolate / fixpoint / selftest.

Exit codes: 0 for a positive verdict, 1 for a negative verdict or failed
verification, 2 for usage or parse errors.  All output is deterministic for
fixed inputs, seeds and flags.  Set PROVLOGIC_NO_MEMO=1 to disable search
memoization (differential testing).
"""

from __future__ import annotations

import argparse
import sys

from .formula import ParseError, fprint, parse
from .interpolate import (InterpolationTask, check_preinterpolant, exists,
                          forall, simplify)
from .fixpoint import fixed_point
from .kripke import model_str
from .proofkit import proof_str
from .prover_gl import countermodel_gl, extract_proof_gl, search_gl
from .prover_grz import countermodel_grz, extract_proof_grz, search_grz
from .sequent import EMPTY, Logic, Sequent, mset, parse_sequent

USAGE_ERROR = 2


def _logic(text: str) -> Logic:
    return Logic.GL if text == "gl" else Logic.GRZ


def _tree_lines(tree, depth: int = 0, out=None, seen=None):
    out = [] if out is None else out
    seen = set() if seen is None else seen
    mark = "provable" if tree.provable else "unprovable"
    label = tree.kind if tree.kind != "leaf" else f"leaf:{tree.reason[0]}"
    out.append("  " * depth + f"{label} <{tree.measure[0]},{tree.measure[1]}> "
               f"[{tree.sequent}] {mark}")
    if id(tree) in seen:
        out[-1] += " (shared)"
        return out
    seen.add(id(tree))
    for c in tree.children:
        _tree_lines(c, depth + 1, out, seen)
    return out


def cmd_prove(args) -> int:
    logic = _logic(args.logic)
    s = parse_sequent(args.sequent, logic)
    if logic is Logic.GL:
        tree = search_gl(s)
    elif not s.storage.counts:
        tree = search_grz(s)
    else:
        from .prover_grz import _search_grz_any
        tree = _search_grz_any(s)
    print(f"{'provable' if tree.provable else 'unprovable'}: {s}")
    if args.trace_measures:
        print(f"measure edges: {tree.stats.edges} (all strictly decreasing); "
              f"nodes: {tree.stats.nodes}; max weight: {tree.stats.max_weight}")
    if args.format == "tree":
        print("\n".join(_tree_lines(tree)))
    if tree.provable:
        if args.emit_proof or args.format == "structured":
            p = extract_proof_gl(tree) if logic is Logic.GL else extract_proof_grz(tree)
            sys.stdout.write(proof_str(p))
        return 0
    if args.emit_countermodel or args.format == "structured":
        if logic is Logic.GRZ and s.storage.counts:
            print("(countermodels are exported for empty-storage sequents only)")
        else:
            m, w = countermodel_gl(tree) if logic is Logic.GL else countermodel_grz(tree)
            sys.stdout.write(model_str(m, w))
    return 1


def cmd_interpolate(args) -> int:
    logic = _logic(args.logic)
    if args.exists is not None:
        if args.verify:
            print("error: --verify applies to --forall interpolants", file=sys.stderr)
            return USAGE_ERROR
        from .formula import neg
        inner = Sequent(logic, EMPTY, mset([neg(parse(args.exists))]))
        task = InterpolationTask(logic, inner, args.var)
        result = neg(forall(inner, args.var, task))
    else:
        s = parse_sequent(args.forall, logic)
        task = InterpolationTask(logic, s, args.var)
        result = forall(s, args.var, task)
    if args.simplify:
        result = simplify(result, logic)
    print(fprint(result, sugar=args.sugar))
    if args.trace_measures:
        print(f"recursion steps: {len(task.steps)}; "
              f"measure violations: {len(task.violations)}")
    if args.verify:
        report = check_preinterpolant(task, result, samples=args.samples,
                                      seed=args.seed)
        print(f"verify: var={'ok' if report['var_ok'] else 'FAIL'} "
              f"entail={'ok' if report['entail_ok'] else 'FAIL'} "
              f"contexts={report['contexts']}")
        for fail in report["failures"]:
            print(f"  {fail}")
        if not report["passed"]:
            return 1
    return 0


def cmd_fixpoint(args) -> int:
    beta = parse(args.formula)
    try:
        r = fixed_point(beta, args.var)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    print(fprint(r.gamma, sugar=args.sugar))
    if args.certificate:
        with open(args.certificate, "w") as fh:
            fh.write(proof_str(r.certificate))
        print(f"certificate written to {args.certificate}")
    elif args.emit_proof:
        sys.stdout.write(proof_str(r.certificate))
    return 0


def cmd_selftest(args) -> int:
    from .selftest import SUITES, run_all
    if args.suite is not None and args.suite not in SUITES:
        print(f"error: unknown suite {args.suite!r} (choose from {', '.join(SUITES)})",
              file=sys.stderr)
        return USAGE_ERROR
    ok, report = run_all(seed=args.seed, quick=args.quick, only=args.suite)
    sys.stdout.write(report)
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="provlogic",
        description="Decision procedures and uniform interpolation for GL and Grz.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("prove", help="decide a sequent, emit proof or countermodel")
    p.add_argument("--logic", choices=("gl", "grz"), required=True)
    p.add_argument("sequent", help="e.g. '=> box(box p -> p) -> box p' or 'box p | => p'")
    p.add_argument("--emit-proof", action="store_true")
    p.add_argument("--emit-countermodel", action="store_true")
    p.add_argument("--trace-measures", action="store_true")
    p.add_argument("--format", choices=("text", "tree", "structured"), default="text")
    p.set_defaults(fn=cmd_prove)

    p = sub.add_parser("interpolate", help="compute a uniform interpolant")
    p.add_argument("--logic", choices=("gl", "grz"), required=True)
    p.add_argument("--var", required=True, help="variable to eliminate")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--forall", metavar="SEQUENT")
    group.add_argument("--exists", metavar="FORMULA")
    p.add_argument("--verify", action="store_true")
    p.add_argument("--samples", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--simplify", action="store_true")
    p.add_argument("--sugar", action="store_true", help="print with ->, <>, top")
    p.add_argument("--trace-measures", action="store_true")
    p.set_defaults(fn=cmd_interpolate)

    p = sub.add_parser("fixpoint", help="Sambin-de Jongh fixed point in GL")
    p.add_argument("--var", required=True)
    p.add_argument("formula", help="formula with the variable modalized")
    p.add_argument("--certificate", metavar="PATH")
    p.add_argument("--emit-proof", action="store_true")
    p.add_argument("--sugar", action="store_true")
    p.set_defaults(fn=cmd_fixpoint)

    p = sub.add_parser("selftest", help="run the seeded verification suites")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--quick", action="store_true")
    p.add_argument("--suite", metavar="NAME", default=None)
    p.set_defaults(fn=cmd_selftest)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return USAGE_ERROR if exc.code not in (0, None) else 0
    try:
        return args.fn(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
