"""Command-line entry point.

JSON goes to stdout, diagnostics to stderr. Exit codes:

    0 ok, 2 parse/usage error, 3 unbound variable, 4 hard formulas
    unsatisfiable, 5 method precondition failed, 6 size limit exceeded,
    7 witness failed re-verification (solver bug canary)
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import encoders, formats, forms, solvers
from .errors import (
    BoundRange,
    ConstantOutOfRange,
    DomainBlowup,
    FormulaSyntaxError,
    MalformedDimacs,
    NotSimpleForm,
    TooLarge,
    UnboundVariable,
    WitnessMismatch,
)
from .logic import count_satisfied, evaluate, truth_degree
from .parser import format_degree, format_formula, format_instance, parse_instance

EXIT_PARSE = 2
EXIT_UNBOUND = 3
EXIT_HARD_UNSAT = 4
EXIT_PRECONDITION = 5
EXIT_TOO_LARGE = 6
EXIT_CANARY = 7


class CliError(Exception):
    def __init__(self, code, message):
        super().__init__(message)
        self.code = code


def _load_instance(path):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise CliError(EXIT_PARSE, f"cannot read {path}: {exc}") from None
    try:
        return parse_instance(text)
    except (FormulaSyntaxError, ConstantOutOfRange) as exc:
        raise CliError(EXIT_PARSE, f"{path}: {exc}") from None


def _emit(obj):
    json.dump(obj, sys.stdout, indent=2)
    sys.stdout.write("\n")


def _exact(point):
    return {v: format_degree(point[v]) for v in sorted(point)}


def _approx(point):
    return {v: f"{float(point[v]):.6g}" for v in sorted(point)}


def _stats(inst):
    return {
        "hard": len(inst.hard),
        "soft": len(inst.soft),
        "variables": len(inst.variables),
        "form": forms.classify(inst).value,
    }


# --- eval ----------------------------------------------------------------------


def cmd_eval(args):
    inst = _load_instance(args.file)
    point = {}
    if args.witness:
        try:
            point.update(formats.read_witness(Path(args.witness).read_text()))
        except (OSError, FormulaSyntaxError) as exc:
            raise CliError(EXIT_PARSE, str(exc)) from None
    for item in args.set or []:
        name, sep, value = item.partition("=")
        if not sep:
            raise CliError(EXIT_PARSE, f"--set expects var=value, got {item!r}")
        try:
            point[name.strip()] = truth_degree(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise CliError(EXIT_PARSE, f"--set {item}: {exc}") from None
    start = time.perf_counter()
    rows = []
    try:
        for kind, group in (("hard", inst.hard), ("soft", inst.soft)):
            for i, f in enumerate(group, start=1):
                degree = evaluate(f, point)
                row = {
                    "kind": kind,
                    "index": i,
                    "formula": format_formula(f),
                    "degree": format_degree(degree),
                    "satisfied": degree == 1,
                }
                if args.approx:
                    row["degree_approx"] = f"{float(degree):.6g}"
                rows.append(row)
        hard_ok, soft = count_satisfied(inst, point)
    except UnboundVariable as exc:
        raise CliError(EXIT_UNBOUND, str(exc)) from None
    _emit(
        {
            "formulas": rows,
            "hard_ok": hard_ok,
            "soft_satisfied": soft,
            "elapsed_ms": round((time.perf_counter() - start) * 1000, 3),
            "stats": _stats(inst),
        }
    )
    return 0


# --- solve ---------------------------------------------------------------------

_NEEDS_K = ("bruteforce", "wcsp")


def run_method(inst, method, k=None, strategy=solvers.SearchStrategy.UP):
    if method == "auto":
        simple = not inst.hard and forms.classify(inst) is forms.FormClass.SIMPLE_L_CLAUSAL
        method = "simple" if simple else "milp"
    if method == "bruteforce":
        return solvers.solve_bruteforce(inst, k)
    if method == "wcsp":
        return solvers.solve_wcsp(encoders.encode_wcsp(inst, k), inst)
    if method == "milp":
        return solvers.solve_milp(inst)
    if method == "dlr":
        return solvers.solve_dlr(inst, strategy)
    if method == "simple":
        return solvers.solve_simple_iterative(inst, strategy)
    raise ValueError(f"unknown method {method!r}")


def cmd_solve(args, parser):
    if args.method in _NEEDS_K and args.k is None:
        parser.error(f"--k is required for --method {args.method}")
    inst = _load_instance(args.file)
    strategy = solvers.SearchStrategy(args.strategy)
    start = time.perf_counter()
    try:
        sol = run_method(inst, args.method, args.k, strategy)
    except NotSimpleForm as exc:
        raise CliError(EXIT_PRECONDITION, str(exc)) from None
    except (TooLarge, DomainBlowup) as exc:
        raise CliError(EXIT_TOO_LARGE, str(exc)) from None
    except WitnessMismatch as exc:
        raise CliError(EXIT_CANARY, f"witness re-verification failed: {exc}") from None
    elapsed = (time.perf_counter() - start) * 1000

    report = {
        "status": sol.status,
        "method": sol.method,
        "soft_satisfied": sol.soft_satisfied if sol.status == solvers.OPTIMAL else None,
        "falsified": sol.info.get("falsified"),
        "witness": _exact(sol.witness) if sol.witness is not None else None,
        "elapsed_ms": round(elapsed, 3),
        "stats": _stats(inst),
    }
    for key in ("k", "strategy", "k_opt", "objective", "nodes"):
        if key in sol.info:
            report[key] = sol.info[key]
    if args.approx and sol.witness is not None:
        report["witness_approx"] = _approx(sol.witness)
    if sol.status == solvers.OPTIMAL:
        # independent of the Solution constructor check: re-evaluate from the printed strings
        printed = {v: truth_degree(q) for v, q in report["witness"].items()}
        if count_satisfied(inst, printed) != (True, sol.soft_satisfied):
            raise CliError(EXIT_CANARY, "printed witness does not re-verify")
    _emit(report)
    return EXIT_HARD_UNSAT if sol.status == solvers.HARD_UNSAT else 0


# --- encode --------------------------------------------------------------------


def cmd_encode(args, parser):
    if args.to == "wcsp" and args.k is None:
        parser.error("--k is required for --to wcsp")
    if args.to == "dlr" and args.bound is None:
        parser.error("--bound is required for --to dlr")
    inst = _load_instance(args.file)
    try:
        if args.to == "lp":
            model = encoders.encode_milp(inst)
            text = formats.write_lp(model)
            summary = (
                f"lp: {len(model.continuous) + len(model.binaries)} variables "
                f"({len(model.binaries)} binary), {len(model.constraints)} constraints"
            )
        elif args.to == "wcsp":
            w = encoders.encode_wcsp(inst, args.k)
            text = formats.write_wcsp(w)
            summary = (
                f"wcsp: {len(w.domains)} variables, max domain {max((len(d) for d in w.domains), default=0)}, "
                f"{len(w.unary) + len(w.binary)} cost functions, top {w.top}"
            )
        else:
            system = encoders.encode_dlr(inst, args.bound)
            text = formats.write_dlr(system)
            multi = sum(1 for d in system.dlrs if len(d.disjuncts) > 1)
            summary = f"dlr: {len(system.variables)} variables, {len(system.dlrs)} DLRs ({multi} disjunctive)"
    except DomainBlowup as exc:
        raise CliError(EXIT_TOO_LARGE, str(exc)) from None
    except BoundRange as exc:
        raise CliError(EXIT_PRECONDITION, str(exc)) from None
    if args.out:
        Path(args.out).write_text(text)
        print(f"{summary} -> {args.out}")
    else:
        sys.stdout.write(text)
        print(summary, file=sys.stderr)
    return 0


# --- reduce / classify ---------------------------------------------------------


def cmd_reduce(args):
    try:
        cnf = forms.read_dimacs(Path(args.from_dimacs).read_text())
    except OSError as exc:
        raise CliError(EXIT_PARSE, f"cannot read {args.from_dimacs}: {exc}") from None
    except MalformedDimacs as exc:
        raise CliError(EXIT_PARSE, f"{args.from_dimacs}: {exc}") from None
    inst = forms.reduce_boolean(cnf)
    text = format_instance(inst)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    stream = sys.stdout if args.out else sys.stderr
    print(f"|H| = {len(inst.hard)}, |S| = {len(inst.soft)}", file=stream)
    return 0


def cmd_classify(args):
    inst = _load_instance(args.file)
    print(forms.classify(inst).value)
    return 0


# --- wiring --------------------------------------------------------------------


def build_parser():
    p = argparse.ArgumentParser(prog="lukmaxsat", description="Exact MaxSAT over Łukasiewicz logic.")
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("eval", help="evaluate every formula under an assignment")
    e.add_argument("file")
    e.add_argument("--set", action="append", metavar="VAR=VALUE")
    e.add_argument("--witness", metavar="PATH", help="read 'var = value' lines")
    e.add_argument("--approx", action="store_true", help="also show decimal approximations")

    s = sub.add_parser("solve", help="solve the fuzzy (P)MaxSAT instance")
    s.add_argument("file")
    s.add_argument("--method", choices=["bruteforce", "milp", "dlr", "wcsp", "simple", "auto"], default="auto")
    s.add_argument("--k", type=int, help="grid resolution for bruteforce/wcsp")
    s.add_argument("--strategy", choices=[x.value for x in solvers.SearchStrategy], default="up")
    s.add_argument("--approx", action="store_true")

    c = sub.add_parser("encode", help="write an LP, wcsp or DLR encoding")
    c.add_argument("file")
    c.add_argument("--to", choices=["lp", "wcsp", "dlr"], required=True)
    c.add_argument("--k", type=int)
    c.add_argument("--bound", type=int)
    c.add_argument("--out", metavar="PATH")

    r = sub.add_parser("reduce", help="Boolean MaxSAT (DIMACS) to fuzzy PMaxSAT")
    r.add_argument("--from-dimacs", required=True, metavar="PATH")
    r.add_argument("--out", metavar="PATH")

    k = sub.add_parser("classify", help="print the syntactic form class")
    k.add_argument("file")
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "k", None) is not None and args.k < 1:
        parser.error("--k must be at least 1")
    try:
        if args.command == "eval":
            return cmd_eval(args)
        if args.command == "solve":
            return cmd_solve(args, parser)
        if args.command == "encode":
            return cmd_encode(args, parser)
        if args.command == "reduce":
            return cmd_reduce(args)
        return cmd_classify(args)
    except CliError as exc:
        print(f"lukmaxsat: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
