"""Command-line interface.

Results go to stdout as JSON with a top-level ``schema`` field and 1-based
vertex ids; diagnostics go to stderr.  Exit codes: 0 success, 1 internal
error, 2 parse error, 3 class violation, 4 verification failure,
5 resource guard.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from typing import Sequence

from . import acceptance
from .characterization import every_max_matching_acyclic, every_max_matching_induced, first_offending_component
from .cograph import find_cotree_obstruction, mwam_p4free
from .errors import AcyclicMatchingError, ClassViolationError, VerificationError
from .generators import MODELS, GenSpec, generate, random_weights
from .graph import MatchingKind, find_2p3
from .io import emit_graph, emit_labels, one_based, parse_cnf, parse_graph, read_text
from .oracles import RESTRICTED_GUARD, SolveResult, max_restricted_matching, maximum_matching
from .reduction import (
    ASSIGNMENT_GUARD,
    CnfFormula,
    Verdict,
    build_reduction,
    find_acyclic_assignment,
    normalize_cnf,
    truth_table_satisfiable,
    verify_instance,
)
from .twop3 import mwam_2p3free

SCHEMA_PREFIX = "acyclic-matching"
SCHEMA_VERSION = 1


def schema(name: str) -> str:
    return f"{SCHEMA_PREFIX}/{name}/{SCHEMA_VERSION}"


def emit(payload: dict, out=None) -> None:
    out = out or sys.stdout
    out.write(json.dumps(payload, sort_keys=True) + "\n")


def write_text(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _result_payload(name: str, res: SolveResult, weighted: bool) -> dict:
    return {
        "schema": schema(name),
        "kind": res.kind.value,
        "weighted": weighted,
        "value": res.value,
        "edges": one_based(res.witness),
    }


def cmd_solve(args: argparse.Namespace) -> int:
    g = parse_graph(read_text(args.file))
    kind = MatchingKind.parse(args.kind)
    if kind is MatchingKind.UNRESTRICTED and not args.weighted:
        res = maximum_matching(g)
    else:
        guard = None if args.guard < 0 else args.guard
        res = max_restricted_matching(g, kind, weighted=args.weighted, guard=guard)
    emit(_result_payload("solve", res, args.weighted))
    return 0


def cmd_solve_class(args: argparse.Namespace) -> int:
    g = parse_graph(read_text(args.file))
    solver = mwam_p4free if args.graph_class == "p4free" else mwam_2p3free
    try:
        res = solver(g)
    except ClassViolationError as exc:
        emit({
            "schema": schema("solve-class"),
            "class": args.graph_class,
            "error": "class-violation",
            "witness": [v + 1 for v in exc.witness],
        })
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    payload = _result_payload("solve-class", res, True)
    payload["class"] = args.graph_class
    emit(payload)
    return 0


def cmd_recognize(args: argparse.Namespace) -> int:
    g = parse_graph(read_text(args.file))
    prop = args.property
    witness = None
    if prop == "p4free":
        witness = find_cotree_obstruction(g)
        result = witness is None
    elif prop == "2p3free":
        witness = find_2p3(g)
        result = witness is None
    else:
        induced = prop == "all-max-induced"
        result = (every_max_matching_induced if induced else every_max_matching_acyclic)(g)
        if not result:
            witness = first_offending_component(g, induced=induced)
    payload = {"schema": schema("recognize"), "property": prop, "result": result}
    if witness is not None:
        payload["witness"] = [v + 1 for v in witness]
    emit(payload)
    return 0


def _prepare_formula(f: CnfFormula) -> CnfFormula | Verdict:
    """Formulas outside the restricted fragment go through normalization."""
    if f.is_restricted():
        return f
    return normalize_cnf(f)


def cmd_reduce(args: argparse.Namespace) -> int:
    f = _prepare_formula(parse_cnf(read_text(args.cnf)))
    if isinstance(f, Verdict):
        emit({"schema": schema("reduce"), "decided": True, "satisfiable": f.satisfiable, "reason": f.reason})
        print("formula decided during normalization; no instance written", file=sys.stderr)
        return 0
    inst = build_reduction(f)
    write_text(args.out, emit_graph(inst.graph))
    if args.labels:
        write_text(args.labels, emit_labels(inst))
    emit({
        "schema": schema("reduce"),
        "decided": False,
        "num_vars": f.num_vars,
        "num_clauses": f.num_clauses,
        "n_vertices": inst.graph.n,
        "n_edges": inst.graph.m,
        "size_A": len(inst.side_a),
    })
    return 0


def cmd_verify_reduction(args: argparse.Namespace) -> int:
    original = parse_cnf(read_text(args.cnf))
    f = _prepare_formula(original)
    payload: dict = {"schema": schema("verify-reduction")}
    if isinstance(f, Verdict):
        payload.update(decided=True, satisfiable=f.satisfiable, reason=f.reason, passed=True)
        emit(payload)
        return 0
    inst = build_reduction(f)
    try:
        report = verify_instance(inst)
    except VerificationError as exc:
        payload.update(passed=False, failed_claim=exc.claim, message=str(exc))
        emit(payload)
        print(f"verification failed: {exc}", file=sys.stderr)
        return exc.exit_code
    payload.update(report)
    payload["decided"] = False
    if f.num_vars <= args.guard:
        assignment = find_acyclic_assignment(inst, guard=args.guard)
        truth = truth_table_satisfiable(f)
        payload["acyclic_maximum_matching"] = assignment is not None
        payload["satisfiable"] = truth is not None
        if assignment is not None:
            payload["assignment"] = [int(b) for b in assignment]
        if (assignment is None) != (truth is None):
            payload.update(passed=False, failed_claim="assignment_equivalence")
            emit(payload)
            print("verification failed: assignment sweep disagrees with the truth table", file=sys.stderr)
            return VerificationError.exit_code
    else:
        print(f"skipping the assignment sweep: {f.num_vars} variables exceed the guard {args.guard}", file=sys.stderr)
    payload["passed"] = True
    emit(payload)
    return 0


def cmd_gen(args: argparse.Namespace) -> int:
    spec = GenSpec(args.model, args.n, seed=args.seed, p=args.p, clauses=args.clauses)
    g = generate(spec)
    if args.weights:
        lo, hi = args.weights
        # a second stream keeps the unweighted graph identical for a seed
        g = random_weights(random.Random(f"{args.seed}/weights"), g, lo, hi)
    write_text(args.out, emit_graph(g))
    return 0


def cmd_selftest(args: argparse.Namespace) -> int:
    def progress(res: dict) -> None:
        state = "PASS" if res["passed"] else "FAIL"
        print(f"[{state}] criterion {res['id']}: {res['name']} ({res['checked']} checked)", file=sys.stderr)

    report = acceptance.run_all(progress if not args.quiet else None)
    sys.stdout.write(acceptance.dumps(report))
    return 0 if report["passed"] else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="acyclic-matching",
        description="Acyclic, induced and uniquely restricted matchings: solvers, recognizers and a SAT reduction.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="exact maximum (weight) matching of a given kind")
    p.add_argument("--kind", required=True, choices=[k.value for k in MatchingKind])
    p.add_argument("--weighted", action="store_true", help="maximize total weight instead of size")
    p.add_argument(
        "--guard", type=int, default=RESTRICTED_GUARD,
        help="vertex limit for exhaustive search; negative disables it (default: %(default)s)",
    )
    p.add_argument("file")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("solve-class", help="polynomial maximum weight acyclic matching on a graph class")
    p.add_argument("--class", dest="graph_class", required=True, choices=["p4free", "2p3free"])
    p.add_argument("file")
    p.set_defaults(func=cmd_solve_class)

    p = sub.add_parser("recognize", help="test a graph property")
    p.add_argument("--property", required=True, choices=["p4free", "2p3free", "all-max-acyclic", "all-max-induced"])
    p.add_argument("file")
    p.set_defaults(func=cmd_recognize)

    p = sub.add_parser("reduce", help="build the bipartite instance for a CNF formula")
    p.add_argument("cnf")
    p.add_argument("--out", required=True, help="graph file to write ('-' for stdout)")
    p.add_argument("--labels", help="label sidecar file to write")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("verify-reduction", help="build and check the instance for a CNF formula")
    p.add_argument("cnf")
    p.add_argument(
        "--guard", type=int, default=ASSIGNMENT_GUARD,
        help="largest variable count for the assignment sweep (default: %(default)s)",
    )
    p.set_defaults(func=cmd_verify_reduction)

    p = sub.add_parser("gen", help="generate a graph")
    p.add_argument("--model", required=True, choices=MODELS)
    p.add_argument("--n", type=int, required=True, help="vertices (variables for the reduction model)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--p", type=float, default=0.5, help="edge probability for gnp and twop3free")
    p.add_argument("--clauses", type=int, help="clause count for the reduction model (default: n)")
    p.add_argument("--weights", type=int, nargs=2, metavar=("LO", "HI"), help="uniform integer edge weights")
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("selftest", help="run the seeded acceptance suites and print a JSON report")
    p.add_argument("--quiet", action="store_true", help="no per-suite progress on stderr")
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except AcyclicMatchingError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except AssertionError as exc:
        print(f"internal error: assertion failed {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
