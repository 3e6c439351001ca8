"""Command-line front end.

Structured output is JSON on stdout (canonical form: byte-identical across
repeated invocations); a short human summary goes to stderr.  Exit codes
follow the solver convention: 0 satisfiable/ok, 20 unsatisfiable, 2
precondition or usage rejection, 1 internal error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction

from .container import run_container
from .errors import DimacsParseError, InvariantViolationError, PreconditionError
from .formula import Formula, parse_dimacs, preprocess, to_hypergraph
from .hypergraph import Hypergraph, literals_to_vertices
from .oracle import (
    DEFAULT_VAR_CAP,
    default_fuzz_params,
    random_formula,
    verify_theorems,
)
from .pipeline import (
    collect_family,
    compute_bounds,
    dense_max_sat,
    dense_solve,
    enumerate_containers,
    enumeration_plan,
    max_sat_approx,
    solve_sat,
)
from .rationals import dumps_canonical, fraction_str, parse_fraction
from .structure import DceParams, WeightParams, check_dce, check_structure, dce_to_lambda_p

EXIT_OK = 0
EXIT_UNSAT = 20
EXIT_REJECTED = 2
EXIT_INTERNAL = 1


def _fraction(text: str) -> Fraction:
    try:
        return parse_fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational 'a/b': {text!r} ({exc})")


def _read_formula(path: str) -> Formula:
    if path == "-":
        return parse_dimacs(sys.stdin.read())
    with open(path, "r", encoding="utf-8") as fh:
        return parse_dimacs(fh.read())


def _read_edge_subset(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    if isinstance(data, dict):
        data = data.get("edges")
    if not isinstance(data, list):
        raise PreconditionError(
            "edge-subset file must hold a JSON list of literal lists "
            "(or an object with an 'edges' field)"
        )
    return [literals_to_vertices(e) for e in data]


def _emit(payload: dict, summary: str) -> None:
    sys.stdout.write(dumps_canonical(payload))
    print(summary, file=sys.stderr)


def _weight_params(args) -> WeightParams:
    return WeightParams(p=args.p, delta=args.delta, k=args.k,
                        lam=getattr(args, "lam", None))


def _cmd_analyze(args) -> int:
    f = preprocess(_read_formula(args.file))
    h = to_hypergraph(f)
    if args.edge_subset:
        chosen = frozenset(frozenset(e) for e in _read_edge_subset(args.edge_subset))
        if not chosen <= h.edges:
            raise PreconditionError("edge subset is not a subset of the formula hypergraph")
        h = Hypergraph(h.universe_size, h.k, chosen)
    report = check_structure(h, args.lam, args.p, args.k)
    used = {v for c in f.clauses for v in c.variables}
    payload = {
        "structure_report": report.to_json_dict(),
        "unused_declared_variables": f.n - len(used),
    }
    if args.delta is not None:
        params = WeightParams(p=args.p, delta=args.delta, k=args.k, lam=args.lam)
        payload["bounds_report"] = compute_bounds(params, f.n).to_json_dict()
    _emit(payload, f"structure: {'yes' if report.is_structure else 'no'} "
                   f"(cond1={report.cond1} cond2={report.cond2} cond3={report.cond3})")
    return EXIT_OK


def _cmd_containers(args) -> int:
    f = preprocess(_read_formula(args.file))
    h = to_hypergraph(f)
    params = _weight_params(args)
    if args.trace:
        plan = enumeration_plan(h, params, cap=args.cap)
        outputs = []
        for idx, s in enumerate(plan.inputs):
            out = run_container(h, s, params, trace=True)
            outputs.append(out)
            line = out.to_json_dict()
            line["type"] = "output"
            line["run"] = idx
            sys.stdout.write(json.dumps(line, sort_keys=True) + "\n")
            for step in out.trace:
                record = step.to_json_dict()
                record["type"] = "trace_step"
                record["run"] = idx
                sys.stdout.write(json.dumps(record, sort_keys=True) + "\n")
        family = collect_family(outputs, plan, params.p)
        line = family.to_json_dict()
        line["type"] = "family"
        sys.stdout.write(json.dumps(line, sort_keys=True) + "\n")
    else:
        family = enumerate_containers(h, params, cap=args.cap, threads=args.threads)
        _emit(family.to_json_dict(),
              f"{len(family.records)} fingerprints, {len(family.containers)} containers "
              f"({family.stats.runs_executed} runs, {family.stats.errors_filtered} errors)")
        return EXIT_OK
    print(f"{len(family.records)} fingerprints (traced run)", file=sys.stderr)
    return EXIT_OK


def _cmd_solve(args) -> int:
    f = preprocess(_read_formula(args.file))
    params = _weight_params(args)
    subset = _read_edge_subset(args.edge_subset) if args.edge_subset else None
    result = solve_sat(f, params, edge_subset=subset, cap=args.cap,
                       threads=args.threads)
    _emit(result.to_json_dict(), f"result: {result.status}")
    return EXIT_OK if result.status == "sat" else EXIT_UNSAT


def _cmd_maxsat(args) -> int:
    f = preprocess(_read_formula(args.file))
    params = _weight_params(args)
    result = max_sat_approx(f, params, greedy_polish=args.greedy_polish,
                            cap=args.cap, threads=args.threads)
    summary = ("no assignment (certified unsatisfiable)"
               if result.status == "no_assignment"
               else f"falsified weight {fraction_str(result.falsified_weight)}")
    _emit(result.to_json_dict(), summary)
    return EXIT_OK if result.status == "approx" else EXIT_UNSAT


def _cmd_dense_solve(args) -> int:
    f = preprocess(_read_formula(args.file))
    subset = _read_edge_subset(args.edge_subset) if args.edge_subset else None
    result = dense_solve(f, args.d, edge_subset=subset, cap=args.cap,
                         threads=args.threads)
    _emit(result.to_json_dict(), f"result: {result.inner.status} "
          f"(size certificate {fraction_str(result.certificate_bound)})")
    return EXIT_OK if result.inner.status == "sat" else EXIT_UNSAT


def _cmd_dense_maxsat(args) -> int:
    f = preprocess(_read_formula(args.file))
    result = dense_max_sat(f, args.delta, args.d,
                           greedy_polish=args.greedy_polish, cap=args.cap,
                           threads=args.threads)
    summary = ("no assignment (certified unsatisfiable)"
               if result.inner.status == "no_assignment"
               else f"falsified weight {fraction_str(result.inner.falsified_weight)}"
                    f" <= target {fraction_str(result.guarantee_bound)}")
    _emit(result.to_json_dict(), summary)
    return EXIT_OK if result.inner.status == "approx" else EXIT_UNSAT


def _cmd_convert_dce(args) -> int:
    params = DceParams(D=args.D, c=args.c, epsilon=args.epsilon)
    conversion = dce_to_lambda_p(params, args.k, tolerance=args.tol)
    payload = {"conversion": conversion.to_json_dict()}
    if args.file:
        f = preprocess(_read_formula(args.file))
        h = to_hypergraph(f)
        dce = check_dce(h, params)
        payload["dce_check"] = dce.to_json_dict()
        payload["structure_report"] = check_structure(
            h, conversion.lam, conversion.p, args.k
        ).to_json_dict()
    _emit(payload, f"lambda={fraction_str(conversion.lam)} "
                   f"p={fraction_str(conversion.p)} exact={conversion.exact}")
    return EXIT_OK


def _cmd_verify(args) -> int:
    if args.fuzz is not None:
        if args.file:
            raise PreconditionError("fuzz mode generates its own instances; drop the file")
        rng = random.Random(args.seed)
        failures = 0
        for index in range(args.fuzz):
            f = random_formula(rng, args.vars, args.k, args.clauses)
            params = default_fuzz_params(args.vars, args.k, rng)
            report = verify_theorems(f, params, cap=args.var_cap)
            if not report.all_passed:
                failures += 1
            line = {
                "type": "instance",
                "index": index,
                "dimacs": f.to_dimacs(),
                "params": params.to_json_dict(),
                "report": report.to_json_dict(),
            }
            sys.stdout.write(json.dumps(line, sort_keys=True) + "\n")
        summary = {"type": "summary", "count": args.fuzz, "seed": args.seed,
                   "failures": failures}
        sys.stdout.write(json.dumps(summary, sort_keys=True) + "\n")
        print(f"{args.fuzz} fuzzed instances, {failures} failures", file=sys.stderr)
        return EXIT_OK if failures == 0 else EXIT_INTERNAL
    if not args.file:
        raise PreconditionError("verify needs a CNF file or --fuzz")
    f = _read_formula(args.file)
    params = _weight_params(args)
    report = verify_theorems(f, params, cap=args.var_cap)
    _emit(report.to_json_dict(),
          "all checks passed" if report.all_passed else "CHECK FAILURES")
    return EXIT_OK if report.all_passed else EXIT_INTERNAL


def _add_common_params(sub, *, with_delta=True, delta_required=True,
                       with_lambda=False, lambda_required=False):
    sub.add_argument("--p", type=_fraction, required=True,
                     help="edge weight base, a rational 'a/b' in (0, 1]")
    if with_delta:
        sub.add_argument("--delta", type=_fraction, required=delta_required,
                         default=None, help="stopping parameter in (0, 1/4)")
    if with_lambda:
        sub.add_argument("--lambda", dest="lam", type=_fraction,
                         required=lambda_required, default=None,
                         help="spread parameter, a rational > 1")
    sub.add_argument("--k", type=int, required=True,
                     help="clause/edge size bound (at least 2)")


def _add_run_flags(sub, *, edge_subset=False, polish=False):
    sub.add_argument("--cap", type=int, default=None,
                     help="optional cap on enumerated independent-set size "
                          "(marks the family non-exhaustive)")
    sub.add_argument("--threads", type=int, default=1,
                     help="worker threads for container runs")
    if edge_subset:
        sub.add_argument("--edge-subset", default=None,
                         help="JSON file with the edge subset to build containers from")
    if polish:
        sub.add_argument("--greedy-polish", action="store_true",
                         help="one greedy improvement pass over the extracted assignment")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="satcontainers",
        description="Weighted hypergraph container decomposition for SAT/MAX-SAT",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("analyze", help="structure and bounds report")
    p.add_argument("file")
    _add_common_params(p, delta_required=False, with_lambda=True, lambda_required=True)
    p.add_argument("--edge-subset", default=None)
    p.set_defaults(handler=_cmd_analyze)

    p = subs.add_parser("containers", help="emit the container family")
    p.add_argument("file")
    _add_common_params(p)
    _add_run_flags(p)
    p.add_argument("--trace", action="store_true",
                   help="stream per-run outputs and trace steps as JSON lines")
    p.set_defaults(handler=_cmd_containers)

    p = subs.add_parser("solve", help="exact SAT via the container decomposition")
    p.add_argument("file")
    _add_common_params(p)
    _add_run_flags(p, edge_subset=True)
    p.set_defaults(handler=_cmd_solve)

    p = subs.add_parser("maxsat", help="MAX-SAT approximation from containers")
    p.add_argument("file")
    _add_common_params(p, with_lambda=True)
    _add_run_flags(p, polish=True)
    p.set_defaults(handler=_cmd_maxsat)

    p = subs.add_parser("dense-solve", help="dense preset: p = 1/(2n), delta = d/3")
    p.add_argument("file")
    p.add_argument("--d", type=_fraction, required=True,
                   help="weight density floor at p = 1/(2n)")
    _add_run_flags(p, edge_subset=True)
    p.set_defaults(handler=_cmd_dense_solve)

    p = subs.add_parser("dense-maxsat", help="dense preset MAX-SAT")
    p.add_argument("file")
    p.add_argument("--delta", type=_fraction, required=True,
                   help="target guarantee fraction in (0, 1/4)")
    p.add_argument("--d", type=_fraction, required=True,
                   help="weight density floor at p = 1/(2n)")
    _add_run_flags(p, polish=True)
    p.set_defaults(handler=_cmd_dense_maxsat)

    p = subs.add_parser("convert-dce", help="degree-condition to weighted parameters")
    p.add_argument("file", nargs="?", default=None,
                   help="optional CNF; also runs the degree-condition check on it")
    p.add_argument("--D", type=_fraction, required=True)
    p.add_argument("--c", type=_fraction, required=True)
    p.add_argument("--epsilon", type=_fraction, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--tol", type=_fraction, default=Fraction(1, 10 ** 6),
                   help="relative tolerance for irrational roots")
    p.set_defaults(handler=_cmd_convert_dce)

    p = subs.add_parser("verify", help="oracle cross-check (single file or fuzz)")
    p.add_argument("file", nargs="?", default=None)
    p.add_argument("--p", type=_fraction, default=None)
    p.add_argument("--delta", type=_fraction, default=None)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--lambda", dest="lam", type=_fraction, default=None)
    p.add_argument("--fuzz", type=int, default=None, help="number of random instances")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--vars", type=int, default=8)
    p.add_argument("--clauses", type=int, default=20)
    p.add_argument("--var-cap", type=int, default=DEFAULT_VAR_CAP,
                   help="oracle exhaustiveness cap on variable count")
    p.set_defaults(handler=_cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "verify" and args.fuzz is None:
            if args.p is None or args.delta is None or args.k is None:
                raise PreconditionError(
                    "verify on a file needs --p, --delta and --k"
                )
        return args.handler(args)
    except DimacsParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_REJECTED
    except PreconditionError as exc:
        print(f"rejected: {exc}", file=sys.stderr)
        return EXIT_REJECTED
    except InvariantViolationError as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return EXIT_REJECTED
    except Exception as exc:  # pragma: no cover - defensive
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
