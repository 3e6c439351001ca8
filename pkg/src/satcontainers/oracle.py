"""Brute-force ground truth for the whole pipeline.

The ground-truth paths (model enumeration, optimum falsified weight,
independent-set listing) never touch the container or decomposition code;
clause evaluation here is an independent bitmask implementation.
verify_theorems is the one place both worlds meet: it runs the pipeline and
grades it against the oracle.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Optional

from .container import run_container, verify_trace
from .errors import PreconditionError
from .formula import Formula, assignment_set, preprocess, to_hypergraph
from .hypergraph import Hypergraph, family_weight
from .pipeline import (
    enumerate_containers,
    fingerprint_size_bound,
    max_sat_approx,
    solve_sat,
)
from .rationals import fraction_str
from .structure import WeightParams, check_structure

DEFAULT_VAR_CAP = 16
DEFAULT_VOLUME_GUARD = 1 << 22


def _clause_masks(f: Formula) -> list:
    """(positive-literal mask, negative-literal mask, size) per clause, with
    variable i on bit n - i so ascending masks match lexicographic
    assignment order."""
    masks = []
    for c in f.clauses:
        pos = 0
        neg = 0
        for lit in c.literals:
            bit = 1 << (f.n - abs(lit))
            if lit > 0:
                pos |= bit
            else:
                neg |= bit
        masks.append((pos, neg, len(c)))
    return masks


def _mask_to_assignment(mask: int, n: int) -> tuple:
    return tuple((mask >> (n - var)) & 1 for var in range(1, n + 1))


def all_models(f: Formula, cap: int = DEFAULT_VAR_CAP) -> list:
    """Every satisfying assignment, exhaustively, in lexicographic order."""
    if f.n > cap:
        raise PreconditionError(
            f"oracle capped at {cap} variables, formula has {f.n}"
        )
    masks = _clause_masks(f)
    models = []
    for m in range(1 << f.n):
        falsified = False
        for pos, neg, _ in masks:
            if m & pos == 0 and m & neg == neg:
                falsified = True
                break
        if not falsified:
            models.append(_mask_to_assignment(m, f.n))
    return models


def max_sat_optimum(f: Formula, p: Fraction, cap: int = DEFAULT_VAR_CAP) -> Fraction:
    """Minimum achievable falsified weight over all assignments."""
    if f.n > cap:
        raise PreconditionError(
            f"oracle capped at {cap} variables, formula has {f.n}"
        )
    p = Fraction(p)
    masks = _clause_masks(f)
    pow_p = {}
    for _, _, size in masks:
        pow_p.setdefault(size, p ** size)
    best: Optional[Fraction] = None
    for m in range(1 << f.n):
        weight = Fraction(0)
        for pos, neg, size in masks:
            if m & pos == 0 and m & neg == neg:
                weight += pow_p[size]
        if best is None or weight < best:
            best = weight
        if best == 0:
            break
    return best if best is not None else Fraction(0)


def independent_sets(h: Hypergraph, max_size: int,
                     volume_guard: int = DEFAULT_VOLUME_GUARD) -> list:
    """All independent sets of size at most max_size, by direct subset
    filtering over vertex combinations (deliberately naive; the pipeline has
    its own pruned enumeration).  Output in (size, lexicographic) order."""
    max_size = min(max_size, h.universe_size)
    volume = sum(math.comb(h.universe_size, j) for j in range(max_size + 1))
    if volume > volume_guard:
        raise PreconditionError(
            f"independent-set search volume {volume} exceeds the guard {volume_guard}"
        )
    out = []
    vertices = range(h.universe_size)
    for size in range(max_size + 1):
        for combo in combinations(vertices, size):
            s = frozenset(combo)
            if not any(e <= s for e in h.edges):
                out.append(s)
    return out


# -- theorem-level verification -------------------------------------------------

@dataclass(frozen=True)
class OracleReport:
    models: list
    optimum: Fraction
    verdicts: dict  # name -> {"status": "pass"|"fail"|"n/a", "detail": str}

    @property
    def all_passed(self) -> bool:
        return all(v["status"] != "fail" for v in self.verdicts.values())

    def to_json_dict(self) -> dict:
        return {
            "models": [list(m) for m in self.models],
            "optimum": fraction_str(self.optimum),
            "verdicts": {k: dict(v) for k, v in sorted(self.verdicts.items())},
            "all_passed": self.all_passed,
        }


def _structure_applicable(h: Hypergraph, params: WeightParams):
    if params.lam is None:
        return False, "lambda not supplied"
    report = check_structure(h, params.lam, params.p, params.k)
    if not report.is_structure:
        return False, "not a verified spread structure"
    if params.p > 1 / params.lam:
        return False, "p exceeds 1/lambda"
    return True, "verified structure with p <= 1/lambda"


def verify_theorems(f: Formula, params: WeightParams,
                    cap: int = DEFAULT_VAR_CAP) -> OracleReport:
    """Grade the pipeline against exhaustive ground truth on one formula:
    model coverage by containers, fingerprint sizes, pair hitting,
    structure-conditional container bounds, decomposition equivalence, the
    MAX-SAT guarantee, and the per-iteration trace invariants."""
    f = preprocess(f)
    h = to_hypergraph(f)
    verdicts: dict = {}

    def record(name: str, status: str, detail: str = ""):
        verdicts[name] = {"status": status, "detail": detail}

    models = all_models(f, cap=cap)
    optimum = max_sat_optimum(f, params.p, cap=cap)
    family = enumerate_containers(h, params)
    containers = [r.container for r in family.records]

    if not models:
        record("coverage", "n/a", "no satisfying assignments")
    else:
        missing = [m for m in models
                   if not any(assignment_set(m) <= c for c in containers)]
        record("coverage", "fail" if missing else "pass",
               f"{len(missing)} uncovered of {len(models)} models" if missing else
               f"all {len(models)} models covered")

    bound = fingerprint_size_bound(params, f.n)
    oversized = [r for r in family.records if len(r.fingerprint) > bound]
    record("fingerprint_bound", "fail" if oversized else "pass",
           f"bound {fraction_str(bound)}")

    bad_pairs = [
        c for c in containers
        if any(2 * (var - 1) not in c and 2 * (var - 1) + 1 not in c
               for var in range(1, f.n + 1))
    ]
    record("pair_hitting", "fail" if bad_pairs else "pass")

    applicable, why = _structure_applicable(h, params)
    if not applicable:
        record("container_size", "n/a", why)
        record("residual_weight", "n/a", why)
    else:
        size_cap = (2 - 1 / params.lam) * f.n
        too_big = [c for c in containers if not Fraction(len(c)) <= size_cap]
        record("container_size", "fail" if too_big else "pass",
               f"cap {fraction_str(size_cap)}")
        total = family_weight(h, params.p)
        heavy = [
            c for c in containers
            if family_weight((e for e in h.edges if e <= c), params.p)
            > params.delta * total
        ]
        record("residual_weight", "fail" if heavy else "pass")

    solved = solve_sat(f, params)
    agree = (solved.status == "sat") == bool(models)
    model_ok = solved.assignment is None or tuple(solved.assignment) in set(models)
    record("decomposition_equivalence",
           "pass" if agree and model_ok else "fail",
           f"pipeline={solved.status}, oracle={'sat' if models else 'unsat'}")

    approx = max_sat_approx(f, params, greedy_polish=True)
    if approx.status == "no_assignment":
        record("maxsat_certificate", "pass" if not models else "fail",
               "empty family certified unsatisfiability")
        record("maxsat_guarantee", "n/a", "no assignment produced")
    else:
        sane = approx.falsified_weight >= optimum
        record("maxsat_certificate", "pass" if sane else "fail",
               f"weight {fraction_str(approx.falsified_weight)} vs optimum "
               f"{fraction_str(optimum)}")
        if applicable:
            target = params.delta * family_weight(h, params.p)
            record("maxsat_guarantee",
                   "pass" if approx.falsified_weight <= target else "fail",
                   f"target {fraction_str(target)}")
        else:
            record("maxsat_guarantee", "n/a", why)

    trace_inputs = [frozenset()]
    for v in range(h.universe_size):
        if len(trace_inputs) > 4:
            break
        s = frozenset([v])
        if not any(e <= s for e in h.edges):
            trace_inputs.append(s)
    for m in models[:2]:
        trace_inputs.append(assignment_set(m))
    failures = []
    for s in trace_inputs:
        out = run_container(h, s, params, trace=True)
        for verdict in verify_trace(out, h, s, params):
            if not verdict.passed:
                failures.append((sorted(s), verdict))
    record("trace_invariants", "fail" if failures else "pass",
           f"{len(trace_inputs)} traced runs")

    return OracleReport(models=models, optimum=optimum, verdicts=verdicts)


# -- reproducible fuzzing ---------------------------------------------------------

def random_formula(rng: random.Random, n: int, k: int, m: int) -> Formula:
    """Deterministic random CNF from a seeded CPython Mersenne Twister.  Per
    clause: size via rng.randint(1, min(k, n)), variables via rng.sample,
    then each literal negated when rng.random() < 1/2."""
    clauses = []
    for _ in range(m):
        size = rng.randint(1, min(k, n))
        variables = rng.sample(range(1, n + 1), size)
        clauses.append([v if rng.random() < 0.5 else -v for v in variables])
    return Formula.from_clauses(n, clauses)


def default_fuzz_params(n: int, k: int, rng: random.Random) -> WeightParams:
    """Valid container parameters for a fuzzed instance: delta = 1/5 and p
    chosen between the tiny immediate-stop scale and the delta/k ceiling."""
    delta = Fraction(1, 5)
    k = max(2, k)
    if rng.random() < 0.5:
        p = delta / (2 * k * k * max(1, n))
    else:
        p = delta / (k + 1)
    return WeightParams(p=p, delta=delta, k=k)
