"""Drivers that turn container runs into answers: fingerprint-bounded
enumeration of the container family, formula decomposition, exact SAT via a
backtracking base solver, MAX-SAT approximation, dense presets, and the
quantitative bound calculators.

Enumeration walks independent sets in lexicographic DFS order with subset
pruning (a set containing an edge is cut off together with every superset
reachable through it), up to the exact fingerprint size bound.  Outputs are
deduplicated by fingerprint and canonically ordered, so results never depend
on scheduling.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional

from .container import run_container
from .errors import InvariantViolationError, PreconditionError
from .formula import (
    Formula,
    evaluate,
    satisfies,
    to_hypergraph,
)
from .hypergraph import (
    Hypergraph,
    canonical_key,
    codegree,
    family_weight,
    vertex_of_literal,
    vertices_to_literals,
)
from .rationals import fraction_str
from .structure import WeightParams, check_structure


# -- independent-set enumeration ----------------------------------------------

def independent_sets_up_to(h: Hypergraph, max_size: int) -> Iterator[frozenset]:
    """All independent sets of h with at most max_size vertices, emitted in
    lexicographic DFS order.  An edge first becomes contained when its
    largest vertex joins the growing set, so each candidate extension costs
    one subset test per edge ending at that vertex."""
    edges_by_max: dict[int, list] = {}
    for e in h.edges:
        edges_by_max.setdefault(max(e), []).append(e)

    current: list[int] = []
    current_set: set = set()

    def extend(start: int):
        yield frozenset(current)
        if len(current) >= max_size:
            return
        for v in range(start, h.universe_size):
            blocked = False
            for e in edges_by_max.get(v, ()):
                if all(u in current_set for u in e if u != v):
                    blocked = True
                    break
            if blocked:
                continue
            current.append(v)
            current_set.add(v)
            yield from extend(v + 1)
            current.pop()
            current_set.remove(v)

    yield from extend(0)


# -- the container family ------------------------------------------------------

@dataclass(frozen=True)
class ContainerRecord:
    fingerprint: frozenset
    container: frozenset
    residual: Hypergraph
    residual_weight: Fraction

    def to_json_dict(self) -> dict:
        return {
            "fingerprint": vertices_to_literals(self.fingerprint),
            "container": vertices_to_literals(self.container),
            "residual": self.residual.to_json_dict(),
            "residual_weight": fraction_str(self.residual_weight),
        }


@dataclass(frozen=True)
class EnumerationStats:
    candidates_examined: int
    runs_executed: int
    errors_filtered: int
    exhaustive: bool
    size_limit: int
    requested_bound: Fraction
    warning: Optional[str] = None

    def to_json_dict(self) -> dict:
        return {
            "candidates_examined": self.candidates_examined,
            "runs_executed": self.runs_executed,
            "errors_filtered": self.errors_filtered,
            "exhaustive": self.exhaustive,
            "size_limit": self.size_limit,
            "requested_bound": fraction_str(self.requested_bound),
            "warning": self.warning,
        }


@dataclass(frozen=True)
class ContainerFamily:
    records: tuple  # tuple[ContainerRecord, ...] sorted by fingerprint
    stats: EnumerationStats

    @property
    def fingerprints(self) -> list:
        return [r.fingerprint for r in self.records]

    @property
    def containers(self) -> list:
        seen = set()
        out = []
        for r in self.records:
            if r.container not in seen:
                seen.add(r.container)
                out.append(r.container)
        return sorted(out, key=canonical_key)

    def to_json_dict(self) -> dict:
        return {
            "fingerprints": [vertices_to_literals(s) for s in self.fingerprints],
            "containers": [vertices_to_literals(c) for c in self.containers],
            "records": [r.to_json_dict() for r in self.records],
            "stats": self.stats.to_json_dict(),
        }


def fingerprint_size_bound(params: WeightParams, n: int) -> Fraction:
    """Exact fingerprint size bound 4 k^2 p n / delta."""
    return 4 * params.k ** 2 * params.p * n / params.delta


@dataclass(frozen=True)
class EnumerationPlan:
    inputs: tuple  # the independent sets to feed, in lexicographic order
    size_limit: int
    requested_bound: Fraction
    warning: Optional[str]
    exhaustive: bool


def enumeration_plan(h: Hypergraph, params: WeightParams,
                     cap: Optional[int] = None) -> EnumerationPlan:
    """Independent sets to feed to the container runs: everything up to the
    fingerprint size bound, or up to the smaller explicit cap (marking the
    plan non-exhaustive).  A bound at or above the universe size degrades to
    full independent-set enumeration with a warning."""
    params.require_container_ready()
    requested = fingerprint_size_bound(params, h.num_vars)
    limit = int(requested)  # floor for nonnegative rationals
    warning = None
    if limit >= h.universe_size:
        limit = h.universe_size
        warning = ("fingerprint bound meets or exceeds the vertex universe; "
                   "falling back to full independent-set enumeration")
    exhaustive = True
    if cap is not None and cap < limit:
        limit = cap
        exhaustive = False
    inputs = tuple(independent_sets_up_to(h, limit))
    return EnumerationPlan(inputs=inputs, size_limit=limit,
                           requested_bound=requested, warning=warning,
                           exhaustive=exhaustive)


def collect_family(outputs, plan: EnumerationPlan, p: Fraction) -> ContainerFamily:
    """Filter error outputs and deduplicate by fingerprint (equal
    fingerprints are guaranteed to share container and residual)."""
    by_fingerprint: dict[tuple, ContainerRecord] = {}
    errors = 0
    total = 0
    for out in outputs:
        total += 1
        if not out.ok:
            errors += 1
            continue
        key = canonical_key(out.fingerprint)
        if key in by_fingerprint:
            continue
        by_fingerprint[key] = ContainerRecord(
            fingerprint=out.fingerprint,
            container=out.container,
            residual=out.residual,
            residual_weight=family_weight(out.residual, p),
        )
    records = tuple(by_fingerprint[k] for k in sorted(by_fingerprint))
    stats = EnumerationStats(
        candidates_examined=len(plan.inputs),
        runs_executed=total,
        errors_filtered=errors,
        exhaustive=plan.exhaustive,
        size_limit=plan.size_limit,
        requested_bound=plan.requested_bound,
        warning=plan.warning,
    )
    return ContainerFamily(records=records, stats=stats)


def enumerate_containers(h: Hypergraph, params: WeightParams,
                         cap: Optional[int] = None,
                         threads: int = 1) -> ContainerFamily:
    """Run the container procedure on every planned independent set and
    collect the deduplicated family.  Runs are independent; with threads > 1
    they execute in a pool, and the collection order (hence the result) is
    the plan order either way."""
    plan = enumeration_plan(h, params, cap=cap)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            outputs = list(pool.map(lambda s: run_container(h, s, params),
                                    plan.inputs))
    else:
        outputs = [run_container(h, s, params) for s in plan.inputs]
    return collect_family(outputs, plan, params.p)


# -- formula reduction ---------------------------------------------------------

@dataclass(frozen=True)
class ReducedFormula:
    """A formula after forcing the variables a vertex set leaves no choice
    for.  A clause satisfied by a forced literal is dropped; a clause whose
    literals are all forced false shrinks to the empty clause, marking the
    instance locally unsatisfiable."""

    base: Formula
    status: str  # "live" | "forced_unsat"
    forced: tuple  # sorted ((var, value), ...)
    free: tuple  # sorted variable indices
    clauses: tuple  # tuple[frozenset, ...] over free variables

    @property
    def is_live(self) -> bool:
        return self.status == "live"

    @property
    def forced_map(self) -> dict:
        return dict(self.forced)

    @property
    def locally_unsat(self) -> bool:
        return any(not c for c in self.clauses)

    def to_json_dict(self) -> dict:
        return {
            "status": self.status,
            "forced": {str(var): val for var, val in self.forced},
            "free": list(self.free),
            "clauses": sorted(sorted(c, key=lambda l: (abs(l), l < 0)) for c in self.clauses),
        }


def reduce_formula(f: Formula, Vp) -> ReducedFormula:
    """Reduce f to the variables a vertex set keeps open: a variable with
    only its negative literal present is forced to 0, with only its positive
    literal present to 1, with both present stays free, and with neither the
    whole reduction is unsatisfiable."""
    Vp = frozenset(Vp)
    if not all(0 <= v < 2 * f.n for v in Vp):
        raise PreconditionError("vertex set leaves the literal universe of the formula")
    forced: list = []
    free: list = []
    dead = False
    for var in range(1, f.n + 1):
        pos = vertex_of_literal(var) in Vp
        neg = vertex_of_literal(-var) in Vp
        if pos and neg:
            free.append(var)
        elif pos:
            forced.append((var, 1))
        elif neg:
            forced.append((var, 0))
        else:
            dead = True
    if dead:
        return ReducedFormula(base=f, status="forced_unsat", forced=tuple(forced),
                              free=tuple(free), clauses=())
    forced_map = dict(forced)
    reduced: set = set()
    for c in f.clauses:
        satisfied = False
        remaining = []
        for lit in c.literals:
            var = abs(lit)
            if var in forced_map:
                if (lit > 0) == bool(forced_map[var]):
                    satisfied = True
                    break
            else:
                remaining.append(lit)
        if not satisfied:
            reduced.add(frozenset(remaining))
    clauses = tuple(sorted(reduced, key=lambda c: canonical_key(
        vertex_of_literal(l) for l in c)))
    return ReducedFormula(base=f, status="live", forced=tuple(sorted(forced)),
                          free=tuple(free), clauses=clauses)


# -- the base solver -----------------------------------------------------------

@dataclass(frozen=True)
class BaseSolveResult:
    satisfiable: bool
    assignment: Optional[dict]  # values for the free variables actually set
    nodes: int


def base_solver(rf: ReducedFormula) -> BaseSolveResult:
    """Complete backtracking search with unit propagation over the free
    variables.  Deterministic: units and branch variables are chosen by
    smallest variable index, value 1 tried first.  The node count is the
    machine-independent work metric."""
    if not rf.is_live:
        raise PreconditionError("base solver requires a live reduced formula")
    nodes = 0

    def simplify(clauses: list, lit: int) -> Optional[list]:
        out = []
        for c in clauses:
            if lit in c:
                continue
            if -lit in c:
                c = c - {-lit}
                if not c:
                    return None
            out.append(c)
        return out

    def search(clauses: list, model: dict) -> Optional[dict]:
        nonlocal nodes
        nodes += 1
        while True:
            units = sorted((next(iter(c)) for c in clauses if len(c) == 1),
                           key=lambda l: (abs(l), l < 0))
            if not units:
                break
            lit = units[0]
            model = dict(model)
            model[abs(lit)] = 1 if lit > 0 else 0
            clauses = simplify(clauses, lit)
            if clauses is None:
                return None
        if not clauses:
            return model
        branch_var = min(abs(lit) for c in clauses for lit in c)
        for value in (1, 0):
            lit = branch_var if value else -branch_var
            reduced = simplify(clauses, lit)
            if reduced is None:
                continue
            attempt = dict(model)
            attempt[branch_var] = value
            solution = search(reduced, attempt)
            if solution is not None:
                return solution
        return None

    if rf.locally_unsat:
        return BaseSolveResult(False, None, 1)
    model = search([frozenset(c) for c in rf.clauses], {})
    return BaseSolveResult(model is not None, model, nodes)


def _assemble_assignment(f: Formula, rf: ReducedFormula, partial: dict) -> tuple:
    """Forced values plus the solver's picks; untouched free variables
    default to 0."""
    values = []
    forced = rf.forced_map
    for var in range(1, f.n + 1):
        if var in forced:
            values.append(forced[var])
        else:
            values.append(partial.get(var, 0))
    return tuple(values)


# -- SAT via decomposition -----------------------------------------------------

@dataclass(frozen=True)
class SolveResult:
    status: str  # "sat" | "unsat"
    assignment: Optional[tuple]
    family: ContainerFamily
    work: dict

    def to_json_dict(self) -> dict:
        return {
            "status": self.status,
            "assignment": list(self.assignment) if self.assignment is not None else None,
            "work": self.work,
            "family_stats": self.family.stats.to_json_dict(),
        }


def _subgraph_for(f: Formula, params: WeightParams, edge_subset) -> Hypergraph:
    h_full = to_hypergraph(f)
    if edge_subset is None:
        return h_full
    chosen = frozenset(frozenset(e) for e in edge_subset)
    if not chosen <= h_full.edges:
        extra = next(iter(chosen - h_full.edges))
        raise PreconditionError(
            f"edge subset contains {vertices_to_literals(extra)}, which is not "
            "an edge of the formula hypergraph"
        )
    return Hypergraph(h_full.universe_size, h_full.k, chosen)


def _solve_over_family(f: Formula, family: ContainerFamily):
    """Try each container in canonical order; return the first verified model."""
    per_container = []
    total_nodes = 0
    answer = None
    for record in family.records:
        rf = reduce_formula(f, record.container)
        if not rf.is_live:
            per_container.append({
                "container": vertices_to_literals(record.container),
                "free_variables": 0,
                "nodes": 0,
                "result": "forced_unsat",
            })
            continue
        result = base_solver(rf)
        total_nodes += result.nodes
        per_container.append({
            "container": vertices_to_literals(record.container),
            "free_variables": len(rf.free),
            "nodes": result.nodes,
            "result": "sat" if result.satisfiable else "unsat",
        })
        if result.satisfiable:
            assignment = _assemble_assignment(f, rf, result.assignment)
            if not satisfies(f, assignment):
                raise InvariantViolationError(
                    "assignment returned by the decomposition fails verification"
                )
            answer = assignment
            break
    work = {
        "per_container": per_container,
        "nodes_explored": total_nodes,
        "direct_baseline": 2 ** f.n,
    }
    return answer, work


def solve_sat(f: Formula, params: WeightParams, edge_subset=None,
              cap: Optional[int] = None, threads: int = 1) -> SolveResult:
    """Exact SAT through the container decomposition: build the family on
    the chosen hypergraph, return Unsatisfiable on an empty exhaustive
    family, otherwise solve each reduced formula and return the first
    verified model.  A capped (non-exhaustive) empty family certifies
    nothing and is rejected."""
    h = _subgraph_for(f, params, edge_subset)
    family = enumerate_containers(h, params, cap=cap, threads=threads)
    if not family.records:
        if not family.stats.exhaustive:
            raise PreconditionError(
                "capped enumeration produced no containers; cannot certify "
                "unsatisfiability (raise or drop the cap)"
            )
        return SolveResult("unsat", None, family,
                           {"per_container": [], "nodes_explored": 0,
                            "direct_baseline": 2 ** f.n})
    answer, work = _solve_over_family(f, family)
    if answer is None:
        if not family.stats.exhaustive:
            raise PreconditionError(
                "capped enumeration found no model; unsatisfiability cannot "
                "be certified (raise or drop the cap)"
            )
        return SolveResult("unsat", None, family, work)
    return SolveResult("sat", answer, family, work)


# -- MAX-SAT approximation -----------------------------------------------------

@dataclass(frozen=True)
class MaxSatResult:
    status: str  # "approx" | "no_assignment"
    assignment: Optional[tuple]
    falsified_weight: Optional[Fraction]
    container: Optional[frozenset]
    container_induced_weight: Optional[Fraction]
    total_weight: Fraction
    guarantee_proven: bool
    guarantee_note: str
    family: ContainerFamily

    def to_json_dict(self) -> dict:
        return {
            "status": self.status,
            "assignment": list(self.assignment) if self.assignment is not None else None,
            "falsified_weight": fraction_str(self.falsified_weight)
            if self.falsified_weight is not None else None,
            "container": vertices_to_literals(self.container)
            if self.container is not None else None,
            "container_induced_weight": fraction_str(self.container_induced_weight)
            if self.container_induced_weight is not None else None,
            "total_weight": fraction_str(self.total_weight),
            "guarantee_proven": self.guarantee_proven,
            "guarantee_note": self.guarantee_note,
            "family_stats": self.family.stats.to_json_dict(),
        }


def _extract_assignment(f: Formula, container: frozenset) -> tuple:
    """One assignment whose literal set stays inside the container: forced
    where the container keeps a single literal, default 1 where it keeps
    both."""
    values = []
    for var in range(1, f.n + 1):
        pos = vertex_of_literal(var) in container
        neg = vertex_of_literal(-var) in container
        if pos:
            values.append(1)
        elif neg:
            values.append(0)
        else:
            raise InvariantViolationError(
                f"container misses both literals of variable {var} despite "
                "passing the error filter"
            )
    return tuple(values)


def _greedy_polish(f: Formula, container: frozenset, assignment: tuple,
                   p: Fraction) -> tuple:
    """One pass over the variables, flipping a value when the flip keeps the
    literal set inside the container and strictly decreases the falsified
    weight."""
    current = list(assignment)
    weight = evaluate(f, tuple(current), p).falsified_weight
    for var in range(1, f.n + 1):
        flipped = 1 - current[var - 1]
        lit = var if flipped else -var
        if vertex_of_literal(lit) not in container:
            continue
        candidate = list(current)
        candidate[var - 1] = flipped
        w = evaluate(f, tuple(candidate), p).falsified_weight
        if w < weight:
            current = candidate
            weight = w
    return tuple(current)


def max_sat_approx(f: Formula, params: WeightParams, greedy_polish: bool = False,
                   cap: Optional[int] = None, threads: int = 1) -> MaxSatResult:
    """Approximate MAX-SAT from the almost-independence of containers.  An
    empty exhaustive family certifies unsatisfiability; otherwise the
    container with the least induced weight supplies an assignment whose
    falsified weight cannot exceed that induced weight.  The guarantee
    (falsified weight below delta times the total weight) is proven exactly
    when the hypergraph verifies as a spread structure with p at most
    1/lambda; otherwise the result is reported with the guarantee unproven."""
    h = to_hypergraph(f)
    total = family_weight(h, params.p)
    if params.lam is None:
        proven, note = False, "lambda not supplied; spread structure unverified"
    else:
        report = check_structure(h, params.lam, params.p, params.k)
        if not report.is_structure:
            proven, note = False, "hypergraph is not a verified spread structure"
        elif params.p > 1 / params.lam:
            proven, note = False, "p exceeds 1/lambda; container size bound unavailable"
        else:
            proven, note = True, "verified spread structure with p <= 1/lambda"
    family = enumerate_containers(h, params, cap=cap, threads=threads)
    if not family.records:
        if not family.stats.exhaustive:
            raise PreconditionError(
                "capped enumeration produced no containers; cannot certify "
                "unsatisfiability (raise or drop the cap)"
            )
        return MaxSatResult("no_assignment", None, None, None, None, total,
                            proven, note, family)
    scored = [
        (family_weight((e for e in h.edges if e <= r.container), params.p), r)
        for r in family.records
    ]
    induced_weight, best = min(scored, key=lambda t: (t[0], canonical_key(t[1].container)))
    assignment = _extract_assignment(f, best.container)
    if greedy_polish:
        assignment = _greedy_polish(f, best.container, assignment, params.p)
    weight = evaluate(f, assignment, params.p).falsified_weight
    if weight > induced_weight:
        raise InvariantViolationError(
            "falsified weight exceeds the container's induced weight"
        )
    return MaxSatResult("approx", assignment, weight, best.container,
                        induced_weight, total, proven, note, family)


# -- dense presets ---------------------------------------------------------------

@dataclass(frozen=True)
class DenseMaxSatResult:
    inner: MaxSatResult
    measured_weight: Fraction
    density_floor: Fraction
    delta_target: Fraction
    delta_run: Fraction
    guarantee_bound: Fraction

    def to_json_dict(self) -> dict:
        data = self.inner.to_json_dict()
        data.update({
            "measured_weight": fraction_str(self.measured_weight),
            "density_floor": fraction_str(self.density_floor),
            "delta_target": fraction_str(self.delta_target),
            "delta_run": fraction_str(self.delta_run),
            "guarantee_bound": fraction_str(self.guarantee_bound),
        })
        return data


def dense_max_sat(f: Formula, delta: Fraction, d: Fraction,
                  greedy_polish: bool = False, cap: Optional[int] = None,
                  threads: int = 1) -> DenseMaxSatResult:
    """MAX-SAT preset for weight-dense formulas at p = 1/(2n): runs the
    approximation with delta' = min(1/5, 2*delta*d), which stays strictly
    below the 1/4 ceiling; the guarantee is falsified weight at most
    delta * w_p of the whole formula whenever w_p is at least d."""
    delta = Fraction(delta)
    d = Fraction(d)
    if not (0 < delta < Fraction(1, 4)):
        raise PreconditionError("delta must lie in (0, 1/4)")
    if d <= 0:
        raise PreconditionError("density floor d must be positive")
    if f.n == 0:
        raise PreconditionError("dense preset needs at least one variable")
    p = Fraction(1, 2 * f.n)
    h = to_hypergraph(f)
    measured = family_weight(h, p)
    if measured < d:
        raise PreconditionError(
            f"formula is not dense enough: w_p = {fraction_str(measured)} < "
            f"d = {fraction_str(d)} at p = {fraction_str(p)}"
        )
    delta_run = min(Fraction(1, 5), 2 * delta * d)
    k = max(2, f.k)
    if not p < delta_run / k:
        raise PreconditionError(
            f"dense parameterization needs p < delta'/k: p = {fraction_str(p)},"
            f" delta'/k = {fraction_str(delta_run / k)} (n too small)"
        )
    params = WeightParams(p=p, delta=delta_run, k=k)
    inner = max_sat_approx(f, params, greedy_polish=greedy_polish, cap=cap,
                           threads=threads)
    return DenseMaxSatResult(
        inner=inner,
        measured_weight=measured,
        density_floor=d,
        delta_target=delta,
        delta_run=delta_run,
        guarantee_bound=delta * measured,
    )


@dataclass(frozen=True)
class DenseSolveResult:
    inner: SolveResult
    measured_weight: Fraction
    density_floor: Fraction
    delta_run: Fraction
    certificate_bound: Fraction
    max_container_size: Optional[int]

    def to_json_dict(self) -> dict:
        data = self.inner.to_json_dict()
        data.update({
            "measured_weight": fraction_str(self.measured_weight),
            "density_floor": fraction_str(self.density_floor),
            "delta_run": fraction_str(self.delta_run),
            "certificate_bound": fraction_str(self.certificate_bound),
            "max_container_size": self.max_container_size,
        })
        return data


def dense_solve(f: Formula, d: Fraction, edge_subset=None,
                cap: Optional[int] = None, threads: int = 1) -> DenseSolveResult:
    """Exact SAT preset for weight-dense subgraphs at p = 1/(2n) and
    delta = d/3, asserting the container-size certificate
    |C| <= 2n - d / (2 * max single-vertex weight) on every container."""
    d = Fraction(d)
    if d <= 0:
        raise PreconditionError("density floor d must be positive")
    if f.n == 0:
        raise PreconditionError("dense preset needs at least one variable")
    p = Fraction(1, 2 * f.n)
    delta = d / 3
    if not delta < Fraction(1, 4):
        raise PreconditionError(
            f"delta = d/3 = {fraction_str(delta)} reaches 1/4; the antichain "
            "weight cap makes d <= 1/2, so this d is out of range"
        )
    k = max(2, f.k)
    params = WeightParams(p=p, delta=delta, k=k)
    h = _subgraph_for(f, params, edge_subset)
    tiny = [e for e in h.edges if len(e) < 2]
    if tiny:
        raise PreconditionError(
            f"dense solve needs all edges of size at least 2; found "
            f"{vertices_to_literals(tiny[0])}"
        )
    measured = family_weight(h, p)
    if measured < d:
        raise PreconditionError(
            f"subgraph is not dense enough: w_p = {fraction_str(measured)} < "
            f"d = {fraction_str(d)} at p = {fraction_str(p)}"
        )
    if not p < delta / k:
        raise PreconditionError(
            f"dense parameterization needs p < delta/k: p = {fraction_str(p)},"
            f" delta/k = {fraction_str(delta / k)} (n too small for this d)"
        )
    family = enumerate_containers(h, params, cap=cap, threads=threads)
    delta1 = codegree(h, 1, p)
    certificate = 2 * f.n - d / (2 * delta1)
    max_size = None
    for record in family.records:
        size = len(record.container)
        max_size = size if max_size is None else max(max_size, size)
        if not Fraction(size) <= certificate:
            raise InvariantViolationError(
                f"container of size {size} violates the dense size certificate "
                f"{fraction_str(certificate)}"
            )
    if not family.records:
        if not family.stats.exhaustive:
            raise PreconditionError(
                "capped enumeration produced no containers; cannot certify "
                "unsatisfiability (raise or drop the cap)"
            )
        inner = SolveResult("unsat", None, family,
                            {"per_container": [], "nodes_explored": 0,
                             "direct_baseline": 2 ** f.n})
    else:
        answer, work = _solve_over_family(f, family)
        if answer is None and not family.stats.exhaustive:
            raise PreconditionError(
                "capped enumeration found no model; unsatisfiability cannot "
                "be certified (raise or drop the cap)"
            )
        inner = SolveResult("sat" if answer is not None else "unsat",
                            answer, family, work)
    return DenseSolveResult(
        inner=inner,
        measured_weight=measured,
        density_floor=d,
        delta_run=delta,
        certificate_bound=certificate,
        max_container_size=max_size,
    )


# -- quantitative bounds ----------------------------------------------------------

@dataclass(frozen=True)
class BoundsReport:
    fingerprint_bound: Fraction
    fingerprint_bound_floor: int
    entropy_arg: Fraction
    entropy_defined: bool
    trivial: bool
    entropy: Optional[float]
    container_count_bound: Optional[float]
    container_count_log2: Optional[float]
    container_size_bound: Optional[Fraction]
    unassigned_bound: Optional[Fraction]

    def to_json_dict(self) -> dict:
        return {
            "fingerprint_bound": fraction_str(self.fingerprint_bound),
            "fingerprint_bound_floor": self.fingerprint_bound_floor,
            "entropy_arg": fraction_str(self.entropy_arg),
            "entropy_defined": self.entropy_defined,
            "trivial": self.trivial,
            "entropy": self.entropy,
            "container_count_bound": self.container_count_bound,
            "container_count_log2": self.container_count_log2,
            "container_size_bound": fraction_str(self.container_size_bound)
            if self.container_size_bound is not None else None,
            "unassigned_bound": fraction_str(self.unassigned_bound)
            if self.unassigned_bound is not None else None,
        }


def compute_bounds(params: WeightParams, n: int) -> BoundsReport:
    """Exact fingerprint bound plus the reporting-only entropy figures.  The
    entropy of the argument 2 k^2 p / delta is evaluated in floating point
    and never feeds control flow; arguments at or above 1/2 flag the
    container-count bound as trivial."""
    bound = fingerprint_size_bound(params, n)
    arg = 2 * params.k ** 2 * params.p / params.delta
    defined = 0 < arg < 1
    entropy = None
    count_bound = None
    log2 = None
    if defined:
        x = float(arg)
        entropy = -x * math.log2(x) - (1 - x) * math.log2(1 - x)
        log2 = 2 * entropy * n
        try:
            count_bound = 2.0 ** log2
        except OverflowError:  # pragma: no cover - huge n reporting only
            count_bound = math.inf
    size_bound = None
    free_bound = None
    if params.lam is not None:
        size_bound = (2 - 1 / params.lam) * n
        free_bound = (1 - 1 / params.lam) * n
    return BoundsReport(
        fingerprint_bound=bound,
        fingerprint_bound_floor=int(bound),
        entropy_arg=arg,
        entropy_defined=defined,
        trivial=arg >= Fraction(1, 2),
        entropy=entropy,
        container_count_bound=count_bound,
        container_count_log2=log2,
        container_size_bound=size_bound,
        unassigned_bound=free_bound,
    )
