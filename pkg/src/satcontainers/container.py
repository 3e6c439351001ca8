"""The weighted container procedure on k-bounded hypergraphs.

One run takes a hypergraph, an independent vertex set, and exact parameters
(p, delta); it iteratively replaces heavy-linked edges until the weight of
the surviving multi-vertex edges drops below delta * p * |candidate set|,
then reports a fingerprint, a container, and the residual hypergraph.  Runs
are strictly sequential and deterministic: ties between chosen sets break by
maximality under inclusion and then the global lexicographic order.

Every selection/stop comparison is an exact rational comparison; weights of
equal-size edge groups are aggregated as integer counts times powers of p.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterator, Optional

from .errors import InvariantViolationError, PreconditionError
from .hypergraph import (
    Hypergraph,
    canonical_key,
    family_weight,
    is_antichain,
    lym_sum,
    negate_vertex,
    up_closure_membership,
    vertices_to_literals,
)
from .rationals import fraction_str
from .structure import WeightParams


@dataclass(frozen=True)
class TraceStep:
    """Snapshot of one iteration, taken before the hypergraph update."""

    index: int
    size_chosen: int
    set_chosen: frozenset
    set_in_input: bool
    update_family: frozenset  # the edges whose up-closure gets replaced
    container_size: int
    heavy_weight: Fraction  # weight of edges with at least two vertices
    novel_edges: frozenset  # current edges that were not in the input graph

    def to_json_dict(self) -> dict:
        return {
            "iteration": self.index,
            "size": self.size_chosen,
            "set": vertices_to_literals(self.set_chosen),
            "set_in_input": self.set_in_input,
            "update_family": sorted(
                (vertices_to_literals(e) for e in self.update_family)
            ),
            "container_size": self.container_size,
            "heavy_weight": fraction_str(self.heavy_weight),
            "novel_edges": sorted(
                (vertices_to_literals(e) for e in self.novel_edges)
            ),
        }


@dataclass(frozen=True)
class ContainerOutput:
    """Result of one container run.

    On status 'error' (some variable lost both of its literal-vertices) the
    fields still carry the values computed by the rejected run, which the
    trace verifier and tests inspect.
    """

    status: str  # "ok" | "error"
    fingerprint: frozenset
    container: frozenset
    residual: Hypergraph
    iterations: int
    trace: Optional[tuple] = None

    @property
    def ok(self) -> bool:
        return self.status == "ok"

    def to_json_dict(self) -> dict:
        return {
            "status": self.status,
            "fingerprint": vertices_to_literals(self.fingerprint),
            "container": vertices_to_literals(self.container),
            "residual": self.residual.to_json_dict(),
            "iterations": self.iterations,
        }


def candidate_sets(h_i: Hypergraph, s: int) -> Iterator[frozenset]:
    """All sets that could carry positive link weight at size s: nonempty
    proper subsets of the size-s edges, deduplicated, minus sets that are
    themselves edges.  Yielded in canonical order."""
    if s < 2:
        raise PreconditionError("candidate search starts at size 2")
    seen = set()
    for e in h_i.edges:
        if len(e) != s:
            continue
        members = sorted(e)
        for size in range(1, s):
            for sub in combinations(members, size):
                key = frozenset(sub)
                if key not in seen and key not in h_i.edges:
                    seen.add(key)
    for key in sorted(seen, key=canonical_key):
        yield key


def _validate_inputs(h: Hypergraph, I: frozenset, params: WeightParams) -> None:
    params.require_container_ready()
    if any(len(e) > params.k for e in h.edges):
        big = max(h.edges, key=len)
        raise PreconditionError(
            f"hypergraph is not {params.k}-bounded: edge {vertices_to_literals(big)}"
        )
    if not all(0 <= v < h.universe_size for v in I):
        raise PreconditionError("input set leaves the vertex universe")
    if not is_antichain(h):
        raise PreconditionError("hypergraph must be an antichain (preprocess first)")
    for e in h.edges:
        if e <= I:
            raise PreconditionError(
                f"input set is not independent: contains edge {vertices_to_literals(e)}"
            )


def run_container(h: Hypergraph, I, params: WeightParams,
                  trace: bool = False) -> ContainerOutput:
    """Run the container procedure on an antichain hypergraph and an
    independent input set.

    Per iteration: the candidate set keeps the vertices without singleton
    edges; the run stops once the heavy-edge weight falls to
    delta * p * |candidates|.  Otherwise the smallest edge size s admitting a
    non-edge set L with link weight strictly above delta/k is located, the
    inclusion-maximal, lexicographically least such L is chosen, and the
    hypergraph is updated by replacing the up-closure of the chosen family.
    Sets contained in the input are recorded into the fingerprint.
    """
    I = frozenset(I)
    _validate_inputs(h, I, params)
    p, delta, k = params.p, params.delta, params.k
    pow_p = [p ** i for i in range(k + 1)]
    delta_over_k = delta / k
    # Integer count thresholds: cnt edges of the same size link-weigh
    # cnt * p^gap, which exceeds delta/k exactly when cnt clears these.
    count_threshold = [int(delta_over_k / pow_p[g]) + 1 for g in range(k + 1)]
    edges: set = set(h.edges)
    fingerprint: set = set()
    steps: list[TraceStep] = []
    iteration = 0

    while True:
        blocked = set()
        size_counts = [0] * (k + 1)
        for e in edges:
            le = len(e)
            size_counts[le] += 1
            if le == 1:
                blocked.add(next(iter(e)))
        candidates_now = frozenset(v for v in range(h.universe_size) if v not in blocked)
        heavy = Fraction(0)
        for size in range(2, k + 1):
            if size_counts[size]:
                heavy += size_counts[size] * pow_p[size]
        if heavy <= delta * p * len(candidates_now):
            break

        chosen = None
        for s in range(2, k + 1):
            if not size_counts[s]:
                continue
            s_edges = [e for e in edges if len(e) == s]
            counts: dict[frozenset, int] = {}
            for e in s_edges:
                members = sorted(e)
                for size in range(1, s):
                    for sub in combinations(members, size):
                        key = frozenset(sub)
                        counts[key] = counts.get(key, 0) + 1
            qualifying = [
                L for L, cnt in counts.items()
                if cnt >= count_threshold[s - len(L)] and L not in edges
            ]
            if qualifying:
                chosen = (s, qualifying, s_edges)
                break
        if chosen is None:
            raise InvariantViolationError(
                "stop test failed but no admissible (s, L) exists; "
                "this contradicts the selection guarantee and signals a bug"
            )
        s_i, qualifying, s_edges = chosen
        maximal = [L for L in qualifying if not any(L < M for M in qualifying)]
        L_i = min(maximal, key=canonical_key)

        in_input = L_i <= I
        if in_input:
            update_family = frozenset(e - L_i for e in s_edges if L_i <= e)
            fingerprint |= L_i
        else:
            update_family = frozenset([L_i])

        if trace:
            steps.append(TraceStep(
                index=iteration,
                size_chosen=s_i,
                set_chosen=L_i,
                set_in_input=in_input,
                update_family=update_family,
                container_size=len(candidates_now),
                heavy_weight=heavy,
                novel_edges=frozenset(edges) - h.edges,
            ))

        edges = {e for e in edges if not any(f <= e for f in update_family)}
        edges |= update_family
        iteration += 1

    residual = Hypergraph(h.universe_size, params.k,
                          frozenset(e for e in edges if len(e) > 1))
    failed = any(
        v not in candidates_now and negate_vertex(v) not in candidates_now
        for v in range(0, h.universe_size, 2)
    )
    return ContainerOutput(
        status="error" if failed else "ok",
        fingerprint=frozenset(fingerprint),
        container=candidates_now,
        residual=residual,
        iterations=iteration,
        trace=tuple(steps) if trace else None,
    )


# -- trace verification -------------------------------------------------------

@dataclass(frozen=True)
class TraceVerdict:
    iteration: int
    check: str
    passed: bool
    detail: str = ""

    def to_json_dict(self) -> dict:
        return {
            "iteration": self.iteration,
            "check": self.check,
            "passed": self.passed,
            "detail": self.detail,
        }


def _link_weight_by_size(family, L: frozenset, p: Fraction) -> Fraction:
    total = Fraction(0)
    for e in family:
        if L <= e:
            total += p ** (len(e) - len(L))
    return total


def verify_trace(output: ContainerOutput, h0: Hypergraph, I,
                 params: WeightParams) -> list[TraceVerdict]:
    """Replay a traced run from the input hypergraph and check, for every
    iteration: the hypergraph stays an antichain; the update family avoids
    the current up-closure, which then strictly grows; novel-edge links stay
    at or below 2*delta/k for sets outside the up-closure; the input set
    stays independent; no novel edge reaches size k.  Verdicts are reported,
    never raised.  Extra verdicts cover trace/replay consistency, the
    antichain LYM bound, the final stop condition, and (for p = 1/|V| with
    no singleton input edges) non-decrease of the heavy-edge weight on
    iterations whose update family has members of size at least 2.
    """
    if output.trace is None:
        raise PreconditionError("verify_trace needs an output produced with trace=True")
    I = frozenset(I)
    p, delta, k = params.p, params.delta, params.k
    verdicts: list[TraceVerdict] = []
    current = h0
    nondecrease_applicable = (
        p == Fraction(1, h0.universe_size) if h0.universe_size else False
    ) and not any(len(e) == 1 for e in h0.edges)

    def add(iteration: int, check: str, passed: bool, detail: str = ""):
        verdicts.append(TraceVerdict(iteration, check, passed, detail))

    for step in output.trace:
        i = step.index
        edges = current.edges

        add(i, "antichain", is_antichain(current))
        add(i, "lym", lym_sum(current) <= 1,
            f"lym={fraction_str(lym_sum(current))}")

        clash = [f for f in step.update_family if up_closure_membership(edges, f)]
        add(i, "update_avoids_up_closure", not clash,
            "" if not clash else f"member {vertices_to_literals(clash[0])} covers an edge")

        witness = [f for f in step.update_family
                   if not up_closure_membership(edges, f)]
        add(i, "up_closure_growth", bool(witness),
            "" if witness else "no update member lies outside the old up-closure")

        novel = frozenset(edges) - h0.edges
        add(i, "novel_edges_consistent", novel == step.novel_edges)
        blocked = {next(iter(e)) for e in edges if len(e) == 1}
        add(i, "container_size_consistent",
            h0.universe_size - len(blocked) == step.container_size)
        heavy = family_weight((e for e in edges if len(e) > 1), p)
        add(i, "heavy_weight_consistent", heavy == step.heavy_weight)

        bound = Fraction(2) * delta / k
        violation = None
        for s in range(2, k):
            d_s = [e for e in novel if len(e) == s]
            if not d_s:
                continue
            seen: set = set()
            for e in d_s:
                members = sorted(e)
                for size in range(1, s):
                    for sub in combinations(members, size):
                        L = frozenset(sub)
                        if L in seen:
                            continue
                        seen.add(L)
                        if up_closure_membership(edges, L):
                            continue
                        w = _link_weight_by_size(d_s, L, p)
                        if w > bound:
                            violation = (s, L, w)
                            break
                    if violation:
                        break
                if violation:
                    break
            if violation:
                break
        add(i, "novel_link_weight", violation is None,
            "" if violation is None else
            f"size {violation[0]} set {vertices_to_literals(violation[1])}"
            f" has link weight {fraction_str(violation[2])} > {fraction_str(bound)}")

        contained = [e for e in edges if e <= I]
        add(i, "input_stays_independent", not contained,
            "" if not contained else f"edge {vertices_to_literals(contained[0])} inside input")

        oversized = [e for e in novel if len(e) >= k]
        add(i, "novel_edges_below_k", not oversized,
            "" if not oversized else f"novel edge {vertices_to_literals(oversized[0])}")

        nxt = frozenset(
            e for e in edges if not any(f <= e for f in step.update_family)
        ) | step.update_family
        growth_ok = all(up_closure_membership(nxt, e) for e in edges)
        add(i, "up_closure_monotone", growth_ok)

        if nondecrease_applicable:
            member_sizes = {len(f) for f in step.update_family}
            if member_sizes and min(member_sizes) >= 2 and len(member_sizes) == 1:
                heavy_next = family_weight((e for e in nxt if len(e) > 1), p)
                add(i, "heavy_weight_nondecrease", heavy_next >= heavy,
                    f"{fraction_str(heavy)} -> {fraction_str(heavy_next)}")

        current = current.replace_edges(nxt)

    final = output.iterations
    add(final, "antichain", is_antichain(current))
    add(final, "lym", lym_sum(current) <= 1)
    blocked = {next(iter(e)) for e in current.edges if len(e) == 1}
    container = frozenset(v for v in range(h0.universe_size) if v not in blocked)
    heavy = family_weight((e for e in current.edges if len(e) > 1), p)
    add(final, "stop_condition", heavy <= delta * p * len(container),
        f"heavy={fraction_str(heavy)} threshold={fraction_str(delta * p * len(container))}")
    residual_edges = frozenset(e for e in current.edges if len(e) > 1)
    add(final, "output_consistency",
        container == output.container and residual_edges == output.residual.edges)
    return verdicts
