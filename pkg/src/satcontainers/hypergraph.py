"""k-bounded hypergraphs over literal-vertices with exact p-weight machinery.

Vertex encoding: variable i (1-based) owns two vertices, 2*(i-1) for the
positive literal and 2*(i-1)+1 for the negative one.  Plain integer order on
vertex ids therefore realizes the global vertex order
x1 < not-x1 < x2 < not-x2 < ...  which makes every tie-break reproducible.
Sets compare lexicographically via their ascending member tuples (Python
tuple order: element-wise, shorter prefix first).

All weights are exact `Fraction`s.  Weight of an edge depends only on its
size, so family weights are computed from size histograms: sum of a_s * p^s
with integer counts a_s.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable

from .errors import PreconditionError
from .rationals import fraction_str

Vertex = int
Edge = frozenset  # frozenset[Vertex]


# -- vertex/literal encoding -------------------------------------------------

def vertex_of_literal(lit: int) -> Vertex:
    """Map a signed DIMACS literal (+i / -i) to its vertex id."""
    if lit == 0:
        raise ValueError("literal 0 is reserved as the DIMACS terminator")
    var = abs(lit)
    return 2 * (var - 1) + (1 if lit < 0 else 0)


def literal_of_vertex(v: Vertex) -> int:
    """Inverse of vertex_of_literal."""
    var = v // 2 + 1
    return var if v % 2 == 0 else -var


def variable_of_vertex(v: Vertex) -> int:
    return v // 2 + 1


def negate_vertex(v: Vertex) -> Vertex:
    """Vertex of the complementary literal of the same variable."""
    return v ^ 1


def canonical_key(s: Iterable[Vertex]) -> tuple[int, ...]:
    """Ascending member tuple; the package-wide set comparison key."""
    return tuple(sorted(s))


def vertices_to_literals(s: Iterable[Vertex]) -> list[int]:
    """Signed-integer rendering of a vertex set, in global vertex order."""
    return [literal_of_vertex(v) for v in sorted(s)]


def literals_to_vertices(lits: Iterable[int]) -> frozenset:
    return frozenset(vertex_of_literal(lit) for lit in lits)


# -- the hypergraph value ----------------------------------------------------

@dataclass(frozen=True)
class Hypergraph:
    """Immutable k-bounded hypergraph on the 2n literal-vertices."""

    universe_size: int
    k: int
    edges: frozenset  # frozenset[Edge]

    def __post_init__(self):
        if self.universe_size < 0:
            raise ValueError("universe_size must be nonnegative")
        for e in self.edges:
            if not e:
                raise ValueError("edges must be nonempty")
            if len(e) > self.k:
                raise ValueError(
                    f"edge {vertices_to_literals(e)} exceeds the size bound k={self.k}"
                )
            if not all(0 <= v < self.universe_size for v in e):
                raise ValueError(f"edge {sorted(e)} leaves the vertex universe")

    @staticmethod
    def from_edges(universe_size: int, edges: Iterable[Iterable[Vertex]],
                   k: int | None = None) -> "Hypergraph":
        frozen = frozenset(frozenset(e) for e in edges)
        if k is None:
            k = max((len(e) for e in frozen), default=0)
        return Hypergraph(universe_size, k, frozen)

    @property
    def num_vars(self) -> int:
        return self.universe_size // 2

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges, key=canonical_key)

    def replace_edges(self, edges: Iterable[Edge]) -> "Hypergraph":
        return Hypergraph(self.universe_size, self.k, frozenset(edges))

    def to_json_dict(self) -> dict:
        return {
            "universe": self.universe_size,
            "k": self.k,
            "edges": [vertices_to_literals(e) for e in self.sorted_edges()],
        }

    @staticmethod
    def from_json_dict(data: dict) -> "Hypergraph":
        edges = [literals_to_vertices(e) for e in data["edges"]]
        return Hypergraph.from_edges(data["universe"], edges, k=data.get("k"))


# -- exact weights -----------------------------------------------------------

def _check_p(p: Fraction) -> Fraction:
    p = Fraction(p)
    if not (0 < p <= 1):
        raise PreconditionError(f"p must lie in (0, 1], got {fraction_str(p)}")
    return p


def edge_weight(e: Iterable[Vertex], p: Fraction) -> Fraction:
    """Weight p^|e| of a single edge."""
    p = _check_p(p)
    return p ** len(frozenset(e))


def size_histogram(family: Iterable[Edge]) -> Counter:
    counts: Counter = Counter()
    for e in family:
        counts[len(e)] += 1
    return counts


def family_weight(family, p: Fraction) -> Fraction:
    """Exact total weight sum of p^|E| over an edge family or hypergraph."""
    p = _check_p(p)
    edges = family.edges if isinstance(family, Hypergraph) else family
    total = Fraction(0)
    for size, count in size_histogram(edges).items():
        total += count * p ** size
    return total


def average_weight(h: Hypergraph, p: Fraction) -> Fraction:
    """Total weight divided by the number of vertices."""
    if h.universe_size <= 0:
        raise PreconditionError("average weight needs a nonempty vertex universe")
    return family_weight(h, p) / h.universe_size


# -- structural operations ---------------------------------------------------

def link(family, L: Iterable[Vertex]) -> frozenset:
    """The family {E - L : L subset of E}, over a hypergraph or edge family."""
    L = frozenset(L)
    if not L:
        raise PreconditionError("link over the empty set is not defined")
    edges = family.edges if isinstance(family, Hypergraph) else family
    return frozenset(e - L for e in edges if L <= e)


def size_filter(family, mode: str, s: int) -> frozenset:
    """Edges of size exactly/greater than/less than s; mode in {eq, gt, lt}."""
    edges = family.edges if isinstance(family, Hypergraph) else family
    if mode == "eq":
        return frozenset(e for e in edges if len(e) == s)
    if mode == "gt":
        return frozenset(e for e in edges if len(e) > s)
    if mode == "lt":
        return frozenset(e for e in edges if len(e) < s)
    raise ValueError(f"unknown size filter mode {mode!r}")


def up_closure_membership(family, X: Iterable[Vertex]) -> bool:
    """True iff some member of the family is a subset of X."""
    X = frozenset(X)
    edges = family.edges if isinstance(family, Hypergraph) else family
    return any(e <= X for e in edges)


def remove_superset_edges(h: Hypergraph, family) -> Hypergraph:
    """Drop every edge of h lying in the up-closure of the given family."""
    members = family.edges if isinstance(family, Hypergraph) else frozenset(family)
    if not members:
        return h
    kept = frozenset(e for e in h.edges if not any(f <= e for f in members))
    return h.replace_edges(kept)


def codegree(h: Hypergraph, i: int, p: Fraction) -> Fraction:
    """Maximal p-codegree of i-sets: max over |L|=i of the weight of edges
    containing L.  Only i-subsets of edges can score above zero, so the
    search is restricted to those (an exact optimization).
    """
    p = _check_p(p)
    if i < 1:
        raise PreconditionError("codegree order i must be at least 1")
    best = Fraction(0)
    weights: dict[frozenset, Fraction] = {}
    for e in h.edges:
        if len(e) < i:
            continue
        w = p ** len(e)
        for sub in combinations(sorted(e), i):
            key = frozenset(sub)
            weights[key] = weights.get(key, Fraction(0)) + w
    for w in weights.values():
        if w > best:
            best = w
    return best


def is_antichain(h) -> bool:
    """No edge contained in a distinct edge.  Edges are deduplicated sets, so
    only strictly smaller edges can witness a violation; buckets by size."""
    edges = h.edges if isinstance(h, Hypergraph) else frozenset(h)
    by_size: dict[int, list] = {}
    for e in edges:
        by_size.setdefault(len(e), []).append(e)
    sizes = sorted(by_size)
    for si, small_size in enumerate(sizes):
        for big_size in sizes[si + 1:]:
            for small in by_size[small_size]:
                for big in by_size[big_size]:
                    if small <= big:
                        return False
    return True


def lym_sum(h: Hypergraph) -> Fraction:
    """Sum over sizes s of a_s / C(universe, s); at most 1 for antichains."""
    total = Fraction(0)
    for size, count in size_histogram(h.edges).items():
        total += Fraction(count, math.comb(h.universe_size, size))
    return total


def induced(h: Hypergraph, C: Iterable[Vertex]) -> Hypergraph:
    """Sub-hypergraph of edges fully inside C.  Vertex ids are preserved (the
    universe stays the full literal universe) so weights and set identities
    remain comparable across restrictions."""
    C = frozenset(C)
    if not all(0 <= v < h.universe_size for v in C):
        raise PreconditionError("C must be a subset of the vertex universe")
    return h.replace_edges(e for e in h.edges if e <= C)


