"""CNF data model: DIMACS ingestion, antichain preprocessing, evaluation,
and the bridge from clauses to the literal hypergraph.

Literals travel as signed integers (+i / -i) like in DIMACS; the `Literal`
dataclass is the validated boundary form.  A clause's hypergraph edge is the
set of *negations* of its literals: an assignment falsifies the clause
exactly when its literal set contains that edge.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, NamedTuple

from .errors import DimacsParseError, PreconditionError
from .hypergraph import (
    Hypergraph,
    canonical_key,
    vertex_of_literal,
    vertices_to_literals,
)

Assignment = tuple  # tuple[int, ...] of 0/1 values, index i-1 holds variable i


@dataclass(frozen=True)
class Literal:
    """A variable occurrence with a polarity."""

    var: int
    positive: bool

    def __post_init__(self):
        if self.var < 1:
            raise ValueError("variable index must be at least 1")

    @staticmethod
    def from_int(lit: int) -> "Literal":
        if lit == 0:
            raise ValueError("literal 0 is reserved as the DIMACS terminator")
        return Literal(abs(lit), lit > 0)

    def to_int(self) -> int:
        return self.var if self.positive else -self.var

    @property
    def negation(self) -> "Literal":
        return Literal(self.var, not self.positive)

    @property
    def vertex(self) -> int:
        return vertex_of_literal(self.to_int())


@dataclass(frozen=True)
class Clause:
    """A disjunction of literals, stored as a set of signed integers."""

    literals: frozenset  # frozenset[int]

    def __post_init__(self):
        if not self.literals:
            raise ValueError("clauses must be nonempty")
        for lit in self.literals:
            Literal.from_int(lit)

    @staticmethod
    def of(lits: Iterable[int]) -> "Clause":
        return Clause(frozenset(lits))

    def __len__(self) -> int:
        return len(self.literals)

    @property
    def variables(self) -> frozenset:
        return frozenset(abs(lit) for lit in self.literals)

    @property
    def is_tautological(self) -> bool:
        return any(-lit in self.literals for lit in self.literals)

    @property
    def edge(self) -> frozenset:
        """Vertices of the negated literals: the falsifying combination."""
        return frozenset(vertex_of_literal(-lit) for lit in self.literals)

    def sorted_literals(self) -> list[int]:
        return vertices_to_literals(vertex_of_literal(lit) for lit in self.literals)


@dataclass(frozen=True)
class Formula:
    """A CNF formula over variables 1..n."""

    n: int
    clauses: tuple = field(default_factory=tuple)  # tuple[Clause, ...]

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("variable count must be nonnegative")
        for c in self.clauses:
            if any(v > self.n for v in c.variables):
                raise ValueError(f"clause {c.sorted_literals()} references a variable beyond n={self.n}")

    @staticmethod
    def from_clauses(n: int, clauses: Iterable[Iterable[int]]) -> "Formula":
        return Formula(n, tuple(Clause.of(c) for c in clauses))

    @property
    def k(self) -> int:
        """Maximum clause size (0 for the empty formula)."""
        return max((len(c) for c in self.clauses), default=0)

    @property
    def num_clauses(self) -> int:
        return len(self.clauses)

    def to_dimacs(self) -> str:
        lines = [f"p cnf {self.n} {len(self.clauses)}"]
        for c in self.clauses:
            lines.append(" ".join(str(lit) for lit in c.sorted_literals()) + " 0")
        return "\n".join(lines) + "\n"


def parse_dimacs(text: str) -> Formula:
    """Parse standard DIMACS CNF: 'c' comments, a 'p cnf n m' header, and
    whitespace-separated signed literals with 0 terminating each clause.
    Clauses may span lines.  Raw clauses are kept in input order; tautologies
    and duplicates survive until preprocess()."""
    n = None
    clauses: list[Clause] = []
    pending: list[int] = []
    pending_line = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            if n is not None:
                raise DimacsParseError("duplicate problem header", lineno)
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise DimacsParseError(f"malformed header {line!r}", lineno)
            try:
                n = int(parts[2])
                declared_clauses = int(parts[3])
            except ValueError:
                raise DimacsParseError(f"malformed header {line!r}", lineno) from None
            if n < 0 or declared_clauses < 0:
                raise DimacsParseError("header counts must be nonnegative", lineno)
            continue
        if n is None:
            raise DimacsParseError("clause data before the problem header", lineno)
        for token in line.split():
            try:
                lit = int(token)
            except ValueError:
                raise DimacsParseError(f"unexpected token {token!r}", lineno) from None
            if lit == 0:
                if not pending:
                    raise DimacsParseError("empty clause", lineno)
                clauses.append(Clause.of(pending))
                pending = []
                continue
            if abs(lit) > n:
                raise DimacsParseError(
                    f"variable {abs(lit)} out of range (header declared {n})", lineno
                )
            if not pending:
                pending_line = lineno
            pending.append(lit)
    if n is None:
        raise DimacsParseError("missing 'p cnf' header", 1)
    if pending:
        raise DimacsParseError("unterminated clause at end of input", pending_line)
    return Formula(n, tuple(clauses))


def preprocess(f: Formula) -> Formula:
    """Normalize to an antichain: drop tautological clauses, duplicates, and
    any clause whose literal set contains another clause's (subsumption).
    Satisfiability is preserved; the result is canonically ordered."""
    kept: list[Clause] = []
    seen = set()
    for c in f.clauses:
        if c.is_tautological or c.literals in seen:
            continue
        seen.add(c.literals)
        kept.append(c)
    by_size = sorted(kept, key=lambda c: (len(c), canonical_key(c.edge)))
    minimal: list[Clause] = []
    for c in by_size:
        if not any(m.literals < c.literals for m in minimal):
            minimal.append(c)
    minimal.sort(key=lambda c: canonical_key(c.edge))
    return Formula(f.n, tuple(minimal))


def to_hypergraph(f: Formula) -> Hypergraph:
    """Literal hypergraph of a formula: 2n vertices, one edge per clause made
    of the clause's negated literals."""
    return Hypergraph.from_edges(
        2 * f.n, (c.edge for c in f.clauses), k=f.k if f.clauses else 0
    )


def check_assignment(f: Formula, a: Assignment) -> None:
    if len(a) != f.n or any(v not in (0, 1) for v in a):
        raise PreconditionError(
            f"assignment must map exactly the {f.n} variables to 0/1"
        )


def assignment_set(a: Assignment) -> frozenset:
    """The n-element vertex set picking each variable's chosen literal."""
    out = []
    for idx, value in enumerate(a):
        var = idx + 1
        out.append(vertex_of_literal(var if value else -var))
    return frozenset(out)


def literal_true(lit: int, a: Assignment) -> bool:
    value = a[abs(lit) - 1]
    return bool(value) if lit > 0 else not value


class EvalResult(NamedTuple):
    satisfied: int
    falsified_indices: tuple
    falsified_weight: Fraction


def evaluate(f: Formula, a: Assignment, p: Fraction) -> EvalResult:
    """Count satisfied clauses and weigh the falsified ones; a clause is
    falsified exactly when all its literals evaluate false."""
    check_assignment(f, a)
    p = Fraction(p)
    falsified = []
    weight = Fraction(0)
    for idx, c in enumerate(f.clauses):
        if any(literal_true(lit, a) for lit in c.literals):
            continue
        falsified.append(idx)
        weight += p ** len(c)
    return EvalResult(len(f.clauses) - len(falsified), tuple(falsified), weight)


def satisfies(f: Formula, a: Assignment) -> bool:
    check_assignment(f, a)
    return all(any(literal_true(lit, a) for lit in c.literals) for c in f.clauses)
