"""Spread-structure verification: weighted-structure checks on k-bounded
hypergraphs, plain degree-condition checks on uniform hypergraphs, and the
exact conversion between the two parameterizations.

Comparisons involving rational exponents (D to the power -epsilon and
friends) are decided exactly by clearing denominators: for positive
quantities, x <= y * D^(-a/b) iff x^b * D^a <= y^b.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Optional

from .errors import InvariantViolationError, PreconditionError
from .hypergraph import (
    Hypergraph,
    average_weight,
    codegree,
    family_weight,
    literal_of_vertex,
    vertices_to_literals,
)
from .rationals import fraction_str


@dataclass(frozen=True)
class WeightParams:
    """The container parameter quadruple; all rationals exact.

    lam (the spread parameter) is optional because the container algorithm
    itself never consumes it; it is required wherever structure verdicts or
    container-size bounds are computed.
    """

    p: Fraction
    delta: Fraction
    k: int
    lam: Optional[Fraction] = None

    def __post_init__(self):
        object.__setattr__(self, "p", Fraction(self.p))
        object.__setattr__(self, "delta", Fraction(self.delta))
        if self.lam is not None:
            object.__setattr__(self, "lam", Fraction(self.lam))
        if not (0 < self.p <= 1):
            raise PreconditionError(f"p must lie in (0, 1], got {fraction_str(self.p)}")
        if not (0 < self.delta < Fraction(1, 4)):
            raise PreconditionError(
                f"delta must lie in (0, 1/4), got {fraction_str(self.delta)}"
            )
        if self.k < 2:
            raise PreconditionError(f"k must be at least 2, got {self.k}")
        if self.lam is not None and not self.lam > 1:
            raise PreconditionError(
                f"lambda must exceed 1, got {fraction_str(self.lam)}"
            )

    def require_container_ready(self) -> None:
        """Container runs additionally need p strictly below delta/k."""
        if not self.p < self.delta / self.k:
            raise PreconditionError(
                f"container runs need p < delta/k: p={fraction_str(self.p)},"
                f" delta/k={fraction_str(self.delta / self.k)}"
            )

    def to_json_dict(self) -> dict:
        return {
            "p": fraction_str(self.p),
            "delta": fraction_str(self.delta),
            "k": self.k,
            "lambda": fraction_str(self.lam) if self.lam is not None else None,
        }


@dataclass(frozen=True)
class DceParams:
    """Degree-condition spread parameters for uniform hypergraphs."""

    D: Fraction
    c: Fraction
    epsilon: Fraction

    def __post_init__(self):
        object.__setattr__(self, "D", Fraction(self.D))
        object.__setattr__(self, "c", Fraction(self.c))
        object.__setattr__(self, "epsilon", Fraction(self.epsilon))
        if self.D < 1:
            raise PreconditionError(f"D must be at least 1, got {fraction_str(self.D)}")
        if not self.c > 1:
            raise PreconditionError(f"c must exceed 1, got {fraction_str(self.c)}")
        if not (0 < self.epsilon <= 1):
            raise PreconditionError(
                f"epsilon must lie in (0, 1], got {fraction_str(self.epsilon)}"
            )


@dataclass(frozen=True)
class StructureReport:
    """Verdicts of the three weighted-spread conditions, with exact figures."""

    w_p: Fraction
    avg: Fraction
    delta1: Fraction
    delta2: Fraction
    cond1: bool
    cond2: bool
    cond3: bool
    lam: Fraction
    p: Fraction
    k: int

    @property
    def is_structure(self) -> bool:
        return self.cond1 and self.cond2 and self.cond3

    def to_json_dict(self) -> dict:
        return {
            "w_p": fraction_str(self.w_p),
            "avg": fraction_str(self.avg),
            "delta1": fraction_str(self.delta1),
            "delta2": fraction_str(self.delta2),
            "cond1": self.cond1,
            "cond2": self.cond2,
            "cond3": self.cond3,
            "is_structure": self.is_structure,
            "lambda": fraction_str(self.lam),
            "p": fraction_str(self.p),
            "k": self.k,
        }


def check_structure(h: Hypergraph, lam: Fraction, p: Fraction, k: int) -> StructureReport:
    """Verify the three spread conditions: average weight at least p, max
    single-vertex weight at most lam times the average, and max pair weight
    at most lam times the average scaled by p^k.  All comparisons exact."""
    lam = Fraction(lam)
    p = Fraction(p)
    if not lam > 1:
        raise PreconditionError(f"lambda must exceed 1, got {fraction_str(lam)}")
    if not (0 < p <= 1):
        raise PreconditionError(f"p must lie in (0, 1], got {fraction_str(p)}")
    for e in h.edges:
        if len(e) > k:
            raise PreconditionError(
                f"hypergraph is not {k}-bounded: edge {vertices_to_literals(e)}"
                f" has size {len(e)}"
            )
    w = family_weight(h, p)
    avg = average_weight(h, p)
    d1 = codegree(h, 1, p)
    d2 = codegree(h, 2, p)
    return StructureReport(
        w_p=w,
        avg=avg,
        delta1=d1,
        delta2=d2,
        cond1=avg >= p,
        cond2=d1 <= lam * avg,
        cond3=d2 <= lam * avg * p ** k,
        lam=lam,
        p=p,
        k=k,
    )


# -- plain degree conditions on uniform hypergraphs --------------------------

def _plain_degree_maxima(h: Hypergraph):
    """Unweighted degree and pair-codegree maxima with witnesses."""
    deg: dict[int, int] = {}
    pair: dict[frozenset, int] = {}
    for e in h.edges:
        for v in e:
            deg[v] = deg.get(v, 0) + 1
        for a, b in combinations(sorted(e), 2):
            key = frozenset((a, b))
            pair[key] = pair.get(key, 0) + 1
    if deg:
        best_v = min((v for v in deg), key=lambda v: (-deg[v], v))
        delta1, witness1 = deg[best_v], literal_of_vertex(best_v)
    else:
        delta1, witness1 = 0, None
    if pair:
        best_pair = min(pair, key=lambda s: (-pair[s], tuple(sorted(s))))
        delta2, witness2 = pair[best_pair], vertices_to_literals(best_pair)
    else:
        delta2, witness2 = 0, None
    return delta1, witness1, delta2, witness2


def _power_leq(base_small: Fraction, base_big: Fraction, D: Fraction,
               exponent: Fraction) -> bool:
    """Exact test of base_small <= base_big * D**(-exponent) for positive
    rationals and a rational exponent a/b: clear the fractional power by
    raising both sides to b."""
    a, b = exponent.numerator, exponent.denominator
    return base_small ** b * D ** a <= base_big ** b


@dataclass(frozen=True)
class DceCheckResult:
    passed: bool
    conditions: dict
    quantities: dict
    witness_vertex: Optional[int]
    witness_pair: Optional[list]

    def to_json_dict(self) -> dict:
        return {
            "passed": self.passed,
            "conditions": dict(self.conditions),
            "quantities": dict(self.quantities),
            "witness_vertex": self.witness_vertex,
            "witness_pair": self.witness_pair,
        }


def check_dce(h: Hypergraph, params: DceParams) -> DceCheckResult:
    """Check the degree-condition structure on a uniform hypergraph.

    The verdict uses the density-normalized forms (degree at most
    c*|E|/|V|, pair codegree at most c*(|E|/|V|)*D^-epsilon), which are what
    the conversion to the weighted structure multiplies through by p^k; the
    raw forms (c*D and c*D^(1-epsilon)) are reported alongside.
    """
    sizes = {len(e) for e in h.edges}
    if len(sizes) > 1:
        raise PreconditionError(
            f"degree-condition check needs a uniform hypergraph, found edge sizes {sorted(sizes)}"
        )
    if h.universe_size <= 0:
        raise PreconditionError("hypergraph must have a nonempty vertex universe")
    m = len(h.edges)
    nv = h.universe_size
    density = Fraction(m, nv)
    delta1, w1, delta2, w2 = _plain_degree_maxima(h)
    cond_density = Fraction(m) >= params.D * nv
    cond_deg = Fraction(delta1) <= params.c * density
    cond_pair = _power_leq(Fraction(delta2), params.c * density, params.D, params.epsilon)
    raw_deg = Fraction(delta1) <= params.c * params.D
    raw_pair = _raw_pair_check(Fraction(delta2), params)
    return DceCheckResult(
        passed=cond_density and cond_deg and cond_pair,
        conditions={
            "edge_density": cond_density,
            "degree_normalized": cond_deg,
            "pair_codegree_normalized": cond_pair,
            "degree_raw": raw_deg,
            "pair_codegree_raw": raw_pair,
        },
        quantities={
            "num_edges": m,
            "num_vertices": nv,
            "density": fraction_str(density),
            "delta1": delta1,
            "delta2": delta2,
        },
        witness_vertex=w1,
        witness_pair=w2,
    )


def _raw_pair_check(delta2: Fraction, params: DceParams) -> bool:
    """Exact test of delta2 <= c * D**(1 - epsilon)."""
    a, b = params.epsilon.numerator, params.epsilon.denominator
    # delta2^b <= c^b * D^(b - a); b >= a because epsilon <= 1.
    return delta2 ** b <= params.c ** b * params.D ** (b - a)


# -- conversion --------------------------------------------------------------

def _int_nth_root(x: int, m: int) -> int:
    """Floor of the m-th root of a nonnegative integer, exactly."""
    if x < 0:
        raise ValueError("negative radicand")
    if x < 2 or m == 1:
        return x
    r = 1 << -(-x.bit_length() // m)  # upper bound
    while True:
        nr = ((m - 1) * r + x // r ** (m - 1)) // m
        if nr >= r:
            return r
        r = nr


@dataclass(frozen=True)
class ConversionResult:
    lam: Fraction
    p: Fraction
    exact: bool
    tolerance: Optional[Fraction]

    def to_json_dict(self) -> dict:
        return {
            "lambda": fraction_str(self.lam),
            "p": fraction_str(self.p),
            "exact": self.exact,
            "tolerance": fraction_str(self.tolerance) if self.tolerance is not None else None,
        }


def dce_to_lambda_p(params: DceParams, k: int,
                    tolerance: Fraction = Fraction(1, 10 ** 6)) -> ConversionResult:
    """Convert degree-condition parameters to weighted-structure parameters:
    lambda = c exactly and p = D**(-epsilon/k).

    When the root is irrational the returned p is a rational upper bracket
    (p_hat >= true p, within the given relative tolerance) and flagged
    approximate.  A larger p only loosens the places the value feeds
    (p < delta/k, p <= 1/lambda), so the bracket is conservative.
    """
    if k < 1:
        raise PreconditionError("k must be at least 1")
    tolerance = Fraction(tolerance)
    if tolerance <= 0:
        raise PreconditionError("tolerance must be positive")
    a = params.epsilon.numerator
    m = params.epsilon.denominator * k
    target = params.D ** a  # p = target ** (-1/m), target >= 1
    root_num = _int_nth_root(target.numerator, m)
    root_den = _int_nth_root(target.denominator, m)
    if root_num ** m == target.numerator and root_den ** m == target.denominator:
        p = Fraction(root_den, root_num)
        return ConversionResult(lam=params.c, p=p, exact=True, tolerance=None)
    # Bracket from above: p_hat = (u + 1) / P with u = floor(P * target^(-1/m)).
    inv = Fraction(target.denominator, target.numerator)  # p^m, exactly
    scale = 10
    while True:
        P = 10 ** scale
        u = _int_nth_root(inv.numerator * P ** m // inv.denominator, m)
        p_hat = Fraction(u + 1, P)
        if p_hat > 1:
            p_hat = Fraction(1)
        # Exact checks: p_hat >= p  and  p_hat <= p * (1 + tolerance).
        if p_hat ** m >= inv and p_hat ** m <= inv * (1 + tolerance) ** m:
            return ConversionResult(lam=params.c, p=p_hat, exact=False,
                                    tolerance=tolerance)
        scale *= 2
        if scale > 10_000:
            raise InvariantViolationError(
                "rational bracketing of the conversion root failed to converge"
            )
