"""Weighted hypergraph container decomposition for SAT and MAX-SAT.

A CNF formula induces a hypergraph on its 2n literals (one edge per clause,
holding the clause's negated literals); satisfying assignments are exactly
the independent transversals.  The container procedure compresses all
independent sets into few containers, which this package uses for exact SAT
solving, approximate MAX-SAT, and dense-formula presets, with every weight
comparison in exact rational arithmetic and a brute-force oracle grading the
structural guarantees at small scale.
"""

from .container import ContainerOutput, TraceStep, TraceVerdict, candidate_sets, run_container, verify_trace
from .errors import DimacsParseError, InvariantViolationError, PreconditionError
from .formula import (
    Assignment,
    Clause,
    EvalResult,
    Formula,
    Literal,
    assignment_set,
    evaluate,
    parse_dimacs,
    preprocess,
    satisfies,
    to_hypergraph,
)
from .hypergraph import (
    Hypergraph,
    average_weight,
    canonical_key,
    codegree,
    edge_weight,
    family_weight,
    induced,
    is_antichain,
    link,
    literal_of_vertex,
    lym_sum,
    remove_superset_edges,
    size_filter,
    up_closure_membership,
    vertex_of_literal,
)
from .oracle import (
    OracleReport,
    all_models,
    independent_sets,
    max_sat_optimum,
    random_formula,
    verify_theorems,
)
from .pipeline import (
    BoundsReport,
    ContainerFamily,
    ContainerRecord,
    ReducedFormula,
    SolveResult,
    base_solver,
    compute_bounds,
    dense_max_sat,
    dense_solve,
    enumerate_containers,
    fingerprint_size_bound,
    independent_sets_up_to,
    max_sat_approx,
    reduce_formula,
    solve_sat,
)
from .structure import (
    ConversionResult,
    DceParams,
    StructureReport,
    WeightParams,
    check_dce,
    check_structure,
    dce_to_lambda_p,
)

__version__ = "0.1.0"
