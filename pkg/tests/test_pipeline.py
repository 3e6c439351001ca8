import random
from fractions import Fraction

import pytest

from satcontainers import (
    Formula,
    PreconditionError,
    WeightParams,
    all_models,
    assignment_set,
    base_solver,
    compute_bounds,
    dense_max_sat,
    dense_solve,
    enumerate_containers,
    family_weight,
    independent_sets,
    independent_sets_up_to,
    max_sat_approx,
    max_sat_optimum,
    preprocess,
    random_formula,
    reduce_formula,
    satisfies,
    solve_sat,
    to_hypergraph,
    vertex_of_literal,
)
from instances import (
    complete_two_cnf,
    contradiction,
    demo_formula,
    matching_complement,
    matching_complement_with_triples,
)

V = vertex_of_literal


def small_params(k=3):
    return WeightParams(p=Fraction(1, 100), delta=Fraction(1, 5), k=k)


# -- independent-set enumeration --------------------------------------------------

def test_pipeline_enumeration_matches_oracle():
    rng = random.Random(17)
    for _ in range(12):
        f = preprocess(random_formula(rng, rng.randint(2, 5), 3, rng.randint(1, 12)))
        h = to_hypergraph(f)
        for limit in (0, 1, 2, h.universe_size):
            dfs = set(independent_sets_up_to(h, limit))
            naive = set(independent_sets(h, limit))
            assert dfs == naive


# -- container family --------------------------------------------------------------

def test_enumerate_contradiction_gives_empty_family():
    h = to_hypergraph(preprocess(contradiction()))
    fam = enumerate_containers(h, small_params(k=2))
    assert fam.records == ()
    assert fam.stats.errors_filtered == fam.stats.runs_executed > 0
    assert fam.stats.exhaustive


def test_enumerate_edgeless_single_container():
    h = to_hypergraph(Formula.from_clauses(3, []))
    fam = enumerate_containers(h, small_params(k=2))
    assert len(fam.records) == 1
    assert fam.records[0].fingerprint == frozenset()
    assert fam.records[0].container == frozenset(range(6))


def test_enumerate_demo_formula_bound_and_single_container():
    h = to_hypergraph(demo_formula())
    params = small_params()
    fam = enumerate_containers(h, params)
    assert fam.stats.requested_bound == Fraction(27, 5)
    assert fam.stats.size_limit == 5
    assert len(fam.records) == 1
    assert fam.records[0].container == frozenset(range(6))


def test_enumerate_cap_flags_incomplete():
    h = to_hypergraph(demo_formula())
    fam = enumerate_containers(h, small_params(), cap=1)
    assert not fam.stats.exhaustive
    assert fam.stats.size_limit == 1


def test_enumerate_threads_match_sequential():
    n = 10
    f = matching_complement(n, tuple([0] * n))
    h = to_hypergraph(f)
    p = Fraction(1, 2 * n)
    d = family_weight(h, p)
    params = WeightParams(p=p, delta=d / 3, k=2)
    seq = enumerate_containers(h, params)
    par = enumerate_containers(h, params, threads=4)
    assert seq.records == par.records


# -- formula reduction ---------------------------------------------------------------

def test_reduce_demo_formula_example():
    f = demo_formula()
    Vp = {V(1), V(-1), V(2), V(-3)}
    rf = reduce_formula(f, Vp)
    assert rf.is_live
    assert rf.forced == ((2, 1), (3, 0))
    assert rf.free == (1,)
    assert rf.clauses == ()  # all three clauses satisfied by forced literals


def test_reduce_missing_pair_is_forced_unsat():
    f = demo_formula()
    rf = reduce_formula(f, {V(2), V(-2), V(3), V(-3)})
    assert rf.status == "forced_unsat"


def test_reduce_full_universe_keeps_everything_free():
    f = demo_formula()
    rf = reduce_formula(f, range(6))
    assert rf.is_live and rf.free == (1, 2, 3) and rf.forced == ()
    assert {frozenset(c) for c in rf.clauses} == {c.literals for c in f.clauses}


def test_reduce_empty_clause_marks_locally_unsat():
    f = Formula.from_clauses(2, [[1, 2]])
    rf = reduce_formula(f, {V(-1), V(-2)})  # both variables forced 0
    assert rf.is_live and rf.locally_unsat
    result = base_solver(rf)
    assert not result.satisfiable


# -- base solver ------------------------------------------------------------------------

def test_base_solver_trivial_and_conflict():
    f = Formula.from_clauses(1, [])
    rf = reduce_formula(f, {V(1), V(-1)})
    res = base_solver(rf)
    assert res.satisfiable and res.nodes >= 1
    g = Formula.from_clauses(1, [[1], [-1]])
    res = base_solver(reduce_formula(g, {V(1), V(-1)}))
    assert not res.satisfiable


def test_base_solver_on_reduced_demo_formula():
    rf = reduce_formula(demo_formula(), {V(1), V(-1), V(2), V(-3)})
    assert base_solver(rf).satisfiable


def test_base_solver_complete_on_fuzz():
    rng = random.Random(19)
    for _ in range(30):
        n = rng.randint(1, 6)
        f = preprocess(random_formula(rng, n, 3, rng.randint(1, 15)))
        rf = reduce_formula(f, range(2 * n))
        res = base_solver(rf)
        assert res.satisfiable == bool(all_models(f))
        if res.satisfiable:
            model = tuple(res.assignment.get(v, 0) for v in range(1, n + 1))
            assert satisfies(f, model)


# -- SAT via decomposition ----------------------------------------------------------------

def test_solve_contradiction_unsat():
    res = solve_sat(preprocess(contradiction()), small_params(k=2))
    assert res.status == "unsat"


def test_solve_demo_formula_sat():
    res = solve_sat(demo_formula(), small_params())
    assert res.status == "sat"
    assert res.assignment in {(0, 0, 1), (0, 1, 0), (0, 1, 1), (1, 1, 0)}
    assert res.work["direct_baseline"] == 8
    assert res.work["per_container"]


def test_solve_empty_formula():
    res = solve_sat(Formula.from_clauses(2, []), small_params(k=2))
    assert res.status == "sat" and len(res.assignment) == 2


def test_solve_with_edge_subset():
    f = demo_formula()
    h = to_hypergraph(f)
    subset = [e for e in h.edges if len(e) == 2]
    res = solve_sat(f, small_params(), edge_subset=subset)
    assert res.status == "sat" and satisfies(f, res.assignment)
    with pytest.raises(PreconditionError):
        solve_sat(f, small_params(), edge_subset=[frozenset({V(1), V(-3)})])


def test_solve_capped_cannot_certify_unsat():
    f = preprocess(contradiction())
    # p = 1/20 puts the fingerprint bound at 4, so cap=0 truncates it
    params = WeightParams(p=Fraction(1, 20), delta=Fraction(1, 5), k=2)
    with pytest.raises(PreconditionError):
        solve_sat(f, params, cap=0)
    # at the full bound the empty family soundly certifies unsatisfiability
    assert solve_sat(f, params).status == "unsat"


# -- MAX-SAT -------------------------------------------------------------------------------

def test_maxsat_contradiction_no_assignment():
    res = max_sat_approx(preprocess(contradiction()), small_params(k=2))
    assert res.status == "no_assignment"


def test_maxsat_demo_formula_default_then_polish():
    f = demo_formula()
    plain = max_sat_approx(f, small_params())
    assert plain.status == "approx"
    assert plain.assignment == (1, 1, 1)
    assert plain.falsified_weight == Fraction(1, 100) ** 3
    polished = max_sat_approx(f, small_params(), greedy_polish=True)
    assert polished.falsified_weight == 0
    assert polished.falsified_weight == max_sat_optimum(f, Fraction(1, 100))


def test_maxsat_empty_formula():
    res = max_sat_approx(Formula.from_clauses(2, []), small_params(k=2))
    assert res.status == "approx" and res.falsified_weight == 0


def test_maxsat_weight_bounded_by_induced_weight():
    rng = random.Random(23)
    for _ in range(15):
        f = preprocess(random_formula(rng, rng.randint(2, 6), 3, rng.randint(1, 14)))
        res = max_sat_approx(f, small_params(), greedy_polish=rng.random() < 0.5)
        if res.status == "approx":
            assert res.falsified_weight <= res.container_induced_weight
            assert res.falsified_weight >= max_sat_optimum(f, Fraction(1, 100))
        else:
            assert not all_models(f)


# -- dense presets ----------------------------------------------------------------------------

def test_dense_solve_satisfiable_with_certificate():
    n = 10
    sigma = tuple([0] * n)
    f = matching_complement(n, sigma)
    h = to_hypergraph(f)
    d = family_weight(h, Fraction(1, 2 * n))
    res = dense_solve(f, d)
    assert res.inner.status == "sat" and res.inner.assignment == sigma
    assert res.max_container_size is not None
    assert Fraction(res.max_container_size) <= res.certificate_bound


def test_dense_solve_unsat_matches_oracle():
    f = complete_two_cnf(8)
    d = family_weight(to_hypergraph(f), Fraction(1, 16))
    res = dense_solve(f, d)
    assert res.inner.status == "unsat"
    assert not all_models(f)


def test_dense_solve_rejections():
    f = matching_complement(10, tuple([0] * 10))
    with pytest.raises(PreconditionError):  # not dense enough
        dense_solve(f, Fraction(9, 10))
    with pytest.raises(PreconditionError):  # delta = d/3 >= 1/4
        dense_solve(f, Fraction(4, 5))
    g = Formula.from_clauses(3, [[1], [1, 2]])
    with pytest.raises(PreconditionError):  # unit edge present
        dense_solve(preprocess(g), Fraction(1, 100))
    with pytest.raises(PreconditionError):  # empty formula: w_p = 0 < d
        dense_max_sat(Formula.from_clauses(3, []), Fraction(1, 8), Fraction(1, 10))


def test_dense_maxsat_guarantee_and_certificates():
    rng = random.Random(29)
    n = 10
    sigma = tuple(rng.randint(0, 1) for _ in range(n))
    f = matching_complement(n, sigma)
    d = family_weight(to_hypergraph(f), Fraction(1, 2 * n))
    res = dense_max_sat(f, Fraction(6, 25), d, greedy_polish=True)
    assert res.inner.status == "approx"
    assert res.inner.falsified_weight <= res.guarantee_bound
    # oracle arbitration on an unsatisfiable dense instance
    g = complete_two_cnf(8)
    d2 = family_weight(to_hypergraph(g), Fraction(1, 16))
    res2 = dense_max_sat(g, Fraction(6, 25), d2)
    assert res2.inner.status == "no_assignment"
    assert not all_models(g)


def test_dense_k3_variant():
    rng = random.Random(31)
    n = 10
    sigma = tuple(rng.randint(0, 1) for _ in range(n))
    f = matching_complement_with_triples(n, sigma, 3, rng)
    assert f.k == 3 and satisfies(f, sigma)
    d = family_weight(to_hypergraph(f), Fraction(1, 2 * n))
    res = dense_max_sat(f, Fraction(6, 25), d, greedy_polish=True, cap=1)
    assert res.inner.status == "approx"
    assert res.inner.falsified_weight <= res.guarantee_bound
    # dense_solve needs d > 9/(2n) for k=3; n=15 clears it, capped runs
    # keep it quick and the certificate applies to every emitted container
    n = 15
    sigma = tuple(rng.randint(0, 1) for _ in range(n))
    f = matching_complement_with_triples(n, sigma, 4, rng)
    d = family_weight(to_hypergraph(f), Fraction(1, 2 * n))
    res = dense_solve(f, d, cap=1)
    assert res.inner.status == "sat" and res.inner.assignment == sigma
    assert Fraction(res.max_container_size) <= res.certificate_bound


# -- bounds ------------------------------------------------------------------------------------

def test_compute_bounds_formula_evaluation():
    params = WeightParams(p=Fraction(1, 100), delta=Fraction(1, 5), k=2)
    rep = compute_bounds(params, 50)
    assert rep.fingerprint_bound == 40
    assert rep.fingerprint_bound_floor == 40
    assert rep.entropy_arg == Fraction(2, 5)
    assert rep.entropy_defined and not rep.trivial


def test_compute_bounds_trivial_flag_at_half():
    params = WeightParams(p=Fraction(1, 16), delta=Fraction(1, 5), k=2)
    # entropy_arg = 2*4*(1/16)/(1/5) = 5/2 -> undefined, trivial
    rep = compute_bounds(params, 10)
    assert rep.entropy_arg == Fraction(5, 2)
    assert not rep.entropy_defined and rep.trivial and rep.entropy is None
    exact_half = WeightParams(p=Fraction(1, 80), delta=Fraction(1, 5), k=2)
    rep = compute_bounds(exact_half, 10)
    assert rep.entropy_arg == Fraction(1, 2)
    assert rep.entropy == 1.0 and rep.trivial


def test_compute_bounds_small_p_limit():
    params = WeightParams(p=Fraction(1, 10 ** 6), delta=Fraction(1, 5), k=2,
                          lam=Fraction(2))
    rep = compute_bounds(params, 10)
    assert rep.fingerprint_bound_floor == 0
    assert rep.entropy is not None and rep.container_count_log2 < 0.1
    assert rep.container_size_bound == Fraction(3, 2) * 10
    assert rep.unassigned_bound == Fraction(1, 2) * 10


# -- decomposition equivalence against the oracle ------------------------------------------------

def test_decomposition_matches_oracle_on_fuzz():
    rng = random.Random(37)
    for _ in range(25):
        n = rng.randint(2, 6)
        f = preprocess(random_formula(rng, n, 3, rng.randint(1, 14)))
        k = max(2, f.k)
        params = WeightParams(p=Fraction(1, 50 * k * n), delta=Fraction(1, 5), k=k)
        res = solve_sat(f, params)
        models = all_models(f)
        assert (res.status == "sat") == bool(models)
        if res.status == "sat":
            assert res.assignment in set(models)
        # coverage: every model's literal set inside some container
        containers = [r.container for r in res.family.records]
        for m in models:
            assert any(assignment_set(m) <= c for c in containers)
