from fractions import Fraction
from itertools import product

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from _gen import random_cover, random_packing, random_partition, random_splp, random_two_var_blp
from orprec.blp_orp import (
    COVERING,
    PACKING,
    PARTITION,
    SetSystemInstance,
    SplpInstance,
    WeightedHypergraph,
    build_orp_hypergraph,
    gen_hard_setcover_orp,
    partition_as_packing,
    partition_penalty,
    set_packing_orp,
    set_partition_orp,
    solve_blp_orp,
    solve_blp_orp_exact,
    solve_two_var_orp,
    splp_as_packing,
    splp_orp,
    splp_penalty,
)
from orprec.core import (
    GE,
    LE,
    MAX,
    MIN,
    BlpInstance,
    GuardExceededError,
    InfeasibleParentError,
    Row,
    WrongSolverError,
    better,
    validate_gene_transmission,
)
from orprec.oracle import brute_force_binary_orp


def oracle(feasible, objective, p1, p2, sense):
    return brute_force_binary_orp(lambda x: (feasible(x), objective(x)), p1, p2, sense).value


def blp_oracle(blp, p1, p2):
    return oracle(blp.is_feasible, blp.objective, p1, p2, blp.sense)


# -- hypergraph construction ---------------------------------------------------

def test_hypergraph_three_variable_row():
    blp = BlpInstance((1, 1, 1), (Row((1, 1, 1), LE, 1),))
    # two feasible parents of x1 + x2 + x3 <= 1 differ in at most two places
    with pytest.raises(InfeasibleParentError):
        build_orp_hypergraph(blp, (1, 0, 0), (0, 1, 1))
    orp = build_orp_hypergraph(blp, (1, 0, 0), (0, 1, 0))
    assert orp.free == (0, 1)
    assert set(orp.full_edges) == {frozenset({0, 1}), frozenset({0, 3}), frozenset({1, 4})}


def test_hypergraph_three_free_variables_counts_violators():
    # x1 + x2 + x3 <= 2 with three free variables: only (1,1,1) violates
    blp = BlpInstance((1, 1, 1), (Row((1, 1, 1), LE, 2),))
    orp = build_orp_hypergraph(blp, (1, 1, 0), (0, 0, 1))
    assert orp.d == 3
    violating = [e for e in orp.full_edges if e not in orp.pairing_edges]
    assert violating == [frozenset({0, 1, 2})]
    assert len(orp.pairing_edges) == 3
    # 2 x1 + x2 + x3 <= 2: the violators are 110, 101 and 111
    blp = BlpInstance((1, 1, 1), (Row((2, 1, 1), LE, 2),))
    orp = build_orp_hypergraph(blp, (1, 0, 0), (0, 1, 1))
    violating = {e for e in orp.full_edges if e not in orp.pairing_edges}
    assert violating == {frozenset({0, 1, 5}), frozenset({0, 4, 2}), frozenset({0, 1, 2})}


def test_hypergraph_without_constraints_has_pairing_edges_only():
    blp = BlpInstance((1, -2, 3))
    orp = build_orp_hypergraph(blp, (1, 0, 1), (0, 1, 1))
    assert set(orp.full_edges) == set(orp.pairing_edges) == {frozenset({0, 3}), frozenset({1, 4})}


def test_fixed_row_contributes_nothing():
    blp = BlpInstance((1, 1, 1), (Row((1, 1, 0), LE, 1), Row((0, 0, 1), LE, 1)))
    orp = build_orp_hypergraph(blp, (1, 0, 1), (0, 1, 1))
    assert not any(2 in e or 5 in e for e in orp.full_edges)


def test_hypergraph_weights_and_penalty():
    blp = BlpInstance((3, -1, 2), (Row((1, 1, 0), LE, 1),), MAX)
    orp = build_orp_hypergraph(blp, (1, 0, 0), (0, 1, 1))
    assert orp.lam == 2 * (3 + 1 + 2) + 1
    w = orp.hypergraph.weights
    assert w[0] == 3 + orp.lam and w[3] == orp.lam


def test_coloring_rejected_when_class_holds_an_edge():
    with pytest.raises(ValueError):
        WeightedHypergraph((1, 2), {1: 1, 2: 1}, (frozenset({1, 2}),), (frozenset({1, 2}), frozenset()))


@given(st.integers(1, 7), st.integers(0, 5), st.sampled_from([2, 3]), st.integers(0, 2**31 - 1))
def test_hypergraph_soundness(n, m, width, seed):
    """x is a feasible offspring iff S(x) is independent with one vertex per pair."""
    blp, p1, p2 = random_two_var_blp(np.random.default_rng(seed), n, m, width)
    orp = build_orp_hypergraph(blp, p1, p2)
    full = WeightedHypergraph(
        tuple(v for j in orp.free for v in (j, n + j)),
        {v: 0 for j in orp.free for v in (j, n + j)},
        orp.full_edges,
    )
    D = orp.free
    for bits in product((0, 1), repeat=len(D)):
        x = list(p1)
        for j, b in zip(D, bits):
            x[j] = b
        S = orp.vertex_set(x)
        assert len(S) == orp.d
        assert full.is_independent(S) == blp.is_feasible(x)
        reduced_ok = orp.hypergraph.is_independent(S) and not (S & orp.removed)
        assert reduced_ok == blp.is_feasible(x)
        assert orp.assignment(S) == tuple(x)
    for e in orp.hypergraph.edges:
        assert not e <= orp.hypergraph.coloring[0] and not e <= orp.hypergraph.coloring[1]


# -- two-variable and exact solvers ----------------------------------------------

def test_two_var_vertex_cover_on_path():
    rows = tuple(Row(tuple(int(k in (i, i + 1)) for k in range(4)), GE, 1) for i in range(3))
    blp = BlpInstance((2, 1, 3, 1), rows, MIN)
    p1, p2 = (1, 0, 1, 0), (0, 1, 0, 1)
    x = solve_two_var_orp(blp, p1, p2)
    assert blp.objective(x) == blp_oracle(blp, p1, p2) == 2
    assert solve_two_var_orp(blp, p1, p1) == p1


def test_two_var_rejects_wide_rows():
    blp = BlpInstance((1, 1, 1), (Row((1, 1, 1), LE, 1),))
    with pytest.raises(WrongSolverError):
        solve_two_var_orp(blp, (1, 0, 0), (0, 1, 0))


def test_two_var_random_signed_rows_match_oracle():
    rng = np.random.default_rng(2024)
    for _ in range(50):
        blp, p1, p2 = random_two_var_blp(rng, int(rng.integers(1, 11)), int(rng.integers(0, 12)))
        x = solve_two_var_orp(blp, p1, p2)
        assert blp.is_feasible(x) and validate_gene_transmission(x, p1, p2)
        assert blp.objective(x) == blp_oracle(blp, p1, p2)
        assert solve_blp_orp_exact(blp, p1, p2) == x or (
            blp.objective(solve_blp_orp_exact(blp, p1, p2)) == blp.objective(x)
        )


def test_exact_three_variable_rows_match_oracle():
    rng = np.random.default_rng(99)
    for _ in range(60):
        n = int(rng.integers(3, 15))
        blp, p1, p2 = random_two_var_blp(rng, n, int(rng.integers(1, 10)), width=3)
        x = solve_blp_orp_exact(blp, p1, p2)
        assert blp.is_feasible(x) and validate_gene_transmission(x, p1, p2)
        assert blp.objective(x) == blp_oracle(blp, p1, p2)
        assert solve_blp_orp(blp, p1, p2) is not None


def test_exact_guard_and_identical_parents():
    blp = BlpInstance((1, 2, 3), (Row((1, 1, 1), LE, 2),))
    assert solve_blp_orp_exact(blp, (1, 1, 0), (1, 1, 0)) == (1, 1, 0)
    with pytest.raises(GuardExceededError):
        solve_blp_orp_exact(blp, (1, 1, 0), (0, 0, 1), max_free=2)


# -- set systems ------------------------------------------------------------------

def test_packing_examples():
    disjoint = SetSystemInstance(((1, 1, 0, 0), (0, 0, 1, 1)), (1, 2, 3, 4), PACKING)
    x = set_packing_orp(disjoint, (0, 1, 0, 0), (0, 0, 0, 1))
    assert x == (0, 1, 0, 1)
    assert set_packing_orp(disjoint, (1, 0, 1, 0), (1, 0, 1, 0)) == (1, 0, 1, 0)
    with pytest.raises(WrongSolverError):
        set_packing_orp(SetSystemInstance(((1,),), (1,), COVERING), (1,), (1,))
    with pytest.raises(InfeasibleParentError):
        set_packing_orp(disjoint, (1, 1, 0, 0), (0, 0, 0, 1))


def test_partition_examples():
    eye = SetSystemInstance(((1, 0, 0), (0, 1, 0), (0, 0, 1)), (4, 5, 6), PARTITION)
    assert set_partition_orp(eye, (1, 1, 1), (1, 1, 1)) == (1, 1, 1)
    with pytest.raises(InfeasibleParentError):
        set_partition_orp(eye, (1, 1, 0), (1, 1, 1))


def test_packing_and_partition_match_oracle():
    rng = np.random.default_rng(5)
    for _ in range(100):
        inst, p1, p2 = random_packing(rng, int(rng.integers(1, 9)), int(rng.integers(1, 9)))
        x = set_packing_orp(inst, p1, p2)
        assert inst.objective(x) == oracle(inst.is_feasible, inst.objective, p1, p2, MAX)
        inst, p1, p2 = random_partition(rng, int(rng.integers(1, 7)), 10)
        x = set_partition_orp(inst, p1, p2)
        assert inst.is_feasible(x) and validate_gene_transmission(x, p1, p2)
        assert inst.objective(x) == oracle(inst.is_feasible, inst.objective, p1, p2, MIN)


def test_partition_penalty_dominance():
    rng = np.random.default_rng(8)
    for _ in range(40):
        inst, _, _ = random_partition(rng, int(rng.integers(1, 6)), 8)
        packing, lam = partition_as_packing(inst)
        assert lam == partition_penalty(inst) > 2 * sum(abs(c) for c in inst.c)
        m = inst.m
        for x in product((0, 1), repeat=inst.n):
            if not packing.is_feasible(x):
                continue
            g = packing.objective(x)
            k = sum(1 for s in inst.row_sums(x) if s != 1)
            assert lam * (m - k) - lam / 2 < g < lam * (m - k) + lam / 2
            if k == 0:
                assert g > lam * (m - Fraction(1, 2))
                assert g == lam * m - inst.objective(x)


def test_splp_examples_and_round_trip():
    single = SplpInstance((3,), ((1, 2),))
    sol = ((1, 1),), (1,)
    assert splp_orp(single, *sol, *sol) == sol
    rng = np.random.default_rng(13)
    for _ in range(60):
        K, L = int(rng.integers(1, 4)), int(rng.integers(1, 4))
        inst, s1, s2 = random_splp(rng, K, L)
        packing, lam, const = splp_as_packing(inst)
        assert lam == splp_penalty(inst)
        for sol in (s1, s2):
            beta = tuple(b for row in sol[0] for b in row) + tuple(1 - b for b in sol[1])
            assert packing.is_feasible(beta)
            assert packing.objective(beta) + const == -inst.objective(sol)
            assert inst.decode(inst.encode(sol)) == sol
        Y, u = splp_orp(inst, *s1, *s2)
        assert inst.is_feasible((Y, u))
        b1, b2 = inst.encode(s1), inst.encode(s2)
        assert validate_gene_transmission(inst.encode((Y, u)), b1, b2)
        want = oracle(lambda z: inst.is_feasible(inst.decode(z)), lambda z: inst.objective(inst.decode(z)),
                      b1, b2, MIN)
        assert inst.objective((Y, u)) == want


def test_splp_rejects_infeasible_parent():
    inst = SplpInstance((1, 1), ((1, 1), (1, 1)))
    good = ((1, 1), (0, 0)), (1, 0)
    unopened = ((1, 1), (0, 0)), (0, 1)
    with pytest.raises(InfeasibleParentError):
        splp_orp(inst, *good, *unopened)


# -- hard covering instances ----------------------------------------------------------

def cover_optimum(cover):
    best = None
    for x in product((0, 1), repeat=cover.n):
        if cover.is_feasible(x):
            v = cover.objective(x)
            best = v if best is None or v < best else best
    return best


def test_hard_setcover_examples():
    eye = SetSystemInstance(((1, 0, 0), (0, 1, 0), (0, 0, 1)), (1, 1, 1), COVERING)
    orp = gen_hard_setcover_orp(eye)
    assert orp.instance.n == 6 and orp.d == 6
    x = solve_blp_orp_exact(orp.instance, orp.p1, orp.p2)
    assert orp.instance.objective(x) == 3
    row = SetSystemInstance(((1, 1, 1),), (5, 2, 7), COVERING)
    orp = gen_hard_setcover_orp(row)
    assert orp.instance.objective(solve_blp_orp_exact(orp.instance, orp.p1, orp.p2)) == 2
    one = SetSystemInstance(((1,),), (4,), COVERING)
    orp = gen_hard_setcover_orp(one)
    assert orp.instance.objective(solve_blp_orp_exact(orp.instance, orp.p1, orp.p2)) == 4
    with pytest.raises(ValueError):
        gen_hard_setcover_orp(SetSystemInstance(((0, 0),), (1, 1), COVERING))


def test_hard_setcover_equals_covering_optimum():
    rng = np.random.default_rng(21)
    for _ in range(25):
        cover = random_cover(rng, int(rng.integers(1, 6)), int(rng.integers(1, 7)))
        orp = gen_hard_setcover_orp(cover)
        x = solve_blp_orp_exact(orp.instance, orp.p1, orp.p2)
        assert orp.instance.objective(x) == cover_optimum(cover)


@given(st.integers(1, 8), st.integers(1, 8), st.integers(0, 2**31 - 1))
def test_packing_never_worse_than_parents(m, n, seed):
    inst, p1, p2 = random_packing(np.random.default_rng(seed), m, n)
    x = set_packing_orp(inst, p1, p2)
    for p in (p1, p2):
        assert not better(inst.objective(p), inst.objective(x), MAX)
