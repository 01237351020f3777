from collections import Counter
from fractions import Fraction

import numpy as np
import pytest
from scipy.stats import chisquare

from _gen import random_graph, random_packing, random_setup, random_tsp
from orprec.core import MAX, MIN, InfeasibleParentError
from orprec.ga import (
    GaConfig,
    Population,
    SequenceProblem,
    SubsetProblem,
    TourProblem,
    fitness,
    mutate,
    one_point_crossover,
    orp_crossover,
    run,
    select,
)
from orprec.graph_orp import WeightedGraph


@pytest.fixture
def k4():
    return SubsetProblem(
        "clique", WeightedGraph.from_edges((1, 2, 3, 4), [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)])
    )


def test_config_validation(k4):
    with pytest.raises(ValueError):
        GaConfig(k4, pop_size=5)
    with pytest.raises(ValueError):
        GaConfig(k4, pc=1.5)
    with pytest.raises(ValueError):
        GaConfig(k4, pm=-0.1)
    with pytest.raises(ValueError):
        GaConfig(k4, crossover="uniform")


def test_fitness_transform():
    vals = [Fraction(1), Fraction(3), Fraction(2)]
    assert list(fitness(vals, MIN)) == [3.0, 1.0, 2.0]
    assert list(fitness(vals, MAX)) == [1.0, 3.0, 2.0]


def test_select_uniform_when_fitness_equal():
    pop = Population(list(range(5)), [Fraction(4)] * 5)
    rng = np.random.default_rng(0)
    counts = Counter(select(pop, MAX, rng) for _ in range(10_000))
    assert chisquare([counts[i] for i in range(5)]).pvalue > 0.001


def test_select_dominant_member_share():
    pop = Population(["a", "b"], [Fraction(9), Fraction(1)])
    rng = np.random.default_rng(1)
    share = sum(select(pop, MAX, rng) == "a" for _ in range(10_000)) / 10_000
    assert share == pytest.approx(0.9, abs=0.02)
    single = Population(["only"], [Fraction(0)])
    assert select(single, MAX, rng) == "only"


def test_crossover_rules(k4):
    rng = np.random.default_rng(0)
    p1, p2 = (1, 0, 1, 0), (0, 1, 0, 1)
    assert orp_crossover(k4, p1, p2, 0.0, rng) == (p1, p2)
    assert orp_crossover(k4, p1, p1, 1.0, rng) == (p1, p1)
    c1, c2 = orp_crossover(k4, p1, p2, 1.0, rng)
    assert c1 == (1, 1, 0, 1) and c2 == p2  # p2 weighs 6 against 4


def test_one_point_crossover_repairs(k4):
    rng = np.random.default_rng(4)
    for _ in range(50):
        a, b = k4.random_solution(rng), k4.random_solution(rng)
        for child in one_point_crossover(k4, a, b, 1.0, rng):
            assert k4.is_feasible(child)


@pytest.mark.parametrize("kind", ["clique", "is", "vc"])
def test_subset_mutation_keeps_feasibility(kind):
    rng = np.random.default_rng(5)
    for trial in range(1000):
        if trial % 50 == 0:
            prob = SubsetProblem(kind, random_graph(rng, int(rng.integers(2, 12))))
            x = prob.random_solution(rng)
        x = prob.mutate(x, 0.3, rng)
        assert prob.is_feasible(x)


def test_packing_mutation_keeps_feasibility():
    rng = np.random.default_rng(6)
    for trial in range(1000):
        if trial % 50 == 0:
            inst, _, _ = random_packing(rng, 6, 8)
            prob = SubsetProblem("packing", inst)
            x = prob.random_solution(rng)
        x = prob.mutate(x, 0.3, rng)
        assert prob.is_feasible(x)


def test_permutation_mutations():
    rng = np.random.default_rng(7)
    seq = SequenceProblem(random_setup(rng, 9))
    tour = TourProblem(random_tsp(rng, 8, True)[0])
    x, t = seq.random_solution(rng), tour.random_solution(rng)
    for _ in range(200):
        x, t = seq.mutate(x, 0.2, rng), tour.mutate(t, 0.2, rng)
        assert seq.is_feasible(x) and tour.is_feasible(t)
    assert mutate(seq, x, 0.0, rng) == x


def test_budget_zero_and_history(k4):
    res = run(GaConfig(k4, generations=0, seed=3))
    assert len(res.history) == 1
    res = run(GaConfig(k4, generations=7, seed=3))
    assert len(res.history) == 8
    assert res.history_csv().splitlines()[0] == "generation,best,mean"


def test_smoke_reaches_oracle_optimum(k4):
    res = run(GaConfig(k4, pop_size=10, pc=1.0, pm=0.05, generations=50, seed=1))
    assert res.best_value == 7 and res.best == (1, 1, 0, 1)


def test_deterministic_given_seed():
    rng = np.random.default_rng(9)
    prob = SubsetProblem("is", random_graph(rng, 14))
    a = run(GaConfig(prob, generations=15, seed=42))
    b = run(GaConfig(prob, generations=15, seed=42))
    assert a.history == b.history and a.best == b.best


@pytest.mark.parametrize("seed", range(4))
def test_monotone_best_without_mutation(seed):
    rng = np.random.default_rng(seed)
    problems = [
        SubsetProblem("clique", random_graph(rng, 12)),
        SubsetProblem("vc", random_graph(rng, 12)),
        SequenceProblem(random_setup(rng, 8)),
        TourProblem(random_tsp(rng, 8, False)[0]),
    ]
    for prob in problems:
        res = run(GaConfig(prob, pc=1.0, pm=0.0, generations=12, seed=seed))
        bests = [b for _, b, _ in res.history]
        for prev, cur in zip(bests, bests[1:]):
            assert cur >= prev if prob.sense == MAX else cur <= prev


def test_every_member_feasible_each_generation():
    rng = np.random.default_rng(10)
    prob = SubsetProblem("vc", random_graph(rng, 10))
    seen = []

    class Spy(SubsetProblem):
        def objective(self, x):
            seen.append(x)
            return super().objective(x)

    spy = Spy("vc", prob.data)
    run(GaConfig(spy, generations=10, pm=0.2, seed=2))
    assert seen and all(prob.is_feasible(x) for x in seen)


def test_infeasible_initial_population(k4):
    with pytest.raises(InfeasibleParentError):
        run(GaConfig(k4, initial=[(0, 0, 1, 1)]))
