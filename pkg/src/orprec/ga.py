"""Generational genetic algorithm whose crossover is an exact recombination.

Selection is fitness proportional, crossover returns the optimal offspring
of the two parents (plus the better parent as the second child), and
mutation is an encoding-specific move that keeps solutions feasible.
Every per-pair random stream is derived from the master seed, so a run is
reproducible regardless of evaluation order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Protocol, Sequence

import numpy as np

from .blp_orp import SetSystemInstance, set_packing_orp
from .core import MAX, MIN, InfeasibleParentError, better
from .graph_orp import WeightedGraph, clique_orp, independent_set_orp, vertex_cover_orp
from .sched_orp import SetupInstance, solve_makespan_orp
from .tsp_orp import Tour, TspInstance, tsp_orp


class Problem(Protocol):
    sense: str

    def objective(self, x: Any) -> Fraction: ...

    def is_feasible(self, x: Any) -> bool: ...

    def random_solution(self, rng: np.random.Generator) -> Any: ...

    def recombine(self, p1: Any, p2: Any) -> Any: ...

    def mutate(self, x: Any, pm: float, rng: np.random.Generator) -> Any: ...


class SubsetProblem:
    """Clique, independent set, vertex cover or set packing over indicator vectors."""

    def __init__(self, kind: str, data: WeightedGraph | SetSystemInstance) -> None:
        self.kind = kind
        self.data = data
        if kind == "packing":
            self.n = data.n
            self.weights = data.c
            self.conflicts = data.conflict_sets()
        else:
            self.n = data.n
            self.weights = data.weights
            adj = data.adj
            if kind == "clique":
                everyone = frozenset(range(self.n))
                self.conflicts = [everyone - adj[v] - {v} for v in range(self.n)]
            else:
                self.conflicts = list(adj)
        self.sense = MIN if kind == "vc" else MAX

    def objective(self, x: Sequence[int]) -> Fraction:
        return sum((w for w, b in zip(self.weights, x) if b), Fraction(0))

    def is_feasible(self, x: Sequence[int]) -> bool:
        if self.kind == "packing":
            return self.data.is_feasible(x)
        if self.kind == "clique":
            return self.data.is_clique(x)
        if self.kind == "is":
            return self.data.is_independent(x)
        return self.data.is_vertex_cover(x)

    def _greedy(self, order) -> set[int]:
        chosen: set[int] = set()
        for v in order:
            if not (self.conflicts[v] & chosen):
                chosen.add(v)
        return chosen

    def _vector(self, members) -> tuple[int, ...]:
        return tuple(1 if v in members else 0 for v in range(self.n))

    def random_solution(self, rng: np.random.Generator) -> tuple[int, ...]:
        # A maximal conflict-free set; for covers its complement.
        chosen = self._greedy(int(v) for v in rng.permutation(self.n))
        if self.kind == "vc":
            return self._vector(set(range(self.n)) - chosen)
        return self._vector(chosen)

    def recombine(self, p1, p2):
        if self.kind == "packing":
            return set_packing_orp(self.data, p1, p2)
        solver = {"clique": clique_orp, "is": independent_set_orp, "vc": vertex_cover_orp}[self.kind]
        return solver(self.data, p1, p2)

    def mutate(self, x, pm: float, rng: np.random.Generator):
        flips = rng.random(self.n) < pm
        if not flips.any():
            return tuple(x)
        return self.repair(x, [b ^ int(f) for b, f in zip(x, flips)], rng)

    def repair(self, x, y, rng: np.random.Generator) -> tuple[int, ...]:
        """Make ``y`` feasible, preferring the genes where it differs from ``x``."""
        y = list(y)
        if self.kind == "vc":
            # add the lighter endpoint of every uncovered edge
            for u, v in self.data.edges:
                if not (y[u] or y[v]):
                    y[u if self.weights[u] <= self.weights[v] else v] = 1
            return tuple(y)
        added = [v for v in rng.permutation(self.n) if y[v] and not x[v]]
        kept = [v for v in rng.permutation(self.n) if y[v] and x[v]]
        return self._vector(self._greedy(added + kept))


class TourProblem:
    def __init__(self, inst: TspInstance, workers: int = 1) -> None:
        self.inst = inst
        self.workers = workers
        self.sense = MIN

    def objective(self, t: Tour) -> Fraction:
        return self.inst.length(t)

    def is_feasible(self, t) -> bool:
        return isinstance(t, Tour) and t.n == self.inst.n

    def random_solution(self, rng):
        return Tour.from_sequence(rng.permutation(self.inst.n))

    def recombine(self, p1, p2):
        return tsp_orp(self.inst, p1, p2, self.workers)

    def mutate(self, t: Tour, pm: float, rng):
        moves = rng.binomial(self.inst.n, pm)
        seq = list(t.sequence())
        for _ in range(moves):
            i, j = sorted(int(v) for v in rng.choice(self.inst.n, size=2, replace=False))
            seq[i:j + 1] = seq[i:j + 1][::-1]
        return Tour.from_sequence(seq) if moves else t


class SequenceProblem:
    def __init__(self, inst: SetupInstance) -> None:
        self.inst = inst
        self.sense = MIN

    def objective(self, perm) -> Fraction:
        return self.inst.setup_cost(perm)

    def is_feasible(self, perm) -> bool:
        return self.inst.is_feasible(perm)

    def random_solution(self, rng):
        return tuple(int(v) for v in rng.permutation(self.inst.k))

    def recombine(self, p1, p2):
        return solve_makespan_orp(self.inst, p1, p2)

    def mutate(self, perm, pm: float, rng):
        perm = list(perm)
        k = len(perm)
        for i in range(k):
            if rng.random() < pm:
                j = int(rng.integers(k))
                perm[i], perm[j] = perm[j], perm[i]
        return tuple(perm)


@dataclass
class GaConfig:
    problem: Problem
    pop_size: int = 10
    pc: float = 1.0
    pm: float = 0.05
    generations: int = 50
    seed: int = 0
    elitism: bool = True
    crossover: str = "orp"
    initial: list = field(default_factory=list)

    def __post_init__(self) -> None:
        if self.pop_size < 2 or self.pop_size % 2:
            raise ValueError("population size must be even and at least 2")
        if not (0 <= self.pc <= 1 and 0 <= self.pm <= 1):
            raise ValueError("probabilities must lie in [0, 1]")
        if self.crossover not in ("orp", "one-point"):
            raise ValueError(f"unknown crossover {self.crossover!r}")
        if self.generations < 0:
            raise ValueError("generation budget must be nonnegative")


@dataclass
class Population:
    members: list
    values: list[Fraction]


@dataclass
class GaResult:
    best: Any
    best_value: Fraction
    history: list[tuple[int, Fraction, Fraction]]

    def history_csv(self) -> str:
        lines = ["generation,best,mean"]
        for t, b, m in self.history:
            lines.append(f"{t},{_num(b)},{_num(m)}")
        return "\n".join(lines) + "\n"


def _num(v: Fraction) -> str:
    return str(v.numerator) if v.denominator == 1 else repr(float(v))


def fitness(values: Sequence[Fraction], sense: str) -> np.ndarray:
    vals = np.array([float(v) for v in values])
    if sense == MIN:
        return vals.max() - vals + 1.0
    if vals.min() < 0:
        return vals - vals.min() + 1.0
    return vals


def select(pop: Population, sense: str, rng: np.random.Generator) -> Any:
    """Draw one member with probability proportional to its fitness."""
    f = fitness(pop.values, sense)
    total = f.sum()
    if total <= 0:
        return pop.members[int(rng.integers(len(pop.members)))]
    return pop.members[int(rng.choice(len(f), p=f / total))]


def orp_crossover(problem: Problem, p1, p2, pc: float, rng: np.random.Generator):
    """With probability ``pc`` return (optimal offspring, better parent), else the parents."""
    if rng.random() >= pc:
        return p1, p2
    child = problem.recombine(p1, p2)
    v1, v2 = problem.objective(p1), problem.objective(p2)
    return child, (p2 if better(v2, v1, problem.sense) else p1)


def one_point_crossover(problem: SubsetProblem, p1, p2, pc: float, rng: np.random.Generator):
    """Classic one-point crossover on indicator vectors, each child repaired to feasibility.

    Baseline for comparison runs only.
    """
    n = len(p1)
    if n < 2 or rng.random() >= pc:
        return p1, p2
    j = int(rng.integers(1, n))
    c1 = tuple(p1[:j]) + tuple(p2[j:])
    c2 = tuple(p2[:j]) + tuple(p1[j:])
    return problem.repair(p1, c1, rng), problem.repair(p2, c2, rng)


def mutate(problem: Problem, x, pm: float, rng: np.random.Generator):
    if pm == 0:
        return x
    return problem.mutate(x, pm, rng)


def _evaluate(problem: Problem, members: list) -> Population:
    return Population(members, [problem.objective(x) for x in members])


def _best_index(pop: Population, sense: str) -> int:
    best = 0
    for i, v in enumerate(pop.values):
        if better(v, pop.values[best], sense):
            best = i
    return best


def run(cfg: GaConfig) -> GaResult:
    problem = cfg.problem
    cross = orp_crossover if cfg.crossover == "orp" else one_point_crossover
    rng = np.random.default_rng(cfg.seed)
    members = list(cfg.initial[: cfg.pop_size])
    members += [problem.random_solution(rng) for _ in range(cfg.pop_size - len(members))]
    for x in members:
        if not problem.is_feasible(x):
            raise InfeasibleParentError("initial population contains an infeasible solution")
    pop = _evaluate(problem, members)

    def record(t: int) -> None:
        b = pop.values[_best_index(pop, problem.sense)]
        history.append((t, b, sum(pop.values, Fraction(0)) / len(pop.values)))

    history: list = []
    record(0)
    i = _best_index(pop, problem.sense)
    best, best_value = pop.members[i], pop.values[i]
    for t in range(1, cfg.generations + 1):
        children = []
        for pair in range(cfg.pop_size // 2):
            a, b = select(pop, problem.sense, rng), select(pop, problem.sense, rng)
            pair_rng = np.random.default_rng([cfg.seed, t, pair])
            c1, c2 = cross(problem, a, b, cfg.pc, pair_rng)
            children += [mutate(problem, c1, cfg.pm, pair_rng), mutate(problem, c2, cfg.pm, pair_rng)]
        elder = pop.members[_best_index(pop, problem.sense)]
        pop = _evaluate(problem, children)
        if cfg.elitism:
            elder_value = problem.objective(elder)
            j = _best_index(pop, problem.sense)
            if better(elder_value, pop.values[j], problem.sense):
                worst = min(range(len(pop.values)), key=lambda k: (
                    pop.values[k] if problem.sense == MAX else -pop.values[k]))
                pop.members[worst], pop.values[worst] = elder, elder_value
        i = _best_index(pop, problem.sense)
        if better(pop.values[i], best_value, problem.sense):
            best, best_value = pop.members[i], pop.values[i]
        record(t)
    return GaResult(best, best_value, history)
