"""
A genetic algorithm with optimal recombination
==============================================

Each crossover returns the best offspring of the two parents.  For
comparison the same algorithm runs with a one-point crossover that
repairs its children greedily.  Several seeds are run for each.
"""

import numpy as np

from orprec import WeightedGraph
from orprec.ga import GaConfig, SubsetProblem, run

rng = np.random.default_rng(2)
n = 150
edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.5]
g = WeightedGraph.from_edges(rng.integers(1, 100, n).tolist(), edges)
problem = SubsetProblem("clique", g)

for crossover in ("orp", "one-point"):
    bests = []
    for seed in range(5):
        cfg = GaConfig(problem, pop_size=20, pc=0.9, pm=0.01, generations=30, seed=seed, crossover=crossover)
        bests.append(int(run(cfg).best_value))
    print(f"{crossover:>9}: best per seed {bests}   mean {np.mean(bests):.1f}")
