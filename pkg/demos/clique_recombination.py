"""
Optimal recombination of two cliques
====================================

Two parent cliques fix every vertex they agree on.  The remaining
vertices split into two sides, and the best offspring is an independent
set in the bipartite graph of missing edges, found by one minimum cut.
"""

import numpy as np

from orprec import WeightedGraph, clique_orp
from orprec.oracle import brute_force_binary_orp

# K4 with the edge {3, 4} removed (0-based: {2, 3})
g = WeightedGraph.from_edges([1, 2, 3, 4], [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)])
p1 = (1, 1, 1, 0)
p2 = (0, 0, 0, 1)
child = clique_orp(g, p1, p2)
print("parents :", p1, g.weight(p1), "|", p2, g.weight(p2))
print("child   :", child, g.weight(child))

# the same answer by trying every gene-transmitting vector
report = brute_force_binary_orp(lambda x: (g.is_clique(x), g.weight(x)), p1, p2)
print("oracle  :", report.witness, report.value, f"({report.examined} feasible candidates)")

# a larger random case
from orprec.cli import random_clique_orp

g, p1, p2 = random_clique_orp(400, 120, np.random.default_rng(3), density=0.6)
child = clique_orp(g, p1, p2)
print(f"\nn=400, |D|={sum(a != b for a, b in zip(p1, p2))}")
print("parent weights:", g.weight(p1), g.weight(p2), " child weight:", g.weight(child))
