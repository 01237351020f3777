"""
Recombining two tours
=====================

Paths shared by both parents are contracted to single vertices, which
shrinks the search to the genuinely different part of the tours.  The
best offspring is then the shortest Hamiltonian cycle of the small
graph that keeps every forced edge.
"""

import numpy as np

from orprec import Tour, TspInstance, contract_common_symmetric, tsp_orp
from orprec.oracle import brute_force_tour_orp

rng = np.random.default_rng(11)
n = 9
pts = rng.random((n, 2))
dist = np.rint(100 * np.linalg.norm(pts[:, None] - pts[None], axis=-1)).astype(int)
inst = TspInstance(tuple(map(tuple, dist.tolist())), symmetric=True)

t1 = Tour.from_sequence(range(n))
t2 = Tour.from_sequence([0, 1, 2, 6, 5, 4, 3, 7, 8])
print("parent lengths:", inst.length(t1), inst.length(t2))

g = contract_common_symmetric(inst, t1, t2)
print(f"contracted graph: {g.ham_size} vertices, {len(g.ham_edges)} edges, {len(g.forced)} forced")

child = tsp_orp(inst, t1, t2)
print("offspring:", [v + 1 for v in child.sequence()], "length", inst.length(child))
print("oracle   :", brute_force_tour_orp(inst, t1, t2).value)
