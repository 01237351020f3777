"""
Job sequences with setup times
==============================

Position i of an offspring takes the job from either parent.  The
positions where the parents disagree fall into blocks; each block has
exactly two consistent assignments, so there are 2^q offspring.  A
reflected Gray code visits them all, updating the setup total with
precomputed contact sums instead of recomputing it.
"""

import numpy as np

from orprec import SetupInstance, build_requisition_graph, gray_code_sweep, precompute_contacts
from orprec.sched_orp import solve_makespan_orp

rng = np.random.default_rng(5)
k = 10
setup = rng.integers(1, 30, size=(k, k))
np.fill_diagonal(setup, 0)
inst = SetupInstance(tuple(map(tuple, setup.tolist())), tuple(int(p) for p in rng.integers(1, 10, k)))

p1 = tuple(range(k))
p2 = (1, 0, 2, 4, 5, 3, 6, 8, 7, 9)
g = build_requisition_graph(p1, p2)
print(f"special positions: {len(g.special)}, blocks: {g.q}")

tables = precompute_contacts(g, inst)
for delta, rho in gray_code_sweep(tables, g.q):
    print("  ", delta, rho, inst.setup_cost(g.assignment(delta)))

best = solve_makespan_orp(inst, p1, p2)
print("best sequence:", [j + 1 for j in best], "setup", inst.setup_cost(best), "makespan", inst.makespan(best))
