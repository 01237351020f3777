"""
Boolean linear programs and the recombination hypergraph
=========================================================

Every combination of free variables that breaks a constraint becomes a
hyperedge.  Rows with at most two variables give a graph, and the
recombination problem turns into a bipartite vertex cover.  Wider rows
stay hard: doubling the columns of a set cover makes the recombination
problem as hard as the cover itself.
"""

from orprec import BlpInstance, Row, build_orp_hypergraph, evaluate_blp, solve_two_var_orp
from orprec.blp_orp import COVERING, SetSystemInstance, gen_hard_setcover_orp, solve_blp_orp_exact

# max x1 + 2 x2 + 3 x3  s.t.  x1 + x2 <= 1,  x2 + x3 <= 1
blp = BlpInstance((1, 2, 3), (Row((1, 1, 0), "le", 1), Row((0, 1, 1), "le", 1)), "max")
p1, p2 = (1, 0, 1), (0, 1, 0)
h = build_orp_hypergraph(blp, p1, p2)
print("hyperedges (vertex j means x_j = 1, n + j means x_j = 0):")
for e in h.hypergraph.edges:
    print("   ", sorted(e))
x = solve_two_var_orp(blp, p1, p2)
print("offspring:", x, "value", evaluate_blp(blp, x)[1].value)

# identity cover on three elements, columns doubled
cover = SetSystemInstance(((1, 0, 0), (0, 1, 0), (0, 0, 1)), (1, 1, 1), COVERING)
orp = gen_hard_setcover_orp(cover)
print("\ndoubled matrix:")
for row in orp.instance.rows:
    print("   ", [int(a) for a in row.coeffs])
print("parents:", orp.p1, orp.p2)
best = solve_blp_orp_exact(orp.instance, orp.p1, orp.p2)
print("best offspring:", best, "cost", evaluate_blp(orp.instance, best)[1].value)
