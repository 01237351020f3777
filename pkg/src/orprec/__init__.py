"""Exact optimal recombination for genetic algorithms.

Given a problem instance and two feasible parent solutions, the solvers in
this package return the best feasible offspring that copies each gene from
one of the parents.
"""

from .blp_orp import (
    SetSystemInstance,
    SplpInstance,
    build_orp_hypergraph,
    gen_hard_setcover_orp,
    set_packing_orp,
    set_partition_orp,
    solve_blp_orp,
    solve_blp_orp_exact,
    solve_two_var_orp,
    splp_orp,
)
from .core import (
    MAX,
    MIN,
    BlpInstance,
    DimensionError,
    FormatError,
    GuardExceededError,
    InfeasibleParentError,
    ObjectiveValue,
    OrpError,
    OrpInstance,
    Row,
    WrongSolverError,
    difference_set,
    evaluate_blp,
    validate_gene_transmission,
)
from .flows import (
    BipartiteGraph,
    FlowNetwork,
    bipartite_max_weight_independent_set,
    bipartite_min_weight_vertex_cover,
    max_flow_min_cut,
)
from .ga import GaConfig, GaResult, run
from .graph_orp import WeightedGraph, clique_orp, independent_set_orp, vertex_cover_orp
from .sched_orp import (
    SetupInstance,
    build_requisition_graph,
    count_feasible,
    exact_good_pair_fraction,
    good_pair_fraction,
    gray_code_sweep,
    precompute_contacts,
    solve_makespan_orp,
)
from .tsp_orp import (
    Tour,
    TspInstance,
    contract_common_general,
    contract_common_symmetric,
    enumerate_hamiltonian_cycles,
    tsp_orp,
)

__version__ = "0.1.0"
