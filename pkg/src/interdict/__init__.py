"""Exact solvers for covering interdiction on networks."""
from .btw_reic import BtwDpTable, join_merge, solve_btw_reic
from .errors import InterdictError
from .formats import read_instance, read_treedec, write_instance, write_treedec
from .graph import (
    Graph, Instance, Kind, Solution, count_customer_joints, evaluate_strategy, validate_instance,
)
from .ilp_export import export_reic_lp, import_solution
from .instgen import GenConfig, gen_leaf_facility_cluster, gen_prufer_tree, gen_walker_grid, generate
from .knapsack import NEG_INF, solve_cmckp, solve_mckp
from .oracle import brute_force, brute_force_reic, brute_force_rfic
from .reductions import BipartiteInstance, clique_gadget, solve_ssbve_tree, to_bip_rfic
from .tree_reic import solve_tree_reic
from .tree_rfic import solve_tree_rfic
from .treewidth import (
    NiceDecomposition, TreeDecomposition, grid_decomposition, heuristic_decomposition,
    to_extended_nice, tree_decomposition_of_tree, validate_decomposition, validate_nice,
)

__version__ = "0.1.0"
