"""Exact cycle values of weighted digraphs, fast on low-treewidth inputs.

Three quantities per graph (or per start node): the minimum cycle mean, the
minimum cycle ratio wt/wt', and the minimum initial credit (energy) needed
to keep some infinite walk's prefix sums nonnegative. The fast paths run
over balanced tree decompositions; :mod:`graphvalues.oracles` holds small
brute-force references used by the test suite and the selftest command.
"""
from .energy import (
    AugmentedGraph,
    decide_initial_credit,
    decision_energy,
    detect_nonpositive_cycle,
    energy_values,
    highest_energy_node,
    nonpositive_values,
    zero_energy_nodes,
)
from .energy_tw import (
    TwStats,
    energy_values_tw,
    extend_decomposition_with_z,
    lift,
    nonpositive_values_tw,
    sssp_to_z_treedec,
    triple_min,
    triple_plus,
    zero_energy_nodes_tw,
)
from .graph import (
    INF,
    Edge,
    InvariantError,
    ParseError,
    WeightedDigraph,
    induced_subgraph,
    load_graph,
    parse_graph,
    propagate_component_values,
    tarjan_scc,
    to_dimacs,
    to_edgelist,
)
from .mincycle import MinCycleResult, has_negative_cycle, min_cycle
from .ratio import (
    SearchStats,
    approx_mean,
    decide_mean_eq,
    decide_mean_geq,
    decide_ratio_eq,
    decide_ratio_geq,
    mean_value,
    mean_values_all_nodes,
    ratio_value,
    ratio_values_all_nodes,
    simplest_between,
)
from .treedec import (
    TreeDecomposition,
    Violation,
    balance_and_binarize,
    build_decomposition,
    validate,
)

__version__ = "0.1.0"

__all__ = [
    "AugmentedGraph",
    "Edge",
    "INF",
    "InvariantError",
    "MinCycleResult",
    "ParseError",
    "SearchStats",
    "TreeDecomposition",
    "TwStats",
    "Violation",
    "WeightedDigraph",
    "approx_mean",
    "balance_and_binarize",
    "build_decomposition",
    "decide_initial_credit",
    "decide_mean_eq",
    "decide_mean_geq",
    "decide_ratio_eq",
    "decide_ratio_geq",
    "decision_energy",
    "detect_nonpositive_cycle",
    "energy_values",
    "energy_values_tw",
    "extend_decomposition_with_z",
    "has_negative_cycle",
    "highest_energy_node",
    "induced_subgraph",
    "lift",
    "load_graph",
    "mean_value",
    "mean_values_all_nodes",
    "min_cycle",
    "nonpositive_values",
    "nonpositive_values_tw",
    "parse_graph",
    "propagate_component_values",
    "ratio_value",
    "ratio_values_all_nodes",
    "simplest_between",
    "sssp_to_z_treedec",
    "tarjan_scc",
    "to_dimacs",
    "to_edgelist",
    "triple_min",
    "triple_plus",
    "validate",
    "zero_energy_nodes",
    "zero_energy_nodes_tw",
]
