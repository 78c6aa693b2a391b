"""Quantum divide and conquer for maximum independent set."""

from ._core import (
    Graph,
    bisect,
    boppana_halldorsson,
    brute_force_mis,
    classical_divide_and_conquer,
    classify_nodes,
    complete_graph,
    cycle_graph,
    erdos_renyi,
    gamma_coeff,
    is_independent_set,
    path_graph,
    qdc_solve,
    random_regular,
    read_graph,
    select_hot_nodes,
    verify_cutting,
    write_graph,
)

__all__ = [
    "Graph",
    "bisect",
    "boppana_halldorsson",
    "brute_force_mis",
    "classical_divide_and_conquer",
    "classify_nodes",
    "complete_graph",
    "cycle_graph",
    "erdos_renyi",
    "gamma_coeff",
    "is_independent_set",
    "path_graph",
    "qdc_solve",
    "random_regular",
    "read_graph",
    "select_hot_nodes",
    "verify_cutting",
    "write_graph",
]
