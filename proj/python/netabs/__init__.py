"""Systemic performance measures and certified sparse abstractions of
linear consensus networks.

The package is a thin wrapper over the compiled core; see the individual
function docstrings (``help(netabs._core)``) for details.
"""

from ._core import (  # noqa: F401
    AbstractionResult,
    Graph,
    InvalidInput,
    NumericError,
    abstract,
    abstract_localized,
    abstract_parallel,
    abstract_until,
    child_seed,
    complete_graph,
    cycle_graph,
    default_measure_names,
    effective_resistances,
    eigenvalues,
    exp_decay,
    fill_loss_table,
    format_edge_list,
    from_gain_matrix,
    gain_matrix,
    gnm_random,
    h2_error_bound,
    h2_error_exact,
    h2_error_report,
    l0_lower_bound,
    l0_tree_cost,
    l1_optimum,
    lambda2,
    laplacian_pinv,
    loewner_epsilon,
    measure_order,
    measure_table,
    measure_value,
    normalized_index,
    output_error_bound,
    parse_edge_list,
    path_graph,
    proximity,
    read_edge_list,
    relative_error_bound,
    relative_loss,
    report_json,
    sampling_distribution,
    simulate_first_order,
    simulate_pair_error,
    simulate_second_order,
    star_graph,
    superiorize,
    tradeoff_check,
    two_component_cut,
    write_edge_list,
)

__all__ = [
    "AbstractionResult",
    "Graph",
    "InvalidInput",
    "NumericError",
    "abstract",
    "abstract_localized",
    "abstract_parallel",
    "abstract_until",
    "child_seed",
    "complete_graph",
    "cycle_graph",
    "default_measure_names",
    "effective_resistances",
    "eigenvalues",
    "exp_decay",
    "fill_loss_table",
    "format_edge_list",
    "from_gain_matrix",
    "gain_matrix",
    "gnm_random",
    "h2_error_bound",
    "h2_error_exact",
    "h2_error_report",
    "l0_lower_bound",
    "l0_tree_cost",
    "l1_optimum",
    "lambda2",
    "laplacian_pinv",
    "loewner_epsilon",
    "measure_order",
    "measure_table",
    "measure_value",
    "normalized_index",
    "output_error_bound",
    "parse_edge_list",
    "path_graph",
    "proximity",
    "read_edge_list",
    "relative_error_bound",
    "relative_loss",
    "report_json",
    "sampling_distribution",
    "simulate_first_order",
    "simulate_pair_error",
    "simulate_second_order",
    "star_graph",
    "superiorize",
    "tradeoff_check",
    "two_component_cut",
    "write_edge_list",
]

__version__ = "0.1.0"
