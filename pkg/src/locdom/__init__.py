"""Locating-dominating sets: exact solving, kernelization, instance generators."""

from .errors import (
    CanonicalFormError,
    InapplicableRule,
    InternalVerificationError,
    LocdomError,
    ParseError,
    SizeCapError,
)
from .graph import (
    Graph,
    complement,
    connected_components,
    delete_vertices,
    find_induced_p3,
    graph_from_edges,
    induced_subgraph,
    is_cluster_graph,
    is_connected,
    max_leaf_number_exact,
    parse_graph,
    serialize_graph,
    twin_classes,
)
from .lds import (
    Instance,
    Violation,
    enumerate_minimum_solutions,
    is_locating_dominating,
    lds_number,
    read_solution,
    solve_exact,
    write_solution,
)
from .modulators import (
    Modulator,
    clique_modulator_2approx,
    cluster_modulator_3approx,
    make_modulator,
    read_modulator,
    verify_modulator,
    write_modulator,
)
from .cluster_kernel import (
    CliqueRecord,
    Pattern,
    compute_patterns,
    kernelize_clique,
    kernelize_cluster,
    lift_cluster_solution,
    normalize_nontrivial_solution,
    normalize_trivial_solution,
    rule_nontrivial_pattern,
    rule_trivial_pattern,
    rule_twin_reduce,
)
from .maxleaf_kernel import (
    FiveSectioning,
    HostDecomposition,
    SubdivisionPath,
    check_p2_bound,
    five_sectioning,
    host_decomposition,
    kernelize_maxleaf,
    lift_maxleaf_solution,
    normalize_path_solution,
    rule_long_path,
)
from .report import BoundCheck, SizeReport
from .trace import KernelTrace, trace_from_json, trace_to_json

__version__ = "0.1.0"
