"""Desk-scale machinery for monochromatic tight paths in 2-coloured
3-uniform hypergraphs: expander hosts, (2,3)-graph traversal, connector
gadget detection, and the two-branch extraction pipeline."""

from .altpath import AltPathResult, find_alternating_path, validate_alternating_path
from .connectors import (
    ClusterFamily,
    Connector,
    ConnectorScope,
    build_auxiliary_f,
    find_c22,
    find_c212,
    find_disjoint_triple,
    scan_role_connectors,
    validate_connector,
)
from .expander import ExpanderParams, ExpansionCertificate, certify_p1, sample_expander
from .faults import HardFault, HypothesisFailure
from .graph import (
    Graph,
    blow_up,
    complete_graph,
    contract_clusters,
    cycle_graph,
    edge_count_between,
    graph_power,
    induced_subgraph,
)
from .hypergraph import (
    BLUE,
    RED,
    Hypergraph3,
    LiftedPath,
    TightPath3,
    TwoColoring,
    brute_force_longest_mono_tight_path,
    find_mono_clique,
    lift_to_r_uniform,
    other_colour,
    triangles_to_hypergraph,
    validate_l_path,
    validate_tight_path,
)
from .pipeline import (
    EndTuple,
    PipelineOutcome,
    PipelineParams,
    PrunedCluster,
    Quadruple,
    base_quadruple,
    blue_path_from_23path,
    derive_host_hypergraph,
    extend_quadruple,
    extract_mono_tight_path,
    power_path_and_prune,
    validate_quadruple,
)
from .two_three import (
    DfsState,
    ObstructionResult,
    TwoThreeGraph,
    TwoThreePath,
    check_invariants,
    dfs_traverse,
    extract_obstruction_sets,
    find_23_path,
    is_transversal,
    trace_line,
    transversal_violations,
    validate_23_path,
    witness_pair_violations,
)

__version__ = "0.1.0"
