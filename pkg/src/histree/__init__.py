"""histree: decide, construct and certify homeomorphically irreducible
spanning trees (spanning trees with no degree-2 vertex)."""

from .casework import (
    ConstructionTrace,
    ConstructResult,
    DecompositionContext,
    anchored_component_tree,
    build_context,
    check_low_reach_clique,
    component_hist,
    construct_hist,
    extend_seed,
)
from .conditions import ConditionReport, condition_report, implication_check, nc_pair_witness
from .errors import (
    ConstructionError,
    DomainError,
    HistreeError,
    HypothesisViolation,
    ParseError,
)
from .formats import (
    decode_edgelist,
    decode_graph6,
    encode_edgelist,
    encode_graph,
    encode_graph6,
    parse_graph,
)
from .graphs import (
    EdgeCut,
    Graph,
    complete_graph,
    components,
    cut_vertices,
    cycle_graph,
    edge_cut,
    find_induced_p3,
    find_xy_path,
    is_connected,
    min_degree_connectivity_guard,
    path_graph,
    petersen_graph,
    star_graph,
)
from .obstructions import (
    ObstructionReport,
    detect_cut_vertex_deg2,
    detect_pendant_at_deg2,
    detect_triangle_split,
    generate_H,
    match_family,
)
from .solve import SolveResult, solve
from .trees import (
    OracleResult,
    QuasiClass,
    SearchResult,
    SpanningTree,
    classify_quasi,
    dense_hist,
    exact_search,
    extend_quasi1,
    extend_quasi2,
    hist_failures,
    oracle_enumerate,
    spanning_tree_failures,
    verify_hist,
)

__version__ = "0.1.0"
