"""Exact and subsampled s-t maximum flow on directed capacitated graphs."""

__version__ = "0.1.0"

from .graph import (
    Graph,
    GraphError,
    VertexSet,
    build_graph,
    graph_from_arrays,
    induced_subgraph,
    validate,
)
from .maxflow import (
    CutResult,
    FlowResult,
    brute_force_min_cut,
    check_flow,
    edmonds_karp,
)
from .sampler import (
    CI_MODES,
    EstimateSummary,
    SampleConfig,
    SubsampleEstimate,
    bootstrap_flow,
    normal_quantile,
    subsample_size,
    subsample_vertices,
    summarize,
)
from .generators import CapacitySpec, ErConfig, erdos_renyi, pick_source_sink
from .rng import substream
from .graphio import (
    LabelMap,
    ParseError,
    ParseResult,
    RunRecord,
    load_graph,
    parse_edge_list,
    parse_matrix_market,
    read_run_record,
    read_run_records,
    write_edge_list,
    write_run_record,
    write_run_records,
)

__all__ = [
    "__version__",
    "Graph",
    "GraphError",
    "VertexSet",
    "build_graph",
    "graph_from_arrays",
    "induced_subgraph",
    "validate",
    "CutResult",
    "FlowResult",
    "brute_force_min_cut",
    "check_flow",
    "edmonds_karp",
    "CI_MODES",
    "EstimateSummary",
    "SampleConfig",
    "SubsampleEstimate",
    "bootstrap_flow",
    "normal_quantile",
    "subsample_size",
    "subsample_vertices",
    "summarize",
    "CapacitySpec",
    "ErConfig",
    "erdos_renyi",
    "pick_source_sink",
    "substream",
    "LabelMap",
    "ParseError",
    "ParseResult",
    "RunRecord",
    "load_graph",
    "parse_edge_list",
    "parse_matrix_market",
    "read_run_record",
    "read_run_records",
    "write_edge_list",
    "write_run_record",
    "write_run_records",
]
