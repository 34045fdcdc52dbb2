"""Graph ranking by integer-part fluid diffusion, with PageRank baselines."""

from .analysis import (
    BoundReport,
    OverlapCurve,
    RankVector,
    check_theorem_bound,
    fr_scores,
    l1_distance,
    loc_scores,
    scale_history,
    top_overlap,
)
from .diffusion import (
    ConvergenceTrace,
    Custom,
    DiffusionConfig,
    DiffusionResult,
    DiffusionState,
    Uniform,
    diffuse_once,
    pagerank_oracle,
    run_diffusion,
)
from .estimators import FluidRank, InDegreeRank, PageRank
from .exceptions import GraphParseError, IneligibleNodeError, NodeRangeError, NumericError
from .graph import Graph, GraphStats, compute_stats, load_edge_list, read_edge_list

__version__ = "0.1.0"

__all__ = [
    "BoundReport",
    "ConvergenceTrace",
    "Custom",
    "DiffusionConfig",
    "DiffusionResult",
    "DiffusionState",
    "FluidRank",
    "Graph",
    "GraphParseError",
    "GraphStats",
    "InDegreeRank",
    "IneligibleNodeError",
    "NodeRangeError",
    "NumericError",
    "OverlapCurve",
    "PageRank",
    "RankVector",
    "Uniform",
    "check_theorem_bound",
    "compute_stats",
    "diffuse_once",
    "fr_scores",
    "l1_distance",
    "load_edge_list",
    "loc_scores",
    "pagerank_oracle",
    "read_edge_list",
    "run_diffusion",
    "scale_history",
    "top_overlap",
]
