"""Agent-based community detection.

Generations of biased walker agents explore the graph and report the nodes
they visited; co-visited pairs accumulate weight. Low-weight edges are then
removed one by one, and the component split with the highest network
modularity is reported as the community structure.
"""

from . import errors
from .analysis import CandidateRecord, best_partition, edge_removal_order, sweep
from .bench import BenchReport, TrialOutcome, run_bench
from .exploration import (
    ExplorationConfig,
    ExplorationResult,
    WeightMatrix,
    apply_memory_update,
    exploration_done,
    explore,
    move_probabilities,
    run_walk,
    select_start_nodes,
)
from .graph import (
    EdgeMask,
    Graph,
    Partition,
    connected_components,
    induced_subgraph,
    is_connected,
    load_edge_list,
    load_gml,
    load_labels,
    to_edge_list,
)
from .modularity import (
    brute_force_best_partition,
    confusion_matrix,
    modularity,
    partition_accuracy,
)
from .pipeline import DetectionResult, Diagnostics, detect
from .synthetic import planted_partition

__version__ = "0.1.0"

__all__ = [
    "BenchReport",
    "CandidateRecord",
    "DetectionResult",
    "Diagnostics",
    "EdgeMask",
    "ExplorationConfig",
    "ExplorationResult",
    "Graph",
    "Partition",
    "TrialOutcome",
    "WeightMatrix",
    "apply_memory_update",
    "best_partition",
    "brute_force_best_partition",
    "confusion_matrix",
    "connected_components",
    "detect",
    "edge_removal_order",
    "errors",
    "exploration_done",
    "explore",
    "induced_subgraph",
    "is_connected",
    "load_edge_list",
    "load_gml",
    "load_labels",
    "modularity",
    "move_probabilities",
    "partition_accuracy",
    "planted_partition",
    "run_bench",
    "run_walk",
    "select_start_nodes",
    "sweep",
    "to_edge_list",
]
