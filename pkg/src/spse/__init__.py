"""Simple Path Structural Encoding: approximate all-pairs simple-path
counting by DAG decomposition, exact oracles, and feature encodings."""

__version__ = "0.1.0"

from .counter import (
    CountConfig,
    CountReport,
    count_paths,
    dag_decompose,
    discovery_ratio,
    merge_counts,
    select_roots,
)
from .encoding import (
    EncodingParams,
    encode_rwse,
    encode_spse,
    load_preset_file,
    preset,
    spse_map,
)
from .errors import InputError, ResourceLimitError
from .graph import (
    DirectedGraph,
    Graph,
    NodeOrdering,
    dag_orient,
    diameter,
    generate,
    graph_from_edges,
    is_connected,
    mirror_around,
)
from .oracle import (
    cycles_through_edge,
    exact_path_counts,
    pair_equivalent,
    random_walk_tensor,
)
from .synth import LabeledGraph, SynthParams, generate_dataset, verify_labels
from .tensors import EncodedTensor, PathCountTensor, RwTensor

__all__ = [
    "CountConfig",
    "CountReport",
    "DirectedGraph",
    "EncodedTensor",
    "EncodingParams",
    "Graph",
    "InputError",
    "LabeledGraph",
    "NodeOrdering",
    "PathCountTensor",
    "ResourceLimitError",
    "RwTensor",
    "SynthParams",
    "count_paths",
    "cycles_through_edge",
    "dag_decompose",
    "dag_orient",
    "diameter",
    "discovery_ratio",
    "encode_rwse",
    "encode_spse",
    "exact_path_counts",
    "generate",
    "generate_dataset",
    "graph_from_edges",
    "is_connected",
    "load_preset_file",
    "merge_counts",
    "mirror_around",
    "pair_equivalent",
    "preset",
    "random_walk_tensor",
    "select_roots",
    "spse_map",
    "verify_labels",
]
