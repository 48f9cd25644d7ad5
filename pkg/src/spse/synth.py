"""Synthetic cycle-counting dataset with exact-by-construction labels.

Each graph is a union of rings in which any two rings share at most one
node. Every biconnected block is then a single ring, so the simple cycles
of the graph are exactly the rings that were added, and the label vector
(count per cycle length) is known without enumeration. verify_labels
re-checks a graph against a brute-force enumerator anyway, within a budget.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Tuple

import numpy as np

from .errors import InputError, ResourceLimitError
from .graph import Graph, graph_from_edges

_SYNTH_STREAM_TAG = 37

# Per-length target counts follow a truncated geometric law on
# {0, ..., max_count}: P(t) proportional to TARGET_DECAY**t. Uniform targets
# would push the mean graph size far above the intended scale (mean node
# count >= 189 for any attachment rule that shares at most one node), so the
# law is skewed toward small counts and calibrated together with ATTACH_PROB
# to land near 149 nodes / 190 edges on average.
TARGET_DECAY = 0.93
ATTACH_PROB = 0.85

SPLIT_NAMES = ("train", "val", "test")


@dataclass(frozen=True)
class SynthParams:
    n_graphs: int = 12000
    cycle_lengths: Tuple[int, int] = (3, 8)
    max_count_per_length: int = 14
    split: Tuple[int, int, int] = (10000, 1000, 1000)
    seed: int = 0

    def __post_init__(self) -> None:
        lo, hi = self.cycle_lengths
        if lo < 3 or hi < lo:
            raise InputError("cycle_lengths must satisfy 3 <= lo <= hi")
        if self.max_count_per_length < 0:
            raise InputError("max_count_per_length must be >= 0")
        if len(self.split) != 3 or any(s < 0 for s in self.split):
            raise InputError("split must be three non-negative counts")
        if sum(self.split) != self.n_graphs:
            raise InputError(
                f"split {self.split} does not sum to n_graphs={self.n_graphs}"
            )


@dataclass(frozen=True)
class LabeledGraph:
    graph: Graph
    labels: Tuple[int, ...] = field(default=())


def _draw_targets(rng: np.random.Generator, p: SynthParams) -> List[int]:
    top = p.max_count_per_length
    weights = TARGET_DECAY ** np.arange(top + 1, dtype=np.float64)
    weights /= weights.sum()
    lo, hi = p.cycle_lengths
    return [int(rng.choice(top + 1, p=weights)) for _ in range(hi - lo + 1)]


def _generate_one(rng: np.random.Generator, p: SynthParams) -> LabeledGraph:
    lo, hi = p.cycle_lengths
    targets = _draw_targets(rng, p)
    rings: List[int] = []
    for length, t in zip(range(lo, hi + 1), targets):
        rings.extend([length] * t)
    rng.shuffle(rings)

    node_count = 0
    edges: List[Tuple[int, int]] = []
    for length in rings:
        if node_count > 0 and rng.random() < ATTACH_PROB:
            anchor = int(rng.integers(node_count))
            fresh = list(range(node_count, node_count + length - 1))
            ring = [anchor] + fresh
            node_count += length - 1
        else:
            ring = list(range(node_count, node_count + length))
            node_count += length
        for i in range(length):
            edges.append((ring[i], ring[(i + 1) % length]))

    graph = graph_from_edges(node_count, edges)
    return LabeledGraph(graph=graph, labels=tuple(targets))


def generate_dataset(
    p: SynthParams,
) -> Tuple[List[LabeledGraph], Tuple[str, ...]]:
    """All graphs plus a per-graph split name, deterministic under p.seed.

    Graph i draws from its own stream derived from (seed, i), so the output
    is independent of generation order.
    """
    graphs = []
    for idx in range(p.n_graphs):
        rng = np.random.default_rng(
            np.random.SeedSequence([p.seed, idx, _SYNTH_STREAM_TAG])
        )
        graphs.append(_generate_one(rng, p))
    assignment = []
    for name, width in zip(SPLIT_NAMES, p.split):
        assignment.extend([name] * width)
    return graphs, tuple(assignment)


def dataset_manifest(p: SynthParams, graphs: List[LabeledGraph]) -> dict:
    nodes = [lg.graph.node_count for lg in graphs]
    edge_counts = [lg.graph.edge_count for lg in graphs]
    return {
        "seed": p.seed,
        "params": {
            "n_graphs": p.n_graphs,
            "cycle_lengths": list(p.cycle_lengths),
            "max_count_per_length": p.max_count_per_length,
            "split": list(p.split),
        },
        "mean_nodes": float(np.mean(nodes)) if nodes else 0.0,
        "mean_edges": float(np.mean(edge_counts)) if edge_counts else 0.0,
    }


def _count_simple_cycles(g: Graph, lo: int, hi: int) -> List[int]:
    """Number of simple cycles per length lo..hi, by bounded DFS.

    Each cycle is counted once: enumeration starts at its minimum vertex and
    keeps only the direction whose second vertex is smaller than its last.
    """
    counts = [0] * (hi + 1)
    adj = g.adjacency
    in_path = bytearray(g.node_count)

    def extend(s: int, u: int, path: List[int]) -> None:
        for v in adj[u]:
            if v == s and len(path) >= 3:
                if path[1] < path[-1] and len(path) <= hi:
                    counts[len(path)] += 1
            elif v > s and not in_path[v] and len(path) < hi:
                in_path[v] = 1
                path.append(v)
                extend(s, v, path)
                path.pop()
                in_path[v] = 0

    for s in range(g.node_count):
        in_path[s] = 1
        extend(s, s, [s])
        in_path[s] = 0
    return counts[lo : hi + 1]


def verify_labels(lg: LabeledGraph, cycle_lengths: Tuple[int, int] = (3, 8)) -> bool:
    """Re-check labels against brute-force cycle enumeration.

    Refuses graphs that are both large (> 60 nodes) and cycle-rich
    (label total > 20), where enumeration time is unbounded in practice.
    """
    lo, hi = cycle_lengths
    if len(lg.labels) != hi - lo + 1:
        raise InputError("label vector length does not match cycle_lengths")
    total = sum(lg.labels)
    if lg.graph.node_count > 60 and total > 20:
        raise ResourceLimitError(
            f"refusing enumeration: {lg.graph.node_count} nodes and "
            f"{total} labeled cycles exceed the verification budget "
            "(limit: 60 nodes unless the cycle total is at most 20)"
        )
    return _count_simple_cycles(lg.graph, lo, hi) == list(lg.labels)
