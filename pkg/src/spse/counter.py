"""Approximate all-pairs simple-path counting by repeated DAG decomposition.

Each (root, dfs_depth, trial) unit draws a node ordering from a randomized
DFS/partial-BFS/BFS traversal, orients all edges toward higher rank, counts
directed paths via powers of the resulting nilpotent 0/1 matrix, and merges
per-unit counts into the running tensor with an elementwise maximum. Counts
saturate at 2**64 - 1 instead of overflowing; the report carries the flag.

Determinism contract: identical (graph, config) give a bit-identical tensor
for any worker count. Every unit has its own RNG stream derived from
(seed, root, dfs_depth, trial), and the max-merge is order-independent.
"""

from __future__ import annotations

import math
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from time import perf_counter

import numpy as np

from . import kernels
from .errors import InputError
from .graph import Graph, NodeOrdering
from .tensors import PathCountTensor

# Fixed tags keep the root-selection stream and the per-unit streams disjoint.
_ROOT_STREAM_TAG = 11
_UNIT_STREAM_TAG = 23


@dataclass(frozen=True)
class CountConfig:
    """Hyperparameters of the approximate counter.

    root_fraction R in (0, 1]: ceil(R * n) root nodes are used.
    k_max K: number of length slices in the output tensor.
    dfs_depth_max D: traversals run for every dfs depth 0..D.
    trials_per_depth N: independent trials per (root, depth).
    partial_keep_prob: probability of keeping each child in the partial-BFS
    step; partial_bfs_enabled=False (a debug knob) turns that step into a
    plain full BFS expansion.
    """

    root_fraction: float = 1.0
    k_max: int = 20
    dfs_depth_max: int = 6
    trials_per_depth: int = 1
    seed: int = 0
    partial_keep_prob: float = 0.5
    partial_bfs_enabled: bool = True

    def __post_init__(self) -> None:
        if not (0.0 < self.root_fraction <= 1.0):
            raise InputError("root_fraction must be in (0, 1]")
        if self.k_max < 1:
            raise InputError("k_max must be >= 1")
        if self.dfs_depth_max < 0:
            raise InputError("dfs_depth_max must be >= 0")
        if self.trials_per_depth < 1:
            raise InputError("trials_per_depth must be >= 1")
        if not (0 <= self.seed < 2**64):
            raise InputError("seed must be an unsigned 64-bit integer")
        if not (0.0 <= self.partial_keep_prob <= 1.0):
            raise InputError("partial_keep_prob must be in [0, 1]")


@dataclass(frozen=True)
class CountReport:
    tensor: PathCountTensor
    dag_count: int
    wall_time: float  # seconds
    saturated: bool


def select_roots(g: Graph, cfg: CountConfig) -> list[int]:
    """First ceil(R * n) entries of a seeded uniform node permutation.

    The permutation depends only on (seed, graph size), so growing R extends
    a fixed prefix. R is treated as an exact rational to keep ceil honest
    (0.4 * 5 must give 2 roots, not 3).
    """
    n = g.node_count
    if n == 0:
        return []
    rng = np.random.default_rng(
        np.random.SeedSequence([cfg.seed, _ROOT_STREAM_TAG])
    )
    perm = rng.permutation(n)
    frac = Fraction(cfg.root_fraction).limit_denominator(10**6)
    count = max(1, math.ceil(frac * n))
    return [int(x) for x in perm[:count]]


def dag_decompose(
    g: Graph,
    root: int,
    d_dfs: int,
    trial_seed,
    *,
    partial_keep_prob: float = 0.5,
    partial_bfs_enabled: bool = True,
) -> NodeOrdering:
    """Build a full node ordering by randomized traversal from ``root``.

    Each round: a chain DFS of up to ``d_dfs`` hops to the first unvisited
    neighbor, one partial-BFS step at the tip (every unvisited child kept
    independently with partial_keep_prob, dropped children stay unvisited),
    then a plain BFS from the kept frontier. Rounds repeat from the root over
    the remaining unvisited nodes; a round that makes no progress relays a
    BFS across visited territory (emitting unvisited nodes in layer order),
    and an exhausted component hands off to the lowest-index unvisited node.
    Neighbor orders are shuffled once per round per node from the trial's
    stream, so nodes discovered concurrently land in trial-specific order.
    """
    n = g.node_count
    if not (0 <= root < n):
        raise InputError(f"root {root} out of range")
    if d_dfs < 0:
        raise InputError("d_dfs must be >= 0")
    rng = np.random.default_rng(trial_seed)
    adj = g.adjacency
    visited = bytearray(n)
    order: list[int] = []
    start = root

    while len(order) < n:
        shuffled: dict[int, list[int]] = {}

        def nbrs(u: int) -> list[int]:
            got = shuffled.get(u)
            if got is None:
                got = list(adj[u])
                if len(got) > 1:
                    rng.shuffle(got)
                shuffled[u] = got
            return got

        before = len(order)
        if not visited[start]:
            visited[start] = 1
            order.append(start)

        tip = start
        depth = 0
        while depth < d_dfs:
            nxt = next((v for v in nbrs(tip) if not visited[v]), None)
            if nxt is None:
                break
            visited[nxt] = 1
            order.append(nxt)
            tip = nxt
            depth += 1

        frontier: list[int] = []
        for v in nbrs(tip):
            if visited[v]:
                continue
            if not partial_bfs_enabled or rng.random() < partial_keep_prob:
                visited[v] = 1
                order.append(v)
                frontier.append(v)

        queue: deque[int] = deque(frontier)
        while queue:
            u = queue.popleft()
            for v in nbrs(u):
                if not visited[v]:
                    visited[v] = 1
                    order.append(v)
                    queue.append(v)

        if len(order) > before:
            continue

        # Stuck round: relay a BFS from the start across visited territory,
        # emitting any unvisited node in layer order.
        seen = bytearray(n)
        seen[start] = 1
        layer = [start]
        while layer:
            nxt_layer: list[int] = []
            for u in layer:
                for v in nbrs(u):
                    if not seen[v]:
                        seen[v] = 1
                        nxt_layer.append(v)
                        if not visited[v]:
                            visited[v] = 1
                            order.append(v)
            layer = nxt_layer

        if len(order) == before:
            # The start's component is exhausted; hop to a fresh one.
            start = next(i for i in range(n) if not visited[i])

    return NodeOrdering(tuple(order))


def ordering_counts(g: Graph, ordering: NodeOrdering, k_max: int) -> np.ndarray:
    """Counts contributed by one ordering: the symmetrized directed-path
    counts of the induced DAG, shape (k_max, n, n) uint64, plus the
    saturation flag. Returns (stack, saturated)."""
    n = g.node_count
    if len(ordering.perm) != n:
        raise InputError("ordering length does not match the graph")
    out = np.zeros((k_max, n, n), dtype=np.uint64)
    if n == 0:
        return out, False
    perm = np.fromiter(ordering.perm, dtype=np.int64, count=n)
    dense = g.dense_adjacency()
    tri = np.triu(dense[np.ix_(perm, perm)], k=1)
    k_compute = min(k_max, max(n - 1, 0))
    stack, k_eff, sat = kernels.power_stack(tri, k_compute)
    if k_eff:
        rank = np.empty(n, dtype=np.int64)
        rank[perm] = np.arange(n, dtype=np.int64)
        back = stack[np.ix_(np.arange(k_eff), rank, rank)]
        out[:k_eff] = back + back.transpose(0, 2, 1)
    return out, sat


def count_paths(g: Graph, cfg: CountConfig, threads: int = 1) -> CountReport:
    """Merged approximate path counts over all (root, depth, trial) units.

    The output is a lower bound on the exact counts entry by entry; slice
    k=1 always equals the adjacency matrix.
    """
    t0 = perf_counter()
    n = g.node_count
    k = cfg.k_max
    roots = select_roots(g, cfg)
    units = [
        (r, d, t)
        for r in roots
        for d in range(cfg.dfs_depth_max + 1)
        for t in range(cfg.trials_per_depth)
    ]

    def run(chunk: list[tuple[int, int, int]]) -> tuple[np.ndarray, bool]:
        merged = np.zeros((k, n, n), dtype=np.uint64)
        saturated = False
        for root, d, trial in chunk:
            ss = np.random.SeedSequence(
                [cfg.seed, root, d, trial, _UNIT_STREAM_TAG]
            )
            ordering = dag_decompose(
                g,
                root,
                d,
                ss,
                partial_keep_prob=cfg.partial_keep_prob,
                partial_bfs_enabled=cfg.partial_bfs_enabled,
            )
            contrib, sat = ordering_counts(g, ordering, k)
            saturated = saturated or sat
            np.maximum(merged, contrib, out=merged)
        return merged, saturated

    if threads <= 1 or len(units) <= 1:
        merged, saturated = run(units)
    else:
        stripes = [units[i::threads] for i in range(threads) if units[i::threads]]
        with ThreadPoolExecutor(max_workers=len(stripes)) as pool:
            results = list(pool.map(run, stripes))
        merged = np.zeros((k, n, n), dtype=np.uint64)
        saturated = False
        for part, sat in results:
            np.maximum(merged, part, out=merged)
            saturated = saturated or sat

    counts = np.ascontiguousarray(merged.transpose(1, 2, 0))
    tensor = PathCountTensor(n=n, k_max=k, counts=counts, saturated=saturated)
    return CountReport(
        tensor=tensor,
        dag_count=len(units),
        wall_time=perf_counter() - t0,
        saturated=saturated,
    )


def merge_counts(a: PathCountTensor, b: PathCountTensor) -> PathCountTensor:
    """Elementwise maximum of two count tensors; flags OR together."""
    if (a.n, a.k_max) != (b.n, b.k_max):
        raise InputError(
            f"shape mismatch: ({a.n}, {a.k_max}) vs ({b.n}, {b.k_max})"
        )
    return PathCountTensor(
        n=a.n,
        k_max=a.k_max,
        counts=np.maximum(a.counts, b.counts),
        saturated=a.saturated or b.saturated,
    )


def discovery_ratio(test: PathCountTensor, reference: PathCountTensor) -> float:
    """Fraction of reference path mass the test tensor reaches, over the
    upper triangle: sum of min(test, ref) / sum of ref, and 1.0 when the
    reference is all zero. Entries where test exceeds ref are clamped."""
    if (test.n, test.k_max) != (reference.n, reference.k_max):
        raise InputError("shape mismatch between test and reference tensors")
    iu, ju = np.triu_indices(test.n, k=1)
    t = test.counts[iu, ju, :]
    r = reference.counts[iu, ju, :]
    denom = int(r.astype(object).sum()) if r.size else 0
    if denom == 0:
        return 1.0
    num = int(np.minimum(t, r).astype(object).sum())
    return num / denom
