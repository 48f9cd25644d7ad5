"""Ground-truth computations: exact path counts, random-walk matrices, cycle
counts through an edge, and pairwise equivalence checks.

Exact counting is exponential in nature, so it is gated behind a node cap
(default 20) with an explicit override for targeted experiments.
"""

from __future__ import annotations

import numpy as np

from . import kernels
from .errors import InputError, ResourceLimitError
from .graph import Graph
from .tensors import PathCountTensor, RwTensor

EXACT_ORACLE_NODE_CAP = 20

# Above this the bitmask DP table would not fit (or counts could overflow
# u64), so the cap override falls back to direct path enumeration.
_DP_NODE_LIMIT = 22


def exact_path_counts(
    g: Graph, k_max: int, *, allow_large: bool = False
) -> PathCountTensor:
    """Exact number of simple paths of each length 1..k_max between all pairs.

    Refuses graphs above EXACT_ORACLE_NODE_CAP nodes unless ``allow_large``
    is set; the result never saturates under the cap.
    """
    if k_max < 1:
        raise InputError("k_max must be >= 1")
    n = g.node_count
    if n > EXACT_ORACLE_NODE_CAP and not allow_large:
        raise ResourceLimitError(
            f"exact counting refused: {n} nodes exceeds the cap of "
            f"{EXACT_ORACLE_NODE_CAP} (pass allow_large to override)"
        )
    if n > _DP_NODE_LIMIT:
        return reference_path_counts(g, k_max)
    counts = kernels.exact_counts(g.dense_adjacency(), np.arange(n), k_max)
    return PathCountTensor(n=n, k_max=k_max, counts=counts, saturated=False)


def reference_path_counts(g: Graph, k_max: int) -> PathCountTensor:
    """Exact counts by literal depth-first path enumeration with a visited set.

    Slow but direct; kept as the cross-check for the DP-based fast path and as
    the fallback for cap-override runs on graphs too large for the DP table.
    """
    if k_max < 1:
        raise InputError("k_max must be >= 1")
    n = g.node_count
    counts = np.zeros((n, n, k_max), dtype=np.uint64)
    adj = g.adjacency
    visited = bytearray(n)

    def extend(start: int, u: int, length: int) -> None:
        for v in adj[u]:
            if visited[v]:
                continue
            counts[start, v, length] += 1
            if length + 1 < k_max:
                visited[v] = 1
                extend(start, v, length + 1)
                visited[v] = 0

    for s in range(n):
        visited[s] = 1
        extend(s, s, 0)
        visited[s] = 0
    return PathCountTensor(n=n, k_max=k_max, counts=counts, saturated=False)


def random_walk_tensor(g: Graph, k_max: int) -> RwTensor:
    """Stacked powers of the walk matrix D^-1 A, computed by repeated
    multiplication. Rows of degree-0 nodes are all-zero."""
    if k_max < 1:
        raise InputError("k_max must be >= 1")
    n = g.node_count
    probs = np.zeros((n, n, k_max), dtype=np.float64)
    if n == 0:
        return RwTensor(n=n, k_max=k_max, probs=probs)
    a = g.dense_adjacency().astype(np.float64)
    deg = a.sum(axis=1)
    inv = np.where(deg > 0, 1.0 / np.where(deg > 0, deg, 1.0), 0.0)
    t = inv[:, None] * a
    cur = t
    probs[:, :, 0] = cur
    for k in range(1, k_max):
        cur = cur @ t
        probs[:, :, k] = cur
    return RwTensor(n=n, k_max=k_max, probs=probs)


def cycle_profile_through_edge(g: Graph, i: int, j: int, max_length: int) -> list[int]:
    """Counts of simple cycles through edge (i, j) for each length 3..max_length.

    Index L of the returned list is the number of distinct simple cycles of
    length L containing the edge; indices 0..2 are zero. Enumerates simple
    paths from j to i that avoid revisits, so each cycle is seen exactly once.
    """
    if not g.has_edge(i, j):
        raise InputError(f"({i}, {j}) is not an edge of the graph")
    if g.node_count > EXACT_ORACLE_NODE_CAP:
        raise ResourceLimitError(
            f"cycle enumeration refused: {g.node_count} nodes exceeds the cap "
            f"of {EXACT_ORACLE_NODE_CAP}"
        )
    if max_length < 3:
        return [0] * (max_length + 1)
    counts = [0] * (max_length + 1)
    adj = g.adjacency
    adj_i = set(adj[i])
    visited = {i, j}

    def extend(u: int, depth: int) -> None:
        # depth = number of edges walked from j
        for v in adj[u]:
            if v in visited:
                continue
            dv = depth + 1
            if v in adj_i:
                counts[dv + 2] += 1
            if dv < max_length - 2:
                visited.add(v)
                extend(v, dv)
                visited.remove(v)

    if max_length >= 3:
        extend(j, 0)
    return counts


def cycles_through_edge(g: Graph, i: int, j: int, length: int) -> int:
    """Number of distinct simple cycles of the given length containing (i, j)."""
    if not (3 <= length <= g.node_count):
        raise InputError(f"cycle length must be in 3..{g.node_count}, got {length}")
    return cycle_profile_through_edge(g, i, j, length)[length]


def pair_equivalent(
    g: Graph,
    pair: tuple[int, int],
    g2: Graph,
    pair2: tuple[int, int],
    k_max: int,
    mode: str,
    tol: float = 1e-12,
) -> bool:
    """True iff the two node pairs agree on all K profile entries.

    mode "rw" compares random-walk probabilities within ``tol``; mode "sp"
    compares exact path counts as integers (both graphs must be under the
    oracle cap).
    """
    i, j = pair
    i2, j2 = pair2
    for (a, b), graph in (((i, j), g), ((i2, j2), g2)):
        if not (0 <= a < graph.node_count and 0 <= b < graph.node_count):
            raise InputError(f"pair ({a}, {b}) out of range")
    if mode == "rw":
        p1 = random_walk_tensor(g, k_max).probs[i, j, :]
        p2 = random_walk_tensor(g2, k_max).probs[i2, j2, :]
        return bool(np.max(np.abs(p1 - p2), initial=0.0) <= tol)
    if mode == "sp":
        c1 = exact_path_counts(g, k_max).counts[i, j, :]
        c2 = exact_path_counts(g2, k_max).counts[i2, j2, :]
        return bool(np.array_equal(c1, c2))
    raise InputError(f"mode must be 'rw' or 'sp', got {mode!r}")
