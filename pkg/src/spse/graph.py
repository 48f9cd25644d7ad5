"""Undirected simple graphs, deterministic generators, orderings, and orientation.

Graphs are immutable: node indices are 0-based, edges are stored as normalized
(min, max) pairs, and neighbor lists are sorted. A dense 0/1 adjacency matrix is
derived on demand and cached for graphs below ``DENSE_CACHE_LIMIT`` nodes.
"""

from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Tuple

import numpy as np

from .errors import InputError

Edge = Tuple[int, int]

# Below this node count the dense adjacency matrix is kept on the instance.
DENSE_CACHE_LIMIT = 512

FAMILIES = ("path", "cycle", "complete", "star", "er", "tree", "csl")


@dataclass(frozen=True)
class Graph:
    """An undirected simple graph (no self-loops, no parallel edges)."""

    node_count: int
    edges: frozenset[Edge]
    adjacency: tuple[tuple[int, ...], ...] = field(compare=False)

    def degree(self, u: int) -> int:
        return len(self.adjacency[u])

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edges

    def dense_adjacency(self) -> np.ndarray:
        """0/1 adjacency matrix as uint8, shape (n, n). Treat as read-only."""
        cached = self.__dict__.get("_dense")
        if cached is not None:
            return cached
        n = self.node_count
        a = np.zeros((n, n), dtype=np.uint8)
        for u, v in self.edges:
            a[u, v] = 1
            a[v, u] = 1
        a.flags.writeable = False
        if n < DENSE_CACHE_LIMIT:
            self.__dict__["_dense"] = a
        return a


@dataclass(frozen=True)
class NodeOrdering:
    """A permutation of the node indices; position in ``perm`` is the rank."""

    perm: tuple[int, ...]

    def __post_init__(self) -> None:
        n = len(self.perm)
        if sorted(self.perm) != list(range(n)):
            raise InputError("ordering must be a permutation of 0..n-1")

    def ranks(self) -> list[int]:
        """Inverse permutation: ranks()[node] is the node's position."""
        rank = [0] * len(self.perm)
        for pos, node in enumerate(self.perm):
            rank[node] = pos
        return rank


@dataclass(frozen=True)
class DirectedGraph:
    node_count: int
    arcs: frozenset[Edge]


def graph_from_edges(node_count: int, edges: Iterable[Edge]) -> Graph:
    """Build a Graph, normalizing endpoint order and dropping duplicate edges.

    Raises InputError for endpoints outside 0..node_count-1 and for self-loops.
    """
    if node_count < 0:
        raise InputError("node_count must be non-negative")
    dedup: set[Edge] = set()
    for u, v in edges:
        if not (0 <= u < node_count and 0 <= v < node_count):
            raise InputError(
                f"edge ({u}, {v}) has an endpoint outside 0..{node_count - 1}"
            )
        if u == v:
            raise InputError(f"self-loop at node {u} is not allowed")
        dedup.add((u, v) if u < v else (v, u))
    neighbors: list[list[int]] = [[] for _ in range(node_count)]
    for u, v in dedup:
        neighbors[u].append(v)
        neighbors[v].append(u)
    adjacency = tuple(tuple(sorted(ns)) for ns in neighbors)
    return Graph(node_count=node_count, edges=frozenset(dedup), adjacency=adjacency)


def _prufer_tree(n: int, rng: np.random.Generator) -> list[Edge]:
    # Decode a uniformly random Pruefer sequence into a labeled tree.
    if n <= 1:
        return []
    if n == 2:
        return [(0, 1)]
    seq = [int(x) for x in rng.integers(0, n, size=n - 2)]
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    edges: list[Edge] = []
    leaves = [i for i in range(n) if degree[i] == 1]
    heapq.heapify(leaves)
    for x in seq:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, x))
        degree[x] -= 1
        if degree[x] == 1:
            heapq.heappush(leaves, x)
    u = heapq.heappop(leaves)
    v = heapq.heappop(leaves)
    edges.append((u, v))
    return edges


def generate(
    family: str,
    *,
    n: int | None = None,
    m: int | None = None,
    p: float | None = None,
    skip: int | None = None,
    seed: int = 0,
) -> Graph:
    """Deterministic test-family generator.

    Families: path(n), cycle(m), complete(n), star(n), er(n, p, seed),
    tree(n, seed), csl(n, skip). Star graphs put the center at node 0.
    CSL graphs are a ring plus fixed-offset chords with 2 <= skip < n/2.
    """
    if family not in FAMILIES:
        raise InputError(f"unknown family {family!r}; expected one of {FAMILIES}")
    if family == "cycle":
        size = m if m is not None else n
        if size is None or size < 3:
            raise InputError("cycle needs m >= 3")
        ring = [(i, (i + 1) % size) for i in range(size)]
        return graph_from_edges(size, ring)
    if n is None:
        raise InputError(f"family {family!r} needs n")
    if family == "path":
        if n < 1:
            raise InputError("path needs n >= 1")
        return graph_from_edges(n, [(i, i + 1) for i in range(n - 1)])
    if family == "complete":
        if n < 1:
            raise InputError("complete needs n >= 1")
        return graph_from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])
    if family == "star":
        if n < 1:
            raise InputError("star needs n >= 1")
        return graph_from_edges(n, [(0, i) for i in range(1, n)])
    if family == "er":
        if p is None or not (0.0 <= p <= 1.0):
            raise InputError("er needs p in [0, 1]")
        rng = np.random.default_rng(seed)
        iu, ju = np.triu_indices(n, k=1)
        mask = rng.random(iu.shape[0]) < p
        pairs = [(int(u), int(v)) for u, v in zip(iu[mask], ju[mask])]
        return graph_from_edges(n, pairs)
    if family == "tree":
        if n < 1:
            raise InputError("tree needs n >= 1")
        rng = np.random.default_rng(seed)
        return graph_from_edges(n, _prufer_tree(n, rng))
    # csl
    if skip is None or skip < 2 or 2 * skip >= n:
        raise InputError("csl needs skip >= 2 and skip < n/2")
    ring = [(i, (i + 1) % n) for i in range(n)]
    chords = [(i, (i + skip) % n) for i in range(n)]
    return graph_from_edges(n, ring + chords)


def dag_orient(g: Graph, ordering: NodeOrdering) -> DirectedGraph:
    """Orient every edge toward the endpoint with the higher rank in ``ordering``.

    The result is acyclic by construction: ordering.perm is a topological order.
    """
    if len(ordering.perm) != g.node_count:
        raise InputError("ordering length does not match the graph's node count")
    rank = ordering.ranks()
    arcs = frozenset(
        (u, v) if rank[u] < rank[v] else (v, u) for u, v in g.edges
    )
    return DirectedGraph(node_count=g.node_count, arcs=arcs)


def mirror_around(g: Graph, center: int) -> Graph:
    """Duplicate the graph across ``center``: every node i != center gains a twin i'.

    Originals keep indices 0..n-1; the twin of i is n + (position of i among the
    non-center nodes in ascending order). Edges not touching the center are
    duplicated between twins; edges (center, j) produce both (center, j) and
    (center, j'). The center's degree doubles, every other degree is preserved.
    """
    n = g.node_count
    if not (0 <= center < n):
        raise InputError(f"center {center} out of range")
    others = [i for i in range(n) if i != center]
    twin = {i: n + pos for pos, i in enumerate(others)}
    out: list[Edge] = []
    for u, v in g.edges:
        if u != center and v != center:
            out.append((u, v))
            out.append((twin[u], twin[v]))
        else:
            j = v if u == center else u
            out.append((center, j))
            out.append((center, twin[j]))
    return graph_from_edges(2 * n - 1, out)


def eccentricity(g: Graph, root: int) -> int:
    """Maximum BFS distance from ``root`` within its connected component."""
    if not (0 <= root < g.node_count):
        raise InputError(f"root {root} out of range")
    dist = {root: 0}
    queue: deque[int] = deque([root])
    far = 0
    while queue:
        u = queue.popleft()
        for v in g.adjacency[u]:
            if v not in dist:
                dist[v] = dist[u] + 1
                far = max(far, dist[v])
                queue.append(v)
    return far


def bfs_distances(g: Graph, root: int) -> dict[int, int]:
    """Hop distance from ``root`` to every reachable node."""
    dist = {root: 0}
    queue: deque[int] = deque([root])
    while queue:
        u = queue.popleft()
        for v in g.adjacency[u]:
            if v not in dist:
                dist[v] = dist[u] + 1
                queue.append(v)
    return dist


def is_connected(g: Graph) -> bool:
    if g.node_count == 0:
        return True
    return len(bfs_distances(g, 0)) == g.node_count


def diameter(g: Graph) -> int:
    """Largest eccentricity over all nodes (per component)."""
    return max((eccentricity(g, r) for r in range(g.node_count)), default=0)
