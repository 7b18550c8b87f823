"""Simple undirected graphs with optional partition labels.

Graphs are immutable after construction: every operation returns a new
instance.  Adjacency is kept as sorted neighbour lists (deterministic
iteration order) plus per-vertex sets for O(1) membership tests.
"""

from __future__ import annotations

from collections import deque
from typing import Iterable, Iterator, Optional, Sequence

from .packing import MAX_VERTICES, pack2, unpack2


class Graph:
    """Undirected simple graph on vertices ``0 .. num_vertices - 1``.

    ``vertex_labels``, when present, assigns a partition-class index to
    each vertex (used to remember blow-up cluster origins).
    ``max_degree`` is an optional declared bound that is enforced.
    """

    __slots__ = ("num_vertices", "_adj", "_nbr", "vertex_labels", "max_degree")

    def __init__(
        self,
        num_vertices: int,
        edges: Iterable[tuple[int, int]],
        vertex_labels: Optional[Sequence[int]] = None,
        max_degree: Optional[int] = None,
    ):
        if num_vertices < 0 or num_vertices > MAX_VERTICES:
            raise ValueError(f"num_vertices out of range: {num_vertices}")
        self.num_vertices = num_vertices
        nbr: list[set[int]] = [set() for _ in range(num_vertices)]
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < num_vertices and 0 <= v < num_vertices):
                raise ValueError(f"edge ({u}, {v}) out of range")
            nbr[u].add(v)
            nbr[v].add(u)
        self._nbr = nbr
        self._adj = [sorted(s) for s in nbr]
        if max_degree is not None:
            worst = max((len(a) for a in self._adj), default=0)
            if worst > max_degree:
                raise ValueError(f"degree {worst} exceeds declared max {max_degree}")
        self.max_degree = max_degree
        if vertex_labels is not None:
            vertex_labels = list(vertex_labels)
            if len(vertex_labels) != num_vertices:
                raise ValueError("vertex_labels length mismatch")
        self.vertex_labels = vertex_labels

    def neighbors(self, v: int) -> list[int]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._nbr[u]

    def edges(self) -> Iterator[tuple[int, int]]:
        """Yield edges as (u, v) with u < v, in sorted order."""
        for u in range(self.num_vertices):
            for v in self._adj[u]:
                if v > u:
                    yield (u, v)

    @property
    def num_edges(self) -> int:
        return sum(len(a) for a in self._adj) // 2

    def edge_set(self) -> set[int]:
        return {pack2(u, v) for u, v in self.edges()}

    def is_regular(self) -> bool:
        if self.num_vertices == 0:
            return True
        d = len(self._adj[0])
        return all(len(a) == d for a in self._adj)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Graph)
            and self.num_vertices == other.num_vertices
            and self._adj == other._adj
            and self.vertex_labels == other.vertex_labels
        )

    def __repr__(self) -> str:
        return f"Graph(n={self.num_vertices}, m={self.num_edges})"


def complete_graph(n: int) -> Graph:
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle needs at least 3 vertices")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def edge_count_between(g: Graph, s: Iterable[int], t: Iterable[int]) -> int:
    """Number of edges with one endpoint in ``s`` and the other in ``t``.

    ``s`` and ``t`` must be disjoint vertex sets.
    """
    s_set, t_set = set(s), set(t)
    if s_set & t_set:
        raise ValueError("s and t must be disjoint")
    if len(t_set) < len(s_set):
        s_set, t_set = t_set, s_set
    return sum(1 for u in s_set for v in g._nbr[u] if v in t_set)


def graph_power(g: Graph, k: int) -> Graph:
    """The k-th power: u ~ v iff their distance in ``g`` is in [1, k].

    Computed by depth-bounded BFS from every vertex, which keeps memory
    linear in the output.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if k == 1:
        return Graph(g.num_vertices, g.edges(), vertex_labels=g.vertex_labels)
    edges = []
    for src in range(g.num_vertices):
        dist = {src: 0}
        queue = deque([src])
        while queue:
            u = queue.popleft()
            if dist[u] == k:
                continue
            for v in g._adj[u]:
                if v not in dist:
                    dist[v] = dist[u] + 1
                    queue.append(v)
        for v in dist:
            if v > src:
                edges.append((src, v))
    return Graph(g.num_vertices, edges, vertex_labels=g.vertex_labels)


def blow_up(g: Graph, t: int) -> tuple[Graph, list[int]]:
    """Replace every vertex by a t-clique and every edge by a complete
    bipartite graph between the corresponding cliques.

    Returns the blown-up graph and the cluster map (new vertex -> origin
    vertex).  The cluster map is also stored as ``vertex_labels``.
    """
    if t < 1:
        raise ValueError("t must be >= 1")
    n = g.num_vertices
    cluster_map = [v for v in range(n) for _ in range(t)]
    edges: list[tuple[int, int]] = []
    for v in range(n):
        base = v * t
        for i in range(t):
            for j in range(i + 1, t):
                edges.append((base + i, base + j))
    for u, v in g.edges():
        bu, bv = u * t, v * t
        for i in range(t):
            for j in range(t):
                edges.append((bu + i, bv + j))
    return Graph(n * t, edges, vertex_labels=cluster_map), cluster_map


def contract_clusters(g: Graph, cluster_map: Sequence[int]) -> Graph:
    """Quotient a blown-up graph back onto its origins (test helper for the
    blow-up round-trip property)."""
    n = max(cluster_map) + 1 if len(cluster_map) else 0
    seen = set()
    for u, v in g.edges():
        cu, cv = cluster_map[u], cluster_map[v]
        if cu != cv:
            seen.add(pack2(cu, cv))
    return Graph(n, [unpack2(code) for code in sorted(seen)])


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> tuple[Graph, list[int]]:
    """Induced subgraph on ``vertices`` with compact relabelling.

    Returns the subgraph and the list mapping new ids to original ids
    (sorted ascending).
    """
    order = sorted(set(vertices))
    index = {v: i for i, v in enumerate(order)}
    edges = [
        (index[u], index[v])
        for u in order
        for v in g._adj[u]
        if v > u and v in index
    ]
    labels = None
    if g.vertex_labels is not None:
        labels = [g.vertex_labels[v] for v in order]
    return Graph(len(order), edges, vertex_labels=labels), order
