"""Immutable connected bipartite graphs with a certified 2-colouring."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import Disconnected, NotBipartite, NotSimple


@dataclass(frozen=True)
class BipartiteGraph:
    n: int
    adjacency: tuple[tuple[int, ...], ...]
    parts: tuple[int, ...]
    _edges: tuple[tuple[int, int], ...] = field(default=(), repr=False, compare=False)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adjacency]

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        """Edges as sorted pairs ``(u, v)`` with ``u < v``, in lexicographic order."""
        if not self._edges and self.n > 1:
            es = tuple((u, v) for u in range(self.n) for v in self.adjacency[u] if u < v)
            object.__setattr__(self, "_edges", es)
        return self._edges

    @property
    def num_edges(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2

    def part(self, side: int) -> list[int]:
        return [v for v in range(self.n) if self.parts[v] == side]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency[u]

    def relabel(self, perm: Sequence[int]) -> "BipartiteGraph":
        """Return the graph with vertex ``v`` renamed to ``perm[v]``."""
        return from_edges(self.n, [(perm[u], perm[v]) for u, v in self.edges])

    def to_networkx(self):
        import networkx as nx

        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.edges)
        return g


def two_colouring(n: int, adjacency: Sequence[Sequence[int]]) -> list[int] | None:
    """BFS 2-colouring started at vertex 0 (and at the least uncoloured vertex
    of every further component). ``None`` when an odd cycle exists."""
    colour = [-1] * n
    for s in range(n):
        if colour[s] != -1:
            continue
        colour[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in adjacency[u]:
                if colour[w] == -1:
                    colour[w] = 1 - colour[u]
                    queue.append(w)
                elif colour[w] == colour[u]:
                    return None
    return colour


def is_connected(n: int, adjacency: Sequence[Sequence[int]]) -> bool:
    if n <= 1:
        return True
    seen = [False] * n
    seen[0] = True
    stack = [0]
    count = 1
    while stack:
        u = stack.pop()
        for w in adjacency[u]:
            if not seen[w]:
                seen[w] = True
                count += 1
                stack.append(w)
    return count == n


def from_edges(n: int, edges: Iterable[tuple[int, int]]) -> BipartiteGraph:
    """Build and validate a graph on vertices ``0..n-1``.

    Raises NotSimple for loops or repeated edges, NotBipartite when an odd
    cycle exists and Disconnected unless the graph is connected (the single
    vertex graph is accepted).
    """
    if n < 1:
        raise NotSimple("a graph needs at least one vertex")
    nbrs: list[set[int]] = [set() for _ in range(n)]
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise NotSimple(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
        if u == v:
            raise NotSimple(f"loop at vertex {u}")
        if v in nbrs[u]:
            raise NotSimple(f"duplicate edge ({u}, {v})")
        nbrs[u].add(v)
        nbrs[v].add(u)
    adjacency = tuple(tuple(sorted(s)) for s in nbrs)
    colour = two_colouring(n, adjacency)
    if colour is None:
        raise NotBipartite("graph contains an odd cycle")
    if not is_connected(n, adjacency):
        raise Disconnected("graph is not connected")
    return BipartiteGraph(n, adjacency, tuple(colour))


def from_adjacency(adjacency: Sequence[Iterable[int]]) -> BipartiteGraph:
    n = len(adjacency)
    edges = [(u, v) for u in range(n) for v in adjacency[u] if u < v]
    return from_edges(n, edges)
