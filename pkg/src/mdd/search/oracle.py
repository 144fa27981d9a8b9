"""Brute-force reference generator used to cross-check the pruned searches.

Every connected bipartite graph on n vertices with maximum degree at most
delta is reached by adding one vertex at a time (delete a leaf of a spanning
tree to see why), so level-wise augmentation followed by canonical dedupe is
exhaustive. No pruning other than the degree cap is applied.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations

from ..canon import canonical_key
from ..graph6 import decode_graph6


def _colouring(n: int, adj: list[list[int]]) -> list[int]:
    col = [-1] * n
    col[0] = 0
    stack = [0]
    while stack:
        u = stack.pop()
        for w in adj[u]:
            if col[w] < 0:
                col[w] = 1 - col[u]
                stack.append(w)
    return col


def _adjacency(n: int, edges) -> list[list[int]]:
    adj: list[list[int]] = [[] for _ in range(n)]
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    return adj


@lru_cache(maxsize=None)
def connected_bipartite_keys(n: int, delta: int) -> frozenset[bytes]:
    """Canonical graph6 keys of all connected bipartite graphs of order n
    with maximum degree at most delta."""
    if n < 1:
        return frozenset()
    if n == 1:
        return frozenset({canonical_key(1, [[]])})
    prev = connected_bipartite_keys(n - 1, delta)
    out: set[bytes] = set()
    k = n - 1
    for key in prev:
        _, edges = decode_graph6(key)
        adj = _adjacency(k, edges)
        col = _colouring(k, adj)
        for side in (0, 1):
            open_ = [u for u in range(k) if col[u] == side and len(adj[u]) < delta]
            for size in range(1, min(delta, len(open_)) + 1):
                for s in combinations(open_, size):
                    new = [list(a) for a in adj] + [list(s)]
                    for u in s:
                        new[u].append(k)
                    out.add(canonical_key(n, new))
    return frozenset(out)
