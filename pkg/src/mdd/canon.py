"""Canonical labelling by colour refinement plus individualisation.

A small-scale version of the nauty scheme: the search tree of equitable
partitions is explored depth first, the leaf with the largest relabelled
adjacency certificate wins, and automorphisms discovered at equal leaves
prune sibling subtrees that lie in the same orbit of the prefix stabiliser.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import total_ordering
from typing import Sequence

from .graph import BipartiteGraph
from .graph6 import encode_graph6


def _refine(cells: list[list[int]], adjacency: Sequence[Sequence[int]], n: int) -> list[list[int]]:
    """Split cells until the partition is equitable.

    Sub-cells are ordered by their neighbour-colour signature so the result
    depends only on the isomorphism type of (graph, ordered partition).
    """
    cell_of = [0] * n
    for i, cell in enumerate(cells):
        for v in cell:
            cell_of[v] = i
    while True:
        new_cells: list[list[int]] = []
        changed = False
        for cell in cells:
            if len(cell) == 1:
                new_cells.append(cell)
                continue
            groups: dict[tuple[int, ...], list[int]] = {}
            for v in cell:
                sig = tuple(sorted(cell_of[w] for w in adjacency[v]))
                groups.setdefault(sig, []).append(v)
            if len(groups) == 1:
                new_cells.append(cell)
            else:
                changed = True
                for sig in sorted(groups):
                    new_cells.append(groups[sig])
        if not changed:
            return new_cells
        cells = new_cells
        for i, cell in enumerate(cells):
            for v in cell:
                cell_of[v] = i


def _certificate(order: Sequence[int], adjacency: Sequence[Sequence[int]]) -> tuple[int, ...]:
    pos = [0] * len(order)
    for i, v in enumerate(order):
        pos[v] = i
    rows = []
    for v in order:
        mask = 0
        for w in adjacency[v]:
            mask |= 1 << pos[w]
        rows.append(mask)
    return tuple(rows)


def _orbit_roots(n: int, generators: list[list[int]]) -> list[int]:
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for gamma in generators:
        for v in range(n):
            a, b = find(v), find(gamma[v])
            if a != b:
                parent[max(a, b)] = min(a, b)
    return [find(v) for v in range(n)]


class _Search:
    def __init__(self, n: int, adjacency: Sequence[Sequence[int]]):
        self.n = n
        self.adjacency = adjacency
        self.best_cert: tuple[int, ...] | None = None
        self.best_order: list[int] | None = None
        self.automorphisms: list[list[int]] = []

    def run(self, cells: list[list[int]]) -> None:
        self._visit(_refine(cells, self.adjacency, self.n), [])

    def _visit(self, cells: list[list[int]], prefix: list[int]) -> None:
        target = next((c for c in cells if len(c) > 1), None)
        if target is None:
            order = [c[0] for c in cells]
            cert = _certificate(order, self.adjacency)
            if self.best_cert is None or cert > self.best_cert:
                self.best_cert, self.best_order = cert, order
            elif cert == self.best_cert:
                gamma = [0] * self.n
                for a, b in zip(order, self.best_order):
                    gamma[a] = b
                self.automorphisms.append(gamma)
            return
        ti = cells.index(target)
        done: list[int] = []
        for v in sorted(target):
            if done:
                fixing = [g for g in self.automorphisms if all(g[p] == p for p in prefix)]
                if fixing:
                    roots = _orbit_roots(self.n, fixing)
                    if any(roots[v] == roots[u] for u in done):
                        continue
            child = cells[:ti] + [[v], [u for u in target if u != v]] + cells[ti + 1:]
            self._visit(_refine(child, self.adjacency, self.n), prefix + [v])
            done.append(v)


def canonical_labelling(n: int, adjacency: Sequence[Sequence[int]],
                        colours: Sequence[int] | None = None) -> tuple[list[int], list[list[int]]]:
    """Return ``(order, automorphism generators)``.

    ``order[i]`` is the vertex placed at canonical position ``i``. When
    ``colours`` is given, only colour-preserving relabellings are considered
    and colour classes are ordered by colour value.
    """
    if n == 0:
        return [], []
    if colours is None:
        cells = [list(range(n))]
    else:
        byc: dict[int, list[int]] = {}
        for v in range(n):
            byc.setdefault(colours[v], []).append(v)
        cells = [byc[c] for c in sorted(byc)]
    search = _Search(n, adjacency)
    search.run(cells)
    return search.best_order, search.automorphisms


def canonical_edges(n: int, adjacency: Sequence[Sequence[int]],
                    colours: Sequence[int] | None = None) -> list[tuple[int, int]]:
    order, _ = canonical_labelling(n, adjacency, colours)
    pos = [0] * n
    for i, v in enumerate(order):
        pos[v] = i
    return sorted((min(pos[u], pos[w]), max(pos[u], pos[w]))
                  for u in range(n) for w in adjacency[u] if u < w)


@total_ordering
@dataclass(frozen=True)
class CanonicalForm:
    """graph6 text of the canonically relabelled graph; equal iff isomorphic."""

    key: bytes

    def __lt__(self, other: "CanonicalForm") -> bool:
        return self.key < other.key

    def __str__(self) -> str:
        return self.key.decode("ascii")


def canonical_key(n: int, adjacency: Sequence[Sequence[int]]) -> bytes:
    return encode_graph6(n, canonical_edges(n, adjacency))


def canonical_form(g: BipartiteGraph) -> CanonicalForm:
    return CanonicalForm(canonical_key(g.n, g.adjacency))


def canonical_graph(g: BipartiteGraph) -> BipartiteGraph:
    """The canonical representative of the isomorphism class of ``g``."""
    from .graph import from_edges

    return from_edges(g.n, canonical_edges(g.n, g.adjacency))


def is_isomorphic(a: BipartiteGraph, b: BipartiteGraph) -> bool:
    if a.n != b.n or a.num_edges != b.num_edges or sorted(a.degrees()) != sorted(b.degrees()):
        return False
    return canonical_form(a) == canonical_form(b)


def automorphism_generators(g: BipartiteGraph) -> list[list[int]]:
    return canonical_labelling(g.n, g.adjacency)[1]
