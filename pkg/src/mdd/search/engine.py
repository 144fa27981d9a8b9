"""Exhaustive generators for bipartite graphs of fixed order, max degree and diameter.

Two independent generation orders are provided:

``bfs``     vertex augmentation in breadth-first labelling. Vertices are
            closed one at a time in index order; when vertex v closes it
            picks all of its remaining neighbours among later vertices.
            Untouched vertices are interchangeable, so v may only use them
            as a prefix; the same holds inside each class of open vertices
            with equal neighbourhoods. Vertex 0 has maximum degree.

``matrix``  genbg-style row-by-row construction of the biadjacency matrix
            of the smaller part. Rows are kept lexicographically
            non-increasing and, inside every block of columns that agree on
            all rows placed so far, each row's ones form a prefix (double
            lexicographic order, valid for every matrix up to row and
            column permutation).

Both prune with the degree cap (exact degree when regularity is forced), an
optional girth floor, and a lower bound on distances that treats all
unfinished vertices as mutually adjacent. Neither does isomorph rejection
on the fly; the caller dedupes by canonical form.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator


@dataclass(frozen=True)
class Problem:
    n: int
    delta: int
    diameter: int
    regular: bool = False
    girth_floor: int = 4

    @property
    def min_degree(self) -> int:
        return self.delta if self.regular else 1


class Budget:
    def __init__(self, limit: int | None):
        self.limit = limit
        self.used = 0

    def tick(self) -> bool:
        self.used += 1
        return self.limit is not None and self.used > self.limit


class OutOfBudget(Exception):
    pass


# ---------------------------------------------------------------- shared pruning

def distance_at_least(adj: list[list[int]], u: int, w: int, bound: int) -> bool:
    """True when d(u, w) >= bound in the current partial graph."""
    if bound <= 1:
        return True
    seen = {u}
    frontier = [u]
    for _ in range(bound - 1):
        nxt = []
        for x in frontier:
            for y in adj[x]:
                if y == w:
                    return False
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        if not nxt:
            return True
        frontier = nxt
    return True


def _masks(adj: list[list[int]]) -> list[int]:
    out = []
    for nbrs in adj:
        m = 0
        for w in nbrs:
            m |= 1 << w
        out.append(m)
    return out


def _expand(masks: list[int], frontier: int) -> int:
    out = 0
    while frontier:
        low = frontier & -frontier
        out |= masks[low.bit_length() - 1]
        frontier ^= low
    return out


def lower_bound_violation(adj: list[list[int]], closed: list[bool], part: list[int],
                          sources: list[int], diameter: int) -> bool:
    """Can the diameter still be met?

    Distances only shrink as edges are added, and a closed vertex gains no
    more edges, so BFS where every open vertex reaches every other open
    vertex in one step gives a lower bound on final distances. A pair is
    hopeless when that bound, rounded up to the pair's parity, exceeds the
    target diameter.
    """
    n = len(adj)
    masks = _masks(adj)
    full = (1 << n) - 1
    opens = side0 = side1 = 0
    for x in range(n):
        bit = 1 << x
        if not closed[x]:
            opens |= bit
        if part[x] == 0:
            side0 |= bit
        elif part[x] == 1:
            side1 |= bit
    for s in sources:
        seen = frontier = 1 << s
        hub = False
        depth = 0
        while depth < diameter:
            nxt = _expand(masks, frontier)
            if not hub and frontier & opens:
                hub = True
                nxt |= opens
            nxt &= ~seen
            if not nxt:
                break
            seen |= nxt
            frontier = nxt
            depth += 1
        if seen != full:
            return True
        if part[s] >= 0 and depth == diameter:
            # layer D vertices of the wrong parity would need D + 1
            same = side0 if part[s] == 0 else side1
            other = side1 if part[s] == 0 else side0
            if frontier & (same if diameter % 2 else other):
                return True
    return False


def _diameter_is(adj: list[list[int]], n: int, target: int) -> bool:
    masks = _masks(adj)
    full = (1 << n) - 1
    seen_target = False
    for s in range(n):
        seen = frontier = 1 << s
        ecc = 0
        while seen != full:
            frontier = _expand(masks, frontier) & ~seen
            if not frontier:
                return False
            ecc += 1
            if ecc > target:
                return False
            seen |= frontier
        seen_target |= ecc == target
    return seen_target


# ---------------------------------------------------------------- bfs strategy

class BfsSearch:
    """Breadth-first vertex augmentation."""

    def __init__(self, prob: Problem, budget: Budget | None = None):
        self.p = prob
        self.budget = budget or Budget(None)
        n = prob.n
        self.adj: list[list[int]] = [[] for _ in range(n)]
        self.part = [-1] * n
        self.closed = [False] * n
        self.fresh = 1 if n else 0
        if n:
            self.part[0] = 0
        self.part_count = [1, 0]

    # state snapshots are used to hand subtrees to workers
    def snapshot(self, v: int) -> tuple:
        edges = [(a, b) for a in range(self.p.n) for b in self.adj[a] if a < b]
        return (v, self.fresh, tuple(self.part), tuple(edges))

    @classmethod
    def from_snapshot(cls, prob: Problem, snap: tuple, budget: Budget | None = None) -> "BfsSearch":
        v, fresh, part, edges = snap
        s = cls(prob, budget)
        for a, b in edges:
            s.adj[a].append(b)
            s.adj[b].append(a)
        s.part = list(part)
        s.fresh = fresh
        s.part_count = [sum(1 for x in part if x == 0), sum(1 for x in part if x == 1)]
        for x in range(v):
            s.closed[x] = True
        return s

    def _add(self, u: int, w: int) -> None:
        self.adj[u].append(w)
        self.adj[w].append(u)

    def _remove(self, u: int, w: int) -> None:
        self.adj[u].pop()
        self.adj[w].pop()

    def run(self, emit: Callable[[list[list[int]]], None], start: int = 0,
            stop_at: int | None = None, frontier: list | None = None) -> None:
        """Explore from vertex ``start``. With ``stop_at``, states reached when
        vertex ``stop_at`` is next to close are appended to ``frontier``."""
        self.emit = emit
        self.stop_at = stop_at
        self.frontier = frontier
        self._close(start)

    def _close(self, v: int) -> None:
        p = self.p
        if self.budget.tick():
            raise OutOfBudget
        if v == p.n:
            if self.fresh == p.n and _diameter_is(self.adj, p.n, p.diameter):
                self.emit(self.adj)
            return
        if self.stop_at is not None and v == self.stop_at:
            self.frontier.append(self.snapshot(v))
            return
        if v >= self.fresh:
            return  # untouched: the closed prefix would be a component
        have = len(self.adj[v])
        lo = max(have, p.min_degree)
        if v == 0:
            lo = p.delta
        hi = p.delta
        if lo > hi:
            return
        # open vertices with equal neighbourhoods are interchangeable, so each
        # twin class is used as a prefix
        classes: dict[tuple[int, ...], list[int]] = {}
        for w in range(v + 1, self.fresh):
            if self.part[w] != self.part[v] and len(self.adj[w]) < p.delta \
                    and w not in self.adj[v]:
                classes.setdefault(tuple(sorted(self.adj[w])), []).append(w)
        twins = list(classes.values())
        for final in range(lo, hi + 1):
            self._choose(v, twins, 0, final - have)

    def _choose(self, v: int, twins: list[list[int]], i: int, need: int) -> None:
        p = self.p
        # the rest may come from fresh vertices
        if need <= p.n - self.fresh:
            self._attach_fresh(v, need)
        if need == 0:
            return
        for j in range(i, len(twins)):
            taken: list[int] = []
            for w in twins[j][:need]:
                if p.girth_floor > 4 and not distance_at_least(self.adj, v, w, p.girth_floor - 1):
                    break  # the remaining twins are in the same position
                self._add(v, w)
                taken.append(w)
                self._choose(v, twins, j + 1, need - len(taken))
            for w in reversed(taken):
                self._remove(v, w)

    def _attach_fresh(self, v: int, k: int) -> None:
        p = self.p
        side = 1 - self.part[v]
        half = p.n // 2
        if p.regular and self.part_count[side] + k > half:
            return
        start = self.fresh
        for w in range(start, start + k):
            self.part[w] = side
            self._add(v, w)
        self.fresh += k
        self.part_count[side] += k
        self.closed[v] = True
        if self._feasible(v):
            self._close(v + 1)
        self.closed[v] = False
        self.part_count[side] -= k
        self.fresh = start
        for w in range(start + k - 1, start - 1, -1):
            self._remove(v, w)
            self.part[w] = -1

    def _feasible(self, v: int) -> bool:
        p = self.p
        n = p.n
        untouched = n - self.fresh
        spare = 0
        for w in range(v + 1, self.fresh):
            spare += p.delta - len(self.adj[w])
        if untouched and not spare:
            return False
        if p.regular:
            # edges still to place must balance between the two sides
            need = [0, 0]
            for w in range(v + 1, self.fresh):
                need[self.part[w]] += p.delta - len(self.adj[w])
            for side in (0, 1):
                need[side] += p.delta * ((n // 2) - self.part_count[side])
            if need[0] != need[1]:
                return False
        sources = [u for u in range(v + 1) if self.closed[u]]
        return not lower_bound_violation(self.adj, self.closed, self.part, sources[-4:] + [v],
                                         p.diameter)


def bfs_graphs(prob: Problem, budget: Budget | None = None) -> Iterator[list[tuple[int, int]]]:
    out: list[list[tuple[int, int]]] = []

    def emit(adj):
        out.append([(a, b) for a in range(prob.n) for b in adj[a] if a < b])

    BfsSearch(prob, budget).run(emit)
    yield from out


# ---------------------------------------------------------------- matrix strategy

class MatrixSearch:
    """Row-by-row biadjacency construction in double lexicographic order."""

    def __init__(self, prob: Problem, rows: int, budget: Budget | None = None):
        self.p = prob
        self.r = rows
        self.c = prob.n - rows
        self.budget = budget or Budget(None)
        n = prob.n
        self.adj: list[list[int]] = [[] for _ in range(n)]
        self.part = [0] * rows + [1] * self.c
        self.closed = [False] * n
        self.rows: list[tuple[int, ...]] = []

    def col(self, j: int) -> int:
        return self.r + j

    def run(self, emit: Callable[[list[list[int]]], None], stop_at: int | None = None,
            frontier: list | None = None, start_rows: list | None = None) -> None:
        self.emit = emit
        self.stop_at = stop_at
        self.frontier = frontier
        for row in start_rows or []:
            self._place(row)
        self._next_row()

    def _place(self, row: tuple[int, ...]) -> None:
        i = len(self.rows)
        for j in row:
            self.adj[i].append(self.col(j))
            self.adj[self.col(j)].append(i)
        self.rows.append(row)
        self.closed[i] = True
        for j in row:
            if len(self.adj[self.col(j)]) == self.p.delta:
                self.closed[self.col(j)] = True

    def _unplace(self) -> None:
        row = self.rows.pop()
        i = len(self.rows)
        self.closed[i] = False
        for j in reversed(row):
            self.closed[self.col(j)] = False
            self.adj[i].pop()
            self.adj[self.col(j)].pop()

    def _blocks(self) -> list[list[int]]:
        """Maximal runs of columns identical on all rows placed so far."""
        blocks: list[list[int]] = []
        prev = None
        for j in range(self.c):
            sig = self.adj[self.r + j]  # a column's neighbours are exactly its rows
            if sig == prev:
                blocks[-1].append(j)
            else:
                blocks.append([j])
                prev = sig
        return blocks

    def _next_row(self) -> None:
        p = self.p
        if self.budget.tick():
            raise OutOfBudget
        i = len(self.rows)
        if i == self.r:
            if all(len(self.adj[self.col(j)]) >= p.min_degree for j in range(self.c)) \
                    and max(len(a) for a in self.adj) == p.delta \
                    and _diameter_is(self.adj, p.n, p.diameter):
                self.emit(self.adj)
            return
        if self.stop_at is not None and i == self.stop_at:
            self.frontier.append(tuple(self.rows))
            return
        rows_left = self.r - i
        # a column needing more edges than rows remain is dead
        for j in range(self.c):
            if len(self.adj[self.col(j)]) + rows_left < p.min_degree:
                return
        blocks = self._blocks()
        bound = _lex_key(self.rows[-1], self.c) if self.rows else None
        for size in range(p.delta, p.min_degree - 1, -1):
            for row in self._rows_of_size(blocks, size, bound):
                if not self._row_ok(row):
                    continue
                self._place(row)
                if not self._prune(i):
                    self._next_row()
                self._unplace()

    def _rows_of_size(self, blocks: list[list[int]], size: int,
                      bound: int | None) -> Iterator[tuple[int, ...]]:
        """Rows with ``size`` ones, prefix-closed inside blocks, lex key <= bound."""
        cap = self.p.delta
        c = self.c
        avail = [sum(1 for j in b if len(self.adj[self.r + j]) < cap) for b in blocks]
        ends = [b[-1] + 1 for b in blocks]

        def rec(bi: int, left: int, acc: list[int], key: int):
            if bound is not None:
                shift = c - (ends[bi - 1] if bi else 0)
                if key >> shift > bound >> shift:
                    return
            if left == 0:
                yield tuple(acc)
                return
            if bi == len(blocks):
                return
            block = blocks[bi]
            # columns of one block have equal degree, so caps agree
            for take in range(min(left, avail[bi]), -1, -1):
                bits = 0
                for j in block[:take]:
                    bits |= 1 << (c - 1 - j)
                yield from rec(bi + 1, left - take, acc + block[:take], key | bits)

        yield from rec(0, size, [], 0)

    def _row_ok(self, row: tuple[int, ...]) -> bool:
        g = self.p.girth_floor
        if g <= 4:
            return True
        cols = [self.col(j) for j in row]
        for a in range(len(cols)):
            for b in range(a + 1, len(cols)):
                if not distance_at_least(self.adj, cols[a], cols[b], g - 2):
                    return False
        return True

    def _prune(self, i: int) -> bool:
        sources = [i] + [self.col(j) for j in self.rows[-1] if self.closed[self.col(j)]]
        return lower_bound_violation(self.adj, self.closed, self.part, sources, self.p.diameter)


def _lex_key(row: tuple[int, ...], c: int) -> int:
    """Row as a 0/1 vector over the columns, read as a binary number (column 0 high)."""
    key = 0
    for j in row:
        key |= 1 << (c - 1 - j)
    return key


def matrix_row_splits(prob: Problem) -> list[int]:
    """Sizes of the row part to try: the smaller side of each split."""
    if prob.regular:
        return [prob.n // 2] if prob.n % 2 == 0 else []
    return list(range(1, prob.n // 2 + 1))
