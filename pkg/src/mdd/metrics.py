"""Moore bipartite bound arithmetic and the statistics defining a class."""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass

from .errors import DefectNegative, DomainError
from .graph import BipartiteGraph


@dataclass(frozen=True)
class GraphSpec:
    """Target class of bipartite (delta, diameter, -defect)-graphs."""

    delta: int
    diameter: int
    defect: int

    def __post_init__(self):
        if self.delta < 2 or self.diameter < 2:
            raise DomainError("GraphSpec needs delta >= 2 and diameter >= 2")
        if self.defect < 0:
            raise DomainError("defect must be non-negative")

    @property
    def order(self) -> int:
        return moore_bound(self.delta, self.diameter) - self.defect

    def __str__(self) -> str:
        return f"({self.delta},{self.diameter},-{self.defect})"


def moore_bound(delta: int, diameter: int) -> int:
    """2 * (1 + (delta-1) + ... + (delta-1)**(diameter-1)), exactly."""
    if delta < 2 or diameter < 2:
        raise DomainError("the Moore bipartite bound needs delta >= 2 and diameter >= 2")
    r = delta - 1
    if r == 1:
        return 2 * diameter
    return 2 * (r ** diameter - 1) // (r - 1)


def bfs_distances(g: BipartiteGraph, source: int) -> list[int]:
    dist = [-1] * g.n
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        du = dist[u] + 1
        for w in g.adjacency[u]:
            if dist[w] < 0:
                dist[w] = du
                queue.append(w)
    return dist


def distance_matrix(g: BipartiteGraph) -> list[list[int]]:
    return [bfs_distances(g, v) for v in range(g.n)]


def eccentricity(g: BipartiteGraph, v: int) -> int:
    return max(bfs_distances(g, v))


def diameter(g: BipartiteGraph) -> int:
    return max(eccentricity(g, v) for v in range(g.n))


def girth(g: BipartiteGraph) -> int | None:
    """Length of a shortest cycle, or None for a tree (acyclic)."""
    if g.num_edges == g.n - 1:
        return None
    best = None
    for s in range(g.n):
        dist = [-1] * g.n
        parent = [-1] * g.n
        dist[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            if best is not None and 2 * dist[u] >= best:
                break
            for w in g.adjacency[u]:
                if dist[w] < 0:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue.append(w)
                elif w != parent[u]:
                    length = dist[u] + dist[w] + 1
                    if best is None or length < best:
                        best = length
    return best


@dataclass(frozen=True)
class DegreeProfile:
    min: int
    max: int
    is_regular: bool


def degree_profile(g: BipartiteGraph) -> DegreeProfile:
    degs = g.degrees()
    lo, hi = min(degs), max(degs)
    return DegreeProfile(lo, hi, lo == hi)


@dataclass(frozen=True)
class DefectAnalysis:
    delta: int
    diameter: int
    order: int
    defect: int


def defect_analysis(g: BipartiteGraph) -> DefectAnalysis:
    if g.n < 3:
        raise DomainError("defect needs max degree >= 2 and diameter >= 2")
    delta = degree_profile(g).max
    diam = diameter(g)
    bound = moore_bound(delta, diam)
    if g.n > bound:
        raise DefectNegative(f"order {g.n} exceeds M^b({delta},{diam}) = {bound}")
    return DefectAnalysis(delta, diam, g.n, bound - g.n)


@dataclass
class SpecCheck:
    ok: bool
    failures: list[str]

    def __bool__(self) -> bool:
        return self.ok


def check_spec(g: BipartiteGraph, spec: GraphSpec) -> SpecCheck:
    """Membership in the class of bipartite (delta, D, -defect)-graphs.

    Maximum degree must equal ``spec.delta``; order and diameter are exact.
    """
    failures = []
    prof = degree_profile(g)
    if prof.max != spec.delta:
        failures.append(f"degree: max degree {prof.max} != {spec.delta}")
    if g.n != spec.order:
        failures.append(f"order: {g.n} != {spec.order}")
    diam = diameter(g)
    if diam != spec.diameter:
        failures.append(f"diameter: {diam} != {spec.diameter}")
    return SpecCheck(not failures, failures)


def distance_parity_ok(g: BipartiteGraph, diam: int | None = None) -> bool:
    """Same-part distances even, cross-part odd, and the side whose parity
    differs from the diameter's never exceeds diameter - 1."""
    if diam is None:
        diam = diameter(g)
    for u in range(g.n):
        dist = bfs_distances(g, u)
        for v in range(g.n):
            same = g.parts[u] == g.parts[v]
            if (dist[v] % 2 == 0) != same:
                return False
            if dist[v] % 2 != diam % 2 and dist[v] > diam - 1:
                return False
    return True


def report(g: BipartiteGraph) -> dict:
    """JSON-ready summary; numbers as decimal strings."""
    a = defect_analysis(g)
    gi = girth(g)
    return {
        "delta": str(a.delta),
        "diameter": str(a.diameter),
        "order": str(a.order),
        "defect": str(a.defect),
        "regular": degree_profile(g).is_regular,
        "girth": "acyclic" if gi is None else str(gi),
    }


def report_json(g: BipartiteGraph) -> str:
    return json.dumps(report(g), sort_keys=True)
