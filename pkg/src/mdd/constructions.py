"""Builders for the named extremal graphs and small parameterised families."""

from __future__ import annotations

from itertools import product
from typing import Sequence

from .errors import DomainError, DuplicateEdge, NotPrime, OffsetParity
from .graph import BipartiteGraph, from_edges
from .metrics import GraphSpec, check_spec


def circulant_halved(n: int, offsets: Sequence[int]) -> BipartiteGraph:
    """Vertex set Z/nZ; every even x is joined to x + o for each offset o.

    Odd offsets keep the parity classes as the two parts.
    """
    if n <= 0 or n % 2:
        raise DomainError("circulant_halved needs a positive even n")
    edges = set()
    for o in offsets:
        if o % 2 == 0:
            raise OffsetParity(f"offset {o} is even; the graph would not be bipartite")
    for x in range(0, n, 2):
        for o in offsets:
            e = (x, (x + o) % n)
            key = (min(e), max(e))
            if key in edges:
                raise DuplicateEdge(f"offsets {list(offsets)} produce {key} twice")
            edges.add(key)
    return from_edges(n, sorted(edges))


def _is_prime(q: int) -> bool:
    if q < 2:
        return False
    f = 2
    while f * f <= q:
        if q % f == 0:
            return False
        f += 1
    return True


def _projective_points(q: int) -> list[tuple[int, int, int]]:
    """Normalised homogeneous coordinates: first non-zero entry equals 1."""
    pts = []
    for v in product(range(q), repeat=3):
        first = next((c for c in v if c), 0)
        if first == 1:
            pts.append(v)
    return pts


def pg2_incidence(q: int) -> BipartiteGraph:
    """Point-line incidence graph of PG(2, q) for prime q.

    Points are 0..m-1 and lines m..2m-1 with m = q^2 + q + 1; lines are
    indexed by the same normalised coordinate vectors (duality).
    """
    if not _is_prime(q):
        raise NotPrime(f"{q} is not prime")
    pts = _projective_points(q)
    m = len(pts)
    edges = []
    for i, p in enumerate(pts):
        for j, line in enumerate(pts):
            if (p[0] * line[0] + p[1] * line[1] + p[2] * line[2]) % q == 0:
                edges.append((i, m + j))
    return from_edges(2 * m, edges)


def cycle(k: int) -> BipartiteGraph:
    if k < 4 or k % 2:
        raise DomainError("cycle(k) needs an even k >= 4")
    return from_edges(k, [(i, (i + 1) % k) for i in range(k)])


def path(k: int) -> BipartiteGraph:
    """Path of length k (k edges, k + 1 vertices)."""
    if k < 1:
        raise DomainError("path(k) needs k >= 1")
    return from_edges(k + 1, [(i, i + 1) for i in range(k)])


def complete_bipartite(a: int, b: int) -> BipartiteGraph:
    if not a >= b >= 1:
        raise DomainError("complete_bipartite(a, b) needs a >= b >= 1")
    return from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def elementary(kind: str, *params: int) -> BipartiteGraph:
    builders = {"cycle": cycle, "path": path, "complete_bipartite": complete_bipartite}
    if kind not in builders:
        raise DomainError(f"unknown elementary family {kind!r}")
    return builders[kind](*params)


DELORME_22_OFFSETS = (1, -1, 7, 11)
DELORME_38_OFFSETS = (-1, 1, 5, 13, 23)


def delorme_22() -> BipartiteGraph:
    return circulant_halved(22, DELORME_22_OFFSETS)


def delorme_38() -> BipartiteGraph:
    return circulant_halved(38, DELORME_38_OFFSETS)


def heawood() -> BipartiteGraph:
    return pg2_incidence(2)


def claw() -> BipartiteGraph:
    return complete_bipartite(3, 1)


# name -> (builder, the class the graph is claimed to belong to)
NAMED: dict[str, tuple] = {
    "delorme-22": (delorme_22, GraphSpec(4, 3, 4)),
    "delorme-38": (delorme_38, GraphSpec(5, 3, 4)),
    "heawood": (heawood, GraphSpec(3, 3, 0)),
    "claw": (claw, GraphSpec(3, 2, 2)),
}


def build(name: str) -> BipartiteGraph:
    """Build a construction by name.

    Accepts the named graphs plus ``cycle:K``, ``path:K``, ``kab:A,B``,
    ``pg2:Q`` and ``circulant:N:o1,o2,...``.
    """
    if name in NAMED:
        return NAMED[name][0]()
    kind, _, arg = name.partition(":")
    try:
        if kind == "cycle":
            return cycle(int(arg))
        if kind == "path":
            return path(int(arg))
        if kind == "kab":
            a, b = (int(x) for x in arg.split(","))
            return complete_bipartite(a, b)
        if kind == "pg2":
            return pg2_incidence(int(arg))
        if kind == "circulant":
            n, _, offs = arg.partition(":")
            return circulant_halved(int(n), [int(x) for x in offs.split(",")])
    except ValueError as exc:
        if isinstance(exc, DomainError):
            raise
        raise DomainError(f"bad parameters in construction name {name!r}") from exc
    raise DomainError(f"unknown construction {name!r}")


def known_catalog() -> dict[str, BipartiteGraph]:
    """All named constructions, each checked against its claimed class."""
    out = {}
    for name, (builder, spec) in NAMED.items():
        g = builder()
        chk = check_spec(g, spec)
        if not chk:
            raise AssertionError(f"{name} fails {spec}: {chk.failures}")
        out[name] = g
    return out
