from __future__ import annotations

import random

import pytest

from mdd.graph import from_edges
from mdd.metrics import GraphSpec
from mdd.search import SearchOptions, enumerate_graphs

_CATALOGUES: dict = {}


def catalogue(delta, diameter, defect, **kw):
    """Session-wide cache; the big searches are expensive."""
    key = (delta, diameter, defect, tuple(sorted(kw.items())))
    if key not in _CATALOGUES:
        _CATALOGUES[key] = enumerate_graphs(SearchOptions(GraphSpec(delta, diameter, defect), **kw))
    return _CATALOGUES[key]


@pytest.fixture
def cat():
    return catalogue


def random_connected_bipartite(rng: random.Random, n: int, extra: float = 0.3):
    """Random spanning tree plus random cross edges."""
    side = [0] * n
    edges = set()
    for v in range(1, n):
        u = rng.randrange(v)
        side[v] = 1 - side[u]
        edges.add((u, v))
    for a in range(n):
        for b in range(a + 1, n):
            if side[a] != side[b] and rng.random() < extra:
                edges.add((a, b))
    return from_edges(n, sorted(edges))
