import pytest

from mdd.errors import Disconnected, NotBipartite, NotSimple
from mdd.graph import from_adjacency, from_edges, two_colouring


def test_from_edges_builds_parts():
    g = from_edges(4, [(0, 1), (1, 2), (2, 3)])
    assert g.part(0) == [0, 2]
    assert g.part(1) == [1, 3]
    assert g.edges == ((0, 1), (1, 2), (2, 3))
    assert g.num_edges == 3


@pytest.mark.parametrize("edges,exc", [
    ([(0, 0), (0, 1)], NotSimple),
    ([(0, 1), (1, 0)], NotSimple),
    ([(0, 1), (1, 2), (2, 0)], NotBipartite),
    ([(0, 1)], Disconnected),
])
def test_from_edges_rejects(edges, exc):
    with pytest.raises(exc):
        from_edges(3 if exc is not NotSimple else 2, edges)


def test_single_vertex():
    g = from_edges(1, [])
    assert g.n == 1 and g.num_edges == 0


def test_relabel_and_adjacency_roundtrip():
    g = from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)])
    h = g.relabel([5, 4, 3, 2, 1, 0])
    assert h.num_edges == 6
    assert from_adjacency([list(a) for a in g.adjacency]).edges == g.edges


def test_two_colouring_odd_cycle():
    assert two_colouring(3, [[1, 2], [0, 2], [0, 1]]) is None


def test_to_networkx():
    nx = pytest.importorskip("networkx")
    g = from_edges(4, [(0, 1), (1, 2), (2, 3)])
    assert nx.is_isomorphic(g.to_networkx(), nx.path_graph(4))
