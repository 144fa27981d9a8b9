import pytest

from mdd.canon import canonical_form
from mdd.constructions import (NAMED, build, circulant_halved, claw, complete_bipartite, cycle,
                               delorme_22, delorme_38, elementary, heawood, known_catalog, path,
                               pg2_incidence)
from mdd.errors import DomainError, DuplicateEdge, NotPrime, OffsetParity
from mdd.metrics import GraphSpec, check_spec, defect_analysis, diameter, girth


def test_delorme_22():
    g = delorme_22()
    assert g.n == 22 and set(g.degrees()) == {4}
    assert diameter(g) == 3 and girth(g) == 4
    assert check_spec(g, GraphSpec(4, 3, 4))


def test_delorme_38():
    g = delorme_38()
    assert g.n == 38 and set(g.degrees()) == {5}
    assert diameter(g) == 3 and girth(g) == 4
    assert check_spec(g, GraphSpec(5, 3, 4))


def test_circulant_k33():
    g = circulant_halved(6, [1, -1, 3])
    assert g.num_edges == 9
    assert g.edges == complete_bipartite(3, 3).relabel([0, 2, 4, 1, 3, 5]).edges


@pytest.mark.parametrize("n,offsets", [(22, (1, -1, 7, 11)), (38, (-1, 1, 5, 13, 23))])
def test_circulant_shift_by_two_is_automorphism(n, offsets):
    g = circulant_halved(n, offsets)
    shifted = g.relabel([(x + 2) % n for x in range(n)])
    assert shifted.edges == g.edges
    assert canonical_form(shifted) == canonical_form(g)


def test_circulant_errors():
    with pytest.raises(OffsetParity):
        circulant_halved(10, [1, 2])
    with pytest.raises(DuplicateEdge):
        circulant_halved(10, [1, 1])
    with pytest.raises(DuplicateEdge):
        circulant_halved(6, [3, -3])
    with pytest.raises(DomainError):
        circulant_halved(7, [1])


@pytest.mark.parametrize("q", [2, 3, 5])
def test_pg2(q):
    g = pg2_incidence(q)
    m = q * q + q + 1
    assert g.n == 2 * m
    assert g.num_edges == m * (q + 1)
    assert set(g.degrees()) == {q + 1}
    assert girth(g) == 6 and diameter(g) == 3
    assert defect_analysis(g).defect == 0


def test_pg2_rejects_prime_powers():
    with pytest.raises(NotPrime):
        pg2_incidence(4)


def test_elementary_families():
    assert check_spec(cycle(10), GraphSpec(2, 5, 0))
    assert check_spec(complete_bipartite(4, 2), GraphSpec(4, 2, 2))
    assert check_spec(path(5), GraphSpec(2, 5, 4))
    assert elementary("path", 3).edges == path(3).edges
    with pytest.raises(DomainError):
        elementary("wheel", 5)
    with pytest.raises(DomainError):
        cycle(5)
    with pytest.raises(DomainError):
        complete_bipartite(1, 2)


def test_known_catalog_matches_claims():
    cat = known_catalog()
    assert set(cat) == set(NAMED)
    for name, g in cat.items():
        spec = NAMED[name][1]
        a = defect_analysis(g)
        assert (a.delta, a.diameter, a.defect) == (spec.delta, spec.diameter, spec.defect)
    assert check_spec(heawood(), GraphSpec(3, 3, 0))
    assert check_spec(claw(), GraphSpec(3, 2, 2))


@pytest.mark.parametrize("name,n", [("cycle:8", 8), ("path:4", 5), ("kab:3,2", 5), ("pg2:3", 26),
                                    ("circulant:22:1,-1,7,11", 22), ("delorme-38", 38)])
def test_build_by_name(name, n):
    assert build(name).n == n


@pytest.mark.parametrize("name", ["nope", "cycle:x", "kab:1", "circulant:10:2"])
def test_build_errors(name):
    with pytest.raises(DomainError):
        build(name)
