import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from mdd.constructions import complete_bipartite, cycle, delorme_22, delorme_38, heawood
from mdd.errors import BudgetExceeded
from mdd.metrics import GraphSpec
from mdd.structure import (ShortCycle, cycle_partition, cycles_through, intersect,
                           neighbourhood_repeat_failures, repeat_pairing, repeat_set, saturate,
                           short_cycles, theta_find, vertex_repeats, verify_structure)

from conftest import random_connected_bipartite

nx = pytest.importorskip("networkx")


def brute_cycles(g, max_len):
    G = g.to_networkx()
    out = set()
    for c in nx.simple_cycles(G, length_bound=max_len):
        if len(c) >= 3:
            out.add(ShortCycle.from_sequence(c))
    return out


@settings(max_examples=40, deadline=None)
@given(st.integers(4, 14), st.integers(0, 10**6), st.integers(3, 5))
def test_short_cycles_match_networkx(n, seed, D):
    g = random_connected_bipartite(random.Random(seed), n, 0.3)
    assert set(short_cycles(g, D)) == brute_cycles(g, 2 * D - 2)


def test_short_cycle_normalisation():
    a = ShortCycle.from_sequence([3, 4, 1, 2])
    b = ShortCycle.from_sequence([1, 4, 3, 2])
    assert a == b and a.vertices[0] == 1
    assert a.length == 4 and a.antipode(1) == 3


def test_intersection_paths():
    c1 = ShortCycle.from_sequence([0, 1, 2, 3])
    c2 = ShortCycle.from_sequence([0, 1, 4, 5])
    c3 = ShortCycle.from_sequence([6, 7, 8, 9])
    i = intersect(c1, c2)
    assert i.is_path and i.length == 1
    assert intersect(c1, c3).empty


def test_short_cycle_budget():
    with pytest.raises(BudgetExceeded):
        short_cycles(complete_bipartite(5, 5), 3, cap=10)


def test_delorme_22_structure():
    g = delorme_22()
    cycles = short_cycles(g, 3)
    assert len(cycles) == 11
    for v in range(g.n):
        assert len(cycles_through(cycles, v)) in (2, 3)
        assert saturate(g, 3, v, cycles).label() == "TypeII(1)"
    assert cycle_partition(g, 3, cycles).counts() == {"S_D1": 0, "S_D2": 11, "S_D3": 0}
    rep, problems = repeat_pairing(g, 3, cycles)
    assert not problems
    for c, r in rep.items():
        assert rep[r] == c


def test_delorme_38_structure():
    r = verify_structure(delorme_38(), GraphSpec(5, 3, 4))
    assert r.ok and r.applicable and r.girth_ok and r.cor45_ok
    assert r.partition == {"S_D1": 0, "S_D2": 19, "S_D3": 0}


def test_repeats_in_delorme_22():
    g = delorme_22()
    for v in range(g.n):
        recs = vertex_repeats(g, 3, v)
        assert {r.repeat for r in recs} == repeat_set(g, 3, v)
        for r in recs:
            assert len(r.witness_paths) == r.multiplicity + 1
    assert neighbourhood_repeat_failures(g, 3) == []


def brute_theta(g, length):
    """Every pair of degree>=3 vertices with three internally disjoint paths."""
    G = g.to_networkx()
    pairs = set()
    for a, b in itertools.combinations(range(g.n), 2):
        if g.degree(a) < 3 or g.degree(b) < 3:
            continue
        paths = [p for p in nx.all_simple_paths(G, a, b, cutoff=length) if len(p) == length + 1]
        for x, y, z in itertools.combinations(paths, 3):
            ix, iy, iz = set(x[1:-1]), set(y[1:-1]), set(z[1:-1])
            if not (ix & iy or ix & iz or iy & iz):
                pairs.add((a, b))
                break
    return pairs


@pytest.mark.parametrize("g,length", [(complete_bipartite(3, 3), 2), (heawood(), 2),
                                      (heawood(), 3), (delorme_22(), 2), (delorme_22(), 3)])
def test_theta_find_matches_brute_force(g, length):
    found = theta_find(g, length)
    assert {(t.a, t.b) for t in found} == brute_theta(g, length)
    for t in found:
        inner = [set(p[1:-1]) for p in t.paths]
        assert all(len(p) == length + 1 for p in t.paths)
        assert not (inner[0] & inner[1] or inner[0] & inner[2] or inner[1] & inner[2])


def test_cycle_host_is_unconstrained():
    # every vertex of C6 lies on 0 short cycles (D = 3) or 1 (D = 4)
    r = verify_structure(cycle(6), GraphSpec(2, 3, 0))
    assert set(r.vertex_types) == {"Unconstrained"} and not r.ok
    r = verify_structure(cycle(6), GraphSpec(2, 4, 0))
    assert not r.ok


def test_structure_json_is_stable():
    r = verify_structure(delorme_22(), GraphSpec(4, 3, 4))
    assert r.to_json() == verify_structure(delorme_22(), GraphSpec(4, 3, 4)).to_json()
    assert set(r.to_dict()) == {"applicable", "girth_ok", "vertex_types", "cor45_ok",
                                "partition", "repeat_pairing_ok", "violations", "notes"}


def test_irregular_host_is_exempt(cat):
    irregular = [g for g in cat(3, 3, 4).members if len(set(g.degrees())) > 1]
    assert len(irregular) == 2
    for g in irregular:
        r = verify_structure(g, GraphSpec(3, 3, 4))
        assert not r.applicable and r.ok
        # the regularity hypothesis matters: the repeat condition genuinely fails here
        assert not r.cor45_ok
