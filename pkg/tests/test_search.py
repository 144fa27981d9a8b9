import json
from collections import deque

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from mdd.canon import canonical_form
from mdd.constructions import claw, heawood
from mdd.errors import BudgetExceeded, CorruptCatalogue, DomainError, TargetTooLarge
from mdd.metrics import GraphSpec, check_spec, girth
from mdd.search import (SearchOptions, cross_validate, enumerate_graphs, load_catalogue,
                        oracle_keys, save_catalogue)
from mdd.search.engine import Problem, _diameter_is, distance_at_least, lower_bound_violation


def run(*spec, **kw):
    return enumerate_graphs(SearchOptions(GraphSpec(*spec), **kw))


@pytest.mark.parametrize("strategy", ["matrix", "bfs"])
@pytest.mark.parametrize("spec,count,regular", [
    ((3, 3, 4), 4, 2), ((3, 2, 2), 1, 0), ((3, 3, 2), 1, 1), ((3, 3, 1), 0, 0),
    ((3, 3, 3), 0, 0), ((3, 3, 0), 1, 1), ((4, 2, 2), 1, 0),
])
def test_small_catalogues(strategy, spec, count, regular):
    c = run(*spec, strategy=strategy)
    assert c.complete
    assert len(c) == count and c.regular_count() == regular
    for g in c.members:
        assert check_spec(g, GraphSpec(*spec))


def test_known_members():
    assert canonical_form(run(3, 2, 2).members[0]) == canonical_form(claw())
    assert canonical_form(run(3, 3, 0).members[0]) == canonical_form(heawood())


def test_members_strictly_increasing():
    keys = run(3, 3, 4).keys()
    assert keys == sorted(keys) and len(set(keys)) == len(keys)
    forms = [canonical_form(g) for g in run(3, 3, 4).members]
    assert all(a < b for a, b in zip(forms, forms[1:]))


@pytest.mark.parametrize("spec", [(3, 3, 4), (3, 3, 2), (3, 4, 19), (3, 3, 6)])
def test_jobs_and_strategy_do_not_change_output(spec):
    ref = run(*spec).keys()
    assert run(*spec, jobs=4).keys() == ref
    assert run(*spec, strategy="bfs").keys() == ref
    assert run(*spec, strategy="bfs", jobs=4).keys() == ref


def test_delta_two_is_analytic():
    c = run(2, 6, 5)
    assert len(c) == 1 and c.members[0].n == 7 and c.provenance["strategy"] == "analytic"
    assert len(run(2, 6, 0)) == 1
    assert len(run(2, 6, 3)) == 0


def test_forced_regular_members_meet_girth():
    for g in run(3, 3, 2).members:
        assert girth(g) >= 4


def test_target_too_large():
    with pytest.raises(TargetTooLarge):
        run(5, 3, 4)
    with pytest.raises(TargetTooLarge):
        run(3, 3, 4, max_order=8)


def test_options_validation():
    with pytest.raises(DomainError):
        SearchOptions(GraphSpec(3, 3, 4), jobs=0)
    with pytest.raises(DomainError):
        SearchOptions(GraphSpec(3, 3, 4), budget=0)
    with pytest.raises(DomainError):
        SearchOptions(GraphSpec(3, 3, 4), strategy="dfs")


def test_budget_returns_partial():
    with pytest.raises(BudgetExceeded) as info:
        run(3, 3, 4, budget=3)
    partial = info.value.partial
    assert not partial.complete
    assert set(partial.keys()) <= set(run(3, 3, 4).keys())


def test_checkpoint_resume(tmp_path):
    ck = str(tmp_path / "ck.json")
    with pytest.raises(BudgetExceeded):
        run(3, 3, 4, budget=8, checkpoint_path=ck)
    saved = json.loads(open(ck).read())
    assert saved["done"]
    full = run(3, 3, 4, checkpoint_path=ck)
    assert full.complete and full.keys() == run(3, 3, 4).keys()


def test_save_load_roundtrip(tmp_path):
    c = run(3, 3, 4)
    p = tmp_path / "cat"
    save_catalogue(c, p)
    back = load_catalogue(p)
    assert back.keys() == c.keys() and back.complete and back.spec == c.spec
    assert back.provenance == c.provenance
    head = p.read_text().splitlines()[0]
    assert head.startswith("#mdd-catalogue v1 delta=3 D=3 defect=4 complete=1 sha=")
    assert json.loads((tmp_path / "cat.meta.json").read_text())["count"] == 4


def test_save_is_deterministic(tmp_path):
    save_catalogue(run(3, 3, 4), tmp_path / "a")
    save_catalogue(run(3, 3, 4, jobs=4), tmp_path / "b")
    assert (tmp_path / "a").read_bytes() == (tmp_path / "b").read_bytes()


def test_tampered_member(tmp_path):
    p = tmp_path / "cat"
    save_catalogue(run(3, 3, 4), p)
    lines = p.read_text().splitlines()
    lines[2] = lines[2][:-1] + ("A" if lines[2][-1] != "A" else "B")
    p.write_text("\n".join(lines) + "\n")
    with pytest.raises(CorruptCatalogue):
        load_catalogue(p)


def test_mismatched_spec_header(tmp_path):
    p = tmp_path / "cat"
    save_catalogue(run(3, 3, 4), p)
    with pytest.raises(CorruptCatalogue):
        load_catalogue(p, spec=GraphSpec(3, 3, 2))
    text = p.read_text().replace("defect=4", "defect=2", 1)
    p.write_text(text)
    with pytest.raises(CorruptCatalogue):
        load_catalogue(p)


def test_malformed_header(tmp_path):
    p = tmp_path / "cat"
    p.write_text("I?o{@CQOW\n")
    with pytest.raises(CorruptCatalogue):
        load_catalogue(p)


@pytest.mark.parametrize("spec", [(3, 3, 4), (3, 2, 2), (3, 3, 2), (3, 4, 20), (2, 4, 3)])
def test_cross_validate(spec):
    assert cross_validate(GraphSpec(*spec))
    assert cross_validate(GraphSpec(*spec), strategy="bfs")


def test_oracle_counts():
    # (3,3,-4): four graphs on ten vertices, independent of the pruned search
    assert len(oracle_keys(GraphSpec(3, 3, 4))) == 4
    with pytest.raises(TargetTooLarge):
        cross_validate(GraphSpec(3, 4, 4))


def test_distance_helpers():
    adj = [[1], [0, 2], [1, 3], [2]]
    assert distance_at_least(adj, 0, 3, 3)
    assert not distance_at_least(adj, 0, 3, 4)
    # everything closed: the bound is the true distance
    assert lower_bound_violation(adj, [True] * 4, [0, 1, 0, 1], [0], 2)
    assert not lower_bound_violation(adj, [True] * 4, [0, 1, 0, 1], [0], 3)


def reference_lower_bound(adj, closed, part, sources, diameter):
    """Plain BFS version: open vertices are one step from each other."""
    n = len(adj)
    opens = [x for x in range(n) if not closed[x]]
    for s in sources:
        dist = [-1] * n
        dist[s] = 0
        queue = deque([s])
        hub_done = False
        while queue:
            u = queue.popleft()
            for w in adj[u] + (opens if not closed[u] and not hub_done else []):
                if dist[w] < 0:
                    dist[w] = dist[u] + 1
                    queue.append(w)
            hub_done |= not closed[u]
        for w in range(n):
            d = dist[w]
            if d < 0:
                return True
            if part[w] >= 0 and part[s] >= 0 and (d - (part[w] != part[s])) % 2:
                d += 1
            if d > diameter:
                return True
    return False


@st.composite
def partial_graphs(draw):
    n = draw(st.integers(2, 10))
    part = draw(st.lists(st.sampled_from([-1, 0, 1]), min_size=n, max_size=n))
    adj = [[] for _ in range(n)]
    for a in range(n):
        for b in range(a + 1, n):
            if part[a] != part[b] and -1 not in (part[a], part[b]) and draw(st.booleans()):
                adj[a].append(b)
                adj[b].append(a)
    closed = draw(st.lists(st.booleans(), min_size=n, max_size=n))
    sources = draw(st.lists(st.integers(0, n - 1), min_size=1, max_size=3))
    return adj, closed, part, sources, draw(st.integers(1, 6))


@settings(max_examples=300, deadline=None)
@given(partial_graphs())
def test_lower_bound_matches_reference(case):
    assert lower_bound_violation(*case) == reference_lower_bound(*case)


@settings(max_examples=200, deadline=None)
@given(partial_graphs(), st.integers(1, 6))
def test_diameter_check_matches_networkx(case, target):
    adj = case[0]
    g = nx.Graph()
    g.add_nodes_from(range(len(adj)))
    g.add_edges_from((a, b) for a in range(len(adj)) for b in adj[a])
    want = nx.is_connected(g) and nx.diameter(g) == target
    assert _diameter_is(adj, len(adj), target) == want


def test_problem_min_degree():
    assert Problem(10, 3, 3, regular=True).min_degree == 3
    assert Problem(10, 3, 3).min_degree == 1
