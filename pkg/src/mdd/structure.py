"""Short cycles, repeats, vertex types and theta subgraphs of defect-4 hosts.

Every routine works on an arbitrary connected bipartite graph. Hosts that do
not have the structure of a bipartite (d, D, -4)-graph show up as failed
report entries (or StructureViolation from the single-cycle routines), not
as crashes.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

from .errors import BudgetExceeded, PartitionViolation, PreconditionFailed, StructureViolation
from .graph import BipartiteGraph
from .metrics import GraphSpec, bfs_distances, degree_profile, girth

DEFAULT_CYCLE_CAP = 200_000


@dataclass(frozen=True)
class ShortCycle:
    """A cycle given by its cyclic vertex order.

    Stored rotated so the least vertex comes first and reflected so the
    second vertex is smaller than the last; equal cycles compare equal.
    """

    vertices: tuple[int, ...]
    vset: frozenset = field(init=False, repr=False, compare=False)
    eset: frozenset = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        vs = self.vertices
        object.__setattr__(self, "vset", frozenset(vs))
        k = len(vs)
        object.__setattr__(self, "eset", frozenset(
            (min(vs[i], vs[(i + 1) % k]), max(vs[i], vs[(i + 1) % k])) for i in range(k)))

    @classmethod
    def from_sequence(cls, seq: Sequence[int]) -> "ShortCycle":
        seq = list(seq)
        i = seq.index(min(seq))
        seq = seq[i:] + seq[:i]
        if len(seq) > 2 and seq[1] > seq[-1]:
            seq = [seq[0]] + seq[:0:-1]
        return cls(tuple(seq))

    @property
    def length(self) -> int:
        return len(self.vertices)

    def antipode(self, v: int) -> int:
        """The vertex half way round the cycle from ``v``."""
        i = self.vertices.index(v)
        return self.vertices[(i + self.length // 2) % self.length]

    def to_list(self) -> list[int]:
        return list(self.vertices)


@dataclass(frozen=True)
class Intersection:
    vertices: frozenset
    edges: frozenset

    @property
    def empty(self) -> bool:
        return not self.vertices

    @property
    def is_path(self) -> bool:
        if not self.vertices or len(self.edges) != len(self.vertices) - 1:
            return False
        # acyclic with |E| = |V| - 1 iff connected; check connectivity directly
        adj: dict[int, list[int]] = {v: [] for v in self.vertices}
        for a, b in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        start = next(iter(self.vertices))
        seen = {start}
        stack = [start]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == len(self.vertices) and all(len(a) <= 2 for a in adj.values())

    @property
    def length(self) -> int:
        return len(self.edges)


def intersect(a: ShortCycle, b: ShortCycle) -> Intersection:
    return Intersection(a.vset & b.vset, a.eset & b.eset)


def short_cycles(g: BipartiteGraph, diameter: int, cap: int = DEFAULT_CYCLE_CAP,
                 max_length: int | None = None) -> list[ShortCycle]:
    """All cycles of length at most 2*diameter - 2, each listed once."""
    limit = 2 * diameter - 2 if max_length is None else max_length
    adj = g.adjacency
    found: list[ShortCycle] = []
    for s in range(g.n):
        path = [s]
        on_path = [False] * g.n
        on_path[s] = True
        # iterative DFS over vertices greater than s
        stack = [iter([w for w in adj[s] if w > s])]
        while stack:
            nxt = next(stack[-1], None)
            if nxt is None:
                stack.pop()
                on_path[path.pop()] = False
                continue
            path.append(nxt)
            on_path[nxt] = True
            if len(path) >= 3 and s in adj[nxt] and path[1] < nxt:
                found.append(ShortCycle(tuple(path)))
                if len(found) > cap:
                    raise BudgetExceeded(f"more than {cap} short cycles", partial=found)
            if len(path) < limit:
                stack.append(iter([w for w in adj[nxt] if w > s and not on_path[w]]))
            else:
                path.pop()
                on_path[nxt] = False
    found.sort(key=lambda c: (c.length, c.vertices))
    return found


def cycles_through(cycles: Sequence[ShortCycle], v: int) -> list[ShortCycle]:
    return [c for c in cycles if v in c.vset]


# ---------------------------------------------------------------- vertex types

TYPE_I = "TypeI"
TYPE_II = "TypeII"
UNCONSTRAINED = "Unconstrained"


@dataclass(frozen=True)
class VertexType:
    tag: str
    cycles: tuple[ShortCycle, ...]
    ell: int | None = None
    note: str = ""

    def label(self) -> str:
        return f"{self.tag}({self.ell})" if self.tag == TYPE_II else self.tag


def _is_theta_branch(cyc: Sequence[ShortCycle], v: int, k: int) -> bool:
    """True when three cycles form a theta with three k-paths, v a branch vertex."""
    edges = set().union(*(c.eset for c in cyc))
    verts = set().union(*(c.vset for c in cyc))
    if len(edges) != 3 * k or len(verts) != 3 * k - 1:
        return False
    deg: dict[int, int] = {}
    for a, b in edges:
        deg[a] = deg.get(a, 0) + 1
        deg[b] = deg.get(b, 0) + 1
    branch = sorted(x for x, d in deg.items() if d == 3)
    return len(branch) == 2 and v in branch and all(d in (2, 3) for d in deg.values())


def saturate(g: BipartiteGraph, diameter: int, v: int,
             cycles: Sequence[ShortCycle] | None = None) -> VertexType:
    """Identify the short cycles through ``v`` and classify the vertex."""
    if cycles is None:
        cycles = short_cycles(g, diameter)
    sv = tuple(cycles_through(cycles, v))
    full = 2 * diameter - 2
    if len(sv) == 3:
        if all(c.length == full for c in sv) and _is_theta_branch(sv, v, diameter - 1):
            return VertexType(TYPE_I, sv)
        return VertexType(UNCONSTRAINED, sv, note="three short cycles not forming a theta")
    if len(sv) == 2:
        inter = intersect(*sv)
        if inter.is_path and all(c.length == full for c in sv):
            note = "the two cycles form a theta" if inter.length == diameter - 1 else ""
            return VertexType(TYPE_II, sv, inter.length, note)
        return VertexType(UNCONSTRAINED, sv, note="two short cycles not meeting in a path")
    return VertexType(UNCONSTRAINED, sv, note=f"{len(sv)} short cycles")


# ---------------------------------------------------------------- repeats

@dataclass(frozen=True)
class RepeatRecord:
    source: int
    repeat: int
    multiplicity: int
    witness_paths: tuple[tuple[int, ...], ...]


def _path_counts(g: BipartiteGraph, source: int) -> tuple[list[int], list[int]]:
    dist = [-1] * g.n
    count = [0] * g.n
    dist[source], count[source] = 0, 1
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for w in g.adjacency[u]:
            if dist[w] < 0:
                dist[w] = dist[u] + 1
                queue.append(w)
            if dist[w] == dist[u] + 1:
                count[w] += count[u]
    return dist, count


def _shortest_paths(g: BipartiteGraph, dist: list[int], source: int, target: int) -> list[tuple[int, ...]]:
    out: list[tuple[int, ...]] = []

    def back(v: int, suffix: list[int]) -> None:
        if v == source:
            out.append(tuple(reversed(suffix)))
            return
        for w in g.adjacency[v]:
            if dist[w] == dist[v] - 1:
                back(w, suffix + [w])

    back(target, [target])
    return sorted(out)


def vertex_repeats(g: BipartiteGraph, diameter: int, v: int) -> list[RepeatRecord]:
    """Vertices joined to ``v`` by at least two shortest (D-1)-paths."""
    dist, count = _path_counts(g, v)
    out = []
    for x in range(g.n):
        if dist[x] == diameter - 1 and count[x] >= 2:
            out.append(RepeatRecord(v, x, count[x] - 1, tuple(_shortest_paths(g, dist, v, x))))
    return out


def repeat_set(g: BipartiteGraph, diameter: int, v: int) -> set[int]:
    dist, count = _path_counts(g, v)
    return {x for x in range(g.n) if dist[x] == diameter - 1 and count[x] >= 2}


def neighbourhood_repeat_failures(g: BipartiteGraph, diameter: int) -> list[tuple[int, int, int]]:
    """Triples (alpha, gamma, alpha') with gamma ~ alpha, alpha' a repeat of
    alpha, and no neighbour of alpha' among the repeats of gamma."""
    reps = [repeat_set(g, diameter, v) for v in range(g.n)]
    bad = []
    for a in range(g.n):
        for c in g.adjacency[a]:
            for a2 in sorted(reps[a]):
                if not reps[c].intersection(g.adjacency[a2]):
                    bad.append((a, c, a2))
    return bad


# ---------------------------------------------------------------- repeat cycles

def _neighbour_intersections(c: ShortCycle, cycles: Sequence[ShortCycle]):
    out = []
    for other in cycles:
        if other != c and other.vset & c.vset:
            out.append((other, intersect(c, other)))
    return out


def _repeat_path(host: ShortCycle, inter: Intersection) -> frozenset:
    return frozenset(host.antipode(x) for x in inter.vertices)


def cycle_repeat(g: BipartiteGraph, diameter: int, c: ShortCycle,
                 cycles: Sequence[ShortCycle] | None = None) -> ShortCycle | None:
    """The repeat cycle of ``c``, or None when the lemma's hypothesis fails.

    Hypothesis: ``c`` has length 2D-2 and some neighbour cycle meets it in
    a path shorter than D-2. Raises StructureViolation when the hypothesis
    holds but there is no unique short cycle meeting every neighbour
    C^i of c exactly in the repeat (in C^i) of the path C^i ∩ c.
    """
    if cycles is None:
        cycles = short_cycles(g, diameter)
    full = 2 * diameter - 2
    if c.length != full:
        return None
    nbrs = _neighbour_intersections(c, cycles)
    for other, inter in nbrs:
        if not inter.is_path:
            raise StructureViolation(f"{c.vertices} meets {other.vertices} in a non-path")
    if not any(inter.length < diameter - 2 for _, inter in nbrs):
        return None
    for other, _ in nbrs:
        if other.length != full:
            raise StructureViolation(f"neighbour {other.vertices} is shorter than 2D-2")
    targets = [(other, _repeat_path(other, inter)) for other, inter in nbrs]
    matches = []
    for cand in cycles:
        if cand == c or cand.length != full:
            continue
        ok = True
        for other, want in targets:
            got = intersect(cand, other)
            if got.vertices != want or not got.is_path:
                ok = False
                break
        if ok:
            matches.append(cand)
    if len(matches) != 1:
        raise StructureViolation(
            f"cycle {c.vertices}: expected one repeat cycle, found {len(matches)}")
    return matches[0]


def repeat_pairing(g: BipartiteGraph, diameter: int,
                   cycles: Sequence[ShortCycle] | None = None) -> tuple[dict, list[str]]:
    """Map each cycle with a repeat to its repeat; list involution failures."""
    if cycles is None:
        cycles = short_cycles(g, diameter)
    rep: dict[ShortCycle, ShortCycle] = {}
    problems = []
    for c in cycles:
        try:
            r = cycle_repeat(g, diameter, c, cycles)
        except StructureViolation as exc:
            problems.append(str(exc))
            continue
        if r is not None:
            rep[c] = r
    for c, r in rep.items():
        if r == c:
            problems.append(f"cycle {c.vertices} is its own repeat")
        elif rep.get(r) != c:
            problems.append(f"rep(rep({c.vertices})) != {c.vertices}")
    return rep, problems


# ---------------------------------------------------------------- partitions

@dataclass
class CyclePartition:
    classes: dict[str, list[ShortCycle]]
    vertex_classes: dict[str, list[int]]

    def counts(self) -> dict[str, int]:
        return {"S_D1": len(self.classes["D-1"]), "S_D2": len(self.classes["D-2"]),
                "S_D3": len(self.classes["D-3"])}


def _cycle_class(c, nbrs, diameter: int) -> str:
    lengths = [inter.length for _, inter in nbrs]
    if not lengths:
        raise PartitionViolation(f"cycle {c.vertices} has no neighbour cycles", cycle=c)
    if all(x == diameter - 1 for x in lengths):
        return "D-1"
    if all(x == diameter - 2 for x in lengths):
        return "D-2"
    if all(x <= diameter - 3 for x in lengths):
        return "D-3"
    raise PartitionViolation(
        f"cycle {c.vertices} meets its neighbours in paths of lengths {sorted(lengths)}", cycle=c)


def cycle_partition(g: BipartiteGraph, diameter: int,
                    cycles: Sequence[ShortCycle] | None = None) -> CyclePartition:
    """Split short cycles (and vertices) by the length of their neighbour intersections."""
    if cycles is None:
        cycles = short_cycles(g, diameter)
    for v in range(g.n):
        k = len(cycles_through(cycles, v))
        if k not in (2, 3):
            raise PreconditionFailed(f"vertex {v} lies on {k} short cycles")
    classes: dict[str, list[ShortCycle]] = {"D-1": [], "D-2": [], "D-3": []}
    cls_of = {}
    for c in cycles:
        nbrs = _neighbour_intersections(c, cycles)
        for other, inter in nbrs:
            if not inter.is_path:
                raise PartitionViolation(f"{c.vertices} meets {other.vertices} in a non-path", cycle=c)
        key = _cycle_class(c, nbrs, diameter)
        classes[key].append(c)
        cls_of[c] = key
    vertex_classes: dict[str, list[int]] = {"D-1": [], "D-2": [], "D-3": []}
    for v in range(g.n):
        keys = {cls_of[c] for c in cycles_through(cycles, v)}
        if len(keys) != 1:
            raise PartitionViolation(f"vertex {v} lies on cycles of classes {sorted(keys)}")
        vertex_classes[keys.pop()].append(v)
    return CyclePartition(classes, vertex_classes)


# ---------------------------------------------------------------- theta subgraphs

@dataclass(frozen=True)
class Theta:
    a: int
    b: int
    paths: tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]


def _paths_of_length(g: BipartiteGraph, a: int, b: int, length: int, dist_b: list[int]) -> list[tuple[int, ...]]:
    out = []
    path = [a]
    on = {a}

    def grow(u: int) -> None:
        left = length - (len(path) - 1)
        if left == 0:
            if u == b:
                out.append(tuple(path))
            return
        for w in g.adjacency[u]:
            if w in on or dist_b[w] > left - 1 or (w == b and left > 1):
                continue
            path.append(w)
            on.add(w)
            grow(w)
            on.discard(w)
            path.pop()

    grow(a)
    return out


def _three_disjoint(paths: list[tuple[int, ...]]):
    inner = [frozenset(p[1:-1]) for p in paths]
    for i, j, k in combinations(range(len(paths)), 3):
        if inner[i] & inner[j] or inner[i] & inner[k] or inner[j] & inner[k]:
            continue
        return paths[i], paths[j], paths[k]
    return None


def theta_find(g: BipartiteGraph, length: int) -> list[Theta]:
    """Pairs of branch vertices joined by three internally disjoint paths of
    the given length, with one witness triple per pair."""
    dists = [bfs_distances(g, v) for v in range(g.n)]
    out = []
    for a in range(g.n):
        if g.degree(a) < 3:
            continue
        for b in range(a + 1, g.n):
            if g.degree(b) < 3:
                continue
            d = dists[a][b]
            if d > length or (length - d) % 2:
                continue
            paths = _paths_of_length(g, a, b, length, dists[b])
            if len(paths) < 3:
                continue
            triple = _three_disjoint(paths)
            if triple is not None:
                out.append(Theta(a, b, triple))
    return out


# ---------------------------------------------------------------- aggregate report

@dataclass
class StructureReport:
    girth_ok: bool
    vertex_types: list[str]
    cor45_ok: bool
    partition: dict[str, int] | None
    repeat_pairing_ok: bool
    violations: list[str]
    notes: list[str]
    applicable: bool = True

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {
            "applicable": self.applicable,
            "girth_ok": self.girth_ok,
            "vertex_types": self.vertex_types,
            "cor45_ok": self.cor45_ok,
            "partition": self.partition,
            "repeat_pairing_ok": self.repeat_pairing_ok,
            "violations": self.violations,
            "notes": self.notes,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def verify_structure(g: BipartiteGraph, spec: GraphSpec) -> StructureReport:
    """Run every structural check for a defect-4 host.

    The properties are derived for regular hosts. On an irregular host every
    clause is still evaluated, but failures are reported as exempt notes and
    ``applicable`` is False.
    """
    D = spec.diameter
    found: list[str] = []
    notes: list[str] = []
    regular = degree_profile(g).is_regular
    if spec.defect != 4:
        notes.append(f"defect {spec.defect} != 4: the structural clauses target defect-4 hosts")

    gi = girth(g)
    girth_ok = gi == 2 * D - 2
    if not girth_ok:
        found.append(f"girth {gi} != 2D-2 = {2 * D - 2}")

    def finish(cycles_ok, types, cor45, partition, pairing):
        if regular:
            return StructureReport(girth_ok, types, cor45, partition, pairing, found, notes)
        notes.extend(f"exempt (irregular host): {f}" for f in found)
        return StructureReport(girth_ok, types, cor45, partition, pairing, [], notes, False)

    try:
        cycles = short_cycles(g, D)
    except BudgetExceeded as exc:
        found.append(str(exc))
        return finish(False, [], False, None, False)

    types = [saturate(g, D, v, cycles) for v in range(g.n)]
    labels = [t.label() for t in types]
    for v, t in enumerate(types):
        if t.tag == UNCONSTRAINED:
            found.append(f"vertex {v}: {t.note}")
        elif t.note:
            notes.append(f"vertex {v}: {t.label()}, {t.note}")

    bad45 = neighbourhood_repeat_failures(g, D)
    for a, c, a2 in bad45[:20]:
        found.append(f"repeat condition: N({a2}) has no repeat of {c} (alpha={a})")

    partition = None
    try:
        partition = cycle_partition(g, D, cycles).counts()
    except (PartitionViolation, PreconditionFailed) as exc:
        found.append(f"partition: {exc}")

    _, problems = repeat_pairing(g, D, cycles)
    found.extend(f"repeat cycles: {p}" for p in problems)

    return finish(True, labels, not bad45, partition, not problems)
