"""Catalogues of bipartite (delta, D, -defect)-graphs: enumeration and storage."""

from __future__ import annotations

import hashlib
import json
import os
import re
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass, field
from pathlib import Path

from ..canon import canonical_graph, canonical_key
from ..constructions import cycle, path
from ..errors import (BudgetExceeded, CorruptCatalogue, DomainError, MalformedGraph6,
                      MddError, TargetTooLarge)
from ..feasibility import regularity_forced
from ..graph import BipartiteGraph, from_edges
from ..graph6 import decode_graph6, write_graph6
from ..metrics import GraphSpec, check_spec, girth
from .engine import Budget, BfsSearch, MatrixSearch, OutOfBudget, Problem, matrix_row_splits
from .oracle import connected_bipartite_keys

GENERATOR_VERSION = "mdd-search 1.0"
DEFAULT_MAX_ORDER = 32
ORACLE_MAX_ORDER = 14
STRATEGIES = ("matrix", "bfs")

# depth at which the search tree is cut into independent subtrees
_SPLIT_DEPTH = {"matrix": 2, "bfs": 3}


@dataclass(frozen=True)
class SearchOptions:
    spec: GraphSpec
    jobs: int = 1
    girth_floor: int | None = None
    checkpoint_path: str | None = None
    budget: int | None = None
    strategy: str = "matrix"
    max_order: int = DEFAULT_MAX_ORDER

    def __post_init__(self):
        if self.jobs < 1:
            raise DomainError("jobs must be at least 1")
        if self.budget is not None and self.budget <= 0:
            raise DomainError("budget must be positive")
        if self.strategy not in STRATEGIES:
            raise DomainError(f"unknown strategy {self.strategy!r}")

    def option_hash(self) -> str:
        """Hash of everything that can change the member set."""
        s = self.spec
        blob = json.dumps({"delta": s.delta, "diameter": s.diameter, "defect": s.defect,
                           "girth_floor": self.girth_floor, "strategy": self.strategy},
                          sort_keys=True)
        return hashlib.sha256(blob.encode()).hexdigest()[:16]


@dataclass
class Catalogue:
    spec: GraphSpec
    members: tuple[BipartiteGraph, ...]
    complete: bool
    provenance: dict = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.members)

    def keys(self) -> list[bytes]:
        return [write_graph6(g) for g in self.members]

    def regular_count(self) -> int:
        return sum(1 for g in self.members if len(set(g.degrees())) == 1)

    def to_dict(self) -> dict:
        s = self.spec
        return {"delta": s.delta, "diameter": s.diameter, "defect": s.defect,
                "order": s.order, "complete": self.complete, "count": len(self.members),
                "regular": self.regular_count(),
                "members": [k.decode() for k in self.keys()],
                "provenance": self.provenance}


def _members_from_keys(keys) -> tuple[BipartiteGraph, ...]:
    out = []
    for k in sorted(set(keys)):
        n, edges = decode_graph6(k)
        out.append(from_edges(n, edges))
    return tuple(out)


# ---------------------------------------------------------------- subtree jobs

def _problem_for(opts: SearchOptions) -> Problem:
    s = opts.spec
    regular = False
    if s.delta >= 3 and s.diameter >= 3:
        regular = regularity_forced(s)[0]
    floor = opts.girth_floor
    if floor is None:
        # regular defect-4 hosts have girth 2D-2
        floor = 2 * s.diameter - 2 if regular and s.defect == 4 else 4
    return Problem(s.order, s.delta, s.diameter, regular, max(floor, 4))


def _collector(prob: Problem, keys: set):
    def emit(adj):
        keys.add(canonical_key(prob.n, adj))
    return emit


def _frontier(prob: Problem, strategy: str) -> tuple[list, set]:
    """Cut the search tree; returns subtree tasks and graphs found above the cut."""
    found: set[bytes] = set()
    tasks: list = []
    depth = _SPLIT_DEPTH[strategy]
    if strategy == "matrix":
        for r in matrix_row_splits(prob):
            fr: list = []
            stop = depth if r > depth else None
            MatrixSearch(prob, r).run(_collector(prob, found), stop_at=stop, frontier=fr)
            tasks.extend(("matrix", r, rows) for rows in fr)
    else:
        fr = []
        BfsSearch(prob).run(_collector(prob, found), stop_at=depth, frontier=fr)
        tasks.extend(("bfs", snap) for snap in fr)
    return tasks, found


def _run_task(prob: Problem, task: tuple, limit: int | None) -> tuple[list[bytes], bool]:
    keys: set[bytes] = set()
    budget = Budget(limit)
    emit = _collector(prob, keys)
    try:
        if task[0] == "matrix":
            MatrixSearch(prob, task[1], budget).run(emit, start_rows=list(task[2]))
        else:
            snap = task[1]
            BfsSearch.from_snapshot(prob, snap, budget).run(emit, start=snap[0])
        exhausted = False
    except OutOfBudget:
        exhausted = True
    return sorted(keys), exhausted


# ---------------------------------------------------------------- checkpoints

def _load_checkpoint(p: str | None, opts: SearchOptions, ntasks: int) -> dict[int, list[bytes]]:
    if not p or not os.path.exists(p):
        return {}
    try:
        data = json.loads(Path(p).read_text())
    except (OSError, ValueError):
        return {}
    if data.get("options") != opts.option_hash() or data.get("tasks") != ntasks:
        return {}
    return {int(i): [k.encode() for k in ks] for i, ks in data.get("done", {}).items()}


def _save_checkpoint(p: str, opts: SearchOptions, ntasks: int, done: dict) -> None:
    data = {"version": GENERATOR_VERSION, "options": opts.option_hash(), "tasks": ntasks,
            "done": {str(i): [k.decode() for k in ks] for i, ks in sorted(done.items())}}
    tmp = p + ".tmp"
    Path(tmp).write_text(json.dumps(data, sort_keys=True))
    os.replace(tmp, p)


# ---------------------------------------------------------------- enumerate

def _analytic_delta2(spec: GraphSpec) -> tuple[BipartiteGraph, ...]:
    if spec.defect == 0:
        return (canonical_graph(cycle(2 * spec.diameter)),)
    if spec.defect == spec.diameter - 1:
        return (canonical_graph(path(spec.diameter)),)
    return ()


def enumerate_graphs(opts: SearchOptions) -> Catalogue:
    """All bipartite graphs of the target class, one per isomorphism class.

    Raises TargetTooLarge above ``opts.max_order`` and BudgetExceeded (with
    the partial catalogue attached) if some subtree runs out of budget. The
    budget caps node expansions per subtree.
    """
    spec = opts.spec
    order = spec.order
    if order > opts.max_order:
        raise TargetTooLarge(f"target order {order} exceeds the limit {opts.max_order}")
    prov = {"generator": GENERATOR_VERSION, "options": opts.option_hash(),
            "strategy": opts.strategy}
    if spec.delta == 2:
        prov["strategy"] = "analytic"
        return Catalogue(spec, _analytic_delta2(spec), True, prov)
    if order < 2:
        return Catalogue(spec, (), True, prov)

    prob = _problem_for(opts)
    tasks, found = _frontier(prob, opts.strategy)
    done = _load_checkpoint(opts.checkpoint_path, opts, len(tasks))
    exhausted = False
    todo = [i for i in range(len(tasks)) if i not in done]

    def record(i, keys, ran_out):
        nonlocal exhausted
        if ran_out:
            exhausted = True
            found.update(keys)
            return
        done[i] = keys
        if opts.checkpoint_path:
            _save_checkpoint(opts.checkpoint_path, opts, len(tasks), done)

    if opts.jobs > 1 and len(todo) > 1:
        with ProcessPoolExecutor(max_workers=opts.jobs) as pool:
            futs = {pool.submit(_run_task, prob, tasks[i], opts.budget): i for i in todo}
            for fut in as_completed(futs):
                record(futs[fut], *fut.result())
    else:
        for i in todo:
            record(i, *_run_task(prob, tasks[i], opts.budget))

    for keys in done.values():
        found.update(keys)
    members = _members_from_keys(found)
    _assert_sound(spec, prob, members)
    cat = Catalogue(spec, members, not exhausted, prov)
    if exhausted:
        raise BudgetExceeded(f"budget of {opts.budget} node expansions exhausted", partial=cat)
    return cat


def _assert_sound(spec: GraphSpec, prob: Problem, members) -> None:
    for g in members:
        chk = check_spec(g, spec)
        if not chk:
            raise AssertionError(f"search emitted a graph outside {spec}: {chk.failures}")
        if prob.regular and (girth(g) or 0) < prob.girth_floor:
            raise AssertionError("search emitted a graph below the girth floor")


# ---------------------------------------------------------------- persistence

_HEADER_RE = re.compile(
    r"^#mdd-catalogue v1 delta=(\d+) D=(\d+) defect=(\d+) complete=([01]) sha=([0-9a-f]{64})$")


def _digest(lines: list[bytes]) -> str:
    return hashlib.sha256(b"\n".join(lines)).hexdigest()


def _meta_path(p) -> Path:
    return Path(str(p) + ".meta.json")


def save_catalogue(cat: Catalogue, p) -> None:
    lines = cat.keys()
    s = cat.spec
    header = (f"#mdd-catalogue v1 delta={s.delta} D={s.diameter} defect={s.defect} "
              f"complete={int(cat.complete)} sha={_digest(lines)}")
    Path(p).write_bytes(b"\n".join([header.encode()] + lines) + b"\n")
    meta = dict(cat.provenance)
    meta["count"] = len(lines)
    _meta_path(p).write_text(json.dumps(meta, sort_keys=True, indent=2) + "\n")


def load_catalogue(p, spec: GraphSpec | None = None) -> Catalogue:
    """Read a catalogue and re-verify it; ``spec`` additionally pins the class."""
    raw = Path(p).read_bytes().split(b"\n")
    if not raw or not raw[0]:
        raise CorruptCatalogue("missing header")
    m = _HEADER_RE.match(raw[0].decode("ascii", "replace"))
    if not m:
        raise CorruptCatalogue("malformed header")
    delta, D, eps, complete, sha = m.groups()
    try:
        hspec = GraphSpec(int(delta), int(D), int(eps))
    except DomainError as exc:
        raise CorruptCatalogue(f"invalid class in header: {exc}") from exc
    if spec is not None and spec != hspec:
        raise CorruptCatalogue(f"header class {hspec} does not match expected {spec}")
    lines = [ln.strip() for ln in raw[1:] if ln.strip()]
    if _digest(lines) != sha:
        raise CorruptCatalogue("checksum mismatch")
    members = []
    prev = None
    for ln in lines:
        try:
            n, edges = decode_graph6(ln)
            g = from_edges(n, edges)
        except (MalformedGraph6, MddError) as exc:
            raise CorruptCatalogue(f"bad member line: {exc}") from exc
        if not check_spec(g, hspec):
            raise CorruptCatalogue(f"member is not a {hspec}-graph")
        if write_graph6(canonical_graph(g)) != ln:
            raise CorruptCatalogue("member is not in canonical form")
        if prev is not None and ln <= prev:
            raise CorruptCatalogue("members not strictly increasing")
        prev = ln
        members.append(g)
    prov = {}
    mp = _meta_path(p)
    if mp.exists():
        try:
            prov = json.loads(mp.read_text())
        except ValueError as exc:
            raise CorruptCatalogue("unreadable metadata") from exc
        prov.pop("count", None)
    return Catalogue(hspec, tuple(members), complete == "1", prov)


# ---------------------------------------------------------------- oracle

def oracle_keys(spec: GraphSpec) -> list[bytes]:
    """Members of the class found by filtering all connected bipartite graphs."""
    order = spec.order
    if order > ORACLE_MAX_ORDER:
        raise TargetTooLarge(f"oracle limited to order {ORACLE_MAX_ORDER}")
    if order < 1:
        return []
    out = []
    for k in connected_bipartite_keys(order, spec.delta):
        n, edges = decode_graph6(k)
        if check_spec(from_edges(n, edges), spec):
            out.append(k)
    return sorted(out)


def cross_validate(spec: GraphSpec, strategy: str = "matrix", jobs: int = 1) -> bool:
    """Whether the pruned search agrees with the brute-force oracle."""
    if spec.order > ORACLE_MAX_ORDER:
        raise TargetTooLarge(f"cross-validation is limited to order {ORACLE_MAX_ORDER}")
    cat = enumerate_graphs(SearchOptions(spec, jobs=jobs, strategy=strategy))
    return cat.keys() == oracle_keys(spec)
