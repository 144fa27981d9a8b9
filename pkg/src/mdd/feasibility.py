"""Existence verdicts for bipartite (delta, D, -defect)-graphs.

The decision chain runs cheap analytic cases first (delta = 2, D = 2), then
the Moore table, forced regularity with odd order, the defect-2 results and
finally the defect-4 chain. Every rejection carries a stable tag:

    delta2-analytic, diameter2-analytic, moore-nonexistence,
    regular-odd-order, defect2-nonexistence, thm-odd-diameter,
    thm-cubic-even-diameter, prop-cycle-count-nonintegral,
    ext-cycle-count-parity, cor-odd-prime-power, cor-residue-01, cor-mod3,
    order-too-small

Conjectures are never used as filters; they appear only in ``notes``.
"""

from __future__ import annotations

import csv
import io
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Sequence

from .errors import DomainError
from .metrics import GraphSpec, moore_bound


class Status(str, Enum):
    EXISTS = "Exists"
    IMPOSSIBLE = "Impossible"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class Reason:
    tag: str
    detail: str
    extension: bool = False

    def to_dict(self) -> dict:
        d = {"tag": self.tag, "detail": self.detail}
        if self.extension:
            d["extension"] = True
        return d


@dataclass
class FeasibilityVerdict:
    spec: GraphSpec
    status: Status
    reasons: list[Reason] = field(default_factory=list)
    witness: str | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def tags(self) -> list[str]:
        return [r.tag for r in self.reasons]

    def to_dict(self) -> dict:
        return {
            "delta": self.spec.delta,
            "diameter": self.spec.diameter,
            "defect": self.spec.defect,
            "status": self.status.value,
            "reasons": [r.to_dict() for r in self.reasons],
            "witness": self.witness,
            "notes": self.notes,
        }


# ---------------------------------------------------------------- number theory

def factorize(m: int) -> dict[int, int]:
    """Prime factorisation by trial division."""
    if m < 1:
        raise DomainError("factorize needs a positive integer")
    out: dict[int, int] = {}
    f = 2
    while f * f <= m:
        while m % f == 0:
            out[f] = out.get(f, 0) + 1
            m //= f
        f += 1 if f == 2 else 2
    if m > 1:
        out[m] = out.get(m, 0) + 1
    return out


def prime_power(m: int) -> tuple[int, int] | None:
    """``(p, k)`` with m = p**k, k >= 1, or None."""
    if m < 2:
        return None
    fac = factorize(m)
    if len(fac) != 1:
        return None
    (p, k), = fac.items()
    return p, k


def is_prime(m: int) -> bool:
    pp = prime_power(m)
    return pp is not None and pp[1] == 1


def geometric_sum_mod(a: int, terms: int, m: int) -> int:
    """(1 + a + ... + a**(terms-1)) mod m."""
    s, x = 0, 1 % m
    a %= m
    for _ in range(terms):
        s = (s + x) % m
        x = (x * a) % m
    return s


# ---------------------------------------------------------------- regularity

def regularity_thresholds(delta: int, diameter: int) -> tuple[int, int | None]:
    r = delta - 1
    t1 = sum(r ** i for i in range(diameter - 1))
    t2 = 2 * sum(r ** i for i in range(1, diameter - 1, 2)) if diameter % 2 else None
    return t1, t2


def regularity_forced(spec: GraphSpec) -> tuple[bool, str | None]:
    """Whether every bipartite (delta, D, -defect)-graph must be regular.

    Returns ``(forced, which)`` with ``which`` one of "Prop31", "Prop32"
    (the general threshold and the odd-diameter threshold) or None.
    """
    if spec.delta < 3 or spec.diameter < 3:
        raise DomainError("regularity thresholds need delta >= 3 and D >= 3")
    t1, t2 = regularity_thresholds(spec.delta, spec.diameter)
    if spec.defect < t1:
        return True, "Prop31"
    if t2 is not None and spec.defect < t2:
        return True, "Prop32"
    return False, None


# ---------------------------------------------------------------- cycle count

@dataclass(frozen=True)
class CycleCount:
    """Short-cycle count (M^b(d, D) - 4) / (D - 1) of a defect-4 graph."""

    numerator: int
    denominator: int
    integral: bool
    value_mod2: int | None

    @property
    def value(self) -> int | None:
        return self.numerator // self.denominator if self.integral else None

    def __str__(self) -> str:
        return f"{self.numerator}/{self.denominator}"


def cycle_count(d: int, diameter: int) -> CycleCount:
    if d < 3 or diameter < 5:
        raise DomainError("the short-cycle count is defined for d >= 3 and D >= 5")
    num = moore_bound(d, diameter) - 4
    den = diameter - 1
    integral = num % den == 0
    return CycleCount(num, den, integral, (num // den) % 2 if integral else None)


def _count_residue(a: int, diameter: int, m: int) -> int:
    """(2 * sum a**i - 4) mod m, with a = d - 1 reduced modulo m."""
    return (2 * geometric_sum_mod(a, diameter, m) - 4) % m


def count_integral_for_residue(r: int, diameter: int) -> bool:
    return _count_residue(r, diameter, diameter - 1) == 0


def count_parity_for_lift(a: int, diameter: int) -> int | None:
    """Parity of the cycle count for d - 1 congruent to ``a`` mod 2(D-1)."""
    m = 2 * (diameter - 1)
    rem = _count_residue(a, diameter, m)
    if rem % (diameter - 1):
        return None
    return rem // (diameter - 1)


# ---------------------------------------------------------------- defect-4 filters

def _odd_prime_factors(m: int) -> list[int]:
    return [p for p in factorize(m) if p % 2] if m > 1 else []


def defect4_residue_reasons(r: int, diameter: int, d: int | None = None) -> list[Reason]:
    """Filters for d >= 3 and D >= 5 that depend only on r = (d-1) mod (D-1).

    With ``d`` given, the parity filter uses its exact class modulo 2(D-1);
    without it, parity fires only when both lifts of r agree.
    """
    D = diameter
    m = D - 1
    r %= m
    reasons: list[Reason] = []
    if D % 2:
        reasons.append(Reason("thm-odd-diameter",
                              "no bipartite (d,D,-4)-graph exists for d >= 3 and odd D >= 5"))
    integral = count_integral_for_residue(r, D)
    if not integral:
        reasons.append(Reason("prop-cycle-count-nonintegral",
                              f"short-cycle count (M^b(d,{D}) - 4)/{m} is not an integer "
                              f"for d-1 = {r} mod {m}"))
    elif D >= 7:
        if d is not None:
            par = count_parity_for_lift((d - 1) % (2 * m), D)
            odd = par == 1
        else:
            pars = {count_parity_for_lift(r, D), count_parity_for_lift(r + m, D)}
            odd = pars == {1}
        if odd:
            reasons.append(Reason("ext-cycle-count-parity",
                                  "short-cycle count is odd but repeat cycles pair up",
                                  extension=D % 2 == 0))
    pp = prime_power(m)
    if pp is not None and pp[0] % 2:
        reasons.append(Reason("cor-odd-prime-power", f"D-1 = {m} is an odd prime power"))
    if D >= 6:
        for p in _odd_prime_factors(m):
            if r % p in (0, 1):
                reasons.append(Reason("cor-residue-01",
                                      f"d-1 = {r % p} mod {p}, {p} an odd prime factor of D-1"))
                break
    if m % 3 == 0:
        reasons.append(Reason("cor-mod3", "D-1 = 0 mod 3"))
    return reasons


# ---------------------------------------------------------------- verdict

_MOORE_DIAMETERS = (2, 3, 4, 6)


def _moore_case(delta: int, D: int, v: FeasibilityVerdict) -> None:
    q = delta - 1
    if D not in _MOORE_DIAMETERS:
        v.status = Status.IMPOSSIBLE
        v.reasons.append(Reason("moore-nonexistence",
                                f"no Moore bipartite graph with delta >= 3 and D = {D}"))
        return
    pp = prime_power(q)
    if pp is None:
        v.status = Status.UNKNOWN
        v.notes.append(f"delta-1 = {q} is not a prime power; existence is open")
        return
    v.status = Status.EXISTS
    if D == 3 and pp[1] == 1:
        v.witness = f"pg2:{q}"
    elif D == 3:
        v.witness = f"literature-only: projective plane of order {q}"
    elif D == 4:
        v.witness = f"literature-only: generalised quadrangle of order {q}"
    else:
        v.witness = f"literature-only: generalised hexagon of order {q}"


_DEFECT4_CATALOGUE = {
    (3, 3): "catalogue:4 graphs",
    (3, 4): "catalogue:1 graph",
    (4, 3): "delorme-22",
    (5, 3): "delorme-38",
}

_DEFECT2_CATALOGUE = {(3, 3): "catalogue:1 graph", (4, 3): "catalogue:1 graph"}


def verdict(spec: GraphSpec) -> FeasibilityVerdict:
    """Evaluate the filter chain for one class."""
    delta, D, eps = spec.delta, spec.diameter, spec.defect
    v = FeasibilityVerdict(spec, Status.UNKNOWN)
    order = moore_bound(delta, D) - eps
    if delta == 2:
        if eps == 0:
            v.status, v.witness = Status.EXISTS, f"cycle:{2 * D}"
        elif eps == D - 1:
            v.status, v.witness = Status.EXISTS, f"path:{D}"
        else:
            v.status = Status.IMPOSSIBLE
            v.reasons.append(Reason("delta2-analytic",
                                    f"only the {2 * D}-cycle (defect 0) and the path of length "
                                    f"{D} (defect {D - 1}) have max degree 2 and diameter {D}"))
        return v
    if D == 2:
        if eps <= delta - 1:
            v.status, v.witness = Status.EXISTS, f"kab:{delta},{delta - eps}"
        else:
            v.status = Status.IMPOSSIBLE
            v.reasons.append(Reason("diameter2-analytic",
                                    "diameter-2 bipartite graphs are complete bipartite; "
                                    f"defect is at most delta-1 = {delta - 1}"))
        return v
    if order < delta + D:
        v.status = Status.IMPOSSIBLE
        v.reasons.append(Reason("order-too-small",
                                f"order {order} cannot hold a degree-{delta} vertex and a "
                                f"diametral path of length {D}"))
        return v
    if eps == 0:
        _moore_case(delta, D, v)
        return v
    forced, which = regularity_forced(spec)
    if eps % 2 and forced:
        v.status = Status.IMPOSSIBLE
        v.reasons.append(Reason("regular-odd-order",
                                f"regularity is forced ({which}) but the order {order} is odd"))
        return v
    if eps == 2:
        if D == 3 and (delta, D) in _DEFECT2_CATALOGUE:
            v.status, v.witness = Status.EXISTS, _DEFECT2_CATALOGUE[(delta, D)]
        elif D >= 4:
            v.status = Status.IMPOSSIBLE
            v.reasons.append(Reason("defect2-nonexistence",
                                    "defect-2 graphs with delta >= 3 exist only for D = 3"))
        else:
            v.notes.append("defect 2, D = 3: open for this delta")
        return v
    if eps == 4:
        return _defect4(spec, v)
    return v


def _defect4(spec: GraphSpec, v: FeasibilityVerdict) -> FeasibilityVerdict:
    d, D = spec.delta, spec.diameter
    if (d, D) in _DEFECT4_CATALOGUE:
        v.status, v.witness = Status.EXISTS, _DEFECT4_CATALOGUE[(d, D)]
        if (d, D) == (5, 3):
            v.notes.append("only known example; uniqueness is open")
        return v
    if D <= 4:
        v.notes.append(f"defect 4 with D = {D} and delta = {d}: open")
        return v
    reasons = []
    if d == 3 and D % 2 == 0:
        reasons.append(Reason("thm-cubic-even-diameter",
                              "no bipartite (3,D,-4)-graph exists for even D >= 6"))
    reasons.extend(defect4_residue_reasons(d - 1, D, d=d))
    # the theorem tag leads, then arithmetic filters in fixed order
    order = ["thm-odd-diameter", "thm-cubic-even-diameter", "prop-cycle-count-nonintegral",
             "ext-cycle-count-parity", "cor-odd-prime-power", "cor-residue-01", "cor-mod3"]
    reasons.sort(key=lambda r: order.index(r.tag))
    v.reasons.extend(reasons)
    if reasons:
        v.status = Status.IMPOSSIBLE
    else:
        v.notes.append("conjectured not to exist (advisory only, not used as a filter)")
    return v


# ---------------------------------------------------------------- tables

@dataclass(frozen=True)
class TableRow:
    label: str
    diameter: int
    defect: int
    status: Status
    reasons: tuple[str, ...]

    def to_dict(self) -> dict:
        return {"delta_or_residue": self.label, "D": self.diameter, "defect": self.defect,
                "status": self.status.value, "reasons": list(self.reasons)}


def _residue_row(args: tuple[int, int]) -> TableRow:
    r, D = args
    reasons = defect4_residue_reasons(r, D)
    status = Status.IMPOSSIBLE if reasons else Status.UNKNOWN
    return TableRow(f"res:{r}/{D - 1}", D, 4, status, tuple(x.tag for x in reasons))


def _delta_row(args: tuple[int, int, int]) -> TableRow:
    d, D, eps = args
    v = verdict(GraphSpec(d, D, eps))
    return TableRow(str(d), D, eps, v.status, tuple(v.tags))


def scan_table(defect: int, d_range: Iterable[int] | None, D_range: Iterable[int],
               residues: bool = False, jobs: int = 1) -> list[TableRow]:
    """Verdict rows for every (delta, D), or in residue mode for every class
    of d-1 modulo D-1 (defect 4, D >= 5) plus the delta = 2 row."""
    tasks: list[tuple] = []
    kinds: list[str] = []
    for D in D_range:
        if residues:
            if defect != 4 or D < 5:
                raise DomainError("residue mode covers defect 4 with D >= 5")
            tasks.append((2, D, defect))
            kinds.append("delta")
            for r in range(D - 1):
                tasks.append((r, D))
                kinds.append("res")
        else:
            for d in d_range or ():
                tasks.append((d, D, defect))
                kinds.append("delta")

    def run(fn, items):
        if jobs > 1 and len(items) > 64:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                return list(pool.map(fn, items, chunksize=64))
        return [fn(x) for x in items]

    res_items = [t for t, k in zip(tasks, kinds) if k == "res"]
    del_items = [t for t, k in zip(tasks, kinds) if k == "delta"]
    res_rows = iter(run(_residue_row, res_items))
    del_rows = iter(run(_delta_row, del_items))
    return [next(res_rows) if k == "res" else next(del_rows) for k in kinds]


def table_csv(rows: Sequence[TableRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["delta_or_residue", "D", "defect", "status", "reasons"])
    for row in rows:
        w.writerow([row.label, row.diameter, row.defect, row.status.value, ";".join(row.reasons)])
    return buf.getvalue()


def table_json(rows: Sequence[TableRow]) -> str:
    return json.dumps([r.to_dict() for r in rows], sort_keys=True)


def surviving_residues(diameter: int) -> list[int]:
    """Classes r = (d-1) mod (D-1) left Unknown by the residue filters."""
    return [r for r in range(diameter - 1) if not defect4_residue_reasons(r, diameter)]


# ---------------------------------------------------------------- upper bounds

@dataclass(frozen=True)
class UpperBound:
    bound: int
    exact: bool
    justification: tuple[str, ...]

    def to_dict(self) -> dict:
        return {"bound": str(self.bound), "exact": self.exact,
                "justification": list(self.justification)}


# values settled outside the filter chain
_KNOWN_EXACT = {(3, 5): (6, "N^b(3,5) = M^b(3,5) - 6 is settled in the literature")}


def best_upper_bound(delta: int, diameter: int) -> UpperBound:
    """Tightest bound on N^b(delta, D) the verdict chain supports."""
    if delta < 2 or diameter < 2:
        raise DomainError("N^b is defined for delta >= 2 and D >= 2")
    mb = moore_bound(delta, diameter)
    why: list[str] = []
    for eps in range(0, 6):
        if mb - eps < 1:
            break
        v = verdict(GraphSpec(delta, diameter, eps))
        if v.status == Status.IMPOSSIBLE:
            why.append(f"defect {eps}: " + ",".join(v.tags))
            continue
        if v.status == Status.EXISTS:
            why.append(f"defect {eps}: exists ({v.witness})")
            return UpperBound(mb - eps, True, tuple(why))
        why.append(f"defect {eps}: unknown")
        return UpperBound(mb - eps, False, tuple(why))
    known = _KNOWN_EXACT.get((delta, diameter))
    if known is not None:
        why.append(known[1])
        return UpperBound(mb - known[0], True, tuple(why))
    return UpperBound(mb - 6, False, tuple(why))
