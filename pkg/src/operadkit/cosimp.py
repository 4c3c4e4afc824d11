"""Finite semi-cosimplicial sets and the box monoidal structure.

Levels are finite label sets, cofaces explicit maps; codegeneracies are
ignored throughout.  The box product is computed exactly: every relation
instance (x, d0 y) ~ (d^{p+1} x, y) is materialized and closed off by
union-find, class representatives being the lexicographically least
member.  Monoids and modules for the box product keep their structure
maps on raw pairs; the checkers verify well-definedness on classes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import product
from typing import Mapping, Sequence

from .seqcore import (
    CLOSED,
    FiniteSSequence,
    SSeqMap,
    profile_closed,
    profile_open,
)
from .algebra import (
    AxiomReport,
    BimoduleTables,
    InfBimoduleTables,
    act_bimodule,
    builtin_act,
    builtin_as,
    is_bimodule_map,
)


@dataclass(frozen=True)
class SemiCosimplicialSet:
    """Levels 0..maxLevel with cofaces d^i: level n -> level n+1 for
    0 <= i <= n+1; the cosimplicial identities are the checker's job."""

    max_level: int
    levels: tuple[tuple[str, ...], ...]
    cofaces: tuple[tuple[Mapping[str, str], ...], ...]

    def __post_init__(self):
        if self.max_level < 0:
            raise ValueError("max_level must be non-negative")
        if len(self.levels) != self.max_level + 1:
            raise ValueError("levels must run from 0 to max_level")
        levels = tuple(tuple(sorted(level)) for level in self.levels)
        for n, level in enumerate(levels):
            if len(set(level)) != len(level):
                raise ValueError(f"duplicate labels at level {n}")
        object.__setattr__(self, "levels", levels)
        if len(self.cofaces) != self.max_level:
            raise ValueError("cofaces must be given for levels 0..max_level-1")
        frozen = []
        for n, maps in enumerate(self.cofaces):
            if len(maps) != n + 2:
                raise ValueError(f"level {n} needs cofaces d^0..d^{n + 1}")
            row = []
            for i, d in enumerate(maps):
                d = dict(d)
                if set(d) != set(levels[n]):
                    raise ValueError(f"d^{i} at level {n} is not total")
                for x, v in d.items():
                    if v not in levels[n + 1]:
                        raise ValueError(
                            f"d^{i} at level {n} sends {x!r} outside level {n + 1}"
                        )
                row.append(d)
            frozen.append(tuple(row))
        object.__setattr__(self, "cofaces", tuple(frozen))

    def coface(self, n: int, i: int, x: str) -> str:
        return self.cofaces[n][i][x]


def check_semicosimplicial(x: SemiCosimplicialSet) -> AxiomReport:
    """Exhaustive d^j d^i = d^i d^{j-1} for all i < j at every level."""
    vs = []
    for n in range(x.max_level - 1):
        for j in range(1, n + 3):
            for i in range(j):
                for e in x.levels[n]:
                    lhs = x.coface(n + 1, j, x.coface(n, i, e))
                    rhs = x.coface(n + 1, i, x.coface(n, j - 1, e))
                    if lhs != rhs:
                        vs.append(
                            f"d{j} d{i} != d{i} d{j - 1} at level {n} on {e!r}"
                        )
    return AxiomReport.from_violations(vs)


def constant_point(max_level: int, label: str = "*") -> SemiCosimplicialSet:
    levels = tuple((label,) for _ in range(max_level + 1))
    cofaces = tuple(
        tuple({label: label} for _ in range(n + 2)) for n in range(max_level)
    )
    return SemiCosimplicialSet(max_level, levels, cofaces)


def truncate(x: SemiCosimplicialSet, max_level: int) -> SemiCosimplicialSet:
    if max_level > x.max_level:
        raise ValueError("cannot truncate upwards")
    return SemiCosimplicialSet(
        max_level, x.levels[: max_level + 1], x.cofaces[:max_level]
    )


@dataclass(frozen=True)
class CosimplicialPair:
    """A closed part one level taller than the open part, with a
    level-wise map h between them commuting with all cofaces."""

    closed_part: SemiCosimplicialSet
    open_part: SemiCosimplicialSet
    h: tuple[Mapping[str, str], ...]

    def __post_init__(self):
        if self.closed_part.max_level != self.open_part.max_level + 1:
            raise ValueError("closed part must be one level taller than the open part")
        if len(self.h) != self.open_part.max_level + 1:
            raise ValueError("h must be given on levels 0..open max_level")
        frozen = []
        for n, hn in enumerate(self.h):
            hn = dict(hn)
            if set(hn) != set(self.closed_part.levels[n]):
                raise ValueError(f"h is not total at level {n}")
            for x, v in hn.items():
                if v not in self.open_part.levels[n]:
                    raise ValueError(f"h at level {n} sends {x!r} outside the open part")
            frozen.append(hn)
        object.__setattr__(self, "h", tuple(frozen))
        for n in range(self.open_part.max_level):
            for i in range(n + 2):
                for x in self.closed_part.levels[n]:
                    lhs = self.h[n + 1][self.closed_part.coface(n, i, x)]
                    rhs = self.open_part.coface(n, i, self.h[n][x])
                    if lhs != rhs:
                        raise ValueError(
                            f"h does not commute with d^{i} at level {n} on {x!r}"
                        )


def derive_pair_from_infbimodule(m: InfBimoduleTables) -> CosimplicialPair:
    """Closed levels M(n;c), open levels M(n+1;o); the cofaces come from
    inserting or composing with the arity-two generators, and h inserts
    into the closed slot of the open one."""
    bound = m.carrier.max_arity
    if m.over != builtin_act(False, bound):
        raise ValueError("expected an infinitesimal bimodule over the arity-positive"
                         " monoid-actions operad")
    p2c, p2o = profile_closed(2), profile_open(2)
    c_levels = tuple(m.carrier.elements(profile_closed(n)) for n in range(bound + 1))
    c_cofaces = []
    for n in range(bound):
        pn = profile_closed(n)
        maps = []
        maps.append({x: m.left_inf[(p2c, "*", 2, pn, x)] for x in c_levels[n]})
        for i in range(1, n + 1):
            maps.append({x: m.right_inf[(pn, x, i, p2c, "*")] for x in c_levels[n]})
        maps.append({x: m.left_inf[(p2c, "*", 1, pn, x)] for x in c_levels[n]})
        c_cofaces.append(tuple(maps))
    closed = SemiCosimplicialSet(bound, c_levels, tuple(c_cofaces))
    o_levels = tuple(m.carrier.elements(profile_open(n + 1)) for n in range(bound))
    o_cofaces = []
    for n in range(bound - 1):
        pn = profile_open(n + 1)
        maps = []
        maps.append({x: m.left_inf[(p2o, "*", 2, pn, x)] for x in o_levels[n]})
        for i in range(1, n + 1):
            maps.append({x: m.right_inf[(pn, x, i, p2c, "*")] for x in o_levels[n]})
        maps.append({x: m.right_inf[(pn, x, n + 1, p2o, "*")] for x in o_levels[n]})
        o_cofaces.append(tuple(maps))
    open_ = SemiCosimplicialSet(bound - 1, o_levels, tuple(o_cofaces))
    h = tuple(
        {x: m.left_inf[(p2o, "*", 1, profile_closed(n), x)] for x in c_levels[n]}
        for n in range(bound)
    )
    return CosimplicialPair(closed, open_, h)


def _top_chain(x: SemiCosimplicialSet, level: int, a: str, steps: int) -> str:
    for _ in range(steps):
        a = x.coface(level, level + 1, a)
        level += 1
    return a


def _zero_chain(x: SemiCosimplicialSet, level: int, a: str, steps: int) -> str:
    for _ in range(steps):
        a = x.coface(level, 0, a)
        level += 1
    return a


def _ascending_chain(x: SemiCosimplicialSet, level: int, a: str, i: int, steps: int) -> str:
    for j in range(steps):
        a = x.coface(level, i + j, a)
        level += 1
    return a


def infbimodule_from_cosimp(x: SemiCosimplicialSet) -> InfBimoduleTables:
    """A single semi-cosimplicial set as an infinitesimal bimodule over
    the arity-positive associative operad: level n sits in arity n, the
    generator insertions are the extreme cofaces and the generator
    compositions the inner ones."""
    bound = x.max_level
    if bound < 2:
        raise ValueError("need max_level at least 2")
    over = builtin_as(True, bound)
    table = {profile_closed(n): x.levels[n] for n in range(bound + 1)}
    carrier = FiniteSSequence((CLOSED,), bound, table)
    left = {}
    for k in range(1, bound + 1):
        pk = profile_closed(k)
        for n in range(0, bound - k + 2):
            if k + n - 1 > bound:
                continue
            pn = profile_closed(n)
            for i in range(1, k + 1):
                for a in x.levels[n]:
                    v = _top_chain(x, n, a, k - i)
                    v = _zero_chain(x, n + k - i, v, i - 1)
                    left[(pk, "*", i, pn, a)] = v
    right = {}
    for n in range(0, bound + 1):
        pn = profile_closed(n)
        for k in range(1, bound - n + 2):
            if n + k - 1 > bound:
                continue
            pk = profile_closed(k)
            for i in range(1, n + 1):
                for a in x.levels[n]:
                    right[(pn, a, i, pk, "*")] = _ascending_chain(x, n, a, i, k - 1)
    return InfBimoduleTables(over, carrier, left, right)


def mo_structure(m: InfBimoduleTables) -> InfBimoduleTables:
    """The open family of an infinitesimal bimodule over the arity
    positive monoid-actions operad as a single-colour infinitesimal
    bimodule, with the top insertion realized by the open composition."""
    return infbimodule_from_cosimp(derive_pair_from_infbimodule(m).open_part)


def infbimodule_from_pair(p: CosimplicialPair) -> InfBimoduleTables:
    """The converse construction: closed levels in the closed colour,
    open level n below open arity n+1, actions expanded into coface
    chains, the mixed insertions routed through h."""
    closed, open_, h = p.closed_part, p.open_part, p.h
    bound = closed.max_level
    if bound < 2:
        raise ValueError("need closed max_level at least 2")
    over = builtin_act(False, bound)
    table = {profile_closed(n): closed.levels[n] for n in range(bound + 1)}
    for n in range(1, bound + 1):
        table[profile_open(n)] = open_.levels[n - 1]
    carrier = FiniteSSequence(over.carrier.colours, bound, table)
    left = {}
    right = {}
    for k in range(1, bound + 1):
        pkc, pko = profile_closed(k), profile_open(k)
        for n in range(0, bound - k + 2):
            if k + n - 1 > bound:
                continue
            pnc = profile_closed(n)
            # closed generator acting on a closed element
            for i in range(1, k + 1):
                for a in closed.levels[n]:
                    v = _top_chain(closed, n, a, k - i)
                    v = _zero_chain(closed, n + k - i, v, i - 1)
                    left[(pkc, "*", i, pnc, a)] = v
            # open generator acting on a closed element in a closed slot
            if k >= 2 and n + k - 2 <= open_.max_level:
                for i in range(1, k):
                    for a in closed.levels[n]:
                        v = _top_chain(closed, n, a, k - 1 - i)
                        v = _zero_chain(closed, n + k - 1 - i, v, i - 1)
                        left[(pko, "*", i, pnc, a)] = h[n + k - 2][v]
        # open generator acting on an open element in its open slot
        for n in range(1, bound - k + 2):
            if k + n - 1 > bound:
                continue
            pno = profile_open(n)
            for a in open_.levels[n - 1]:
                left[(pko, "*", k, pno, a)] = _zero_chain(open_, n - 1, a, k - 1)
    for n in range(0, bound + 1):
        pnc = profile_closed(n)
        for k in range(1, bound - n + 2):
            if n + k - 1 > bound:
                continue
            pkc = profile_closed(k)
            for i in range(1, n + 1):
                for a in closed.levels[n]:
                    right[(pnc, a, i, pkc, "*")] = _ascending_chain(closed, n, a, i, k - 1)
    for n in range(1, bound + 1):
        pno = profile_open(n)
        for k in range(1, bound - n + 2):
            if n + k - 1 > bound:
                continue
            pkc, pko = profile_closed(k), profile_open(k)
            for i in range(1, n):
                for a in open_.levels[n - 1]:
                    right[(pno, a, i, pkc, "*")] = _ascending_chain(open_, n - 1, a, i, k - 1)
            for a in open_.levels[n - 1]:
                right[(pno, a, n, pko, "*")] = _top_chain(open_, n - 1, a, k - 1)
    return InfBimoduleTables(over, carrier, left, right)


Triple = tuple[int, str, str]


def _box_triples(x: SemiCosimplicialSet, y: SemiCosimplicialSet, m: int) -> list[Triple]:
    out = []
    for p in range(m + 1):
        for a in x.levels[p]:
            for b in y.levels[m - p]:
                out.append((p, a, b))
    return sorted(out)


def _box_relations(x, y, m: int):
    for p in range(m):
        q = m - 1 - p
        for a in x.levels[p]:
            for b in y.levels[q]:
                yield (p, a, y.coface(q, 0, b)), (p + 1, x.coface(p, p + 1, a), b)


def _box_coface(x, y, t: Triple, m: int, i: int) -> Triple:
    p, a, b = t
    if i <= p:
        return (p + 1, x.coface(p, i, a), b)
    return (p, a, y.coface(m - p, i - p, b))


class _UnionFind:
    def __init__(self, items):
        self.parent = {t: t for t in items}

    def find(self, t):
        root = t
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[t] != root:
            self.parent[t], t = root, self.parent[t]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return
        if rb < ra:
            ra, rb = rb, ra
        self.parent[rb] = ra


def box_quotient(
    x: SemiCosimplicialSet, y: SemiCosimplicialSet
) -> tuple[SemiCosimplicialSet, tuple[dict[Triple, Triple], ...]]:
    """The box product together with the class map raw triple ->
    lexicographically least representative, level by level."""
    max_level = min(x.max_level, y.max_level)
    classes = []
    reps_per_level = []
    for m in range(max_level + 1):
        triples = _box_triples(x, y, m)
        uf = _UnionFind(triples)
        for t1, t2 in _box_relations(x, y, m):
            uf.union(t1, t2)
        cmap = {t: uf.find(t) for t in triples}
        classes.append(cmap)
        reps_per_level.append(sorted(set(cmap.values())))
    levels = tuple(tuple(_encode_triple(t) for t in reps) for reps in reps_per_level)
    cofaces = []
    for m in range(max_level):
        row = [dict() for _ in range(m + 2)]
        for i in range(m + 2):
            for t in classes[m]:
                img = classes[m + 1][_box_coface(x, y, t, m, i)]
                rep = classes[m][t]
                key = _encode_triple(rep)
                val = _encode_triple(img)
                if key in row[i] and row[i][key] != val:
                    raise ValueError(
                        f"coface d^{i} not well-defined on classes at level {m}:"
                        f" {t!r} disagrees with {rep!r}"
                    )
                row[i][key] = val
        cofaces.append(tuple(row))
    return SemiCosimplicialSet(max_level, levels, tuple(cofaces)), tuple(classes)


def _encode_triple(t: Triple) -> str:
    return json.dumps(list(t), separators=(",", ":"))


def box_product(x: SemiCosimplicialSet, y: SemiCosimplicialSet) -> SemiCosimplicialSet:
    return box_quotient(x, y)[0]


@dataclass(frozen=True)
class BoxMonoid:
    """mult is kept on raw pairs: (p, a, b) with a at level p, b at level
    m - p, for every m up to the carrier's max level; unit picks one
    element per level."""

    x: SemiCosimplicialSet
    mult: Mapping[tuple[int, str, str], str]
    unit: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "mult", dict(self.mult))


@dataclass(frozen=True)
class BoxModule:
    over: BoxMonoid
    x: SemiCosimplicialSet
    act: Mapping[tuple[int, str, str], str]

    def __post_init__(self):
        object.__setattr__(self, "act", dict(self.act))


def _check_box_map(
    vs: list,
    kind: str,
    table: Mapping,
    x: SemiCosimplicialSet,
    y: SemiCosimplicialSet,
    out: SemiCosimplicialSet,
    max_level: int,
) -> None:
    for m in range(max_level + 1):
        for t in _box_triples(x, y, m):
            v = table.get(t)
            if v is None:
                vs.append(f"{kind} missing at {t!r}")
            elif v not in out.levels[m]:
                vs.append(f"{kind} at {t!r} lands outside level {m}")
    if any(vs):
        return
    for m in range(1, max_level + 1):
        for t1, t2 in _box_relations(x, y, m):
            if table[t1] != table[t2]:
                vs.append(
                    f"{kind} not well-defined: {t1!r} -> {table[t1]!r} but"
                    f" {t2!r} -> {table[t2]!r}"
                )
    for m in range(max_level):
        for t in _box_triples(x, y, m):
            for i in range(m + 2):
                lhs = table[_box_coface(x, y, t, m, i)]
                rhs = out.coface(m, i, table[t])
                if lhs != rhs:
                    vs.append(
                        f"{kind} does not commute with d^{i} at level {m} on {t!r}"
                    )


def check_box_monoid(m: BoxMonoid) -> AxiomReport:
    vs: list[str] = []
    x = m.x
    top = x.max_level
    if len(m.unit) != top + 1:
        return AxiomReport.from_violations(["unit must pick one element per level"])
    for n, u in enumerate(m.unit):
        if u not in x.levels[n]:
            vs.append(f"unit at level {n} is not an element")
    if vs:
        return AxiomReport.from_violations(vs)
    for n in range(top):
        for i in range(n + 2):
            if x.coface(n, i, m.unit[n]) != m.unit[n + 1]:
                vs.append(f"unit not preserved by d^{i} at level {n}")
    _check_box_map(vs, "mult", m.mult, x, x, x, top)
    if vs:
        return AxiomReport.from_violations(vs)
    for p in range(top + 1):
        for q in range(top + 1 - p):
            for r in range(top + 1 - p - q):
                for a in x.levels[p]:
                    for b in x.levels[q]:
                        for c in x.levels[r]:
                            lhs = m.mult[(p + q, m.mult[(p, a, b)], c)]
                            rhs = m.mult[(p, a, m.mult[(q, b, c)])]
                            if lhs != rhs:
                                vs.append(
                                    f"associativity fails on {a!r},{b!r},{c!r}"
                                    f" at levels {p},{q},{r}"
                                )
    for p in range(top + 1):
        for q in range(top + 1 - p):
            for b in x.levels[q]:
                got = m.mult[(p, m.unit[p], b)]
                want = _zero_chain(x, q, b, p)
                if got != want:
                    vs.append(f"left unit fails at ({p},{b!r}): {got!r} != {want!r}")
            for a in x.levels[p]:
                got = m.mult[(p, a, m.unit[q])]
                want = _top_chain(x, p, a, q)
                if got != want:
                    vs.append(f"right unit fails at ({p},{a!r}): {got!r} != {want!r}")
    return AxiomReport.from_violations(vs)


def check_box_module(mod: BoxModule) -> AxiomReport:
    vs: list[str] = []
    mon = mod.over
    x, y = mon.x, mod.x
    top = y.max_level
    if x.max_level < top:
        return AxiomReport.from_violations(
            ["monoid levels do not reach the module max level"]
        )
    _check_box_map(vs, "act", mod.act, x, y, y, top)
    if vs:
        return AxiomReport.from_violations(vs)
    for p in range(top + 1):
        for q in range(top + 1 - p):
            for r in range(top + 1 - p - q):
                for a in x.levels[p]:
                    for b in x.levels[q]:
                        for c in y.levels[r]:
                            lhs = mod.act[(p + q, mon.mult[(p, a, b)], c)]
                            rhs = mod.act[(p, a, mod.act[(q, b, c)])]
                            if lhs != rhs:
                                vs.append(
                                    f"action associativity fails on {a!r},{b!r},{c!r}"
                                    f" at levels {p},{q},{r}"
                                )
    for p in range(top + 1):
        for q in range(top + 1 - p):
            for b in y.levels[q]:
                got = mod.act[(p, mon.unit[p], b)]
                want = _zero_chain(y, q, b, p)
                if got != want:
                    vs.append(f"unit action fails at ({p},{b!r}): {got!r} != {want!r}")
    return AxiomReport.from_violations(vs)


def derive_monoid_from_bimodule(
    m: BimoduleTables, eta: SSeqMap
) -> tuple[BoxMonoid, BoxModule, tuple[dict[str, str], ...]]:
    """The closed family as a box monoid under the arity-two left action,
    the open family as a module over it, with the missing extreme cofaces
    supplied by inserting the image of the arity-one generators."""
    bound = m.carrier.max_arity
    if m.over != builtin_act(False, bound):
        raise ValueError("expected a bimodule over the arity-positive monoid-actions"
                         " operad")
    if eta.src != builtin_act(True, bound).carrier or eta.dst != m.carrier:
        raise ValueError("eta must map the unital monoid-actions carrier into m")
    report = is_bimodule_map(act_bimodule(bound), m, eta)
    if not report.passed:
        raise ValueError(f"eta is not a bimodule map: {report.violations[0]}")
    p1c, p2c = profile_closed(1), profile_closed(2)
    p1o, p2o = profile_open(1), profile_open(2)
    e1c = eta.apply(p1c, "*")
    e1o = eta.apply(p1o, "*")
    gamma, right = m.gamma_left, m.right_act
    c_levels = tuple(m.carrier.elements(profile_closed(n)) for n in range(bound + 1))
    c_cofaces = []
    for n in range(bound):
        pn = profile_closed(n)
        maps = [
            {x: gamma[(p2c, "*", ((p1c, e1c), (pn, x)))] for x in c_levels[n]}
        ]
        for i in range(1, n + 1):
            maps.append({x: right[(pn, x, i, p2c, "*")] for x in c_levels[n]})
        maps.append({x: gamma[(p2c, "*", ((pn, x), (p1c, e1c)))] for x in c_levels[n]})
        c_cofaces.append(tuple(maps))
    closed = SemiCosimplicialSet(bound, c_levels, tuple(c_cofaces))
    o_levels = tuple(m.carrier.elements(profile_open(n + 1)) for n in range(bound))
    o_cofaces = []
    for n in range(bound - 1):
        pn = profile_open(n + 1)
        maps = [
            {x: gamma[(p2o, "*", ((p1c, e1c), (pn, x)))] for x in o_levels[n]}
        ]
        for i in range(1, n + 1):
            maps.append({x: right[(pn, x, i, p2c, "*")] for x in o_levels[n]})
        maps.append({x: right[(pn, x, n + 1, p2o, "*")] for x in o_levels[n]})
        o_cofaces.append(tuple(maps))
    open_ = SemiCosimplicialSet(bound - 1, o_levels, tuple(o_cofaces))
    mult = {}
    for p in range(bound + 1):
        pp = profile_closed(p)
        for q in range(bound + 1 - p):
            pq = profile_closed(q)
            for a in c_levels[p]:
                for b in c_levels[q]:
                    mult[(p, a, b)] = gamma[(p2c, "*", ((pp, a), (pq, b)))]
    act = {}
    for p in range(bound):
        pp = profile_closed(p)
        for q in range(bound - p):
            pq = profile_open(q + 1)
            for a in c_levels[p]:
                for b in o_levels[q]:
                    act[(p, a, b)] = gamma[(p2o, "*", ((pp, a), (pq, b)))]
    unit = tuple(eta.apply(profile_closed(n), "*") for n in range(bound + 1))
    monoid = BoxMonoid(closed, mult, unit)
    module = BoxModule(monoid, open_, act)
    h = tuple(
        {x: gamma[(p2o, "*", ((profile_closed(n), x), (p1o, e1o)))] for x in c_levels[n]}
        for n in range(bound)
    )
    return monoid, module, h


def _tuple_label(values: Sequence[str]) -> str:
    return "(" + ",".join(values) + ")"


def _module_label(values: Sequence[str], a: str) -> str:
    return "(" + ",".join(values) + "|" + a + ")"


def loops_example(
    x: Sequence[str], a: Sequence[str], basepoint: str, max_level: int
) -> tuple[BoxMonoid, BoxModule, tuple[dict[str, str], ...]]:
    """Levels are tuples over a pointed set (and a pointed subset in the
    module part); cofaces insert the basepoint at the bottom, duplicate a
    coordinate in the middle, and append (basepoint or the subset value)
    at the top; the monoid is concatenation."""
    xs = tuple(sorted(set(x)))
    As = tuple(sorted(set(a)))
    if basepoint not in As:
        raise ValueError("basepoint not in the pointed subset")
    if not set(As) <= set(xs):
        raise ValueError("the pointed subset must sit inside the pointed set")
    if max_level < 1:
        raise ValueError("max_level must be at least 1")
    tuples = {n: sorted(product(xs, repeat=n)) for n in range(max_level + 1)}
    m_levels = tuple(
        tuple(_tuple_label(t) for t in tuples[n]) for n in range(max_level + 1)
    )
    m_cofaces = []
    for n in range(max_level):
        maps = []
        for i in range(n + 2):
            d = {}
            for t in tuples[n]:
                if i == 0:
                    img = (basepoint,) + t
                elif i <= n:
                    img = t[:i] + (t[i - 1],) + t[i:]
                else:
                    img = t + (basepoint,)
                d[_tuple_label(t)] = _tuple_label(img)
            maps.append(d)
        m_cofaces.append(tuple(maps))
    monoid_x = SemiCosimplicialSet(max_level, m_levels, tuple(m_cofaces))
    mult = {}
    for p in range(max_level + 1):
        for q in range(max_level + 1 - p):
            for u in tuples[p]:
                for v in tuples[q]:
                    mult[(p, _tuple_label(u), _tuple_label(v))] = _tuple_label(u + v)
    unit = tuple(_tuple_label((basepoint,) * n) for n in range(max_level + 1))
    monoid = BoxMonoid(monoid_x, mult, unit)

    o_level = max_level - 1
    o_levels = tuple(
        tuple(_module_label(t, s) for t in tuples[n] for s in As)
        for n in range(o_level + 1)
    )
    o_cofaces = []
    for n in range(o_level):
        maps = []
        for i in range(n + 2):
            d = {}
            for t in tuples[n]:
                for s in As:
                    if i == 0:
                        img = ((basepoint,) + t, s)
                    elif i <= n:
                        img = (t[:i] + (t[i - 1],) + t[i:], s)
                    else:
                        img = (t + (s,), s)
                    d[_module_label(t, s)] = _module_label(img[0], img[1])
            maps.append(d)
        o_cofaces.append(tuple(maps))
    module_x = SemiCosimplicialSet(o_level, o_levels, tuple(o_cofaces))
    act = {}
    for p in range(o_level + 1):
        for q in range(o_level + 1 - p):
            for u in tuples[p]:
                for v in tuples[q]:
                    for s in As:
                        act[(p, _tuple_label(u), _module_label(v, s))] = _module_label(
                            u + v, s
                        )
    module = BoxModule(monoid, module_x, act)
    h = tuple(
        {_tuple_label(t): _module_label(t, basepoint) for t in tuples[n]}
        for n in range(max_level)
    )
    return monoid, module, h


def loops_bimodule(
    x: Sequence[str], a: Sequence[str], basepoint: str, max_arity: int
) -> tuple[BimoduleTables, SSeqMap]:
    """The bimodule behind the loop example: closed elements are tuples
    acted on by concatenation, the right action repeats coordinates, open
    elements carry the subset marker that the open slot duplicates."""
    xs = tuple(sorted(set(x)))
    As = tuple(sorted(set(a)))
    if basepoint not in As:
        raise ValueError("basepoint not in the pointed subset")
    if not set(As) <= set(xs):
        raise ValueError("the pointed subset must sit inside the pointed set")
    bound = max_arity
    tuples = {n: sorted(product(xs, repeat=n)) for n in range(bound + 1)}
    table = {}
    for n in range(bound + 1):
        table[profile_closed(n)] = tuple(_tuple_label(t) for t in tuples[n])
    for n in range(1, bound + 1):
        table[profile_open(n)] = tuple(
            _module_label(t, s) for t in tuples[n - 1] for s in As
        )
    over = builtin_act(False, bound)
    carrier = FiniteSSequence(over.carrier.colours, bound, table)

    def parse_c(label: str) -> tuple:
        inner = label[1:-1]
        return tuple(inner.split(",")) if inner else ()

    def parse_o(label: str) -> tuple:
        inner, s = label[1:-1].rsplit("|", 1)
        return (tuple(inner.split(",")) if inner else ()), s

    gamma = {}
    for k in range(1, bound + 1):
        pkc, pko = profile_closed(k), profile_open(k)
        for args in _closed_arg_tuples(table, k, bound):
            parts = [parse_c(lab) for _, lab in args]
            gamma[(pkc, "*", args)] = _tuple_label(sum(parts, ()))
        for args in _open_arg_tuples(table, k, bound):
            parts = [parse_c(lab) for _, lab in args[:-1]]
            v, s = parse_o(args[-1][1])
            gamma[(pko, "*", args)] = _module_label(sum(parts, ()) + v, s)
    right = {}
    for n in range(bound + 1):
        pn = profile_closed(n)
        for mm in range(1, bound - n + 2):
            pm = profile_closed(mm)
            for i in range(1, n + 1):
                for lab in table[pn]:
                    t = parse_c(lab)
                    img = t[: i - 1] + (t[i - 1],) * mm + t[i:]
                    right[(pn, lab, i, pm, "*")] = _tuple_label(img)
    for n in range(1, bound + 1):
        pn = profile_open(n)
        for mm in range(1, bound - n + 2):
            pmc, pmo = profile_closed(mm), profile_open(mm)
            for lab in table[pn]:
                v, s = parse_o(lab)
                for i in range(1, n):
                    img = v[: i - 1] + (v[i - 1],) * mm + v[i:]
                    right[(pn, lab, i, pmc, "*")] = _module_label(img, s)
                right[(pn, lab, n, pmo, "*")] = _module_label(v + (s,) * (mm - 1), s)
    bm = BimoduleTables(over, carrier, gamma, right)
    act_carrier = builtin_act(True, bound).carrier
    maps = {}
    for n in range(bound + 1):
        maps[profile_closed(n)] = {"*": _tuple_label((basepoint,) * n)}
    for n in range(1, bound + 1):
        maps[profile_open(n)] = {"*": _module_label((basepoint,) * (n - 1), basepoint)}
    eta = SSeqMap(act_carrier, carrier, maps)
    return bm, eta


def _closed_arg_tuples(table, k: int, budget: int):
    pcs = [profile_closed(n) for n in range(budget + 1)]

    def rec(slots: int, budget: int):
        if slots == 0:
            yield ()
            return
        for p in pcs:
            if p.arity > budget:
                continue
            for lab in table[p]:
                for tail in rec(slots - 1, budget - p.arity):
                    yield ((p, lab),) + tail

    yield from rec(k, budget)


def _open_arg_tuples(table, k: int, budget: int):
    pcs = [profile_closed(n) for n in range(budget + 1)]
    pos = [profile_open(n) for n in range(1, budget + 1)]

    def rec(slots: int, budget: int):
        if slots == 1:
            for p in pos:
                if p.arity <= budget:
                    for lab in table[p]:
                        yield ((p, lab),)
            return
        for p in pcs:
            if p.arity > budget:
                continue
            for lab in table[p]:
                for tail in rec(slots - 1, budget - p.arity):
                    yield ((p, lab),) + tail

    yield from rec(k, budget)


def cosimp_to_json(x: SemiCosimplicialSet) -> str:
    doc = {
        "maxLevel": x.max_level,
        "levels": [list(level) for level in x.levels],
        "cofaces": [
            [dict(sorted(d.items())) for d in row] for row in x.cofaces
        ],
    }
    return json.dumps(doc, indent=2) + "\n"


def cosimp_from_json(text: str) -> SemiCosimplicialSet:
    doc = json.loads(text)
    levels = tuple(tuple(level) for level in doc["levels"])
    cofaces = tuple(tuple(dict(d) for d in row) for row in doc["cofaces"])
    max_level = doc.get("maxLevel", len(levels) - 1)
    return SemiCosimplicialSet(max_level, levels, cofaces)
